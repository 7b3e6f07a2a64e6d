#include "hyperlevy/io.hpp"

#include <chrono>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <sstream>

#include "hyperlevy/errors.hpp"

namespace hyperlevy::io {

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

void write_csv(std::ostream& os, const Table& table) {
    for (const auto& c : table.comments) os << "# " << c << '\n';
    for (std::size_t i = 0; i < table.columns.size(); ++i) os << (i ? "," : "") << table.columns[i];
    os << '\n';
    for (const auto& row : table.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << format_double(row[i]);
        os << '\n';
    }
}

void write_csv(const std::string& path, const Table& table) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw DomainError("cannot open " + path + " for writing");
    write_csv(os, table);
    if (!os) throw NumericalError("write to " + path + " failed");
}

namespace {

double parse_double(const std::string& s) {
    // strtod handles inf/nan spellings that printf emits
    char* end = nullptr;
    const double v = std::strtod(s.c_str(), &end);
    if (end == s.c_str() || *end != '\0') throw DomainError("CSV: cannot parse number '" + s + "'");
    return v;
}

std::vector<std::string> split(const std::string& line, char sep) {
    std::vector<std::string> out;
    std::string cur;
    std::istringstream is(line);
    while (std::getline(is, cur, sep)) out.push_back(cur);
    if (!line.empty() && line.back() == sep) out.emplace_back();
    return out;
}

}  // namespace

Table read_csv(std::istream& is) {
    Table t;
    std::string line;
    bool header = false;
    while (std::getline(is, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        if (line[0] == '#') {
            t.comments.push_back(line.size() > 2 ? line.substr(2) : "");
            continue;
        }
        if (!header) {
            t.columns = split(line, ',');
            header = true;
            continue;
        }
        std::vector<double> row;
        for (const auto& f : split(line, ',')) row.push_back(parse_double(f));
        if (row.size() != t.columns.size()) throw DomainError("CSV: row width does not match header");
        t.rows.push_back(std::move(row));
    }
    if (!header) throw DomainError("CSV: missing header row");
    return t;
}

Table read_csv(const std::string& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw DomainError("cannot open " + path);
    return read_csv(is);
}

void write_values(const std::string& path, const std::vector<double>& values) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw DomainError("cannot open " + path + " for writing");
    for (double v : values) os << format_double(v) << '\n';
    if (!os) throw NumericalError("write to " + path + " failed");
}

std::vector<double> read_values(const std::string& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw DomainError("cannot open " + path);
    std::vector<double> out;
    std::string line;
    while (std::getline(is, line)) {
        if (!line.empty()) out.push_back(parse_double(line));
    }
    return out;
}

std::string read_file(const std::string& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw DomainError("cannot open " + path);
    std::ostringstream ss;
    ss << is.rdbuf();
    return ss.str();
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw DomainError("cannot open " + path + " for writing");
    os << content;
}

std::string timestamp_utc() {
    const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

}  // namespace hyperlevy::io
