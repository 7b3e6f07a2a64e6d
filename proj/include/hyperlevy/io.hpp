#pragma once

// Versioned CSV tables with '#' comment headers and 17-significant-digit
// floats, plus small helpers shared by the CLI.

#include <iosfwd>
#include <string>
#include <vector>

namespace hyperlevy::io {

/// %.17g, which round-trips every double.
std::string format_double(double v);

struct Table {
    std::vector<std::string> comments;  // without the leading "# "
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;
};

void write_csv(std::ostream& os, const Table& table);
void write_csv(const std::string& path, const Table& table);

/// Reads a table written by write_csv. Comment lines are kept verbatim.
Table read_csv(std::istream& is);
Table read_csv(const std::string& path);

/// One value per line.
void write_values(const std::string& path, const std::vector<double>& values);
std::vector<double> read_values(const std::string& path);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);

/// UTC timestamp, ISO 8601.
std::string timestamp_utc();

}  // namespace hyperlevy::io
