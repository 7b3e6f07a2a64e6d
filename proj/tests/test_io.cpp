#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <limits>
#include <random>
#include <sstream>

#include "hyperlevy/errors.hpp"
#include "hyperlevy/io.hpp"

using namespace hyperlevy;

TEST(Csv, RoundTripIsExact) {
    io::Table t;
    t.comments = {"hyperlevy test", "config: {\"a\":1}"};
    t.columns = {"x", "pdf"};
    std::mt19937_64 gen(12);
    std::uniform_real_distribution<double> u(-50, 50);
    for (int i = 0; i < 500; ++i) t.rows.push_back({std::exp(u(gen)), -std::exp(u(gen))});
    t.rows.push_back({0.0, -0.0});
    t.rows.push_back({std::numeric_limits<double>::denorm_min(), std::numeric_limits<double>::max()});
    t.rows.push_back({0.1, 1.0 / 3});
    std::stringstream ss;
    io::write_csv(ss, t);
    const auto back = io::read_csv(ss);
    EXPECT_EQ(back.comments, t.comments);
    EXPECT_EQ(back.columns, t.columns);
    ASSERT_EQ(back.rows.size(), t.rows.size());
    for (std::size_t i = 0; i < t.rows.size(); ++i) EXPECT_EQ(back.rows[i], t.rows[i]);
}

TEST(Csv, Format) {
    EXPECT_EQ(io::format_double(0.1), "0.10000000000000001");
    EXPECT_EQ(io::format_double(2.0), "2");
    io::Table t{{"c"}, {"order", "rel_err"}, {{2, 0.5}}};
    std::stringstream ss;
    io::write_csv(ss, t);
    EXPECT_EQ(ss.str(), "# c\norder,rel_err\n2,0.5\n");
}

TEST(Csv, RejectsMalformed) {
    std::stringstream a("x,y\n1,2,3\n");
    EXPECT_THROW(io::read_csv(a), DomainError);
    std::stringstream b("x,y\n1,abc\n");
    EXPECT_THROW(io::read_csv(b), DomainError);
    std::stringstream c("# only comments\n");
    EXPECT_THROW(io::read_csv(c), DomainError);
    EXPECT_THROW(io::read_csv(std::string("/nonexistent/file.csv")), DomainError);
}

TEST(Values, FileRoundTrip) {
    const auto path = (std::filesystem::temp_directory_path() / "hyperlevy_values_test.txt").string();
    std::vector<double> v = {1.5, -2.25e-300, 3.0e300, 1.0 / 7};
    io::write_values(path, v);
    EXPECT_EQ(io::read_values(path), v);
    std::filesystem::remove(path);
}

TEST(Timestamp, Iso8601) {
    const auto ts = io::timestamp_utc();
    ASSERT_EQ(ts.size(), 20u);
    EXPECT_EQ(ts[4], '-');
    EXPECT_EQ(ts[10], 'T');
    EXPECT_EQ(ts.back(), 'Z');
}
