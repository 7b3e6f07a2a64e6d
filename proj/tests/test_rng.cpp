#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <set>

#include "hyperlevy/rng.hpp"

using namespace hyperlevy;

// Known-answer vectors distributed with Random123
TEST(Philox, KnownAnswers) {
    EXPECT_EQ(philox4x32_10({0, 0, 0, 0}, {0, 0}),
              (Philox4x32Block{0x6627e8d5u, 0xe169c58du, 0xbc57ac4cu, 0x9b00dbd8u}));
    EXPECT_EQ(philox4x32_10({0xffffffffu, 0xffffffffu, 0xffffffffu, 0xffffffffu}, {0xffffffffu, 0xffffffffu}),
              (Philox4x32Block{0x408f276du, 0x41c83b0eu, 0xa20bc7c6u, 0x6d5451fdu}));
    EXPECT_EQ(philox4x32_10({0x243f6a88u, 0x85a308d3u, 0x13198a2eu, 0x03707344u}, {0xa4093822u, 0x299f31d0u}),
              (Philox4x32Block{0xd16cfe09u, 0x94fdccebu, 0x5001e420u, 0x24126ea1u}));
    static_assert(philox4x32_10({0, 0, 0, 0}, {0, 0})[0] == 0x6627e8d5u);
}

TEST(Philox, StreamLayout) {
    Philox4x32 g(0x1234, 7);
    const auto block0 = philox4x32_10({0, 0, 7, 0}, {0x1234, 0});
    const auto block1 = philox4x32_10({1, 0, 7, 0}, {0x1234, 0});
    for (int i = 0; i < 4; ++i) EXPECT_EQ(g(), block0[i]);
    for (int i = 0; i < 4; ++i) EXPECT_EQ(g(), block1[i]);
}

TEST(Philox, DeterministicAndDistinctStreams) {
    Philox4x32 a(42, 0), b(42, 0), c(42, 1), d(43, 0);
    std::set<std::uint32_t> seen;
    for (int i = 0; i < 1000; ++i) {
        const auto va = a();
        EXPECT_EQ(va, b());
        seen.insert(va);
        seen.insert(c());
        seen.insert(d());
    }
    EXPECT_GT(seen.size(), 2990u);
}

TEST(Philox, DiscardMatchesStepping) {
    for (unsigned long long skip : {0ull, 1ull, 3ull, 4ull, 5ull, 17ull, 1000ull}) {
        Philox4x32 a(9, 2), b(9, 2);
        a();
        b();
        for (unsigned long long i = 0; i < skip; ++i) a();
        b.discard(skip);
        for (int i = 0; i < 9; ++i) EXPECT_EQ(a(), b()) << skip;
    }
}

TEST(Philox, UniformIsOpenAndUnbiased) {
    Philox4x32 g(1, 0);
    double sum = 0, sum2 = 0;
    const int n = 200000;
    for (int i = 0; i < n; ++i) {
        const double u = g.uniform01();
        ASSERT_GT(u, 0.0);
        ASSERT_LT(u, 1.0);
        sum += u;
        sum2 += u * u;
    }
    EXPECT_NEAR(sum / n, 0.5, 5 * std::sqrt(1.0 / 12 / n));
    EXPECT_NEAR(sum2 / n - (sum / n) * (sum / n), 1.0 / 12, 1e-3);
}

TEST(Philox, WorksWithStdDistributions) {
    Philox4x32 g(5, 3);
    std::normal_distribution<double> nd;
    double s = 0;
    for (int i = 0; i < 100000; ++i) s += nd(g);
    EXPECT_NEAR(s / 100000, 0.0, 0.02);
}
