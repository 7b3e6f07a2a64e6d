#include <gtest/gtest.h>

#include <boost/math/special_functions/beta.hpp>
#include <boost/math/special_functions/gamma.hpp>

#include <cmath>
#include <numbers>
#include <random>

#include "hyperlevy/specfun.hpp"
#include "oracles/quadrature_oracle.hpp"

using namespace hyperlevy;
using namespace hyperlevy::specfun;
using std::numbers::pi;

TEST(LogGamma, KnownValues) {
    EXPECT_EQ(log_gamma(1.0), 0.0);
    EXPECT_NEAR(log_gamma(0.5), 0.5 * std::log(pi), 1e-15);
    EXPECT_NEAR(log_gamma(6.0), std::log(120.0), 1e-14);
    EXPECT_NEAR(log_gamma(2.0), 0.0, 1e-15);
}

TEST(LogGamma, MatchesBoost) {
    for (double x = 0.01; x < 2000.0; x *= 1.07) {
        const double ref = boost::math::lgamma(x);
        EXPECT_NEAR(log_gamma(x), ref, 1e-13 * std::max(1.0, std::fabs(ref))) << x;
    }
    for (int n = 1; n < 400; ++n) {
        const double x = n + 0.5;
        const double ref = boost::math::lgamma(x);
        EXPECT_NEAR(log_gamma(x), ref, 1e-14 * std::max(1.0, std::fabs(ref))) << x;
    }
}

TEST(LogGamma, RejectsNonpositive) {
    EXPECT_THROW(log_gamma(0.0), DomainError);
    EXPECT_THROW(log_gamma(-1.5), DomainError);
    EXPECT_THROW(log_gamma(std::nan("")), DomainError);
}

TEST(LogGamma, ConvexBeyondMinimum) {
    double prev2 = log_gamma(1.47), prev1 = log_gamma(1.48);
    EXPECT_GT(prev1, prev2);
    for (double x = 1.49; x < 50.0; x += 0.01) {
        const double cur = log_gamma(x);
        EXPECT_GE(cur - 2 * prev1 + prev2, -1e-12) << x;
        EXPECT_GT(cur, prev1);
        prev2 = prev1;
        prev1 = cur;
    }
}

TEST(Beta, KnownValues) {
    EXPECT_NEAR(beta(0.5, 0.5), pi, 1e-14);
    EXPECT_NEAR(beta(1, 1), 1.0, 1e-15);
    EXPECT_NEAR(beta(2, 3), 1.0 / 12.0, 1e-16);
    EXPECT_NEAR(beta(2, 3), double(oracle::beta_kernel(2, 3, 1)), 1e-15);
}

TEST(Beta, SymmetricAndDecreasing) {
    std::mt19937_64 gen(1);
    std::uniform_real_distribution<double> u(0.1, 50.0);
    for (int i = 0; i < 2000; ++i) {
        const double p = u(gen), q = u(gen);
        EXPECT_NEAR(beta(p, q), beta(q, p), 1e-12 * beta(p, q));
        EXPECT_NEAR(log_beta(p, q), std::log(boost::math::beta(p, q)), 1e-12 * std::max(1.0, std::fabs(log_beta(p, q))));
        EXPECT_GT(beta(p, q), beta(p + 0.01, q));
        EXPECT_GT(beta(p, q), beta(p, q + 0.01));
    }
}

TEST(Beta, RejectsNonpositive) {
    EXPECT_THROW(beta(0, 1), DomainError);
    EXPECT_THROW(beta(1, -2), DomainError);
    EXPECT_THROW(beta_dist_stats(-1, 1), DomainError);
}

TEST(RegIncBeta, Examples) {
    EXPECT_EQ(reg_inc_beta(2.5, 3.5, 0.0), 0.0);
    EXPECT_EQ(reg_inc_beta(0.3, 7, 1.0), 1.0);
    for (double x = 0; x <= 1.0; x += 0.0625) EXPECT_NEAR(reg_inc_beta(1, 1, x), x, 1e-15);
    const double x = 0.177245;
    EXPECT_NEAR(reg_inc_beta(0.5, 0.5, x), 2 / pi * std::asin(std::sqrt(x)), 1e-14);
    EXPECT_NEAR(reg_inc_beta(0.5, 0.5, x), 0.2766449, 1e-7);
}

TEST(RegIncBeta, ExtendedDomain) {
    EXPECT_EQ(reg_inc_beta(2, 3, -0.5), 0.0);
    EXPECT_EQ(reg_inc_beta(2, 3, -1e-300), 0.0);
    EXPECT_EQ(reg_inc_beta(2, 3, 1.5), 1.0);
    EXPECT_EQ(reg_inc_beta(2, 3, 1e300), 1.0);
    EXPECT_THROW(reg_inc_beta(0, 3, 0.5), DomainError);
    EXPECT_THROW(reg_inc_beta(2, 3, std::nan("")), DomainError);
}

TEST(RegIncBeta, IterationCapReported) {
    AccuracyPolicy tight;
    tight.max_iter = 2;
    EXPECT_THROW(reg_inc_beta(300, 200, 0.6, tight), ConvergenceError);
}

TEST(RegIncBeta, ReflectionAndMonotonicity) {
    std::mt19937_64 gen(2);
    std::uniform_real_distribution<double> par(0.1, 60.0), ux(0.0, 1.0);
    for (int i = 0; i < 3000; ++i) {
        const double p = par(gen), q = par(gen), x = ux(gen);
        EXPECT_NEAR(reg_inc_beta(p, q, x) + reg_inc_beta(q, p, 1 - x), 1.0, 1e-12);
    }
    for (double p : {0.5, 1.5, 7.0, 40.0}) {
        for (double q : {0.5, 3.0, 25.0}) {
            double prev = 0;
            for (double x = 0; x <= 1.0; x += 1.0 / 512) {
                const double v = reg_inc_beta(p, q, x);
                EXPECT_GE(v, prev);
                prev = v;
            }
        }
    }
}

TEST(RegIncBeta, AgreesWithBoostAndQuadrature) {
    std::mt19937_64 gen(3);
    std::uniform_real_distribution<double> par(0.5, 40.0), ux(0.0, 1.0);
    for (int i = 0; i < 4000; ++i) {
        const double p = par(gen), q = par(gen), x = ux(gen);
        EXPECT_NEAR(reg_inc_beta(p, q, x), boost::math::ibeta(p, q, x), 1e-10) << p << " " << q << " " << x;
    }
    for (int i = 0; i < 40; ++i) {
        const double p = par(gen), q = par(gen), x = ux(gen);
        const double ref = double(oracle::beta_kernel(p, q, x) / oracle::beta_kernel(p, q, 1));
        EXPECT_NEAR(reg_inc_beta(p, q, x), ref, 1e-10) << p << " " << q << " " << x;
    }
}

TEST(IncBeta, Examples) {
    EXPECT_NEAR(inc_beta(2.5, 1.5, 1.0), beta(2.5, 1.5), 1e-15);
    for (double x = 0; x <= 1.0; x += 0.125) EXPECT_NEAR(inc_beta(2, 1, x), x * x / 2, 4e-16);
    EXPECT_NEAR(inc_beta(0.5, 0.5, 0.5), pi / 2, 1e-14);
    EXPECT_THROW(inc_beta(1, 1, 1.5), DomainError);
}

TEST(BetaStats, Examples) {
    auto s = beta_dist_stats(1, 1);
    EXPECT_DOUBLE_EQ(s.mean, 0.5);
    EXPECT_DOUBLE_EQ(s.variance, 1.0 / 12);
    s = beta_dist_stats(0.5, 0.5);
    EXPECT_DOUBLE_EQ(s.mean, 0.5);
    EXPECT_DOUBLE_EQ(s.variance, 0.125);
    // arcsine moments by quadrature
    const double m1 = double(oracle::integrate([](auto u, auto uc) { return u / std::sqrt(u * uc) / oracle::pi(); }, 0, 1));
    const double m2 = double(oracle::integrate([](auto u, auto uc) { return u * u / std::sqrt(u * uc) / oracle::pi(); }, 0, 1));
    EXPECT_NEAR(m1, s.mean, 1e-14);
    EXPECT_NEAR(m2 - m1 * m1, s.variance, 1e-14);
    for (double p : {0.3, 2.0, 17.5}) EXPECT_EQ(beta_dist_stats(p, p).mean, 0.5);
}

TEST(Chebyshev, Examples) {
    auto b = chebyshev_tail_bound(1, 1, 0.25);
    EXPECT_EQ(b.kind, TailSide::below);
    EXPECT_DOUBLE_EQ(b.bound, 4.0);
    EXPECT_GE(b.bound, reg_inc_beta(1, 1, 0.25));
    b = chebyshev_tail_bound(100, 100, 0.45);
    EXPECT_EQ(b.kind, TailSide::below);
    EXPECT_NEAR(b.bound, 1.0, 1e-12);
    EXPECT_THROW(chebyshev_tail_bound(1, 1, 0.5), DomainError);
}

TEST(Chebyshev, BoundsHoldOnSweep) {
    std::mt19937_64 gen(4);
    std::uniform_real_distribution<double> par(0.1, 80.0), ux(-0.2, 1.2);
    for (int i = 0; i < 5000; ++i) {
        const double p = par(gen), q = par(gen), x = ux(gen);
        if (x == p / (p + q)) continue;
        const auto b = chebyshev_tail_bound(p, q, x);
        const double v = reg_inc_beta(p, q, x);
        if (b.kind == TailSide::below) {
            EXPECT_LE(v, b.bound + 1e-12);
        } else {
            EXPECT_GE(v, b.bound - 1e-12);
        }
    }
}

TEST(GammaRatio, Examples) {
    auto g = gamma_ratio_bounds(2, 1);
    EXPECT_DOUBLE_EQ(g.lower, 1.0);
    EXPECT_DOUBLE_EQ(g.upper, 3.0);
    g = gamma_ratio_bounds(3.7, 0);
    EXPECT_DOUBLE_EQ(g.lower, std::tgamma(3.7));
    EXPECT_DOUBLE_EQ(g.upper, std::tgamma(3.7));
    g = gamma_ratio_bounds(10, 3);
    EXPECT_NEAR(g.lower, 729 * 362880.0, 1e-6);
    EXPECT_NEAR(g.upper, 2197 * 362880.0, 1e-6);
    EXPECT_LE(g.lower, 10 * 11 * 12 * 362880.0);
    EXPECT_GE(g.upper, 10 * 11 * 12 * 362880.0);
    EXPECT_THROW(gamma_ratio_bounds(0.5, 1), DomainError);
    EXPECT_THROW(gamma_ratio_bounds(2, -1), DomainError);
    EXPECT_THROW(gamma_ratio_upper(0, 1), DomainError);
}

TEST(GammaRatio, BracketsOnSweep) {
    for (double p = 1.0; p < 40; p += 0.37) {
        for (double q = 0.0; q < 20; q += 0.29) {
            const auto g = gamma_ratio_bounds(p, q);
            const double target = boost::math::tgamma(p + q);
            EXPECT_LE(g.lower, target * (1 + 1e-12));
            EXPECT_GE(g.upper, target * (1 - 1e-12));
        }
    }
    for (double p = 0.05; p < 1; p += 0.05) {
        for (double q = 0.05; q < 5; q += 0.2) EXPECT_GE(gamma_ratio_upper(p, q), boost::math::tgamma(p + q) * (1 - 1e-12));
    }
}

TEST(Stirling, Examples) {
    auto s = stirling_bounds(1);
    EXPECT_NEAR(s.lower, std::sqrt(2 * pi) / std::numbers::e, 1e-15);
    EXPECT_NEAR(s.lower, 0.9221, 1e-4);
    EXPECT_NEAR(s.upper, 1.0023, 1e-4);
    s = stirling_bounds(10);
    EXPECT_LE(s.lower, 362880.0);
    EXPECT_GE(s.upper, 362880.0);
    const auto big = stirling_bounds(100);
    EXPECT_NEAR(big.upper / big.lower, std::exp(1.0 / 1200), 1e-14);
    EXPECT_THROW(stirling_bounds(0.5), DomainError);
    for (double z = 1; z < 150; z += 0.13) {
        const auto b = stirling_bounds(z);
        const double g = boost::math::tgamma(z);
        EXPECT_LE(b.lower, g * (1 + 1e-12)) << z;
        EXPECT_GE(b.upper, g * (1 - 1e-12)) << z;
    }
}

TEST(Wendel, Examples) {
    for (double z : {0.0, 0.5, 3.0, 20.0}) {
        EXPECT_DOUBLE_EQ(wendel_lower(z, 1), 1.0);
        EXPECT_NEAR(wendel_ratio(z, 1), 1.0, 1e-14);
        EXPECT_DOUBLE_EQ(wendel_lower(z, 0), z);
        EXPECT_NEAR(wendel_ratio(z, 0), z, 1e-13 * std::max(1.0, z));
    }
    EXPECT_DOUBLE_EQ(wendel_lower(4, 0.5), 2.0);
    EXPECT_NEAR(wendel_ratio(4, 0.5), 24.0 / (105.0 / 16.0 * std::sqrt(pi)), 1e-13);
    EXPECT_NEAR(wendel_ratio(4, 0.5), 2.0633, 1e-4);
    EXPECT_EQ(wendel_lower(0, 0), 0.0);
    EXPECT_EQ(wendel_ratio(0, 0), 0.0);
}

TEST(Wendel, HoldsOnSweep) {
    for (double z = 0; z < 60; z += 0.11) {
        for (double t = 0; t <= 1.0; t += 0.02) {
            const double ref = (z == 0 && t == 0) ? 0.0 : boost::math::tgamma_ratio(z + 1, z + t);
            EXPECT_LE(wendel_lower(z, t), ref * (1 + 1e-12) + 1e-300) << z << " " << t;
        }
    }
}

// p_n -> infinity style sequences drive I towards 1, 1 and 0
TEST(IncBetaLimits, TrendsOfTheThreeClauses) {
    auto i_a = [](int n) {
        const double p = 1.0, q = n;  // mu = 1 / (n + 1)
        return reg_inc_beta(p, q, std::sqrt(1.0 / (n + 1)));
    };
    auto i_b = [](int n) {
        const double p = n, q = n;
        return reg_inc_beta(p, q, 0.6);
    };
    auto i_c = [](int n) {
        const double p = n, q = 2.0 * n;
        return reg_inc_beta(p, q, 0.8 / 3.0);
    };
    EXPECT_LT(1 - i_a(1000), 0.5 * (1 - i_a(4)));
    EXPECT_LT(1 - i_b(1000), 0.5 * (1 - i_b(4)));
    EXPECT_LT(i_c(1000), 0.5 * i_c(4));
    EXPECT_GT(i_a(100000), 1 - 1e-2);
    EXPECT_GT(i_b(1000), 1 - 1e-9);
    EXPECT_LT(i_c(1000), 1e-9);
}
