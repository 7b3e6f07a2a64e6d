#include <gtest/gtest.h>

#include <omp.h>

#include <atomic>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "hyperlevy/kernels.hpp"

using namespace hyperlevy::kernels;

namespace {

// the sandbox may expose a single core; oversubscribe so the OpenMP path
// really runs on several threads
struct FourThreads : ::testing::Test {
    void SetUp() override {
        saved_ = omp_get_max_threads();
        omp_set_num_threads(4);
    }
    void TearDown() override { omp_set_num_threads(saved_); }
    int saved_ = 1;
};

}  // namespace

TEST_F(FourThreads, ParallelForVisitsEveryIndexOnce) {
    for (Exec e : {Exec::serial, Exec::openmp}) {
        std::vector<std::atomic<int>> hits(1000);
        parallel_for(hits.size(), e, [&](std::size_t i) { hits[i]++; });
        for (auto& h : hits) EXPECT_EQ(h.load(), 1);
    }
    parallel_for(0, Exec::openmp, [](std::size_t) { FAIL(); });
}

TEST_F(FourThreads, SmallestFailingIndexIsReported) {
    for (Exec e : {Exec::serial, Exec::openmp}) {
        try {
            parallel_for(200, e, [](std::size_t i) {
                if (i % 37 == 5) throw std::runtime_error(std::to_string(i));
            });
            FAIL();
        } catch (const std::runtime_error& err) {
            EXPECT_STREQ(err.what(), "5");
        }
    }
}

TEST_F(FourThreads, InversionOfGaussianCf) {
    const double dt = 0.01;
    std::vector<std::complex<double>> phi(1200);
    for (std::size_t m = 0; m < phi.size(); ++m) {
        const double t = m * dt;
        phi[m] = std::exp(-0.5 * t * t);
    }
    std::vector<double> a(801), b(801);
    fourier_inversion(phi, dt, -8.0, 0.02, a, Exec::serial);
    fourier_inversion(phi, dt, -8.0, 0.02, b, Exec::openmp);
    EXPECT_EQ(a, b);
    for (std::size_t j = 0; j < a.size(); ++j) {
        const double x = -8.0 + 0.02 * j;
        EXPECT_NEAR(a[j], std::exp(-0.5 * x * x) / std::sqrt(2 * std::numbers::pi), 1e-12) << x;
    }
}

TEST_F(FourThreads, InversionUsesImaginaryPart) {
    // shifted Gaussian: phi(t) = exp(i mu t - t^2 / 2)
    const double dt = 0.01, mu = 1.5;
    std::vector<std::complex<double>> phi(1200);
    for (std::size_t m = 0; m < phi.size(); ++m) {
        const double t = m * dt;
        phi[m] = std::exp(std::complex<double>(-0.5 * t * t, mu * t));
    }
    std::vector<double> out(3);
    fourier_inversion(phi, dt, mu - 1.0, 1.0, out, Exec::serial);
    EXPECT_NEAR(out[1], 1 / std::sqrt(2 * std::numbers::pi), 1e-12);
    EXPECT_NEAR(out[0], out[2], 1e-13);
}
