#pragma once

// Approximate simulation of the law with triplet (0, 0, nu): compound Poisson
// jumps above a cutoff delta, compensated by their mean, plus a Gaussian with
// the variance of the jumps below delta.

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "hyperlevy/accuracy.hpp"
#include "hyperlevy/kernels.hpp"
#include "hyperlevy/levy_model.hpp"

namespace hyperlevy::sampler {

enum class Side { below, above };

/// nu((delta, 1)).
double tail_mass(const LevyMeasure1D& measure, double delta, const AccuracyPolicy& policy = {});

/// int x^m nu(dx) over (0, delta] or (delta, 1).
double partial_moment(const LevyMeasure1D& measure, double delta, int m, Side side,
                      const AccuracyPolicy& policy = {});

/// nu((delta, x]) / nu((delta, 1)).
double jump_cdf(const LevyMeasure1D& measure, double delta, double x, const AccuracyPolicy& policy = {});

/// u-quantile of nu restricted to (delta, 1), normalized. Bracketed Newton on
/// the quadrature CDF; the achieved CDF error is below 1e-10.
double inverse_jump_cdf(const LevyMeasure1D& measure, double delta, double u, const AccuracyPolicy& policy = {});

/// Smallest cutoff (to a few digits) whose jump rate does not exceed `rate`.
double suggest_cutoff(const LevyMeasure1D& measure, double rate, const AccuracyPolicy& policy = {});

/// Cached quantile function of the normalized jump law: cubic Hermite x(u)
/// through knots geometric in x (and in 1 - x near 1), tangents from the
/// density.
class JumpQuantileTable {
public:
    JumpQuantileTable(const LevyMeasure1D& measure, double delta, std::size_t knots = 4096,
                      const AccuracyPolicy& policy = {});

    double operator()(double u) const;
    std::size_t knots() const noexcept { return u_.size(); }
    const std::vector<double>& u_knots() const noexcept { return u_; }
    const std::vector<double>& x_knots() const noexcept { return x_; }

private:
    double delta_;
    std::vector<double> u_;
    std::vector<double> slope_;
    std::vector<double> x_;
    std::vector<std::uint32_t> guide_;
};

struct SamplerConfig {
    double delta = 1e-3;
    std::uint64_t seed = 0;
    std::size_t batch_size = 4096;
    std::size_t table_knots = 4096;
    double warn_rate = 1e7;
    double max_rate = 1e10;
    double min_sigma_ratio = 10.0;  // required sigma(delta) / delta
    kernels::Exec exec = kernels::Exec::serial;

    void validate() const;
};

struct SamplerDiagnostics {
    double jump_rate = 0.0;         // lambda(delta)
    double small_jump_var = 0.0;    // varsigma^2(delta)
    double compensator = 0.0;       // M_1(delta)
    double large_jump_m2 = 0.0;     // int_{(delta,1)} x^2 nu
    double total_second_moment = 0.0;
    double sigma_ratio = 0.0;       // varsigma(delta) / delta
    std::size_t sub_batches = 0;
    std::vector<std::string> warnings;
};

struct SampleBatch {
    std::vector<double> values;
    SamplerConfig config;
    MeasureSpec measure;
    SamplerDiagnostics diagnostics;
};

SamplerDiagnostics diagnose(const LevyMeasure1D& measure, const SamplerConfig& config,
                            const AccuracyPolicy& policy = {});

SampleBatch sample(const LevyMeasure1D& measure, const SamplerConfig& config, std::size_t n,
                   const AccuracyPolicy& policy = {});

/// Unbiased k-statistics k_2 .. k_max_order (max_order <= 6).
std::vector<double> empirical_cumulants(const std::vector<double>& values, int max_order);
std::vector<double> empirical_cumulants(const SampleBatch& batch, int max_order);

}  // namespace hyperlevy::sampler
