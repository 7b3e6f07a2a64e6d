#pragma once

// Characteristic exponent of the law with triplet (0, 0, nu), Fourier
// inversion to a density table, and CDF distances.

#include <complex>
#include <cstddef>
#include <vector>

#include "hyperlevy/accuracy.hpp"
#include "hyperlevy/kernels.hpp"
#include "hyperlevy/levy_model.hpp"

namespace hyperlevy::spectral {

/// Psi(t) = int (e^{itx} - 1 - itx) nu(dx).
std::complex<double> psi(const LevyMeasure1D& measure, double t, const AccuracyPolicy& policy = {});

/// exp(Psi(t)).
std::complex<double> cf(const LevyMeasure1D& measure, double t, const AccuracyPolicy& policy = {});

/// min(2|x|^n / n!, |x|^{n+1} / (n+1)!), which bounds |e^{ix} - sum_{j<n} (ix)^j / j!|.
double taylor_remainder_bound(int n, double x);

struct DensityMeta {
    double mass = 0.0;           // trapezoid mass before renormalization
    double mean = 0.0;
    double variance = 0.0;
    double third_central = 0.0;
    double fourth_central = 0.0;
    double min_before_clip = 0.0;
    double clipped_mass = 0.0;
    double t_max = 0.0;          // last frequency used
    std::size_t cf_points = 0;
    double abs_cf_at_cutoff = 0.0;

    double kappa3() const { return third_central; }
    double kappa4() const { return fourth_central - 3.0 * variance * variance; }
};

struct DensityGrid {
    double x0 = 0.0;
    double step = 1.0;
    std::vector<double> values;
    DensityMeta meta;

    std::size_t size() const { return values.size(); }
    double x(std::size_t i) const { return x0 + static_cast<double>(i) * step; }
};

struct CdfTable {
    double x0 = 0.0;
    double step = 1.0;
    std::vector<double> values;

    std::size_t size() const { return values.size(); }
    double x(std::size_t i) const { return x0 + static_cast<double>(i) * step; }
    /// Linear interpolation, 0 left of the grid and 1 right of it.
    double operator()(double x) const;
};

struct GridSpec {
    double half_width = 12.0;       // in standard deviations around the mean (0)
    std::size_t n_points = 16384;
};

struct InversionOptions {
    double cf_threshold = 1e-12;
    int consecutive_below = 8;
    std::size_t max_cf_points = 1u << 20;
    kernels::Exec exec = kernels::Exec::serial;
};

DensityGrid invert_to_density(const LevyMeasure1D& measure, const GridSpec& grid = {},
                              const InversionOptions& options = {}, const AccuracyPolicy& policy = {});

/// Levy density sampled at x_i = (i + 1) / (n + 1), i < n (no inversion).
DensityGrid tabulate_levy_density(const LevyMeasure1D& measure, std::size_t n_points);

/// Trapezoid cumulative integral of a density grid, normalized to end at 1.
CdfTable to_cdf(const DensityGrid& density);

/// Quadrature of e^{itx} against the tabulated density.
std::complex<double> grid_cf(const DensityGrid& density, double t);

double standard_normal_cdf(double x);

/// sup |F_a - F_b| over the union of both grids.
double ks_distance(const CdfTable& a, const CdfTable& b);
double ks_distance(const DensityGrid& a, const DensityGrid& b);
/// sup |F - Phi| over the grid nodes.
double ks_distance_normal(const CdfTable& a);
double ks_distance_normal(const DensityGrid& a);
/// Kolmogorov-Smirnov statistic of a sample (any order) against a CDF table.
double ks_distance_sample(const CdfTable& cdf, std::vector<double> sample);

}  // namespace hyperlevy::spectral
