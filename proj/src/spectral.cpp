#include "hyperlevy/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

namespace hyperlevy::spectral {

namespace {

using cplx = std::complex<double>;

// (e^{iy} - 1 - iy) / y^2 without cancellation near y = 0.
cplx compensated_kernel(double y) {
    if (std::fabs(y) < 1.0) {
        // (cos y - 1) / y^2 = sum_{n >= 1} (-1)^n y^{2n-2} / (2n)!
        // (sin y - y) / y^2 = sum_{n >= 1} (-1)^n y^{2n-1} / (2n+1)!
        const double y2 = y * y;
        double re_term = -0.5;
        double im_term = -y / 6.0;
        double re = re_term;
        double im = im_term;
        for (int n = 1; n < 10; ++n) {
            re_term *= -y2 / ((2.0 * n + 1.0) * (2.0 * n + 2.0));
            im_term *= -y2 / ((2.0 * n + 2.0) * (2.0 * n + 3.0));
            re += re_term;
            im += im_term;
        }
        return {re, im};
    }
    const double s = std::sin(0.5 * y);
    const double y2 = y * y;
    return {-2.0 * s * s / y2, (std::sin(y) - y) / y2};
}

double trapezoid_sum(const std::vector<double>& v, double step) {
    if (v.empty()) return 0.0;
    double s = 0.5 * (v.front() + v.back());
    for (std::size_t i = 1; i + 1 < v.size(); ++i) s += v[i];
    return s * step;
}

}  // namespace

cplx psi(const LevyMeasure1D& measure, double t, const AccuracyPolicy& policy) {
    if (t == 0.0) return {0.0, 0.0};
    auto res = measure.integrate_power<cplx>(2, [t](double x) { return compensated_kernel(t * x); }, 0.0, 1.0,
                                             policy);
    return t * t * res.value;
}

cplx cf(const LevyMeasure1D& measure, double t, const AccuracyPolicy& policy) {
    return std::exp(psi(measure, t, policy));
}

double taylor_remainder_bound(int n, double x) {
    if (n < 0) throw DomainError("taylor_remainder_bound requires n >= 0");
    const double ax = std::fabs(x);
    if (ax == 0.0) return 0.0;
    const double a = 2.0 * std::exp(n * std::log(ax) - std::lgamma(n + 1.0));
    const double b = std::exp((n + 1) * std::log(ax) - std::lgamma(n + 2.0));
    return std::min(a, b);
}

DensityGrid invert_to_density(const LevyMeasure1D& measure, const GridSpec& grid, const InversionOptions& options,
                              const AccuracyPolicy& policy) {
    if (grid.n_points < 2) throw DomainError("density grid needs at least 2 points");
    if (!(grid.half_width > 0.0)) throw DomainError("density grid half width must be positive");
    if (options.consecutive_below < 1) throw DomainError("consecutive_below must be >= 1");

    const double sd = std::sqrt(measure.total_second_moment());
    const double half = grid.half_width * sd;
    const double dt = std::numbers::pi / (2.0 * half);

    std::vector<cplx> phi{cplx(1.0, 0.0)};
    constexpr std::size_t chunk = 64;
    int below = 0;
    bool done = false;
    double last_abs = 1.0;
    while (!done) {
        const std::size_t start = phi.size();
        if (start > options.max_cf_points) {
            throw DecayError("|phi(t)| still " + std::to_string(last_abs) + " at t = " +
                                 std::to_string(dt * double(start - 1)) + ", above the truncation threshold",
                             last_abs);
        }
        std::vector<cplx> block(chunk);
        kernels::parallel_for(chunk, options.exec, [&](std::size_t i) {
            block[i] = cf(measure, dt * double(start + i), policy);
        });
        for (std::size_t i = 0; i < chunk; ++i) {
            phi.push_back(block[i]);
            last_abs = std::abs(block[i]);
            below = last_abs < options.cf_threshold ? below + 1 : 0;
            if (below >= options.consecutive_below) {
                done = true;
                break;
            }
        }
    }

    DensityGrid out;
    out.x0 = -half;
    out.step = 2.0 * half / double(grid.n_points - 1);
    out.values.assign(grid.n_points, 0.0);
    kernels::fourier_inversion(phi, dt, out.x0, out.step, out.values, options.exec);

    DensityMeta& meta = out.meta;
    meta.t_max = dt * double(phi.size() - 1);
    meta.cf_points = phi.size();
    meta.abs_cf_at_cutoff = last_abs;
    meta.min_before_clip = *std::min_element(out.values.begin(), out.values.end());
    double clipped = 0.0;
    for (double& v : out.values) {
        if (v < 0.0) {
            clipped += -v;
            v = 0.0;
        }
    }
    meta.clipped_mass = clipped * out.step;
    meta.mass = trapezoid_sum(out.values, out.step);
    for (double& v : out.values) v /= meta.mass;

    std::vector<double> w(out.size());
    auto moment = [&](auto&& g) {
        for (std::size_t i = 0; i < out.size(); ++i) w[i] = g(out.x(i)) * out.values[i];
        return trapezoid_sum(w, out.step);
    };
    meta.mean = moment([](double x) { return x; });
    const double mu = meta.mean;
    meta.variance = moment([mu](double x) { return (x - mu) * (x - mu); });
    meta.third_central = moment([mu](double x) { return (x - mu) * (x - mu) * (x - mu); });
    meta.fourth_central = moment([mu](double x) {
        const double c = (x - mu) * (x - mu);
        return c * c;
    });
    return out;
}

DensityGrid tabulate_levy_density(const LevyMeasure1D& measure, std::size_t n_points) {
    if (n_points < 1) throw DomainError("levy density table needs at least 1 point");
    DensityGrid out;
    out.step = 1.0 / double(n_points + 1);
    out.x0 = out.step;
    out.values.resize(n_points);
    for (std::size_t i = 0; i < n_points; ++i) out.values[i] = measure.density(out.x(i));
    out.meta.mass = measure.total_second_moment();
    return out;
}

CdfTable to_cdf(const DensityGrid& density) {
    if (density.size() < 2) throw DomainError("CDF needs a density grid with at least 2 points");
    CdfTable c;
    c.x0 = density.x0;
    c.step = density.step;
    c.values.assign(density.size(), 0.0);
    for (std::size_t i = 1; i < density.size(); ++i) {
        c.values[i] = c.values[i - 1] + 0.5 * density.step * (density.values[i - 1] + density.values[i]);
    }
    const double total = c.values.back();
    if (!(total > 0.0)) throw NumericalError("density grid has no mass");
    for (double& v : c.values) v = std::min(1.0, v / total);
    return c;
}

double CdfTable::operator()(double x) const {
    if (values.empty()) return 0.0;
    if (x < x0) return 0.0;
    const double pos = (x - x0) / step;
    const std::size_t last = values.size() - 1;
    if (pos >= double(last)) return x > this->x(last) ? 1.0 : values[last];
    const std::size_t i = static_cast<std::size_t>(pos);
    const double frac = pos - double(i);
    return values[i] + frac * (values[i + 1] - values[i]);
}

cplx grid_cf(const DensityGrid& density, double t) {
    std::vector<double> re(density.size()), im(density.size());
    for (std::size_t i = 0; i < density.size(); ++i) {
        const double a = t * density.x(i);
        re[i] = std::cos(a) * density.values[i];
        im[i] = std::sin(a) * density.values[i];
    }
    return {trapezoid_sum(re, density.step), trapezoid_sum(im, density.step)};
}

double standard_normal_cdf(double x) { return 0.5 * std::erfc(-x / std::numbers::sqrt2); }

double ks_distance(const CdfTable& a, const CdfTable& b) {
    if (a.size() < 2 || b.size() < 2) throw DomainError("KS distance needs nonempty CDF tables");
    const double a_hi = a.x(a.size() - 1);
    const double b_hi = b.x(b.size() - 1);
    if (a_hi < b.x0 || b_hi < a.x0) throw DomainError("KS distance: CDF grids do not overlap");
    double d = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) d = std::max(d, std::fabs(a.values[i] - b(a.x(i))));
    for (std::size_t i = 0; i < b.size(); ++i) d = std::max(d, std::fabs(b.values[i] - a(b.x(i))));
    return d;
}

double ks_distance(const DensityGrid& a, const DensityGrid& b) { return ks_distance(to_cdf(a), to_cdf(b)); }

double ks_distance_normal(const CdfTable& a) {
    double d = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) d = std::max(d, std::fabs(a.values[i] - standard_normal_cdf(a.x(i))));
    return d;
}

double ks_distance_normal(const DensityGrid& a) { return ks_distance_normal(to_cdf(a)); }

double ks_distance_sample(const CdfTable& cdf, std::vector<double> sorted) {
    if (sorted.empty()) throw DomainError("KS distance needs a nonempty sample");
    std::sort(sorted.begin(), sorted.end());
    const double n = double(sorted.size());
    double d = 0.0;
    for (std::size_t i = 0; i < sorted.size(); ++i) {
        const double f = cdf(sorted[i]);
        d = std::max(d, std::max(double(i + 1) / n - f, f - double(i) / n));
    }
    return d;
}

}  // namespace hyperlevy::spectral
