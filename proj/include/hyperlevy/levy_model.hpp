#pragma once

// The Levy measures nu_{d,k} of the hyperbolic k-plane limit laws, their
// unit-variance rescaling, and the fixed-codimension limit measures.
//
// All three measures live on (0, 1). Integrals against them are evaluated in a
// variable where both endpoint singularities become algebraic factors of a
// Beta- or Gamma-type kernel:
//   hyperbolic / rescaled:  x = u^{(k-1)/2},  x^m nu(dx) = C u^{p-1} (1-u)^{b/2-1} du
//                           with p = (m (k-1) - (d-1)) / 2
//   limit_b:                x = exp(-v),      x^m nu(dx) = C e^{-(m-1) v} v^{b/2-1} dv

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <optional>
#include <string>

#include "hyperlevy/accuracy.hpp"
#include "hyperlevy/quadrature.hpp"
#include "hyperlevy/specfun.hpp"

namespace hyperlevy {

class DimensionPair {
public:
    /// 1 <= k <= d - 1 and 2k > d + 1.
    static constexpr bool admissible(long d, long k) noexcept {
        return k >= 1 && k <= d - 1 && 2 * k > d + 1;
    }

    DimensionPair(int d, int k);

    int d() const noexcept { return d_; }
    int k() const noexcept { return k_; }
    /// r = 2k - d - 1 >= 1
    int r() const noexcept { return 2 * k_ - d_ - 1; }
    /// b = d - k >= 1
    int codim() const noexcept { return d_ - k_; }
    /// Small-jump exponent (d - 1) / (k - 1), strictly inside (1, 2).
    double alpha() const noexcept { return double(d_ - 1) / double(k_ - 1); }

    friend bool operator==(const DimensionPair&, const DimensionPair&) = default;

private:
    int d_;
    int k_;
};

double sphere_surface(int b);
double log_sphere_surface(int b);

double nu_density(const DimensionPair& pair, double x);
double sigma2(const DimensionPair& pair);
double log_sigma2(const DimensionPair& pair);

/// kappa_m = int_0^1 x^m nu_{d,k}(dx) = (omega_{d-k} / 2) B(((k-1) m - (d-1)) / 2, (d-k) / 2), m >= 2.
double cumulant(const DimensionPair& pair, int m);

/// f_{d,k}(x) / sigma^2_{d,k}.
double normalized_density(const DimensionPair& pair, double x);

/// Gamma(b/2)^{-1} x^{-2} (-log x)^{(b-2)/2} on (0, 1).
double limit_nu_b_density(int b, double x);

/// (1 / (m - 1))^{b/2}
double limit_cumulant(int b, int m);

enum class MeasureKind { hyperbolic, rescaled, limit_b };

struct MeasureSpec {
    MeasureKind kind = MeasureKind::limit_b;
    int d = 0;
    int k = 0;
    int b = 0;

    std::string describe() const;
};

class LevyMeasure1D {
public:
    static LevyMeasure1D hyperbolic(const DimensionPair& pair);
    static LevyMeasure1D rescaled(const DimensionPair& pair);
    static LevyMeasure1D limit_b(int b);

    MeasureKind kind() const noexcept { return kind_; }
    std::optional<DimensionPair> pair() const;
    int codim() const noexcept { return b_; }

    double density(double x) const;

    /// Exponent alpha with density ~ C x^{-1-alpha} at 0.
    double sing_at_0() const noexcept { return alpha_; }
    /// True when the small-x behaviour carries a (-log x) power (limit_b).
    bool log_correction_at_0() const noexcept { return kind_ == MeasureKind::limit_b; }
    /// Exponent beta with density ~ C' (1 - x)^beta at 1.
    double sing_at_1() const noexcept { return 0.5 * b_ - 1.0; }
    double total_second_moment() const noexcept { return second_moment_; }

    /// Closed form of int x^m nu(dx) for m >= 2.
    double moment(int m) const;

    MeasureSpec spec() const;
    std::string describe() const { return spec().describe(); }

    /// int_{(lo, hi)} x^m h(x) nu(dx) for 0 <= lo < hi <= 1 and a bounded h.
    /// The power x^m is folded into the quadrature kernel, so m may be 0 or 1
    /// when lo > 0.
    template <class T, class H>
    quad::Result<T> integrate_power(int m, H&& h, double lo, double hi,
                                    const AccuracyPolicy& policy = {}) const;

private:
    LevyMeasure1D() = default;

    template <class T, class H>
    quad::Result<T> integrate_beta_kernel(int m, H&& h, double lo, double hi,
                                          const AccuracyPolicy& policy) const;
    template <class T, class H>
    quad::Result<T> integrate_gamma_kernel(int m, H&& h, double lo, double hi,
                                           const AccuracyPolicy& policy) const;

    MeasureKind kind_ = MeasureKind::limit_b;
    int d_ = 0;
    int k_ = 0;
    int b_ = 0;
    double alpha_ = 1.0;
    double log_coeff_ = 0.0;  // log C in the kernel representation
    double second_moment_ = 1.0;
};

LevyMeasure1D make_measure(const MeasureSpec& spec);

// ---------------------------------------------------------------------------

template <class T, class H>
quad::Result<T> LevyMeasure1D::integrate_power(int m, H&& h, double lo, double hi,
                                               const AccuracyPolicy& policy) const {
    lo = std::max(lo, 0.0);
    hi = std::min(hi, 1.0);
    if (!(hi > lo)) return {};
    if (lo == 0.0 && static_cast<double>(m) <= alpha_) {
        throw DomainError("integral of x^" + std::to_string(m) + " against the Levy measure diverges at 0");
    }
    if (kind_ == MeasureKind::limit_b) return integrate_gamma_kernel<T>(m, h, lo, hi, policy);
    return integrate_beta_kernel<T>(m, h, lo, hi, policy);
}

template <class T, class H>
quad::Result<T> LevyMeasure1D::integrate_beta_kernel(int m, H&& h, double lo, double hi,
                                                     const AccuracyPolicy& policy) const {
    const double km1 = k_ - 1;
    const double p = 0.5 * (m * km1 - (d_ - 1));
    const double q = 0.5 * b_;
    const double expo = 2.0 / km1;
    const double u_lo = lo > 0.0 ? std::exp(expo * std::log(lo)) : 0.0;
    const double u_hi = hi < 1.0 ? std::exp(expo * std::log(hi)) : 1.0;
    // 1 - u_hi, exact when hi = 1
    const double gap_hi = hi < 1.0 ? -std::expm1(expo * std::log(hi)) : 0.0;
    if (!(u_hi > u_lo)) return {};

    auto log_kernel = [&](double log_u, double log_1mu) { return (p - 1.0) * log_u + (q - 1.0) * log_1mu; };

    double log_norm;
    if (lo == 0.0 && hi == 1.0) {
        log_norm = specfun::log_beta(p, q);
    } else {
        log_norm = -std::numeric_limits<double>::infinity();
        for (double frac : {0.125, 0.375, 0.625, 0.875}) {
            const double u = u_lo + frac * (u_hi - u_lo);
            log_norm = std::max(log_norm, log_kernel(std::log(u), std::log1p(-u)));
        }
    }

    auto integrand = [&](double u, double from_lo, double from_hi) -> T {
        const double one_minus_u = gap_hi + from_hi;
        const double log_u = (u < 0.5) ? std::log(u) : std::log1p(-one_minus_u);
        const double x = std::exp(0.5 * km1 * log_u);
        (void)from_lo;
        const double w = std::exp(log_kernel(log_u, std::log(one_minus_u)) - log_norm);
        return w * h(x);
    };
    auto res = quad::tanh_sinh<T>(integrand, u_lo, u_hi, policy);
    const double scale = std::exp(log_coeff_ + log_norm);
    res.value *= scale;
    res.error *= scale;
    return res;
}

template <class T, class H>
quad::Result<T> LevyMeasure1D::integrate_gamma_kernel(int m, H&& h, double lo, double hi,
                                                      const AccuracyPolicy& policy) const {
    const double decay = m - 1.0;
    const double shape = 0.5 * b_;
    const double v_lo = hi < 1.0 ? -std::log(hi) : 0.0;
    auto log_kernel = [&](double v) { return -decay * v + (shape - 1.0) * std::log(v); };

    double log_norm;
    if (lo == 0.0 && hi == 1.0) {
        log_norm = specfun::log_gamma(shape) - shape * std::log(decay);
    } else if (lo == 0.0) {
        log_norm = std::max(log_kernel(v_lo + 0.5), log_kernel(v_lo + shape / decay));
    } else {
        const double v_hi = -std::log(lo);
        log_norm = -std::numeric_limits<double>::infinity();
        for (double frac : {0.125, 0.375, 0.625, 0.875}) {
            log_norm = std::max(log_norm, log_kernel(v_lo + frac * (v_hi - v_lo)));
        }
    }

    quad::Result<T> res;
    if (lo == 0.0) {
        auto integrand = [&](double v, double from_lo) -> T {
            const double vv = v_lo == 0.0 ? from_lo : v;
            const double w = std::exp(log_kernel(vv) - log_norm);
            if (w == 0.0) return T{};
            return w * h(std::exp(-vv));
        };
        res = quad::exp_sinh<T>(integrand, v_lo, policy);
    } else {
        auto integrand = [&](double v, double from_lo, double) -> T {
            const double vv = v_lo == 0.0 ? from_lo : v;
            return std::exp(log_kernel(vv) - log_norm) * h(std::exp(-vv));
        };
        res = quad::tanh_sinh<T>(integrand, v_lo, -std::log(lo), policy);
    }
    const double scale = std::exp(log_coeff_ + log_norm);
    res.value *= scale;
    res.error *= scale;
    return res;
}

}  // namespace hyperlevy
