#pragma once

// Independent reference values. Everything here integrates the raw densities
// in x with Boost's tanh-sinh rule in long double and uses Boost's special
// functions, so nothing is shared with the library's substitutions.

#include <boost/math/quadrature/tanh_sinh.hpp>
#include <boost/math/special_functions/beta.hpp>
#include <boost/math/special_functions/gamma.hpp>

#include <cmath>
#include <limits>

namespace oracle {

using real = long double;

inline real pi() { return 3.141592653589793238462643383279502884L; }

// 1 - x^p given x and xc = 1 - x
inline real one_minus_pow(real x, real xc, real p) {
    if (x < 0.5L) return -std::expm1(p * std::log(x));
    return -std::expm1(p * std::log1p(-xc));
}

inline real omega(int b) { return 2.0L * std::pow(pi(), 0.5L * b) / boost::math::tgamma(0.5L * b); }

/// Raw nu_{d,k}(x) with the complement xc = 1 - x supplied separately.
inline real nu(int d, int k, real x, real xc) {
    const real b = d - k;
    const real alpha = real(d - 1) / real(k - 1);
    const real gap = one_minus_pow(x, xc, 2.0L / (k - 1));
    return omega(d - k) / (k - 1) * std::pow(x, -1.0L - alpha) * std::pow(gap, 0.5L * b - 1.0L);
}

inline real limit_nu(int b, real x, real xc) {
    const real mlog = x < 0.5L ? -std::log(x) : -std::log1p(-xc);
    return std::pow(x, -2.0L) * std::pow(mlog, 0.5L * b - 1.0L) / boost::math::tgamma(0.5L * b);
}

/// int_lo^hi f(x, hi - x) dx. The complement comes from the rule's own
/// abscissa bookkeeping, so it stays exact next to hi.
template <class F>
real integrate(F f, real lo, real hi) {
    boost::math::quadrature::tanh_sinh<real> ts(15);
    auto g = [&](real x, real xc) {
        // xc <= 0 is lo - x, xc > 0 is hi - x
        const real v = f(x, xc > 0 ? xc : hi - x);
        return std::isfinite(v) ? v : 0.0L;
    };
    return ts.integrate(g, lo, hi, std::numeric_limits<real>::epsilon() * 64);
}

/// int_lo^1 x^m nu_{d,k}(dx)
inline real moment(int d, int k, int m, real lo = 0) {
    return integrate([&](real x, real xc) { return std::pow(x, real(m)) * nu(d, k, x, xc); }, lo, 1);
}

/// int_lo^1 x^m nu~^{(b)}(dx)
inline real limit_moment(int b, int m, real lo = 0) {
    return integrate([&](real x, real xc) { return std::pow(x, real(m)) * limit_nu(b, x, xc); }, lo, 1);
}

/// int_0^x u^{p-1} (1-u)^{q-1} du
inline real beta_kernel(real p, real q, real x) {
    if (x <= 0) return 0;
    const real hi = std::min<real>(x, 1);
    return integrate([&](real u, real uc) { return std::pow(u, p - 1) * std::pow(x >= 1 ? uc : 1 - u, q - 1); }, 0, hi);
}

inline real sigma2(int d, int k) { return moment(d, k, 2); }

/// Pre-substitution J: int over (sigma eps, 1) of x^2 nu / sigma^2.
inline real j_tail(int d, int k, real eps) {
    const real s2 = sigma2(d, k);
    const real lo = std::sqrt(s2) * eps;
    if (lo >= 1) return 0;
    return moment(d, k, 2, lo) / s2;
}

}  // namespace oracle
