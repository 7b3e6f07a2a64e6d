#pragma once

// Double-exponential quadrature. Endpoint singularities of algebraic or
// logarithmic type are integrated at full accuracy as long as the integrand is
// evaluated from the exact distance to the endpoint, which is why the
// callbacks receive those distances alongside the abscissa.

#include <cmath>
#include <complex>
#include <numbers>
#include <type_traits>

#include "hyperlevy/accuracy.hpp"
#include "hyperlevy/errors.hpp"

namespace hyperlevy::quad {

template <class T>
struct Result {
    T value{};
    double error = 0.0;
    int levels = 0;
    int evaluations = 0;
};

namespace detail {

inline double magnitude(double v) { return std::fabs(v); }
inline double magnitude(const std::complex<double>& v) { return std::abs(v); }

// Level loop shared by tanh-sinh and exp-sinh. `node(s, f)` returns weight *
// integrand at the transformed abscissa s (zero when the node underflows).
template <class T, class Node>
Result<T> refine(Node&& node, double s_lo, double s_hi, const AccuracyPolicy& policy,
                 int min_level, int max_level, const char* what) {
    double h = 0.5;
    T sum{};
    int evals = 0;
    for (double s = 0.0; s <= s_hi; s += h) {
        sum += node(s);
        ++evals;
    }
    for (double s = -h; s >= s_lo; s -= h) {
        sum += node(s);
        ++evals;
    }
    T estimate = sum * h;
    double error = 0.0;
    for (int level = 1; level <= max_level; ++level) {
        h *= 0.5;
        T added{};
        for (double s = h; s <= s_hi; s += 2.0 * h) {
            added += node(s);
            ++evals;
        }
        for (double s = -h; s >= s_lo; s -= 2.0 * h) {
            added += node(s);
            ++evals;
        }
        sum += added;
        const T next = sum * h;
        error = magnitude(next - estimate);
        estimate = next;
        if (level >= min_level && error <= std::max(policy.abs_tol, policy.rel_tol * magnitude(estimate))) {
            return {estimate, error, level, evals};
        }
    }
    throw ConvergenceError(what, error);
}

}  // namespace detail

/// Integral of f over [a, b]. f is called as f(x, x - a, b - x) with both
/// distances computed without cancellation.
template <class T, class F>
Result<T> tanh_sinh(F&& f, double a, double b, const AccuracyPolicy& policy = {}, int max_level = 11) {
    if (!(b > a)) {
        if (a == b) return {};
        throw DomainError("tanh_sinh requires a <= b");
    }
    const double width = b - a;
    constexpr double half_pi = std::numbers::pi / 2.0;
    auto node = [&](double s) -> T {
        const double e = std::exp(-std::numbers::pi * std::sinh(std::fabs(s)));
        const double near = width * e / (1.0 + e);  // distance to the closer endpoint
        if (!(near > 0.0)) return T{};
        const double far = width / (1.0 + e);
        const double weight = width * half_pi * 2.0 * std::cosh(s) * e / ((1.0 + e) * (1.0 + e));
        if (s >= 0.0) return weight * f(b - near, far, near);
        return weight * f(a + near, near, far);
    };
    return detail::refine<T>(node, -6.2, 6.2, policy, 3, max_level, "tanh-sinh quadrature did not converge");
}

/// Integral of f over [a, inf). f is called as f(x, x - a).
template <class T, class F>
Result<T> exp_sinh(F&& f, double a, const AccuracyPolicy& policy = {}, int max_level = 11) {
    constexpr double half_pi = std::numbers::pi / 2.0;
    auto node = [&](double s) -> T {
        const double offset = std::exp(half_pi * std::sinh(s));
        if (!(offset > 0.0) || std::isinf(offset)) return T{};
        const double weight = half_pi * std::cosh(s) * offset;
        return weight * f(a + offset, offset);
    };
    return detail::refine<T>(node, -6.8, 6.0, policy, 3, max_level, "exp-sinh quadrature did not converge");
}

}  // namespace hyperlevy::quad
