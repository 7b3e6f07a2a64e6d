#pragma once

// Gamma / Beta / incomplete Beta evaluation and the classical inequalities
// that bound them (Wendel, Stirling, Gamma-ratio, Chebyshev tail bounds).

#include "hyperlevy/accuracy.hpp"

namespace hyperlevy::specfun {

/// log Gamma(x) for x > 0. Lanczos series with an exact product for
/// half-integers up to 171.
double log_gamma(double x);

/// log Gamma(x + a) - log Gamma(x), accurate for large x where the two
/// log-Gamma values are huge and nearly equal.
double log_gamma_ratio(double x, double a);

double log_beta(double p, double q);
double beta(double p, double q);

/// Regularized incomplete Beta I(p, q; x) on the extended domain: 0 below 0,
/// 1 above 1. Modified Lentz continued fraction with the usual symmetry
/// switch at x = (p + 1) / (p + q + 2).
double reg_inc_beta(double p, double q, double x, const AccuracyPolicy& policy = {});

/// B_x(p, q) = I(p, q; x) * B(p, q), x in [0, 1].
double inc_beta(double p, double q, double x, const AccuracyPolicy& policy = {});

struct BetaStats {
    double mean;
    double variance;
};

BetaStats beta_dist_stats(double p, double q);

enum class TailSide { below, above };

struct TailBound {
    TailSide kind;  // below: upper bound on I_x; above: lower bound on I_x
    double bound;
};

/// Chebyshev bound on I_x(p, q) relative to the Beta mean mu = p / (p + q).
/// For x < mu returns an upper bound, for x > mu a lower bound.
TailBound chebyshev_tail_bound(double p, double q, double x);

struct GammaBracket {
    double lower;  // Gamma(p) (p - 1)^q, valid for p >= 1, q >= 0
    double upper;  // Gamma(p) (p + q)^q, valid for p > 0, q >= 0
};

/// Bracket for Gamma(p + q). Requires p >= 1 and q >= 0.
GammaBracket gamma_ratio_bounds(double p, double q);

/// Upper half only (p > 0, q >= 0).
double gamma_ratio_upper(double p, double q);

struct StirlingBracket {
    double lower;
    double upper;
};

/// sqrt(2 pi / z) (z / e)^z <= Gamma(z) <= exp(1 / (12 z)) sqrt(2 pi / z) (z / e)^z, z >= 1.
StirlingBracket stirling_bounds(double z);

/// z^(1 - t) with 0^0 := 1; the lower side of Wendel's inequality.
double wendel_lower(double z, double t);

/// Gamma(z + 1) / Gamma(z + t) with the convention 1 / Gamma(0) := 0.
double wendel_ratio(double z, double t);

}  // namespace hyperlevy::specfun
