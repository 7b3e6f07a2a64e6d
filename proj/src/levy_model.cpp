#include "hyperlevy/levy_model.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace hyperlevy {

using specfun::log_beta;
using specfun::log_gamma;
using specfun::log_gamma_ratio;

DimensionPair::DimensionPair(int d, int k) : d_(d), k_(k) {
    if (k < 1 || k > d - 1) {
        throw DomainError("pair not admissible: (" + std::to_string(d) + ", " + std::to_string(k) +
                          ") violates 1 <= k <= d-1");
    }
    if (!(2 * k > d + 1)) {
        throw DomainError("pair not admissible: (" + std::to_string(d) + ", " + std::to_string(k) +
                          ") violates 2k > d+1");
    }
}

double log_sphere_surface(int b) {
    if (b < 1) throw DomainError("sphere_surface requires b >= 1");
    return std::log(2.0) + 0.5 * b * std::log(std::numbers::pi) - log_gamma(0.5 * b);
}

double sphere_surface(int b) { return std::exp(log_sphere_surface(b)); }

double nu_density(const DimensionPair& pair, double x) {
    if (!(x > 0.0 && x < 1.0)) return 0.0;
    const double km1 = pair.k() - 1;
    const double lx = std::log(x);
    const double one_minus = -std::expm1((2.0 / km1) * lx);
    const double log_f = log_sphere_surface(pair.codim()) - std::log(km1) - (1.0 + pair.alpha()) * lx +
                         (0.5 * pair.codim() - 1.0) * std::log(one_minus);
    return std::exp(log_f);
}

double log_sigma2(const DimensionPair& pair) {
    // pi^{b/2} Gamma(r/2) / Gamma((k-1)/2), and (k-1)/2 = r/2 + b/2
    const double half_b = 0.5 * pair.codim();
    return half_b * std::log(std::numbers::pi) - log_gamma_ratio(0.5 * pair.r(), half_b);
}

double sigma2(const DimensionPair& pair) { return std::exp(log_sigma2(pair)); }

double cumulant(const DimensionPair& pair, int m) {
    if (m < 2) throw DomainError("cumulant requires m >= 2");
    const double p = 0.5 * ((pair.k() - 1.0) * m - (pair.d() - 1.0));
    return std::exp(log_sphere_surface(pair.codim()) - std::log(2.0) + log_beta(p, 0.5 * pair.codim()));
}

double normalized_density(const DimensionPair& pair, double x) {
    if (!(x > 0.0 && x < 1.0)) return 0.0;
    const double km1 = pair.k() - 1;
    const double half_b = 0.5 * pair.codim();
    const double lx = std::log(x);
    const double one_minus = -std::expm1((2.0 / km1) * lx);
    // (2/(k-1)) x^{-1-alpha} (1 - x^{2/(k-1)})^{b/2-1} / B(r/2, b/2)
    const double log_f = std::log(2.0 / km1) - (1.0 + pair.alpha()) * lx + (half_b - 1.0) * std::log(one_minus) -
                         log_beta(0.5 * pair.r(), half_b);
    return std::exp(log_f);
}

double limit_nu_b_density(int b, double x) {
    if (b < 1) throw DomainError("limit_nu_b_density requires b >= 1");
    if (!(x > 0.0 && x < 1.0)) return 0.0;
    const double lx = std::log(x);
    return std::exp(-log_gamma(0.5 * b) - 2.0 * lx + (0.5 * b - 1.0) * std::log(-lx));
}

double limit_cumulant(int b, int m) {
    if (b < 1) throw DomainError("limit_cumulant requires b >= 1");
    if (m < 2) throw DomainError("limit_cumulant requires m >= 2");
    return std::exp(-0.5 * b * std::log(m - 1.0));
}

std::string MeasureSpec::describe() const {
    switch (kind) {
        case MeasureKind::hyperbolic:
            return "hyperbolic(" + std::to_string(d) + "," + std::to_string(k) + ")";
        case MeasureKind::rescaled:
            return "rescaled(" + std::to_string(d) + "," + std::to_string(k) + ")";
        case MeasureKind::limit_b:
            return "limit_b(" + std::to_string(b) + ")";
    }
    return "unknown";
}

LevyMeasure1D LevyMeasure1D::hyperbolic(const DimensionPair& pair) {
    LevyMeasure1D m;
    m.kind_ = MeasureKind::hyperbolic;
    m.d_ = pair.d();
    m.k_ = pair.k();
    m.b_ = pair.codim();
    m.alpha_ = pair.alpha();
    m.log_coeff_ = log_sphere_surface(m.b_) - std::log(2.0);
    m.second_moment_ = sigma2(pair);
    return m;
}

LevyMeasure1D LevyMeasure1D::rescaled(const DimensionPair& pair) {
    LevyMeasure1D m = hyperbolic(pair);
    m.kind_ = MeasureKind::rescaled;
    // (omega/2) / sigma^2 = 1 / B(r/2, b/2)
    m.log_coeff_ = -log_beta(0.5 * pair.r(), 0.5 * pair.codim());
    m.second_moment_ = 1.0;
    return m;
}

LevyMeasure1D LevyMeasure1D::limit_b(int b) {
    if (b < 1) throw DomainError("limit_b requires b >= 1");
    LevyMeasure1D m;
    m.kind_ = MeasureKind::limit_b;
    m.b_ = b;
    m.alpha_ = 1.0;
    m.log_coeff_ = -log_gamma(0.5 * b);
    m.second_moment_ = 1.0;
    return m;
}

std::optional<DimensionPair> LevyMeasure1D::pair() const {
    if (kind_ == MeasureKind::limit_b) return std::nullopt;
    return DimensionPair(d_, k_);
}

double LevyMeasure1D::density(double x) const {
    switch (kind_) {
        case MeasureKind::hyperbolic:
            return nu_density(DimensionPair(d_, k_), x);
        case MeasureKind::rescaled:
            return normalized_density(DimensionPair(d_, k_), x);
        case MeasureKind::limit_b:
            return limit_nu_b_density(b_, x);
    }
    return 0.0;
}

double LevyMeasure1D::moment(int m) const {
    switch (kind_) {
        case MeasureKind::hyperbolic:
            return cumulant(DimensionPair(d_, k_), m);
        case MeasureKind::rescaled: {
            const DimensionPair pr(d_, k_);
            return cumulant(pr, m) / sigma2(pr);
        }
        case MeasureKind::limit_b:
            return limit_cumulant(b_, m);
    }
    return 0.0;
}

MeasureSpec LevyMeasure1D::spec() const { return {kind_, d_, k_, b_}; }

LevyMeasure1D make_measure(const MeasureSpec& spec) {
    switch (spec.kind) {
        case MeasureKind::hyperbolic:
            return LevyMeasure1D::hyperbolic(DimensionPair(spec.d, spec.k));
        case MeasureKind::rescaled:
            return LevyMeasure1D::rescaled(DimensionPair(spec.d, spec.k));
        case MeasureKind::limit_b:
            return LevyMeasure1D::limit_b(spec.b);
    }
    throw DomainError("unknown measure kind");
}

}  // namespace hyperlevy
