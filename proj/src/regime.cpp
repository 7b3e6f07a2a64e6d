#include "hyperlevy/regime.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "hyperlevy/specfun.hpp"

namespace hyperlevy::regime {

namespace {

const double kEPi = std::numbers::e * std::numbers::pi;

std::string fmt(double v) {
    std::ostringstream os;
    os.precision(6);
    os << v;
    return os.str();
}

long min_admissible_k(long d) { return (d + 1) / 2 + 1; }

}  // namespace

bool admissible(long d, long k) { return DimensionPair::admissible(d, k); }

double e_pi() { return kEPi; }

double threshold_stat(const DimensionPair& pair) {
    const double d = pair.d();
    return std::exp(d / pair.k() * std::log(double(pair.r())) - std::log(d));
}

TailArgument tail_argument(const DimensionPair& pair, double eps) {
    if (!(eps > 0.0)) throw DomainError("eps must be positive");
    const double log_arg = 0.5 * log_sigma2(pair) + std::log(eps);
    if (log_arg >= 0.0) return {1.0, 0.0, true};
    const double log_x = (2.0 / (pair.k() - 1)) * log_arg;
    return {std::exp(log_x), -std::expm1(log_x), false};
}

double j_tail(const DimensionPair& pair, double eps, const AccuracyPolicy& policy) {
    const TailArgument a = tail_argument(pair, eps);
    if (a.beyond_support) return 0.0;
    return specfun::reg_inc_beta(0.5 * pair.codim(), 0.5 * pair.r(), a.one_minus_x, policy);
}

double j_tail_direct(const DimensionPair& pair, double eps, const AccuracyPolicy& policy) {
    const TailArgument a = tail_argument(pair, eps);
    if (a.beyond_support) return 0.0;
    return 1.0 - specfun::reg_inc_beta(0.5 * pair.r(), 0.5 * pair.codim(), a.x, policy);
}

double head_second_moment(const DimensionPair& pair, double eps, const AccuracyPolicy& policy) {
    const TailArgument a = tail_argument(pair, eps);
    if (a.beyond_support) return 1.0;
    return specfun::reg_inc_beta(0.5 * pair.r(), 0.5 * pair.codim(), a.x, policy);
}

// ---------------------------------------------------------------------------

SequenceFamily SequenceFamily::fixed_codim(int b) {
    if (b < 1) throw DomainError("fixed_codim requires b >= 1");
    SequenceFamily f;
    f.kind_ = Kind::fixed_codim;
    f.b_ = b;
    return f;
}

SequenceFamily SequenceFamily::remark(double gamma, double beta, int d_step, Rounding rounding) {
    if (!(gamma > 0.0)) throw DomainError("remark family requires gamma > 0");
    if (!(beta > 0.0 && beta < 1.0)) throw DomainError("remark family requires beta in (0, 1)");
    if (d_step < 1) throw DomainError("remark family requires d_step >= 1");
    SequenceFamily f;
    f.kind_ = Kind::remark;
    f.gamma_ = gamma;
    f.beta_ = beta;
    f.d_step_ = d_step;
    f.rounding_ = rounding;
    return f;
}

SequenceFamily SequenceFamily::explicit_list(std::vector<DimensionPair> pairs) {
    if (pairs.empty()) throw DomainError("explicit family must not be empty");
    SequenceFamily f;
    f.kind_ = Kind::explicit_list;
    f.pairs_ = std::move(pairs);
    return f;
}

DimensionPair SequenceFamily::realize(long n) const {
    if (n < 1) throw DomainError("sequence index n must be >= 1");
    auto fail = [n](long d, long k, const char* why) -> DomainError {
        return DomainError("member n=" + std::to_string(n) + " (d=" + std::to_string(d) + ", k=" +
                           std::to_string(k) + ") not admissible: " + why);
    };
    switch (kind_) {
        case Kind::fixed_codim: {
            const long d = n + b_;
            const long k = n;
            if (!admissible(d, k)) throw fail(d, k, "2k > d+1 violated");
            return DimensionPair(int(d), int(k));
        }
        case Kind::remark: {
            const long d = long(d_step_) * n;
            const double target = 0.5 * d + gamma_ * std::pow(double(d), beta_);
            long k = rounding_ == Rounding::ceil_up ? long(std::ceil(target)) : long(std::floor(target));
            k = std::max(k, min_admissible_k(d));
            if (!admissible(d, k)) throw fail(d, k, "k <= d-1 violated");
            return DimensionPair(int(d), int(k));
        }
        case Kind::explicit_list: {
            if (std::size_t(n) > pairs_.size()) {
                throw DomainError("member n=" + std::to_string(n) + " beyond explicit list of length " +
                                  std::to_string(pairs_.size()));
            }
            return pairs_[std::size_t(n) - 1];
        }
    }
    throw DomainError("unknown family kind");
}

long SequenceFamily::first_admissible(long limit) const {
    for (long n = 1; n <= limit; ++n) {
        try {
            realize(n);
            return n;
        } catch (const DomainError&) {
            if (kind_ == Kind::explicit_list) return 0;
        }
    }
    return 0;
}

std::string SequenceFamily::describe() const {
    switch (kind_) {
        case Kind::fixed_codim:
            return "fixed_codim(b=" + std::to_string(b_) + ")";
        case Kind::remark:
            return "remark(gamma=" + fmt(gamma_) + ", beta=" + fmt(beta_) + ", d_n=" + std::to_string(d_step_) +
                   "n" + (rounding_ == Rounding::floor_up ? ", floor" : "") + ")";
        case Kind::explicit_list:
            return "explicit(" + std::to_string(pairs_.size()) + " pairs)";
    }
    return "unknown";
}

std::string to_string(Label label) {
    switch (label) {
        case Label::gaussian:
            return "gaussian";
        case Label::degenerate:
            return "degenerate";
        case Label::indeterminate:
            return "indeterminate";
    }
    return "indeterminate";
}

// ---------------------------------------------------------------------------

namespace {

RegimeVerdict classify_remark(const SequenceFamily& f, const ClassifyOptions& opt) {
    // k/d -> 1/2 and d^{-1} r^{d/k} ~ 4 gamma^2 d^{2 beta - 1}
    const double inf = std::numeric_limits<double>::infinity();
    RegimeVerdict v;
    if (f.beta() < 0.5) {
        v.label = Label::gaussian;
        v.rationale = "k/d -> 1/2 and d^{-1} r^{d/k} ~ 4 gamma^2 d^{2 beta - 1} -> 0 < e pi (beta < 1/2)";
        return v;
    }
    if (f.beta() > 0.5) {
        v.label = Label::degenerate;
        v.threshold_limit = v.threshold_lower = v.threshold_upper = inf;
        v.rationale = "k/d -> 1/2 and d^{-1} r^{d/k} ~ 4 gamma^2 d^{2 beta - 1} -> infinity > e pi (beta > 1/2)";
        return v;
    }
    const double limit = 4.0 * f.gamma() * f.gamma();
    v.threshold_limit = v.threshold_lower = v.threshold_upper = limit;
    const double crit = std::sqrt(kEPi);
    const double two_gamma = 2.0 * f.gamma();
    if (std::fabs(two_gamma - crit) <= opt.critical_rel_tol * crit) {
        v.label = Label::indeterminate;
        v.rationale = "beta = 1/2 with 2 gamma = sqrt(e pi): critical case, neither clause applies";
    } else if (two_gamma < crit) {
        v.label = Label::gaussian;
        v.rationale = "beta = 1/2 and d^{-1} r^{d/k} -> 4 gamma^2 = " + fmt(limit) + " < e pi";
    } else {
        v.label = Label::degenerate;
        v.rationale = "beta = 1/2 and d^{-1} r^{d/k} -> 4 gamma^2 = " + fmt(limit) + " > e pi";
    }
    return v;
}

RegimeVerdict classify_list(const SequenceFamily& f, const ClassifyOptions& opt) {
    const auto& pairs = f.pairs();
    RegimeVerdict v;
    const DimensionPair& last = pairs.back();
    v.threshold_limit = threshold_stat(last);
    v.threshold_lower = v.threshold_upper = v.threshold_limit;
    if (pairs.size() < 4) {
        v.rationale = "explicit list shorter than 4 members cannot certify a limit";
        return v;
    }
    for (std::size_t i = 1; i < pairs.size(); ++i) {
        if (pairs[i].d() <= pairs[i - 1].d()) {
            v.rationale = "explicit list does not have strictly increasing d";
            return v;
        }
    }
    const std::size_t start = pairs.size() / 2;
    double ratio_min = 1.0, ratio_dev = 0.0;
    double t_min = std::numeric_limits<double>::infinity(), t_max = 0.0;
    for (std::size_t i = start; i < pairs.size(); ++i) {
        const double ratio = double(pairs[i].k()) / pairs[i].d();
        ratio_min = std::min(ratio_min, ratio);
        ratio_dev = std::max(ratio_dev, std::fabs(ratio - 0.5));
        const double t = threshold_stat(pairs[i]);
        t_min = std::min(t_min, t);
        t_max = std::max(t_max, t);
    }
    v.threshold_lower = t_min;
    v.threshold_upper = t_max;
    if (ratio_min > 0.5 * (1.0 + opt.margin)) {
        v.label = Label::degenerate;
        v.rationale = "tail of list has k/d >= " + fmt(ratio_min) + ", clear of 1/2 by the margin";
        return v;
    }
    if (ratio_dev <= 0.5 * opt.margin) {
        if (t_max < kEPi / (1.0 + opt.margin)) {
            v.label = Label::gaussian;
            v.rationale = "tail of list has k/d near 1/2 and d^{-1} r^{d/k} <= " + fmt(t_max) + ", below e pi by the margin";
            return v;
        }
        if (t_min > kEPi * (1.0 + opt.margin)) {
            v.label = Label::degenerate;
            v.rationale = "tail of list has k/d near 1/2 and d^{-1} r^{d/k} >= " + fmt(t_min) + ", above e pi by the margin";
            return v;
        }
    }
    v.rationale = "finite list does not satisfy either clause with the required margin";
    return v;
}

}  // namespace

RegimeVerdict classify_sequence(const SequenceFamily& family, const ClassifyOptions& options) {
    switch (family.kind()) {
        case SequenceFamily::Kind::remark:
            return classify_remark(family, options);
        case SequenceFamily::Kind::fixed_codim: {
            RegimeVerdict v;
            v.label = Label::degenerate;
            v.threshold_limit = v.threshold_lower = v.threshold_upper = std::numeric_limits<double>::infinity();
            v.rationale = "fixed codimension: k/d -> 1 > 1/2";
            return v;
        }
        case SequenceFamily::Kind::explicit_list:
            return classify_list(family, options);
    }
    throw DomainError("unknown family kind");
}

ProbeTable probe_regime(const SequenceFamily& family, const std::vector<long>& n_grid,
                        const std::vector<double>& eps_list, const AccuracyPolicy& policy, kernels::Exec exec) {
    if (n_grid.empty()) throw DomainError("probe_regime requires a nonempty n grid");
    if (eps_list.empty()) throw DomainError("probe_regime requires a nonempty eps list");
    for (std::size_t i = 1; i < n_grid.size(); ++i) {
        if (n_grid[i] <= n_grid[i - 1]) throw DomainError("probe_regime requires an ascending n grid");
    }
    for (double e : eps_list) {
        if (!(e > 0.0)) throw DomainError("probe_regime requires positive eps values");
    }
    ProbeTable table;
    table.verdict = classify_sequence(family);
    const std::size_t ne = eps_list.size();
    table.rows.resize(n_grid.size() * ne);
    kernels::parallel_for(n_grid.size(), exec, [&](std::size_t i) {
        const long n = n_grid[i];
        const DimensionPair pair = family.realize(n);
        const double sigma = std::exp(0.5 * log_sigma2(pair));
        const double t = threshold_stat(pair);
        for (std::size_t e = 0; e < ne; ++e) {
            table.rows[i * ne + e] = {n, pair.d(), pair.k(), pair.r(), sigma, t, eps_list[e],
                                      j_tail(pair, eps_list[e], policy)};
        }
    });
    return table;
}

}  // namespace hyperlevy::regime
