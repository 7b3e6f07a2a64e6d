#include "hyperlevy/sampler.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include "hyperlevy/rng.hpp"

namespace hyperlevy::sampler {

namespace {

void require_cutoff(double delta) {
    if (!(delta > 0.0 && delta < 1.0)) throw DomainError("cutoff delta must lie in (0, 1)");
}

double piece_mass(const LevyMeasure1D& measure, double lo, double hi, const AccuracyPolicy& policy) {
    return measure.integrate_power<double>(0, [](double) { return 1.0; }, lo, hi, policy).value;
}

std::string fmt(double v) {
    std::ostringstream os;
    os.precision(6);
    os << v;
    return os.str();
}

}  // namespace

double tail_mass(const LevyMeasure1D& measure, double delta, const AccuracyPolicy& policy) {
    require_cutoff(delta);
    return piece_mass(measure, delta, 1.0, policy);
}

double partial_moment(const LevyMeasure1D& measure, double delta, int m, Side side, const AccuracyPolicy& policy) {
    require_cutoff(delta);
    if (m < 1) throw DomainError("partial_moment requires m >= 1");
    auto one = [](double) { return 1.0; };
    if (side == Side::above) return measure.integrate_power<double>(m, one, delta, 1.0, policy).value;
    if (double(m) <= measure.sing_at_0()) {
        throw DomainError("partial moment of order " + std::to_string(m) + " below the cutoff diverges (alpha = " +
                          fmt(measure.sing_at_0()) + ")");
    }
    return measure.integrate_power<double>(m, one, 0.0, delta, policy).value;
}

double jump_cdf(const LevyMeasure1D& measure, double delta, double x, const AccuracyPolicy& policy) {
    require_cutoff(delta);
    if (x <= delta) return 0.0;
    if (x >= 1.0) return 1.0;
    const double lambda = tail_mass(measure, delta, policy);
    if (x < 0.5) return piece_mass(measure, delta, x, policy) / lambda;
    return 1.0 - piece_mass(measure, x, 1.0, policy) / lambda;
}

double inverse_jump_cdf(const LevyMeasure1D& measure, double delta, double u, const AccuracyPolicy& policy) {
    require_cutoff(delta);
    if (std::isnan(u)) throw DomainError("inverse_jump_cdf: u is NaN");
    if (u <= 0.0) return delta;
    if (u >= 1.0) return 1.0;
    const double lambda = tail_mass(measure, delta, policy);
    const bool from_top = u > 0.5;
    const double target = from_top ? (1.0 - u) * lambda : u * lambda;
    constexpr double cdf_tol = 1e-12;

    // residual in CDF units, increasing in x
    auto residual = [&](double x) {
        if (from_top) return (target - piece_mass(measure, x, 1.0, policy)) / lambda;
        return (piece_mass(measure, delta, x, policy) - target) / lambda;
    };

    double lo = delta, hi = 1.0;
    const double a = measure.sing_at_0();
    const double w_lo = std::pow(delta, -a);
    double x = std::pow(w_lo + u * (1.0 - w_lo), -1.0 / a);
    x = std::clamp(x, delta, 1.0);
    for (int iter = 0; iter < 200; ++iter) {
        const double g = residual(x);
        if (std::fabs(g) <= cdf_tol) return x;
        if (g > 0.0) hi = x; else lo = x;
        if (hi - lo <= 4.0 * std::numeric_limits<double>::epsilon() * hi) return x;
        const double slope = measure.density(x) / lambda;
        double next = (slope > 0.0 && std::isfinite(slope)) ? x - g / slope : 0.5 * (lo + hi);
        if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
        x = next;
    }
    throw NumericalError("inverse_jump_cdf: bracketed Newton failed to converge at u = " + fmt(u));
}

double suggest_cutoff(const LevyMeasure1D& measure, double rate, const AccuracyPolicy& policy) {
    if (!(rate > 0.0)) throw DomainError("suggest_cutoff requires a positive rate");
    if (tail_mass(measure, 0.5, policy) > rate) return 0.5;
    double hi = std::log(0.5), lo = hi;
    do {
        hi = lo;
        lo -= std::log(10.0);
        if (lo < std::log(1e-200)) return std::exp(hi);
    } while (tail_mass(measure, std::exp(lo), policy) <= rate);
    for (int i = 0; i < 60; ++i) {
        const double mid = 0.5 * (lo + hi);
        if (tail_mass(measure, std::exp(mid), policy) > rate) lo = mid; else hi = mid;
    }
    return std::exp(hi);
}

// ---------------------------------------------------------------------------

JumpQuantileTable::JumpQuantileTable(const LevyMeasure1D& measure, double delta, std::size_t knots,
                                     const AccuracyPolicy& policy)
    : delta_(delta) {
    require_cutoff(delta);
    if (knots < 16) throw DomainError("quantile table needs at least 16 knots");

    // Geometric in x up to 1/2 (the small-jump end carries most of the
    // mass), geometric in 1 - x beyond (resolves the factor at x = 1).
    std::vector<double> xs;
    constexpr double mid = 0.5;
    constexpr double min_gap = 1e-10;
    const std::size_t n_top = knots / 4;
    if (delta < mid) {
        const std::size_t n_low = knots - n_top;
        const double ratio = std::log(mid / delta);
        for (std::size_t i = 0; i < n_low; ++i) xs.push_back(delta * std::exp(ratio * double(i) / double(n_low)));
    }
    const double gap0 = 1.0 - std::max(delta, mid);
    const double gratio = std::log(min_gap / gap0);
    for (std::size_t i = 0; i < n_top; ++i) xs.push_back(1.0 - gap0 * std::exp(gratio * double(i) / double(n_top - 1)));
    xs.push_back(1.0);

    std::vector<double> cum(xs.size(), 0.0);
    for (std::size_t i = 1; i < xs.size(); ++i) cum[i] = cum[i - 1] + piece_mass(measure, xs[i - 1], xs[i], policy);
    const double total = cum.back();
    if (!(total > 0.0)) throw NumericalError("quantile table: jump law has no mass above the cutoff");

    for (std::size_t i = 0; i < xs.size(); ++i) {
        const double u = (i + 1 == xs.size()) ? 1.0 : cum[i] / total;
        if (!u_.empty() && !(u > u_.back())) continue;
        u_.push_back(u);
        x_.push_back(xs[i]);
    }

    // Hermite tangents dx/du = total / nu(x) from the density itself; the
    // secant stands in where the density vanishes or blows up, and the
    // Fritsch-Carlson limiter keeps each piece monotone.
    const std::size_t n = u_.size();
    std::vector<double> secant(n - 1);
    for (std::size_t i = 0; i + 1 < n; ++i) secant[i] = (x_[i + 1] - x_[i]) / (u_[i + 1] - u_[i]);
    slope_.assign(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        const double dens = measure.density(x_[i]);
        const double exact = total / dens;
        if (dens > 0.0 && std::isfinite(exact)) {
            slope_[i] = exact;
        } else {
            slope_[i] = i == 0 ? secant[0] : secant[i - 1];
        }
    }
    for (std::size_t i = 0; i + 1 < n; ++i) {
        const double a = slope_[i] / secant[i];
        const double b = slope_[i + 1] / secant[i];
        const double s = a * a + b * b;
        if (s > 9.0) {
            const double tau = 3.0 / std::sqrt(s);
            slope_[i] = tau * a * secant[i];
            slope_[i + 1] = tau * b * secant[i];
        }
    }

    const std::size_t cells = 4 * n;
    guide_.resize(cells + 1);
    std::size_t k = 0;
    for (std::size_t j = 0; j <= cells; ++j) {
        const double u = double(j) / double(cells);
        while (k + 2 < n && u_[k + 1] <= u) ++k;
        guide_[j] = std::uint32_t(k);
    }
}

double JumpQuantileTable::operator()(double u) const {
    if (!(u > 0.0)) return delta_;
    if (!(u < 1.0)) return 1.0;
    const std::size_t cells = guide_.size() - 1;
    std::size_t i = guide_[std::size_t(u * double(cells))];
    while (i + 2 < u_.size() && u_[i + 1] <= u) ++i;
    const double h = u_[i + 1] - u_[i];
    const double t = (u - u_[i]) / h;
    const double t2 = t * t, t3 = t2 * t;
    const double x = (2 * t3 - 3 * t2 + 1) * x_[i] + (t3 - 2 * t2 + t) * h * slope_[i] + (-2 * t3 + 3 * t2) * x_[i + 1] +
                     (t3 - t2) * h * slope_[i + 1];
    return std::clamp(x, x_[i], x_[i + 1]);
}

// ---------------------------------------------------------------------------

void SamplerConfig::validate() const {
    require_cutoff(delta);
    if (batch_size < 1) throw ConfigError("batch_size must be >= 1");
    if (table_knots < 16) throw ConfigError("table_knots must be >= 16");
    if (!(warn_rate > 0.0) || !(max_rate > 0.0)) throw ConfigError("rate limits must be positive");
}

SamplerDiagnostics diagnose(const LevyMeasure1D& measure, const SamplerConfig& config, const AccuracyPolicy& policy) {
    config.validate();
    SamplerDiagnostics d;
    d.jump_rate = tail_mass(measure, config.delta, policy);
    d.small_jump_var = partial_moment(measure, config.delta, 2, Side::below, policy);
    d.compensator = partial_moment(measure, config.delta, 1, Side::above, policy);
    d.large_jump_m2 = partial_moment(measure, config.delta, 2, Side::above, policy);
    d.total_second_moment = measure.total_second_moment();
    d.sigma_ratio = std::sqrt(d.small_jump_var) / config.delta;
    return d;
}

SampleBatch sample(const LevyMeasure1D& measure, const SamplerConfig& config, std::size_t n,
                   const AccuracyPolicy& policy) {
    if (n < 1) throw DomainError("sample size N must be >= 1");
    SampleBatch batch;
    batch.config = config;
    batch.measure = measure.spec();
    batch.diagnostics = diagnose(measure, config, policy);
    SamplerDiagnostics& diag = batch.diagnostics;

    if (diag.jump_rate > config.max_rate) {
        throw ConfigError("jump rate lambda(delta) = " + fmt(diag.jump_rate) + " is too large to simulate; use delta >= " +
                          fmt(suggest_cutoff(measure, config.warn_rate, policy)));
    }
    if (diag.sigma_ratio < config.min_sigma_ratio) {
        throw ConfigError("Gaussian small-jump proxy not justified: sigma(delta)/delta = " + fmt(diag.sigma_ratio) +
                          " < " + fmt(config.min_sigma_ratio));
    }
    if (diag.jump_rate > config.warn_rate) {
        diag.warnings.push_back("jump rate lambda(delta) = " + fmt(diag.jump_rate) + " exceeds " +
                                fmt(config.warn_rate) + " per draw");
    }

    const JumpQuantileTable table(measure, config.delta, config.table_knots, policy);
    const double lambda = diag.jump_rate;
    const double comp = diag.compensator;
    const double sd = std::sqrt(diag.small_jump_var);

    batch.values.assign(n, 0.0);
    const std::size_t nb = (n + config.batch_size - 1) / config.batch_size;
    diag.sub_batches = nb;
    kernels::parallel_for(nb, config.exec, [&](std::size_t s) {
        Philox4x32 engine(config.seed, s);
        std::poisson_distribution<long long> jumps(lambda);
        std::normal_distribution<double> gauss(0.0, 1.0);
        const std::size_t begin = s * config.batch_size;
        const std::size_t end = std::min(n, begin + config.batch_size);
        for (std::size_t i = begin; i < end; ++i) {
            const long long count = jumps(engine);
            double acc = 0.0;
            for (long long j = 0; j < count; ++j) acc += table(engine.uniform01());
            batch.values[i] = (acc - comp) + sd * gauss(engine);
        }
    });
    return batch;
}

// ---------------------------------------------------------------------------

std::vector<double> empirical_cumulants(const std::vector<double>& values, int max_order) {
    if (max_order < 2 || max_order > 6) throw DomainError("empirical_cumulants supports orders 2..6");
    if (values.empty()) throw DomainError("empirical_cumulants needs a nonempty batch");
    const long double n = values.size();
    if (values.size() <= std::size_t(max_order)) {
        throw DomainError("k-statistic of order " + std::to_string(max_order) + " needs more than " +
                          std::to_string(max_order) + " values");
    }
    long double mean = 0.0L;
    for (double v : values) mean += v;
    mean /= n;
    long double m2 = 0, m3 = 0, m4 = 0, m5 = 0, m6 = 0;
    for (double v : values) {
        const long double c = v - mean, c2 = c * c, c3 = c2 * c;
        m2 += c2;
        m3 += c3;
        m4 += c2 * c2;
        m5 += c2 * c3;
        m6 += c3 * c3;
    }
    m2 /= n;
    m3 /= n;
    m4 /= n;
    m5 /= n;
    m6 /= n;

    std::vector<double> k;
    k.push_back(double(n / (n - 1) * m2));
    if (max_order >= 3) k.push_back(double(n * n / ((n - 1) * (n - 2)) * m3));
    if (max_order >= 4) {
        k.push_back(double(n * n * ((n + 1) * m4 - 3 * (n - 1) * m2 * m2) / ((n - 1) * (n - 2) * (n - 3))));
    }
    if (max_order >= 5) {
        k.push_back(double(n * n * n * ((n + 5) * m5 - 10 * (n - 1) * m2 * m3) /
                           ((n - 1) * (n - 2) * (n - 3) * (n - 4))));
    }
    if (max_order >= 6) {
        const long double num = (n + 1) * (n * n + 15 * n - 4) * m6 - 15 * (n - 1) * (n - 1) * (n + 4) * m2 * m4 -
                                10 * (n - 1) * (n * n - n + 4) * m3 * m3 + 30 * n * (n - 1) * (n - 2) * m2 * m2 * m2;
        k.push_back(double(n * n * num / ((n - 1) * (n - 2) * (n - 3) * (n - 4) * (n - 5))));
    }
    return k;
}

std::vector<double> empirical_cumulants(const SampleBatch& batch, int max_order) {
    return empirical_cumulants(batch.values, max_order);
}

}  // namespace hyperlevy::sampler
