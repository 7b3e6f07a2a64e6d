#pragma once

// Tail functional J(d, k, eps), the threshold statistic d^{-1} r^{d/k} and the
// Gaussian / degenerate classification of admissible sequences.

#include <string>
#include <vector>

#include "hyperlevy/accuracy.hpp"
#include "hyperlevy/kernels.hpp"
#include "hyperlevy/levy_model.hpp"

namespace hyperlevy::regime {

bool admissible(long d, long k);

/// e * pi, the critical value of the threshold statistic.
double e_pi();

/// d^{-1} r^{d/k} with r = 2k - d - 1.
double threshold_stat(const DimensionPair& pair);

/// (sigma eps)^{2/(k-1)} and its complement, both from log space.
struct TailArgument {
    double x;
    double one_minus_x;
    bool beyond_support;  // sigma eps >= 1
};
TailArgument tail_argument(const DimensionPair& pair, double eps);

/// J(d, k, eps) = I((d-k)/2, (2k-d-1)/2; 1 - (sigma eps)^{2/(k-1)}).
double j_tail(const DimensionPair& pair, double eps, const AccuracyPolicy& policy = {});

/// Same quantity as 1 - I((2k-d-1)/2, (d-k)/2; (sigma eps)^{2/(k-1)}).
double j_tail_direct(const DimensionPair& pair, double eps, const AccuracyPolicy& policy = {});

/// 1 - J, the truncated second moment on |x| <= eps of the unit-variance law.
double head_second_moment(const DimensionPair& pair, double eps, const AccuracyPolicy& policy = {});

enum class Rounding { ceil_up, floor_up };

class SequenceFamily {
public:
    enum class Kind { fixed_codim, remark, explicit_list };

    /// d_n = n + b, k_n = n.
    static SequenceFamily fixed_codim(int b);
    /// d_n = d_step * n, k_n = ceil(d_n / 2 + gamma d_n^beta) raised to the
    /// smallest admissible value.
    static SequenceFamily remark(double gamma, double beta, int d_step = 4, Rounding rounding = Rounding::ceil_up);
    /// n indexes the list from 1.
    static SequenceFamily explicit_list(std::vector<DimensionPair> pairs);

    Kind kind() const noexcept { return kind_; }
    int codim() const noexcept { return b_; }
    double gamma() const noexcept { return gamma_; }
    double beta() const noexcept { return beta_; }
    int d_step() const noexcept { return d_step_; }
    Rounding rounding() const noexcept { return rounding_; }
    const std::vector<DimensionPair>& pairs() const noexcept { return pairs_; }

    /// Throws DomainError naming n when the n-th member is not admissible.
    DimensionPair realize(long n) const;
    /// First n >= 1 whose member is admissible, or 0 if none below `limit`.
    long first_admissible(long limit = 1000000) const;

    std::string describe() const;

private:
    SequenceFamily() = default;

    Kind kind_ = Kind::fixed_codim;
    int b_ = 0;
    double gamma_ = 0.0;
    double beta_ = 0.0;
    int d_step_ = 4;
    Rounding rounding_ = Rounding::ceil_up;
    std::vector<DimensionPair> pairs_;
};

enum class Label { gaussian, degenerate, indeterminate };
std::string to_string(Label label);

struct RegimeVerdict {
    Label label = Label::indeterminate;
    double threshold_limit = 0.0;  // limit of d^{-1} r^{d/k}, or the last observed value for lists
    double threshold_lower = 0.0;  // lim inf bound (equal to the limit when it exists)
    double threshold_upper = 0.0;  // lim sup bound
    std::string rationale;
};

struct ClassifyOptions {
    double margin = 0.10;     // strict relative margin for finite lists
    double critical_rel_tol = 1e-12;
};

RegimeVerdict classify_sequence(const SequenceFamily& family, const ClassifyOptions& options = {});

struct ProbeRow {
    long n;
    int d;
    int k;
    int r;
    double sigma;
    double threshold;
    double eps;
    double j;
};

struct ProbeTable {
    std::vector<ProbeRow> rows;  // ordered by (n, eps)
    RegimeVerdict verdict;
};

ProbeTable probe_regime(const SequenceFamily& family, const std::vector<long>& n_grid,
                        const std::vector<double>& eps_list, const AccuracyPolicy& policy = {},
                        kernels::Exec exec = kernels::Exec::serial);

}  // namespace hyperlevy::regime
