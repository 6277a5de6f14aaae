#pragma once

#include <cstdint>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

#include "lacuna/errors.hpp"

namespace lacuna {

// log applied `order` times / exp applied `order` times.
double iterated_log(int order, double x);
double iterated_exp(int order, double x);

// Shift constant for the iterated-log family of the given order:
// the smallest c with iterated_log(order, 1 + c) == 1, i.e. exp^(order)(1) - 1.
// Guarantees iterated_log(order, j + c) >= 1 for every j >= 1, so the weights
// below start at exactly 1 and the root bound M_j^(1/j) >= j holds from j = 1.
double ilog_shift(int order);

// A weight sequence M_j given through its natural logs.  Two backings:
//   - the iterated-log family  M_j = (j * log^(k)(j + c_k))^j,  k = 1..3
//   - a finite user table of log M_j values.
// log values for the family are memoized (dense table, grown on demand) since
// scans touch the same indices millions of times.
class WeightSequence {
  public:
    static constexpr long long kIlogJMax = 1LL << 62;
    static constexpr int kMaxOrder = 3;

    static WeightSequence iterated_log_family(int order);
    static WeightSequence custom(std::vector<double> log_values, long long j_min = 1);

    bool is_custom() const { return order_ == 0; }
    int order() const { return order_; }  // 0 for custom tables
    long long j_min() const { return j_min_; }
    long long j_max() const { return j_max_; }
    double shift() const { return shift_; }
    const std::string& label() const { return label_; }
    void set_label(std::string label) { label_ = std::move(label); }

    // ln M_j.  Throws ConfigError outside [j_min, j_max].
    double log_weight(long long j) const;

    // Dense block [j_lo, j_hi] of ln M_j; one lock, then plain reads.
    std::vector<double> log_weights(long long j_lo, long long j_hi) const;

    // ln M_j / j, the log of the j-th root.
    double log_root(long long j) const { return log_weight(j) / static_cast<double>(j); }

  private:
    WeightSequence() = default;
    double compute_ilog(long long j) const;

    int order_ = 0;
    long long j_min_ = 1;
    long long j_max_ = 0;
    double shift_ = 0.0;
    std::string label_;
    std::vector<double> table_;  // custom backing

    static constexpr long long kCacheCap = 1LL << 20;
    mutable std::mutex cache_mu_;
    mutable std::vector<double> cache_;  // family memo, index j - j_min

  public:
    WeightSequence(const WeightSequence& o);
    WeightSequence& operator=(const WeightSequence& o);
    WeightSequence(WeightSequence&&) noexcept;
    WeightSequence& operator=(WeightSequence&&) noexcept;
};

// One admissibility check over a j-window.
struct SequenceCheckReport {
    struct Item {
        bool pass = true;
        long long first_violation = -1;  // smallest offending j, -1 if none
    };
    Item increasing;     // log M_{j+1} > log M_j
    Item log_convex;     // log M_{j-1} + log M_{j+1} >= 2 log M_j
    Item root_growth;    // log M_j / j > ln j  (within-rounding equality passes)
    Item root_monotone;  // log M_j / j nondecreasing (within rounding)

    bool all_pass() const {
        return increasing.pass && log_convex.pass && root_growth.pass && root_monotone.pass;
    }
};

SequenceCheckReport verify_sequence(const WeightSequence& seq, long long j_lo, long long j_hi);

// Partial sums S_J = sum_{j=j_lo..J} M_j^(-1/j).  Divergence of the full sum
// is what the class construction needs; a finite scan can only report the
// trend, so downstream consumers stamp these rows as a resolution-limited
// surrogate, never as a proof.
struct DivergenceRow {
    long long J = 0;
    double partial_sum = 0.0;
};
std::vector<DivergenceRow> divergence_profile(const WeightSequence& seq, long long j_lo,
                                              const std::vector<long long>& J_grid);

// Rows (j, (N_j / M_j)^(1/j)) comparing two sequences; the ratio marching to
// infinity is the separation diagnostic between nested classes.
struct SeparationRow {
    long long j = 0;
    double root_ratio = 0.0;
};
std::vector<SeparationRow> separation_ratio(const WeightSequence& numer, const WeightSequence& denom,
                                            const std::vector<long long>& j_grid);

}  // namespace lacuna
