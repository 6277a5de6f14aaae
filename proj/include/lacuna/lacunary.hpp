#pragma once

#include <mutex>
#include <span>
#include <vector>

#include "lacuna/assoc.hpp"
#include "lacuna/kernels/kernels.hpp"
#include "lacuna/weights.hpp"

namespace lacuna {

inline constexpr int kMaxDerivOrder = 60;
inline constexpr int kMaxTruncation = 1500;

struct CertifiedValue {
    double value = 0.0;
    double error = 0.0;  // certified absolute bound, not an estimate
};

// f(x) = scale * sum_{n >= start} a_n cos(2^n x) with a_n = tau(2^n) / 2^n.
// The coefficient choice ties the series to its weight sequence: term-by-term
// differentiation gives |f^(j)| <= |scale| M_j for every j, which is exactly
// the class membership the rest of the library builds on.
class LacunarySeries {
  public:
    explicit LacunarySeries(WeightSequence seq, int start = 1, double scale = 1.0);
    LacunarySeries(const LacunarySeries& o);
    LacunarySeries& operator=(const LacunarySeries& o);
    LacunarySeries(LacunarySeries&&) noexcept;
    LacunarySeries& operator=(LacunarySeries&&) noexcept;

    const WeightSequence& sequence() const { return seq_; }
    int start() const { return start_; }
    double scale() const { return scale_; }

    // ln a_n (unscaled) and the tau-attaining index behind it; cached.
    double log_coefficient(long long n) const;
    long long coefficient_nu(long long n) const;

    // ln of a certified bound for |scale| * sup_x |sum_{n>N} (d/dx)^j term_n|:
    // each coefficient bound a_n <= M_j' 2^{-(j'+1)n} is summed in closed form
    // and minimized over a ladder of j' >= j.  -inf when scale == 0.
    double log_tail_bound(int N, int j) const;
    double tail_bound(int N, int j) const;

    // Smallest N with tail <= target; NumericError when no N <= kMaxTruncation
    // works (or the weight table is too short to certify order j at all).
    int plan_truncation(int j, double target) const;

    // Certified sup bound for |f^(j)| (log), from the full coefficient sum.
    double log_derivative_sup(int j) const;

    CertifiedValue evaluate(double x, int j, double eps) const;

    // Plain truncated partial sum (diagnostic; no certificate).
    double partial_sum(double x, int j, int N) const;

  private:
    friend class SeriesEvaluator;
    void extend_cache_locked(long long n) const;

    WeightSequence seq_;
    int start_;
    double scale_;
    mutable std::mutex mu_;
    mutable std::vector<double> log_a_;  // index n - start
    mutable std::vector<long long> nu_;
};

// A frozen evaluation plan for one (series, derivative order, tolerance):
// truncation chosen, amplitudes normalized, certificate computed once.  The
// plan is immutable and safe to share across threads; this is the object the
// geometry and intersection layers hammer on.
class SeriesEvaluator {
  public:
    SeriesEvaluator(const LacunarySeries& s, int j, double eps);

    int order() const { return j_; }
    int truncation() const { return N_; }
    double point_error() const { return err_; }  // certified, same for every point

    void eval_points(std::span<const double> xs, std::span<double> out) const;
    // nodes given as exact fractions numer/2^log2_denom of a turn
    void eval_turns(std::span<const std::uint64_t> numer, int log2_denom,
                    std::span<double> out) const;
    double eval_point(double x) const;

  private:
    void finish(std::span<double> out) const;

    std::vector<double> amps_;  // exp(term log - L), in (0, 1]
    double L_ = 0.0;            // normalization log
    double sign_ = 1.0;
    int n0_ = 0;
    int N_ = 0;
    int j_ = 0;
    double err_ = 0.0;
};

struct SupScanResult {
    double sup_value = 0.0;
    double x_at = 0.0;
    double point_error = 0.0;  // certificate of each sampled value
    int grid_size = 0;
};
// max |f^(j)| over the uniform grid x_k = 2 pi k / G, k = 0..G-1.  A grid sup
// is a lower estimate of the true sup; the certificate applies per point.
SupScanResult sup_derivative_scan(const LacunarySeries& s, int j, int grid_size, double eps);

struct FourierResult {
    double estimate = 0.0;   // of scale * a_n when freq == 2^n; ~0 off-frequency
    double error = 0.0;      // certified: node certificates + summation rounding
    long long nodes = 0;     // power of two actually used
};
// Trapezoid projection (2/K) sum_k f^(j)(x_k) cos(freq x_k + j pi/2) / freq^j
// on exact dyadic nodes.  With dyadic K every evaluated series term below K is
// exactly orthogonal to the probe; terms at or above K fold onto DC, not onto
// freq — so the only residual error is the node certificates themselves.
FourierResult fourier_extract(const LacunarySeries& s, long long freq, int j,
                              long long nodes_hint);

struct FingerprintRow {
    int j = 0;
    double sup_root = 0.0;     // (grid sup of |f^(j)|)^(1/j)
    double weight_root = 0.0;  // (|scale| M_j)^(1/j)
    double ratio = 0.0;        // sup_root / weight_root; <= 1 marks membership
};
std::vector<FingerprintRow> class_fingerprint(const LacunarySeries& s, const std::vector<int>& js,
                                              int grid_size);

}  // namespace lacuna
