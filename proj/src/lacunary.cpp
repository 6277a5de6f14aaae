#include "lacuna/lacunary.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "lacuna/kernels/trig_core.hpp"

namespace lacuna {

namespace {
constexpr double kLn2 = 0.69314718055994530942;
constexpr double kInf = std::numeric_limits<double>::infinity();
// Per-term relative rounding budget of the kernel pipeline (phase truncation,
// minimax residual, fma roundings, amplitude exp, compensated add) — a
// deliberate overestimate of the ~6e-16 it actually is.
constexpr double kTermRound = 2.5e-15;
constexpr int kChunk = 4096;

double logaddexp(double a, double b) {
    if (a == -kInf) return b;
    if (b == -kInf) return a;
    double hi = std::max(a, b), lo = std::min(a, b);
    return hi + std::log1p(std::exp(lo - hi));
}
}  // namespace

LacunarySeries::LacunarySeries(WeightSequence seq, int start, double scale)
    : seq_(std::move(seq)), start_(start), scale_(scale) {
    if (start_ < 1) throw ConfigError("series: start frequency exponent must be >= 1");
    if (start_ > kMaxTruncation) throw ConfigError("series: start beyond truncation cap");
    if (!std::isfinite(scale_)) throw ConfigError("series: scale must be finite");
}

LacunarySeries::LacunarySeries(const LacunarySeries& o)
    : seq_(o.seq_), start_(o.start_), scale_(o.scale_) {
    std::lock_guard<std::mutex> lk(o.mu_);
    log_a_ = o.log_a_;
    nu_ = o.nu_;
}

LacunarySeries& LacunarySeries::operator=(const LacunarySeries& o) {
    if (this == &o) return *this;
    LacunarySeries tmp(o);
    *this = std::move(tmp);
    return *this;
}

LacunarySeries::LacunarySeries(LacunarySeries&& o) noexcept
    : seq_(std::move(o.seq_)), start_(o.start_), scale_(o.scale_) {
    std::lock_guard<std::mutex> lk(o.mu_);
    log_a_ = std::move(o.log_a_);
    nu_ = std::move(o.nu_);
}

LacunarySeries& LacunarySeries::operator=(LacunarySeries&& o) noexcept {
    if (this == &o) return *this;
    seq_ = std::move(o.seq_);
    start_ = o.start_;
    scale_ = o.scale_;
    std::lock_guard<std::mutex> lk(o.mu_);
    log_a_ = std::move(o.log_a_);
    nu_ = std::move(o.nu_);
    return *this;
}

void LacunarySeries::extend_cache_locked(long long n) const {
    while (static_cast<long long>(log_a_.size()) <= n - start_) {
        long long nn = start_ + static_cast<long long>(log_a_.size());
        auto res = tau_nu_logr(seq_, static_cast<double>(nn) * kLn2, seq_.j_max());
        log_a_.push_back(res.log_tau - static_cast<double>(nn) * kLn2);
        nu_.push_back(res.nu);
    }
}

double LacunarySeries::log_coefficient(long long n) const {
    if (n < start_) throw ConfigError("log_coefficient: n below series start");
    if (n > kMaxTruncation + 64) throw ConfigError("log_coefficient: n beyond cache range");
    std::lock_guard<std::mutex> lk(mu_);
    extend_cache_locked(n);
    return log_a_[static_cast<size_t>(n - start_)];
}

long long LacunarySeries::coefficient_nu(long long n) const {
    if (n < start_) throw ConfigError("coefficient_nu: n below series start");
    if (n > kMaxTruncation + 64) throw ConfigError("coefficient_nu: n beyond cache range");
    std::lock_guard<std::mutex> lk(mu_);
    extend_cache_locked(n);
    return nu_[static_cast<size_t>(n - start_)];
}

double LacunarySeries::log_tail_bound(int N, int j) const {
    if (j < 0 || j > kMaxDerivOrder)
        throw ConfigError("tail bound: derivative order outside 0.." +
                          std::to_string(kMaxDerivOrder));
    if (N < start_ - 1) throw ConfigError("tail bound: N below start-1");
    if (scale_ == 0.0) return -kInf;
    const double log_scale = std::log(std::fabs(scale_));
    // ladder of j' >= j: dense early (the minimum usually sits close above j),
    // geometric later (slowly growing tables need deep probes)
    double best = kInf;
    long long jp = std::max<long long>(j, seq_.j_min());
    long long dense_end = jp + 16;
    while (jp <= std::min<long long>(seq_.j_max(), 1000000)) {
        double expo = static_cast<double>(j - jp - 1);                   // < 0
        double geom = expo * kLn2 * static_cast<double>(N + 1);          // first term
        double denom = -std::log1p(-std::exp2(expo));                    // 1/(1-2^expo)
        best = std::min(best, seq_.log_weight(jp) + geom + denom);
        jp = (jp < dense_end) ? jp + 1 : jp + std::max<long long>(1, jp / 2);
    }
    if (best == kInf) return kInf;  // table ends below order j: nothing certifiable
    return log_scale + best;
}

double LacunarySeries::tail_bound(int N, int j) const {
    double lt = log_tail_bound(N, j);
    return (lt == kInf) ? kInf : std::exp(lt);
}

int LacunarySeries::plan_truncation(int j, double target) const {
    if (!(target > 0.0)) throw ConfigError("plan_truncation: target must be positive");
    if (scale_ == 0.0) return start_ - 1;
    if (std::max<long long>(j, seq_.j_min()) > seq_.j_max())
        throw NumericError("weight table too short to certify derivative order " +
                           std::to_string(j));
    const double log_target = std::log(target);
    for (int N = start_ - 1; N <= kMaxTruncation; ++N) {
        if (log_tail_bound(N, j) <= log_target) return N;
    }
    throw NumericError("tail does not reach the requested tolerance within N = " +
                       std::to_string(kMaxTruncation) + " (order " + std::to_string(j) + ")");
}

double LacunarySeries::log_derivative_sup(int j) const {
    if (j < 0 || j > kMaxDerivOrder)
        throw ConfigError("derivative sup: order outside 0.." + std::to_string(kMaxDerivOrder));
    if (scale_ == 0.0) return -kInf;
    double acc = -kInf;
    int N = start_ - 1;
    // walk the coefficient sum until the remaining tail is negligible next to
    // what is already accumulated
    while (N < kMaxTruncation) {
        ++N;
        acc = logaddexp(acc, log_coefficient(N) + static_cast<double>(j) * N * kLn2);
        double tail = log_tail_bound(N, j) - std::log(std::fabs(scale_));
        if (tail == kInf) continue;
        if (tail < acc - 40.0) return std::log(std::fabs(scale_)) + logaddexp(acc, tail);
    }
    double tail = log_tail_bound(N, j) - std::log(std::fabs(scale_));
    return std::log(std::fabs(scale_)) + logaddexp(acc, tail);
}

CertifiedValue LacunarySeries::evaluate(double x, int j, double eps) const {
    SeriesEvaluator ev(*this, j, eps);
    return {ev.eval_point(x), ev.point_error()};
}

double LacunarySeries::partial_sum(double x, int j, int N) const {
    if (j < 0 || j > kMaxDerivOrder) throw ConfigError("partial_sum: bad derivative order");
    if (N < start_ - 1 || N > kMaxTruncation) throw ConfigError("partial_sum: bad truncation");
    if (scale_ == 0.0 || N < start_) return 0.0;
    const int T = N - start_ + 1;
    double L = -kInf;
    std::vector<double> logs(static_cast<size_t>(T));
    for (int t = 0; t < T; ++t) {
        logs[static_cast<size_t>(t)] = std::log(std::fabs(scale_)) +
                                       log_coefficient(start_ + t) +
                                       static_cast<double>(j) * (start_ + t) * kLn2;
        L = std::max(L, logs[static_cast<size_t>(t)]);
    }
    std::vector<double> amps(static_cast<size_t>(T));
    for (int t = 0; t < T; ++t) amps[static_cast<size_t>(t)] = std::exp(logs[static_cast<size_t>(t)] - L);
    auto pb = kernels::PhaseBlock::from_points(std::span<const double>{&x, 1}, N);
    double out = 0.0;
    kernels::accumulate({start_, static_cast<std::uint32_t>(j & 3), amps}, pb,
                        std::span<double>{&out, 1});
    return (scale_ < 0 ? -1.0 : 1.0) * std::exp(L) * out;
}

SeriesEvaluator::SeriesEvaluator(const LacunarySeries& s, int j, double eps) : j_(j) {
    if (j < 0 || j > kMaxDerivOrder)
        throw ConfigError("evaluate: derivative order outside 0.." +
                          std::to_string(kMaxDerivOrder));
    if (!(eps > 0.0) || !std::isfinite(eps))
        throw ConfigError("evaluate: tolerance must be positive and finite");
    n0_ = s.start();
    sign_ = (s.scale() < 0) ? -1.0 : 1.0;
    if (s.scale() == 0.0) {
        N_ = s.start() - 1;
        err_ = 0.0;
        L_ = -kInf;
        return;
    }
    N_ = s.plan_truncation(j, eps / 2);
    double tail = s.tail_bound(N_, j);
    const int T = N_ - n0_ + 1;
    const double log_scale = std::log(std::fabs(s.scale()));
    std::vector<double> logs(static_cast<size_t>(std::max(T, 0)));
    L_ = -kInf;
    for (int t = 0; t < T; ++t) {
        logs[static_cast<size_t>(t)] =
            log_scale + s.log_coefficient(n0_ + t) + static_cast<double>(j) * (n0_ + t) * kLn2;
        L_ = std::max(L_, logs[static_cast<size_t>(t)]);
    }
    if (L_ > 700.0)
        throw NumericError("derivative magnitude exceeds the double range (log ~ " +
                           std::to_string(L_) + ")");
    amps_.resize(static_cast<size_t>(std::max(T, 0)));
    double amp_sum = 0.0;
    for (int t = 0; t < T; ++t) {
        amps_[static_cast<size_t>(t)] = std::exp(logs[static_cast<size_t>(t)] - L_);
        amp_sum += amps_[static_cast<size_t>(t)];
    }
    double rounding = (L_ == -kInf) ? 0.0 : std::exp(L_) * amp_sum * kTermRound;
    err_ = tail + rounding;
    if (err_ > eps)
        throw NumericError(
            "requested tolerance is below the certification floor for this order "
            "(rounding floor ~ " + std::to_string(rounding) + ", tail " +
            std::to_string(tail) + ")");
}

void SeriesEvaluator::finish(std::span<double> out) const {
    const double m = sign_ * ((L_ == -kInf) ? 0.0 : std::exp(L_));
    for (auto& v : out) v *= m;
}

void SeriesEvaluator::eval_points(std::span<const double> xs, std::span<double> out) const {
    if (out.size() < xs.size()) throw ConfigError("eval_points: output span too short");
    if (amps_.empty()) {
        std::fill(out.begin(), out.begin() + static_cast<long>(xs.size()), 0.0);
        return;
    }
    const kernels::DyadicSum sum{n0_, static_cast<std::uint32_t>(j_ & 3), amps_};
    for (size_t off = 0; off < xs.size(); off += kChunk) {
        size_t cnt = std::min<size_t>(kChunk, xs.size() - off);
        auto pb = kernels::PhaseBlock::from_points(xs.subspan(off, cnt), N_);
        kernels::accumulate(sum, pb, out.subspan(off, cnt));
        finish(out.subspan(off, cnt));
    }
}

void SeriesEvaluator::eval_turns(std::span<const std::uint64_t> numer, int log2_denom,
                                 std::span<double> out) const {
    if (out.size() < numer.size()) throw ConfigError("eval_turns: output span too short");
    if (amps_.empty()) {
        std::fill(out.begin(), out.begin() + static_cast<long>(numer.size()), 0.0);
        return;
    }
    const kernels::DyadicSum sum{n0_, static_cast<std::uint32_t>(j_ & 3), amps_};
    for (size_t off = 0; off < numer.size(); off += kChunk) {
        size_t cnt = std::min<size_t>(kChunk, numer.size() - off);
        auto pb = kernels::PhaseBlock::from_turns(numer.subspan(off, cnt), log2_denom, N_);
        kernels::accumulate(sum, pb, out.subspan(off, cnt));
        finish(out.subspan(off, cnt));
    }
}

double SeriesEvaluator::eval_point(double x) const {
    double out = 0.0;
    eval_points(std::span<const double>{&x, 1}, std::span<double>{&out, 1});
    return out;
}

SupScanResult sup_derivative_scan(const LacunarySeries& s, int j, int grid_size, double eps) {
    if (grid_size < 1) throw ConfigError("sup scan: grid size must be >= 1");
    SeriesEvaluator ev(s, j, eps);
    SupScanResult res;
    res.point_error = ev.point_error();
    res.grid_size = grid_size;
    std::vector<double> xs(static_cast<size_t>(std::min(grid_size, kChunk)));
    std::vector<double> vals(xs.size());
    const double step = 2.0 * M_PI / grid_size;
    double best = -kInf, best_x = 0.0;
    for (int base = 0; base < grid_size; base += kChunk) {
        int cnt = std::min(kChunk, grid_size - base);
        for (int i = 0; i < cnt; ++i) xs[static_cast<size_t>(i)] = (base + i) * step;
        ev.eval_points(std::span<const double>(xs.data(), static_cast<size_t>(cnt)),
                       std::span<double>(vals.data(), static_cast<size_t>(cnt)));
        for (int i = 0; i < cnt; ++i) {
            double a = std::fabs(vals[static_cast<size_t>(i)]);
            if (a > best) {
                best = a;
                best_x = xs[static_cast<size_t>(i)];
            }
        }
    }
    res.sup_value = best;
    res.x_at = best_x;
    return res;
}

FourierResult fourier_extract(const LacunarySeries& s, long long freq, int j,
                              long long nodes_hint) {
    if (freq < 1 || freq > (1LL << 30)) throw ConfigError("fourier: freq outside 1..2^30");
    if (j < 0 || j > 10) throw ConfigError("fourier: derivative order outside 0..10");
    if (nodes_hint < 0 || nodes_hint > (1LL << 22))
        throw ConfigError("fourier: nodes outside 0..2^22");

    int p = 4;
    while ((1LL << p) < nodes_hint || (1LL << p) < 4 * freq) ++p;
    p = std::min(p, 22);
    const long long K = 1LL << p;

    FourierResult res;
    res.nodes = K;
    if (s.scale() == 0.0) return res;

    double sup = s.log_derivative_sup(j);
    double eps_node = std::exp(sup - 27.0);  // ~ sup * 1.9e-12, far above the floor
    SeriesEvaluator ev(s, j, eps_node);

    const std::uint32_t quad = static_cast<std::uint32_t>(j & 3);
    std::vector<std::uint64_t> numer(kChunk);
    std::vector<double> fvals(kChunk);
    double sum = 0.0, comp = 0.0, abs_sum = 0.0;
    for (long long base = 0; base < K; base += kChunk) {
        long long cnt = std::min<long long>(kChunk, K - base);
        for (long long i = 0; i < cnt; ++i)
            numer[static_cast<size_t>(i)] = static_cast<std::uint64_t>(base + i);
        ev.eval_turns(std::span<const std::uint64_t>(numer.data(), static_cast<size_t>(cnt)), p,
                      std::span<double>(fvals.data(), static_cast<size_t>(cnt)));
        for (long long i = 0; i < cnt; ++i) {
            // probe phase freq * k / K turns, exact
            std::uint64_t kk = static_cast<std::uint64_t>(base + i);
            std::uint64_t ph = (static_cast<std::uint64_t>(freq) * kk) &
                               ((K == 1) ? 0 : (static_cast<std::uint64_t>(K) - 1));
            double h = kernels::turn_cos(ph << (64 - p), quad);
            double v = fvals[static_cast<size_t>(i)] * h;
            kernels::core::neumaier_add(sum, comp, v);
            abs_sum += std::fabs(v);
        }
    }
    double integral = (sum + comp) * (2.0 / static_cast<double>(K));
    double int_err = 2.0 * eps_node + abs_sum * (2.0 / static_cast<double>(K)) * 4e-16;
    const double down = std::pow(static_cast<double>(freq), static_cast<double>(j));
    res.estimate = integral / down;
    res.error = int_err / down;
    return res;
}

std::vector<FingerprintRow> class_fingerprint(const LacunarySeries& s, const std::vector<int>& js,
                                              int grid_size) {
    if (js.empty()) throw ConfigError("fingerprint: empty order list");
    std::vector<FingerprintRow> rows;
    rows.reserve(js.size());
    for (int j : js) {
        if (j < 1 || j > kMaxDerivOrder)
            throw ConfigError("fingerprint: orders must lie in 1.." +
                              std::to_string(kMaxDerivOrder));
        double log_bound = s.log_derivative_sup(j);
        double eps = std::exp(log_bound - 20.0);  // ~ bound * 2e-9
        auto scan = sup_derivative_scan(s, j, grid_size, eps);
        FingerprintRow row;
        row.j = j;
        row.sup_root = std::exp(std::log(scan.sup_value) / j);
        double log_ws = std::log(std::fabs(s.scale())) + s.sequence().log_weight(j);
        row.weight_root = std::exp(log_ws / j);
        row.ratio = row.sup_root / row.weight_root;
        rows.push_back(row);
    }
    return rows;
}

}  // namespace lacuna
