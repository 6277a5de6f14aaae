#include "lacuna/weights.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace lacuna {

double iterated_log(int order, double x) {
    if (order < 1 || order > WeightSequence::kMaxOrder)
        throw ConfigError("iterated_log: order must be 1..3, got " + std::to_string(order));
    double v = x;
    for (int i = 0; i < order; ++i) {
        if (!(v > 0.0))
            throw ConfigError("iterated_log: argument leaves the domain at depth " +
                              std::to_string(i + 1));
        v = std::log(v);
    }
    return v;
}

double iterated_exp(int order, double x) {
    if (order < 0) throw ConfigError("iterated_exp: negative order");
    double v = x;
    for (int i = 0; i < order; ++i) v = std::exp(v);
    return v;
}

double ilog_shift(int order) {
    if (order < 1 || order > WeightSequence::kMaxOrder)
        throw ConfigError("ilog_shift: order must be 1..3, got " + std::to_string(order));
    return iterated_exp(order, 1.0) - 1.0;
}

WeightSequence WeightSequence::iterated_log_family(int order) {
    WeightSequence s;
    s.order_ = order;
    s.shift_ = ilog_shift(order);  // validates order
    s.j_min_ = 1;
    s.j_max_ = kIlogJMax;
    s.label_ = "ilog:k=" + std::to_string(order);
    return s;
}

WeightSequence WeightSequence::custom(std::vector<double> log_values, long long j_min) {
    if (log_values.empty()) throw ConfigError("custom sequence: empty table");
    if (j_min < 0) throw ConfigError("custom sequence: j_min must be >= 0");
    for (double v : log_values)
        if (!std::isfinite(v)) throw ConfigError("custom sequence: non-finite log value");
    WeightSequence s;
    s.order_ = 0;
    s.j_min_ = j_min;
    s.j_max_ = j_min + static_cast<long long>(log_values.size()) - 1;
    s.table_ = std::move(log_values);
    s.label_ = "custom:" + std::to_string(s.table_.size());
    return s;
}

WeightSequence::WeightSequence(const WeightSequence& o)
    : order_(o.order_), j_min_(o.j_min_), j_max_(o.j_max_), shift_(o.shift_), label_(o.label_),
      table_(o.table_) {
    std::lock_guard<std::mutex> lk(o.cache_mu_);
    cache_ = o.cache_;
}

WeightSequence& WeightSequence::operator=(const WeightSequence& o) {
    if (this == &o) return *this;
    WeightSequence tmp(o);
    *this = std::move(tmp);
    return *this;
}

WeightSequence::WeightSequence(WeightSequence&& o) noexcept
    : order_(o.order_), j_min_(o.j_min_), j_max_(o.j_max_), shift_(o.shift_),
      label_(std::move(o.label_)), table_(std::move(o.table_)) {
    std::lock_guard<std::mutex> lk(o.cache_mu_);
    cache_ = std::move(o.cache_);
}

WeightSequence& WeightSequence::operator=(WeightSequence&& o) noexcept {
    if (this == &o) return *this;
    order_ = o.order_;
    j_min_ = o.j_min_;
    j_max_ = o.j_max_;
    shift_ = o.shift_;
    label_ = std::move(o.label_);
    table_ = std::move(o.table_);
    std::lock_guard<std::mutex> lk(o.cache_mu_);
    cache_ = std::move(o.cache_);
    return *this;
}

double WeightSequence::compute_ilog(long long j) const {
    double dj = static_cast<double>(j);
    double inner = dj + shift_;
    for (int i = 0; i < order_; ++i) inner = std::log(inner);
    // ln M_j = j * ln(j * log^(k)(j + c_k)); the inner factor is >= 1 by the
    // choice of shift, so the product is >= j and the log is safe.
    return dj * std::log(dj * inner);
}

double WeightSequence::log_weight(long long j) const {
    if (j < j_min_ || j > j_max_)
        throw ConfigError("log_weight: index " + std::to_string(j) + " outside [" +
                          std::to_string(j_min_) + ", " + std::to_string(j_max_) + "]");
    if (is_custom()) return table_[static_cast<size_t>(j - j_min_)];
    if (j == 0) return 0.0;  // family starts at 1 anyway; guard for j_min 0 tables only
    if (j - j_min_ < kCacheCap) {
        size_t idx = static_cast<size_t>(j - j_min_);
        std::lock_guard<std::mutex> lk(cache_mu_);
        if (idx >= cache_.size())
            cache_.resize(std::max<size_t>(idx + 1, std::min<size_t>(2 * cache_.size() + 64,
                                                                     kCacheCap)),
                          std::numeric_limits<double>::quiet_NaN());
        if (std::isnan(cache_[idx])) cache_[idx] = compute_ilog(j);
        return cache_[idx];
    }
    return compute_ilog(j);
}

std::vector<double> WeightSequence::log_weights(long long j_lo, long long j_hi) const {
    if (j_lo > j_hi) throw ConfigError("log_weights: empty range");
    if (j_lo < j_min_ || j_hi > j_max_)
        throw ConfigError("log_weights: range outside [" + std::to_string(j_min_) + ", " +
                          std::to_string(j_max_) + "]");
    std::vector<double> out;
    out.reserve(static_cast<size_t>(j_hi - j_lo + 1));
    if (is_custom()) {
        for (long long j = j_lo; j <= j_hi; ++j)
            out.push_back(table_[static_cast<size_t>(j - j_min_)]);
        return out;
    }
    std::lock_guard<std::mutex> lk(cache_mu_);
    for (long long j = j_lo; j <= j_hi; ++j) {
        if (j - j_min_ < kCacheCap) {
            size_t idx = static_cast<size_t>(j - j_min_);
            if (idx >= cache_.size())
                cache_.resize(std::max<size_t>(idx + 1, std::min<size_t>(2 * cache_.size() + 64,
                                                                         kCacheCap)),
                              std::numeric_limits<double>::quiet_NaN());
            if (std::isnan(cache_[idx])) cache_[idx] = compute_ilog(j);
            out.push_back(cache_[idx]);
        } else {
            out.push_back(compute_ilog(j));
        }
    }
    return out;
}

SequenceCheckReport verify_sequence(const WeightSequence& seq, long long j_lo, long long j_hi) {
    if (j_lo < seq.j_min()) j_lo = seq.j_min();
    if (j_hi > seq.j_max()) j_hi = seq.j_max();
    if (j_lo > j_hi) throw ConfigError("verify_sequence: empty window after clamping");
    std::vector<double> lw = seq.log_weights(j_lo, j_hi);
    auto at = [&](long long j) { return lw[static_cast<size_t>(j - j_lo)]; };
    constexpr double eps = std::numeric_limits<double>::epsilon();

    SequenceCheckReport rep;
    for (long long j = j_lo; j < j_hi && rep.increasing.pass; ++j)
        if (!(at(j + 1) > at(j))) rep.increasing = {false, j + 1};
    for (long long j = j_lo + 1; j < j_hi && rep.log_convex.pass; ++j)
        if (!(at(j - 1) + at(j + 1) >= 2.0 * at(j))) rep.log_convex = {false, j};
    for (long long j = std::max(j_lo, 1LL); j <= j_hi && rep.root_growth.pass; ++j) {
        double root = at(j) / static_cast<double>(j);
        double lnj = std::log(static_cast<double>(j));
        // Strict inequality modulo rounding; the family meets it with exact
        // equality at j = 1 (M_1 = 1), which must count as a pass.
        double tol = 8.0 * eps * std::max({1.0, std::fabs(root), std::fabs(lnj)});
        if (!(root > lnj - tol)) rep.root_growth = {false, j};
    }
    for (long long j = std::max(j_lo, 1LL); j < j_hi && rep.root_monotone.pass; ++j) {
        double r0 = at(j) / static_cast<double>(j);
        double r1 = at(j + 1) / static_cast<double>(j + 1);
        double tol = 8.0 * eps * std::max(1.0, std::fabs(r0));
        if (!(r1 >= r0 - tol)) rep.root_monotone = {false, j + 1};
    }
    return rep;
}

std::vector<DivergenceRow> divergence_profile(const WeightSequence& seq, long long j_lo,
                                              const std::vector<long long>& J_grid) {
    if (J_grid.empty()) throw ConfigError("divergence_profile: empty J grid");
    long long J_top = *std::max_element(J_grid.begin(), J_grid.end());
    if (j_lo < seq.j_min() || J_top > seq.j_max())
        throw ConfigError("divergence_profile: grid outside sequence index range");
    for (size_t i = 1; i < J_grid.size(); ++i)
        if (J_grid[i] <= J_grid[i - 1])
            throw ConfigError("divergence_profile: J grid must be strictly increasing");
    if (J_grid.front() < j_lo) throw ConfigError("divergence_profile: J grid starts below j_lo");

    std::vector<double> lw = seq.log_weights(j_lo, J_top);
    std::vector<DivergenceRow> rows;
    rows.reserve(J_grid.size());
    double sum = 0.0, comp = 0.0;  // Neumaier: terms can span many magnitudes
    long long j = j_lo;
    for (long long J : J_grid) {
        for (; j <= J; ++j) {
            double term = std::exp(-lw[static_cast<size_t>(j - j_lo)] / static_cast<double>(j));
            double t = sum + term;
            comp += (std::fabs(sum) >= std::fabs(term)) ? (sum - t) + term : (term - t) + sum;
            sum = t;
        }
        rows.push_back({J, sum + comp});
    }
    return rows;
}

std::vector<SeparationRow> separation_ratio(const WeightSequence& numer,
                                            const WeightSequence& denom,
                                            const std::vector<long long>& j_grid) {
    if (j_grid.empty()) throw ConfigError("separation_ratio: empty j grid");
    std::vector<SeparationRow> rows;
    rows.reserve(j_grid.size());
    for (long long j : j_grid) {
        double d = (numer.log_weight(j) - denom.log_weight(j)) / static_cast<double>(j);
        rows.push_back({j, std::exp(d)});
    }
    return rows;
}

}  // namespace lacuna
