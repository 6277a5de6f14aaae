#include "lacuna/assoc.hpp"

#include <algorithm>
#include <cmath>

namespace lacuna {

namespace {

double tie_threshold(double g_min) { return g_min + kTieTol; }

struct GEval {
    const WeightSequence& seq;
    double log_r;
    double operator()(long long j) const {
        return seq.log_weight(j) - static_cast<double>(j) * log_r;
    }
};

}  // namespace

AssocResult tau_nu_logr(const WeightSequence& seq, double log_r, long long j_max) {
    if (!std::isfinite(log_r)) throw ConfigError("tau_nu: log r must be finite");
    if (j_max < seq.j_min()) throw ConfigError("tau_nu: j_max below the sequence start");
    const long long cap = std::min(j_max, seq.j_max());
    GEval g{seq, log_r};

    long long lo = seq.j_min(), hi = cap;
    while (hi - lo > 40) {
        long long m1 = lo + (hi - lo) / 3;
        long long m2 = hi - (hi - lo) / 3;
        if (g(m1) < g(m2))
            hi = m2;
        else
            lo = m1;
    }
    double g_min = g(lo);
    long long arg = lo;
    for (long long j = lo + 1; j <= hi; ++j) {
        double v = g(j);
        if (v <= g_min) {  // <= keeps the largest index on exact ties
            g_min = v;
            arg = j;
        }
    }
    // Extend right through the tie sublevel set; convexity makes it an
    // interval, so gallop + binary search finds its right edge.
    const double thresh = tie_threshold(g_min);
    long long nu = arg;
    long long step = 1;
    while (nu + step <= cap && g(nu + step) <= thresh) {
        nu += step;
        step *= 2;
    }
    long long bad = std::min(nu + step, cap + 1);  // g(bad) > thresh or out of range
    while (bad - nu > 1) {
        long long mid = nu + (bad - nu) / 2;
        if (g(mid) <= thresh)
            nu = mid;
        else
            bad = mid;
    }
    return {g_min, nu, nu < cap, cap};
}

AssocResult tau_nu(const WeightSequence& seq, double r, long long j_max) {
    if (!(r > 0.0) || !std::isfinite(r)) throw ConfigError("tau_nu: r must be positive finite");
    return tau_nu_logr(seq, std::log(r), j_max);
}

AssocResult tau_nu_bruteforce(const WeightSequence& seq, double log_r, long long j_max) {
    if (!std::isfinite(log_r)) throw ConfigError("tau_nu_bruteforce: log r must be finite");
    if (j_max < seq.j_min()) throw ConfigError("tau_nu_bruteforce: j_max below the sequence start");
    const long long cap = std::min(j_max, seq.j_max());
    if (cap - seq.j_min() > (1LL << 24))
        throw ConfigError("tau_nu_bruteforce: range too large for a linear scan");
    GEval g{seq, log_r};
    double g_min = g(seq.j_min());
    for (long long j = seq.j_min() + 1; j <= cap; ++j) g_min = std::min(g_min, g(j));
    const double thresh = tie_threshold(g_min);
    long long nu = seq.j_min();
    for (long long j = seq.j_min(); j <= cap; ++j)
        if (g(j) <= thresh) nu = j;
    return {g_min, nu, nu < cap, cap};
}

std::vector<NuGrowthRow> nu_growth_profile(const WeightSequence& seq,
                                           const std::vector<double>& log_r_grid,
                                           long long j_max) {
    if (log_r_grid.empty()) throw ConfigError("nu_growth_profile: empty grid");
    std::vector<NuGrowthRow> rows;
    rows.reserve(log_r_grid.size());
    double run_min = std::numeric_limits<double>::infinity();
    for (double lr : log_r_grid) {
        if (!(lr > 0.0)) throw ConfigError("nu_growth_profile: grid requires r > 1 (log r > 0)");
        auto res = tau_nu_logr(seq, lr, j_max);
        double ratio = static_cast<double>(res.nu) / lr;
        run_min = std::min(run_min, ratio);
        rows.push_back({lr, res.nu, ratio, run_min});
    }
    return rows;
}

}  // namespace lacuna
