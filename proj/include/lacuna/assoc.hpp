#pragma once

#include <vector>

#include "lacuna/weights.hpp"

namespace lacuna {

// tau(r) = inf_j M_j / r^j and nu(r) = the largest index attaining the inf.
// Everything runs on g(j) = ln M_j - j ln r, which is convex in j whenever the
// sequence is log-convex; the minimizer is found by integer ternary search and
// the tie window by galloping along the sublevel set.
//
// Ties: indices with g within kTieTol (absolute) of the minimum count as
// attaining; nu is the largest of them.  At scales where rounding in g
// exceeds kTieTol the reported nu can wander by a few indices around the true
// argmin; both search paths share the evaluation, so they still agree exactly.
inline constexpr double kTieTol = 1e-9;

struct AssocResult {
    double log_tau = 0.0;
    long long nu = 0;
    // Largest attaining index strictly below the effective cap?  False means
    // the reported nu is only a boundary value, not the true argmin.
    bool attained_interior = false;
    long long j_cap = 0;  // effective cap after clamping to the table end
};

// r passed as ln r: callers need r = 2^n for n in the hundreds, which does not
// fit in a double.  j_max is clamped to the sequence's own index range.
AssocResult tau_nu_logr(const WeightSequence& seq, double log_r, long long j_max);

// Convenience wrapper for representable r > 0.
AssocResult tau_nu(const WeightSequence& seq, double r, long long j_max);

// Independent oracle: full linear scan with the same g and tie rule.
// Refuses j_max > 2^24 (it is a checking tool, not a production path).
AssocResult tau_nu_bruteforce(const WeightSequence& seq, double log_r, long long j_max);

// Growth diagnostic rows for nu(r)/ln r; running_min is the prefix minimum,
// whose monotone rise is the machine-visible face of nu(r)/ln r -> infinity.
struct NuGrowthRow {
    double log_r = 0.0;
    long long nu = 0;
    double nu_over_log_r = 0.0;
    double running_min = 0.0;
};
std::vector<NuGrowthRow> nu_growth_profile(const WeightSequence& seq,
                                           const std::vector<double>& log_r_grid, long long j_max);

}  // namespace lacuna
