#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "morsedc/rational.hpp"
#include "morsedc/symseq.hpp"

namespace morsedc {

/// Per-delta tally of orbit times k, split by the conservative comparison:
/// distance certified < delta, certified >= delta, or indeterminate at the
/// working precision. The three buckets always sum to the number of scanned k.
struct CountTriple {
    uint64_t below = 0;
    uint64_t at_least = 0;
    uint64_t indeterminate = 0;

    CountTriple& operator+=(const CountTriple& o) {
        below += o.below;
        at_least += o.at_least;
        indeterminate += o.indeterminate;
        return *this;
    }
    uint64_t total() const { return below + at_least + indeterminate; }
    friend bool operator==(const CountTriple&, const CountTriple&) = default;
};

/// {2^-l : l=1..8} and {1 - 2^-r : r=1..8}, deduplicated, ascending. Probes
/// both the "upper function identically 1" end and the extremal
/// "lower function 0 near the diameter" end.
std::vector<Rational> default_delta_grid();

/// Comma-separated rationals, e.g. "1/2,1/4,15/16".
std::vector<Rational> parse_delta_grid(const std::string& text);

/// Aggregates over one contiguous range of orbit times. Ranges combine by
/// addition (counts) and min/max (extremes), so chunked or parallel sweeps
/// reduce to the same value in any order; ties report the smallest k.
struct WindowAggregate {
    uint64_t k_from = 0, k_to = 0;  // inclusive
    std::vector<CountTriple> lower;  // min-over-pairs distance vs each delta
    std::vector<CountTriple> upper;  // max-over-pairs distance vs each delta
    uint64_t min_max_num = UINT64_MAX;  // min over k of max-pairwise numerator
    uint64_t min_max_at = 0;
    uint64_t max_min_num = 0;  // max over k of min-pairwise numerator
    uint64_t max_min_at = 0;

    void merge_from(const WindowAggregate& o);
};

/// Sweeps k = 1 .. last(checkpoints)-1, one window per checkpoint; window i
/// covers c_{i-1} <= k <= c_i - 1 (c_0 = 1), so the cumulative counts through
/// window i are exactly the horizon-c_i tallies (0 < k < c_i).
std::vector<WindowAggregate> sweep_tuple(const std::vector<SymbolicPoint>& points,
                                         const std::vector<uint64_t>& checkpoints,
                                         const std::vector<Rational>& delta_grid, int precision,
                                         int workers = 1);

/// Finite-horizon empirical distribution functions of an n-tuple at one
/// horizon m: counts over 0 < k < m of the min/max pairwise shifted distance
/// against each delta.
struct DistributionEstimate {
    uint64_t horizon = 0;
    int precision = kDefaultPrecision;
    std::vector<Rational> deltas;
    std::vector<CountTriple> lower;
    std::vector<CountTriple> upper;

    /// below / (m-1) from the min-over-pairs counts.
    Rational phi_hat(size_t delta_index) const {
        return Rational(lower[delta_index].below, horizon - 1);
    }
    /// below / (m-1) from the max-over-pairs counts.
    Rational phi_star_hat(size_t delta_index) const {
        return Rational(upper[delta_index].below, horizon - 1);
    }
};

DistributionEstimate estimate_df(const std::vector<SymbolicPoint>& points,
                                 const std::vector<Rational>& delta_grid, uint64_t horizon,
                                 int precision = kDefaultPrecision, int workers = 1);

enum class TupleClass {
    ScrambledEvidence,
    Cond1Fails,  // a positive floor on all pairwise distances was exhibited
    Cond2Fails,  // min-pairwise distance stayed under the smallness threshold
    Inconclusive,
};

const char* tuple_class_name(TupleClass c);

struct ClassifyParams {
    std::vector<uint64_t> checkpoints;
    std::vector<Rational> delta_grid = default_delta_grid();
    int precision = kDefaultPrecision;
    /// Condition-2 failure threshold; defaults to 2^-(L-2), two bits above
    /// the truncation error.
    Rational smallness{0, 1};
    /// Spike height demanded of every tail window for scrambled evidence.
    Rational positivity_floor{1, 4};
    int workers = 1;

    Rational effective_smallness() const {
        if (smallness.num != 0) return smallness;
        return Rational(1, uint64_t(1) << (precision - 2));
    }
};

/// Finite-horizon classification. Never claims a limit: every verdict is
/// "evidence at the scanned checkpoints" with the witnesses attached.
/// The first window is treated as burn-in (short early blocks mix several
/// varying blocks into one comparison window); tail statistics start at the
/// second window when there is more than one.
struct TupleVerdict {
    std::vector<std::string> descriptors;
    std::vector<uint64_t> checkpoints;
    int precision = kDefaultPrecision;
    Rational smallness;
    Rational positivity_floor;
    std::vector<Rational> deltas;

    std::vector<WindowAggregate> windows;
    /// Per checkpoint: min over all k < c_i of the max-pairwise numerator,
    /// with the first k attaining it.
    std::vector<uint64_t> liminf_running_num;
    std::vector<uint64_t> liminf_running_at;
    /// Cumulative per-checkpoint tallies (sum of windows 1..i).
    std::vector<std::vector<CountTriple>> cumulative_lower;
    std::vector<std::vector<CountTriple>> cumulative_upper;

    bool liminf_reaches_threshold = false;  // some scanned k has max-pair UB <= smallness
    bool tail_spikes_above_floor = false;   // every tail window has min-pair LB >= floor
    bool tail_stays_below_threshold = false;  // every tail window has min-pair UB <= smallness
    bool positive_floor_exhibited = false;    // min over all k of max-pair LB > 0

    TupleClass classification = TupleClass::Inconclusive;

    Rational phi_hat(size_t checkpoint_index, size_t delta_index) const {
        return Rational(cumulative_lower[checkpoint_index][delta_index].below,
                        checkpoints[checkpoint_index] - 1);
    }
    Rational phi_star_hat(size_t checkpoint_index, size_t delta_index) const {
        return Rational(cumulative_upper[checkpoint_index][delta_index].below,
                        checkpoints[checkpoint_index] - 1);
    }
};

TupleVerdict classify_tuple(const std::vector<SymbolicPoint>& points, const ClassifyParams& params);

/// Minimum over k <= horizon of the truncated distance between sigma^k(u) and
/// sigma^{k+r}(v), checked against the 2^-14r floor that the no-shared-window
/// argument guarantees for points built from Morse blocks. `applicable` is
/// false when the inputs are not family/Morse points (the floor is then
/// meaningless; an all-zeros input hits 0 immediately).
struct DistalitySweep {
    uint64_t r = 0;
    uint64_t horizon = 0;
    int precision = 0;
    bool applicable = false;
    uint64_t min_num = UINT64_MAX;
    uint64_t min_at = 0;
    Rational floor{0, 1};
    bool floor_ok = false;

    Rational min_value() const { return Rational(min_num, uint64_t(1) << precision); }
};

DistalitySweep shifted_pair_distality(const SymbolicPoint& u, const SymbolicPoint& v, uint64_t r,
                                      uint64_t horizon, int precision = 0);

}  // namespace morsedc
