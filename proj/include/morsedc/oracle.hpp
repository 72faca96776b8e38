#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "morsedc/chaos.hpp"
#include "morsedc/constructions.hpp"
#include "morsedc/word.hpp"

namespace morsedc {

inline constexpr uint64_t kQuadraticScanCap = uint64_t(1) << 14;
inline constexpr uint64_t kLinearScanCap = uint64_t(1) << 24;

/// Block-interval view of a constructed pair: on which boundary intervals
/// (s_{j-1}, s_j] the two points carry complementary blocks. Both points must
/// be family-built over the same gap sequence.
struct PairSchedule {
    GapSequence gaps;
    std::vector<bool> differs;  // per block, 0-indexed by block-1

    static PairSchedule from_pair(const SymbolicPoint& u, const SymbolicPoint& v);
};

/// Exact (below, at_least, indeterminate) tally of 0 < k < m for one pair,
/// computed purely from the block schedule by interval arithmetic. Shares no
/// evaluation path with estimate_df: no symbol of either point is read.
CountTriple exact_pair_counts(const SymbolicPoint& u, const SymbolicPoint& v,
                              const Rational& delta, uint64_t horizon,
                              int precision = kDefaultPrecision);
CountTriple exact_pair_counts(const PairSchedule& schedule, const Rational& delta,
                              uint64_t horizon, int precision = kDefaultPrecision);

/// Materializes the doubling-recurrence prefix and checks that shifting it by
/// r_n = 3*2^{a_n} - s_{n-1} reproduces M_{a_1} ... M_{a_n} symbol for symbol.
struct Lemma1Check {
    bool ok = false;
    int n = 0;
    BigUint shift_exponent;
    std::optional<uint64_t> first_mismatch;  // 1-based position in the block stream
};

Lemma1Check verify_lemma1(const GapSequence& g, int n, uint64_t cap = kLinearScanCap);

/// Overlap-freeness of a doubling-recurrence prefix (no factor B B b).
struct PropertyPCheck {
    bool ok = false;
    uint64_t prefix_len = 0;
    std::optional<PatternWitness> witness;
};

PropertyPCheck verify_property_p(uint64_t prefix_len, uint64_t cap = kQuadraticScanCap);
/// Same scan on an arbitrary word (control inputs).
PropertyPCheck verify_property_p_word(const Word& w);

/// Confirms no k <= horizon aligns sigma^k(u) with sigma^{k+r}(v) on a full
/// window of `window_len` symbols (default 14r). A witness k falsifies the
/// implementation or the precondition, not the statement.
struct Step2Check {
    bool ok = false;
    uint64_t r = 0;
    uint64_t window_len = 0;
    uint64_t horizon = 0;
    std::optional<uint64_t> witness_k;
};

Step2Check verify_step2_window(const SymbolicPoint& u, const SymbolicPoint& v, uint64_t r,
                               uint64_t window_len, uint64_t horizon);

/// Number of indices n <= limit where the two derived alpha codes disagree.
/// Errors if the betas agree on every coordinate the scan can reach.
uint64_t alpha_difference_count(const AlphaCode& beta1, const AlphaCode& beta2, uint64_t limit);

}  // namespace morsedc
