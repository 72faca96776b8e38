#include "morsedc/oracle.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>

#include "morsedc/errors.hpp"

namespace morsedc {

PairSchedule PairSchedule::from_pair(const SymbolicPoint& u, const SymbolicPoint& v) {
    auto su = block_structure(u);
    auto sv = block_structure(v);
    if (!su || !sv)
        throw std::invalid_argument("exact_pair_counts: points must be family-built (got " +
                                    u.descriptor() + " / " + v.descriptor() + ")");
    if (!(su->gaps == sv->gaps))
        throw std::invalid_argument("exact_pair_counts: points use different gap sequences");
    PairSchedule s{su->gaps, {}};
    s.differs.resize(su->complemented.size());
    for (size_t j = 0; j < s.differs.size(); ++j)
        s.differs[j] = su->complemented[j] != sv->complemented[j];
    return s;
}

namespace {

// same lattice rule as the estimator, restated independently:
// A = ceil(delta * 2^L); below iff num <= A-2, at_least iff num >= A
struct OracleThreshold {
    unsigned __int128 a;
    explicit OracleThreshold(const Rational& delta, int precision) {
        unsigned __int128 t = (unsigned __int128)delta.num << precision;
        a = (t + delta.den - 1) / delta.den;
    }
    void add(CountTriple& c, uint64_t num, uint64_t times) const {
        if (num >= a)
            c.at_least += times;
        else if (num + 1 < a)
            c.below += times;
        else
            c.indeterminate += times;
    }
};

// numerator of the window [k+1, k+L] read off the schedule intervals
uint64_t schedule_window_numerator(const PairSchedule& s, uint64_t k, int L) {
    uint64_t num = 0;
    uint64_t pos = k + 1;
    auto [j, off] = s.gaps.locate(pos);
    int i = 1;
    while (i <= L) {
        uint64_t block_end = s.gaps.boundary_u64(j);
        uint64_t span = std::min<uint64_t>(uint64_t(L - i) + 1, block_end - pos + 1);
        if (s.differs[size_t(j - 1)]) {
            // sum of 2^{L-t} for t in [i, i+span-1]
            num += (uint64_t(1) << (L - i + 1)) - (uint64_t(1) << (L - i + 1 - span));
        }
        pos += span;
        i += int(span);
        ++j;
        if (i <= L && j > s.gaps.block_count())
            throw HorizonError("oracle window crosses the horizon");
    }
    return num;
}

}  // namespace

CountTriple exact_pair_counts(const PairSchedule& s, const Rational& delta, uint64_t horizon,
                              int precision) {
    if (horizon < 2) throw std::invalid_argument("exact_pair_counts: horizon must be >= 2");
    if (precision < 1 || precision > kMaxPrecision)
        throw CapacityError("exact_pair_counts: precision out of range");
    if (!s.gaps.fits_u64())
        throw CapacityError("exact_pair_counts: gap horizon exceeds 64-bit interval arithmetic");
    uint64_t sN = s.gaps.horizon_u64();
    // same reach as the estimator: the last window ends at (m-1) + L
    if (horizon > sN || (horizon - 1) + uint64_t(precision) > sN)
        throw HorizonError("exact_pair_counts: need (horizon-1) + L <= s_N = " +
                           std::to_string(sN));

    OracleThreshold thr(delta, precision);
    CountTriple counts;
    const uint64_t k_max = horizon - 1;
    const int L = precision;
    const uint64_t all_diff = (uint64_t(1) << L) - 1;

    // deep-inside-block runs, then the straddling ks between them one by one
    uint64_t next_k = 1;
    for (int j = 1; j <= s.gaps.block_count() && next_k <= k_max; ++j) {
        uint64_t lo = std::max<uint64_t>(next_k, s.gaps.boundary_u64(j - 1));
        uint64_t hi_block = s.gaps.boundary_u64(j);
        if (hi_block < uint64_t(L)) continue;  // block ends before any window fits
        uint64_t hi = std::min(k_max, hi_block - uint64_t(L));
        if (lo > hi) continue;
        // straddling ks before this run
        for (uint64_t k = next_k; k < lo; ++k)
            thr.add(counts, schedule_window_numerator(s, k, L), 1);
        thr.add(counts, s.differs[size_t(j - 1)] ? all_diff : 0, hi - lo + 1);
        next_k = hi + 1;
    }
    for (uint64_t k = next_k; k <= k_max; ++k)
        thr.add(counts, schedule_window_numerator(s, k, L), 1);
    return counts;
}

CountTriple exact_pair_counts(const SymbolicPoint& u, const SymbolicPoint& v,
                              const Rational& delta, uint64_t horizon, int precision) {
    return exact_pair_counts(PairSchedule::from_pair(u, v), delta, horizon, precision);
}

Lemma1Check verify_lemma1(const GapSequence& g, int n, uint64_t cap) {
    if (!g.parity_locked())
        throw std::invalid_argument("verify_lemma1: gaps must be parity-locked");
    Lemma1Check res;
    res.n = n;
    res.shift_exponent = shift_exponent_rn(g, n);
    if (!res.shift_exponent.fits_u64() || !g.boundary(n).fits_u64())
        throw CapacityError("verify_lemma1: shift exponent exceeds materialization range");
    uint64_t rn = res.shift_exponent.to_u64();
    uint64_t sn = g.boundary(n).to_u64();
    if (rn + sn > cap)
        throw CapacityError("verify_lemma1: needs " + std::to_string(rn + sn) +
                            " symbols, cap is " + std::to_string(cap));

    unsigned order = unsigned(std::bit_width(rn + sn - 1));
    Word m = morse_block(order);  // doubling recurrence, not the popcount form

    // the block stream M_{a_1} ... M_{a_n}: symbol t is symbol p of M_{a_j},
    // and every M_a is itself a prefix of m
    for (uint64_t t = 1; t <= sn; ++t) {
        auto [j, p] = g.locate(t);
        (void)j;
        if (m.at(size_t(rn + t - 1)) != m.at(size_t(p - 1))) {
            res.first_mismatch = t;
            return res;
        }
    }
    res.ok = true;
    return res;
}

PropertyPCheck verify_property_p(uint64_t prefix_len, uint64_t cap) {
    if (prefix_len > cap)
        throw CapacityError("verify_property_p: prefix " + std::to_string(prefix_len) +
                            " exceeds quadratic-scan cap " + std::to_string(cap) +
                            "; raise the cap explicitly if the run time is acceptable");
    unsigned order = prefix_len <= 1 ? 0 : unsigned(std::bit_width(prefix_len - 1));
    Word m = morse_block(order);
    PropertyPCheck res = verify_property_p_word(m.slice(0, size_t(prefix_len)));
    return res;
}

PropertyPCheck verify_property_p_word(const Word& w) {
    PropertyPCheck res;
    res.prefix_len = w.length();
    res.witness = find_bbb_pattern(w);
    res.ok = !res.witness.has_value();
    return res;
}

Step2Check verify_step2_window(const SymbolicPoint& u, const SymbolicPoint& v, uint64_t r,
                               uint64_t window_len, uint64_t horizon) {
    if (r == 0) throw std::invalid_argument("verify_step2_window: r must be positive");
    if (window_len == 0) window_len = 14 * r;
    Step2Check res;
    res.r = r;
    res.window_len = window_len;
    res.horizon = horizon;
    // preflight the largest indices touched
    (void)u.symbol_at(horizon + window_len);
    (void)v.symbol_at(horizon + r + window_len);
    const PointImpl& ui = *u.impl();
    const PointImpl& vi = *v.impl();
    for (uint64_t k = 1; k <= horizon; ++k) {
        bool all_equal = true;
        for (uint64_t t = 1; t <= window_len; ++t) {
            if (ui.symbol(k + t) != vi.symbol(k + r + t)) {
                all_equal = false;
                break;
            }
        }
        if (all_equal) {
            res.witness_k = k;
            return res;
        }
    }
    res.ok = true;
    return res;
}

uint64_t alpha_difference_count(const AlphaCode& beta1, const AlphaCode& beta2, uint64_t limit) {
    if (limit == 0) throw std::invalid_argument("alpha_difference_count: limit must be positive");
    // coordinates reachable below the limit: v2(n)+1 <= floor(log2(limit))+1
    uint64_t reach = uint64_t(std::bit_width(limit));
    bool differs = false;
    for (uint64_t c = 1; c <= reach; ++c)
        if (beta1.beta_at(c) != beta2.beta_at(c)) differs = true;
    if (!differs)
        throw std::invalid_argument(
            "alpha_difference_count: betas identical on the inspected prefix");
    uint64_t count = 0;
    for (uint64_t n = 1; n <= limit; ++n)
        if (beta1.alpha_at(n) != beta2.alpha_at(n)) ++count;
    return count;
}

}  // namespace morsedc
