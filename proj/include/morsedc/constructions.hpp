#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "morsedc/bigint.hpp"
#include "morsedc/rational.hpp"
#include "morsedc/symseq.hpp"

namespace morsedc {

/// Working prefix of an increasing exponent sequence {a_n}. Block n of a
/// constructed point has length 2^{a_n}; boundaries s_n = sum 2^{a_i} are kept
/// as big integers (and mirrored in uint64_t while they fit). Consumers never
/// wrap past the last block: indices beyond s_N raise HorizonError naming the
/// horizon.
class GapSequence {
public:
    /// parity_locked demands a_n == n (mod 2) for all n, the standing
    /// hypothesis of the lemma-1 / theorem-1 / remark-3 constructions.
    static GapSequence from_exponents(std::vector<uint32_t> exponents, bool parity_locked);
    static GapSequence parse(const std::string& comma_list, bool parity_locked);

    const std::vector<uint32_t>& exponents() const { return exponents_; }
    bool parity_locked() const { return parity_locked_; }
    int block_count() const { return int(exponents_.size()); }

    /// s_k, 0 <= k <= N (s_0 = 0).
    const BigUint& boundary(int k) const { return boundaries_[size_t(k)]; }
    const BigUint& horizon() const { return boundaries_.back(); }
    bool fits_u64() const { return fits_u64_; }
    uint64_t boundary_u64(int k) const { return boundaries_u64_[size_t(k)]; }
    uint64_t horizon_u64() const { return boundaries_u64_.back(); }

    /// Block j and offset p (both 1-based) with s_{j-1} < index <= s_j.
    std::pair<int, uint64_t> locate(uint64_t index) const;
    std::pair<int, BigUint> locate(const BigUint& index) const;

    std::string str() const;  // "1,2,3"

    friend bool operator==(const GapSequence& a, const GapSequence& b) {
        return a.exponents_ == b.exponents_ && a.parity_locked_ == b.parity_locked_;
    }

private:
    std::vector<uint32_t> exponents_;
    bool parity_locked_ = false;
    std::vector<BigUint> boundaries_;
    std::vector<uint64_t> boundaries_u64_;
    bool fits_u64_ = false;
};

/// Per-entry report for the condition-(3)/(4) check: the ratios
/// s_{n-1} / 2^{a_n} must eventually decrease and end below the tolerance.
struct GapValidation {
    struct Entry {
        int n;
        double ratio;               // display value of s_{n-1} / 2^{a_n}
        bool decreasing_from_prev;  // exact comparison with the previous ratio
    };
    std::vector<Entry> entries;
    bool eventually_decreasing = false;  // a nonempty strictly decreasing tail exists
    bool final_within_tolerance = false;
    bool parity_required = false;
    bool parity_ok = true;
    int first_parity_violation = 0;  // 1-based index, 0 if none

    bool ratio_passed() const { return eventually_decreasing && final_within_tolerance; }
    bool passed() const { return ratio_passed() && (!parity_required || parity_ok); }
};

GapValidation validate_gaps(const GapSequence& g, const Rational& ratio_tolerance);

/// j in W_i, the partition of the even numbers by odd part:
/// W_i = { 2^n (2i-1) : n >= 1 }.
bool w_set_member(uint64_t i, uint64_t j);

/// The index i with j in W_i (j must be even and positive).
uint64_t w_set_index_of(uint64_t j);

/// Binary code alpha derived from a code beta through the 2-adic valuation:
/// alpha(n) = beta(v2(n) + 1). Distinct betas give alphas differing on an
/// explicit infinite arithmetic progression, which is the only property the
/// scrambled-set constructions consume. beta is stored as a finite word and
/// reads as 0 past its end.
class AlphaCode {
public:
    explicit AlphaCode(std::vector<uint8_t> beta_bits);
    static AlphaCode parse(const std::string& bits);  // "0100"

    uint8_t beta_at(uint64_t i) const;   // 1-based coordinate
    uint8_t alpha_at(uint64_t n) const;  // 1-based index

    const std::vector<uint8_t>& beta_bits() const { return bits_; }
    std::string beta_str() const;

    friend bool operator==(const AlphaCode&, const AlphaCode&) = default;

private:
    std::vector<uint8_t> bits_;
};

/// x = M_{a_1} M_{a_2} M_{a_3} ... (requires parity-locked gaps).
SymbolicPoint point_lemma1(const GapSequence& g);

/// Shift exponent r_n = 3*2^{a_n} - s_{n-1}: sigma^{r_n} of the doubling
/// fixed point starts with M_{a_1} ... M_{a_n}.
BigUint shift_exponent_rn(const GapSequence& g, int n);

/// x^i: even-position blocks are complemented exactly when their position
/// lies in W_i; odd-position blocks are shared plain Morse blocks.
SymbolicPoint point_theorem1(uint64_t i, const GapSequence& g);

/// x^alpha: odd-position block 2t-1 is complemented when alpha(t)=1; all
/// even-position blocks are plain. Parity of the gaps is not required.
SymbolicPoint point_theorem2(const AlphaCode& alpha, const GapSequence& g);

/// Every block complemented (requires parity-locked gaps).
SymbolicPoint point_remark3(const GapSequence& g);

/// Block-level view of a constructed point: which blocks are complemented.
/// The brute-force oracle consumes this instead of evaluating symbols.
struct BlockStructure {
    GapSequence gaps;
    std::vector<bool> complemented;  // size block_count(), indexed by block-1
};

/// Structure of a family-built point; nullopt for anything else (shifted
/// points included).
std::optional<BlockStructure> block_structure(const SymbolicPoint& x);

/// Descriptor grammar:
///   morse
///   const b=<bit>
///   word w=<bits> tail=<bit>
///   lemma1 gaps=<list>
///   t1 i=<int> gaps=<list>
///   t2 beta=<bits> gaps=<list>
///   r3 gaps=<list>
///   shift k=<bigint> of=<descriptor>
/// Unknown tags are rejected.
SymbolicPoint parse_descriptor(const std::string& text);

}  // namespace morsedc
