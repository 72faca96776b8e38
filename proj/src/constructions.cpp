#include "morsedc/constructions.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "morsedc/errors.hpp"

namespace morsedc {

GapSequence GapSequence::from_exponents(std::vector<uint32_t> exponents, bool parity_locked) {
    if (exponents.empty()) throw std::invalid_argument("GapSequence: empty exponent list");
    for (size_t i = 0; i < exponents.size(); ++i) {
        if (exponents[i] == 0) throw std::invalid_argument("GapSequence: exponents must be positive");
        if (i > 0 && exponents[i] <= exponents[i - 1])
            throw std::invalid_argument("GapSequence: exponents must be strictly increasing");
    }
    if (parity_locked) {
        for (size_t i = 0; i < exponents.size(); ++i) {
            if ((exponents[i] & 1u) != ((i + 1) & 1u))
                throw std::invalid_argument("GapSequence: parity violation at position " +
                                            std::to_string(i + 1) + " (a_n and n must share parity)");
        }
    }
    GapSequence g;
    g.exponents_ = std::move(exponents);
    g.parity_locked_ = parity_locked;
    g.boundaries_.reserve(g.exponents_.size() + 1);
    g.boundaries_.push_back(BigUint(0));
    for (uint32_t a : g.exponents_)
        g.boundaries_.push_back(g.boundaries_.back() + BigUint::power_of_two(a));
    g.fits_u64_ = g.boundaries_.back().fits_u64();
    if (g.fits_u64_) {
        g.boundaries_u64_.reserve(g.boundaries_.size());
        for (const auto& b : g.boundaries_) g.boundaries_u64_.push_back(b.to_u64());
    }
    return g;
}

GapSequence GapSequence::parse(const std::string& comma_list, bool parity_locked) {
    std::vector<uint32_t> exps;
    std::stringstream ss(comma_list);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) throw std::invalid_argument("GapSequence: empty list entry");
        size_t pos = 0;
        unsigned long v = 0;
        try {
            v = std::stoul(item, &pos);
        } catch (const std::exception&) {
            throw std::invalid_argument("GapSequence: bad entry '" + item + "'");
        }
        if (pos != item.size() || v > (1u << 20))
            throw std::invalid_argument("GapSequence: bad entry '" + item + "'");
        exps.push_back(uint32_t(v));
    }
    return from_exponents(std::move(exps), parity_locked);
}

std::pair<int, uint64_t> GapSequence::locate(uint64_t index) const {
    if (index == 0) throw std::invalid_argument("locate: index is 1-based");
    if (!fits_u64_ || index > boundaries_u64_.back()) {
        if (!fits_u64_) {
            auto [j, p] = locate(BigUint(index));
            return {j, p.to_u64()};
        }
        throw HorizonError("index " + std::to_string(index) + " beyond horizon s_" +
                           std::to_string(block_count()) + " = " +
                           std::to_string(boundaries_u64_.back()));
    }
    auto it = std::lower_bound(boundaries_u64_.begin() + 1, boundaries_u64_.end(), index);
    int j = int(it - boundaries_u64_.begin());
    return {j, index - boundaries_u64_[size_t(j - 1)]};
}

std::pair<int, BigUint> GapSequence::locate(const BigUint& index) const {
    if (index.is_zero()) throw std::invalid_argument("locate: index is 1-based");
    if (index > boundaries_.back())
        throw HorizonError("index " + index.to_decimal() + " beyond horizon s_" +
                           std::to_string(block_count()) + " = " + boundaries_.back().to_decimal());
    auto it = std::lower_bound(boundaries_.begin() + 1, boundaries_.end(), index);
    int j = int(it - boundaries_.begin());
    return {j, index - boundaries_[size_t(j - 1)]};
}

std::string GapSequence::str() const {
    std::string out;
    for (size_t i = 0; i < exponents_.size(); ++i) {
        if (i) out += ',';
        out += std::to_string(exponents_[i]);
    }
    return out;
}

namespace {

double ratio_display(const BigUint& s, uint32_t a) {
    int64_t top = s.top_bit();
    if (top < 0) return 0.0;
    double mant = 0.0;
    int64_t lo = std::max<int64_t>(0, top - 63);
    for (int64_t b = top; b >= lo; --b) mant = mant * 2.0 + (s.bit(uint64_t(b)) ? 1.0 : 0.0);
    return std::ldexp(mant, int(lo - int64_t(a)));
}

}  // namespace

GapValidation validate_gaps(const GapSequence& g, const Rational& ratio_tolerance) {
    GapValidation v;
    v.parity_required = g.parity_locked();
    const auto& a = g.exponents();
    for (size_t i = 0; i < a.size(); ++i) {
        if ((a[i] & 1u) != ((i + 1) & 1u)) {
            v.parity_ok = false;
            if (v.first_parity_violation == 0) v.first_parity_violation = int(i + 1);
        }
    }
    // ratio_n = s_{n-1} / 2^{a_n}; compared exactly via cross-shift:
    // ratio_n < ratio_m  <=>  s_{n-1} << a_m  <  s_{m-1} << a_n
    auto ratio_less = [&](int n, int m) {
        return g.boundary(n - 1).shl(a[size_t(m - 1)]) < g.boundary(m - 1).shl(a[size_t(n - 1)]);
    };
    int n_blocks = g.block_count();
    for (int n = 1; n <= n_blocks; ++n) {
        v.entries.push_back({n, ratio_display(g.boundary(n - 1), a[size_t(n - 1)]),
                             n > 1 && ratio_less(n, n - 1)});
    }
    // a nonempty strictly decreasing tail must reach the last entry
    if (n_blocks >= 2) v.eventually_decreasing = v.entries.back().decreasing_from_prev;
    // final ratio <= tolerance:  q * s_{N-1} <= p * 2^{a_N}
    BigUint lhs = g.boundary(n_blocks - 1);
    lhs.mul_small(ratio_tolerance.den);
    BigUint rhs = BigUint::power_of_two(a.back());
    rhs.mul_small(ratio_tolerance.num);
    v.final_within_tolerance = !(rhs < lhs);
    return v;
}

bool w_set_member(uint64_t i, uint64_t j) {
    if (i == 0 || j == 0 || (j & 1)) return false;
    uint64_t odd = j >> std::countr_zero(j);
    return odd == 2 * i - 1;
}

uint64_t w_set_index_of(uint64_t j) {
    if (j == 0 || (j & 1)) throw std::invalid_argument("w_set_index_of: j must be even positive");
    uint64_t odd = j >> std::countr_zero(j);
    return (odd + 1) / 2;
}

AlphaCode::AlphaCode(std::vector<uint8_t> beta_bits) : bits_(std::move(beta_bits)) {
    for (uint8_t b : bits_)
        if (b > 1) throw std::invalid_argument("AlphaCode: beta symbols must be 0 or 1");
}

AlphaCode AlphaCode::parse(const std::string& bits) {
    std::vector<uint8_t> v;
    v.reserve(bits.size());
    for (char c : bits) {
        if (c != '0' && c != '1') throw std::invalid_argument("AlphaCode: bad beta string");
        v.push_back(uint8_t(c - '0'));
    }
    return AlphaCode(std::move(v));
}

uint8_t AlphaCode::beta_at(uint64_t i) const {
    if (i == 0) throw std::invalid_argument("beta coordinate is 1-based");
    return i <= bits_.size() ? bits_[size_t(i - 1)] : 0;
}

uint8_t AlphaCode::alpha_at(uint64_t n) const {
    if (n == 0) throw std::invalid_argument("alpha index is 1-based");
    return beta_at(uint64_t(std::countr_zero(n)) + 1);
}

std::string AlphaCode::beta_str() const {
    std::string s(bits_.size(), '0');
    for (size_t i = 0; i < bits_.size(); ++i) s[i] = char('0' + bits_[i]);
    return s;
}

namespace {

enum class Family { Lemma1, Theorem1, Theorem2, Remark3 };

struct FamilyPoint final : PointImpl {
    Family family;
    GapSequence gaps;
    uint64_t t1_index = 0;  // i of x^i
    AlphaCode alpha{std::vector<uint8_t>{}};

    FamilyPoint(Family f, GapSequence g) : family(f), gaps(std::move(g)) {}

    bool complements_block(int j) const {
        switch (family) {
            case Family::Lemma1:
                return false;
            case Family::Theorem1:
                return (j % 2 == 0) && w_set_member(t1_index, uint64_t(j));
            case Family::Theorem2:
                return (j % 2 == 1) && alpha.alpha_at(uint64_t((j + 1) / 2)) == 1;
            case Family::Remark3:
                return true;
        }
        return false;
    }

    uint8_t symbol(uint64_t index) const override {
        auto [j, p] = gaps.locate(index);
        uint8_t bit = uint8_t(__builtin_popcountll(p - 1) & 1);
        return complements_block(j) ? uint8_t(1 - bit) : bit;
    }

    uint8_t symbol(const BigUint& index) const override {
        if (index.fits_u64() && gaps.fits_u64()) return symbol(index.to_u64());
        auto [j, p] = gaps.locate(index);
        p -= BigUint(1);
        uint8_t bit = uint8_t(p.popcount() & 1);
        return complements_block(j) ? uint8_t(1 - bit) : bit;
    }

    std::string descriptor() const override {
        switch (family) {
            case Family::Lemma1:
                return "lemma1 gaps=" + gaps.str();
            case Family::Theorem1:
                return "t1 i=" + std::to_string(t1_index) + " gaps=" + gaps.str();
            case Family::Theorem2:
                return "t2 beta=" + alpha.beta_str() + " gaps=" + gaps.str();
            case Family::Remark3:
                return "r3 gaps=" + gaps.str();
        }
        return {};
    }
};

GapSequence require_parity(const GapSequence& g, const char* who) {
    if (!g.parity_locked())
        throw std::invalid_argument(std::string(who) + ": gaps must be parity-locked");
    return g;
}

}  // namespace

SymbolicPoint point_lemma1(const GapSequence& g) {
    auto impl = std::make_shared<FamilyPoint>(Family::Lemma1, require_parity(g, "point_lemma1"));
    return SymbolicPoint(std::move(impl));
}

BigUint shift_exponent_rn(const GapSequence& g, int n) {
    if (n < 2 || n > g.block_count())
        throw std::invalid_argument("shift_exponent_rn: n must be in [2, block_count]");
    BigUint r = BigUint::power_of_two(g.exponents()[size_t(n - 1)]);
    r.mul_small(3);
    r -= g.boundary(n - 1);
    return r;
}

SymbolicPoint point_theorem1(uint64_t i, const GapSequence& g) {
    if (i == 0) throw std::invalid_argument("point_theorem1: i must be positive");
    auto impl = std::make_shared<FamilyPoint>(Family::Theorem1, require_parity(g, "point_theorem1"));
    impl->t1_index = i;
    return SymbolicPoint(std::move(impl));
}

SymbolicPoint point_theorem2(const AlphaCode& alpha, const GapSequence& g) {
    auto impl = std::make_shared<FamilyPoint>(Family::Theorem2, g);
    impl->alpha = alpha;
    return SymbolicPoint(std::move(impl));
}

SymbolicPoint point_remark3(const GapSequence& g) {
    auto impl = std::make_shared<FamilyPoint>(Family::Remark3, require_parity(g, "point_remark3"));
    return SymbolicPoint(std::move(impl));
}

std::optional<BlockStructure> block_structure(const SymbolicPoint& x) {
    auto* fam = dynamic_cast<const FamilyPoint*>(x.impl());
    if (!fam) return std::nullopt;
    BlockStructure bs{fam->gaps, {}};
    bs.complemented.resize(size_t(fam->gaps.block_count()));
    for (int j = 1; j <= fam->gaps.block_count(); ++j)
        bs.complemented[size_t(j - 1)] = fam->complements_block(j);
    return bs;
}

namespace {

// descriptors are space-separated "key=value" items after the leading tag
struct DescriptorFields {
    std::string tag;
    std::vector<std::pair<std::string, std::string>> fields;

    const std::string& get(const std::string& key) const {
        for (auto& [k, v] : fields)
            if (k == key) return v;
        throw std::invalid_argument("descriptor: missing field '" + key + "'");
    }
};

DescriptorFields split_descriptor(const std::string& text) {
    DescriptorFields d;
    std::stringstream ss(text);
    if (!(ss >> d.tag)) throw std::invalid_argument("descriptor: empty");
    std::string item;
    while (ss >> item) {
        auto eq = item.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument("descriptor: expected key=value, got '" + item + "'");
        std::string key = item.substr(0, eq);
        std::string val = item.substr(eq + 1);
        if (key == "of") {  // the rest of the line is the inner descriptor
            std::string rest;
            std::getline(ss, rest);
            d.fields.emplace_back(key, val + rest);
            break;
        }
        d.fields.emplace_back(key, val);
    }
    return d;
}

}  // namespace

SymbolicPoint parse_descriptor(const std::string& text) {
    DescriptorFields d = split_descriptor(text);
    if (d.tag == "morse") return morse_point();
    if (d.tag == "const") {
        const std::string& b = d.get("b");
        if (b != "0" && b != "1") throw std::invalid_argument("descriptor: const b must be 0 or 1");
        return constant_point(uint8_t(b[0] - '0'));
    }
    if (d.tag == "word") {
        const std::string& t = d.get("tail");
        if (t != "0" && t != "1") throw std::invalid_argument("descriptor: word tail must be 0 or 1");
        return word_point(Word(d.get("w")), uint8_t(t[0] - '0'));
    }
    if (d.tag == "lemma1") return point_lemma1(GapSequence::parse(d.get("gaps"), true));
    if (d.tag == "t1") {
        uint64_t i = 0;
        try {
            size_t pos = 0;
            i = std::stoull(d.get("i"), &pos);
            if (pos != d.get("i").size()) throw std::invalid_argument("");
        } catch (const std::exception&) {
            throw std::invalid_argument("descriptor: bad index '" + d.get("i") + "'");
        }
        return point_theorem1(i, GapSequence::parse(d.get("gaps"), true));
    }
    if (d.tag == "t2") {
        return point_theorem2(AlphaCode::parse(d.get("beta")),
                              GapSequence::parse(d.get("gaps"), false));
    }
    if (d.tag == "r3") return point_remark3(GapSequence::parse(d.get("gaps"), true));
    if (d.tag == "shift") {
        BigUint k = BigUint::from_decimal(d.get("k"));
        return shift(parse_descriptor(d.get("of")), std::move(k));
    }
    throw std::invalid_argument("descriptor: unknown tag '" + d.tag + "'");
}

}  // namespace morsedc
