#include "morsedc/symseq.hpp"

#include <limits>
#include <stdexcept>
#include <utility>

#include "morsedc/errors.hpp"

namespace morsedc {

namespace {

struct MorsePoint final : PointImpl {
    uint8_t symbol(const BigUint& index) const override {
        if (index.is_zero()) throw std::invalid_argument("symbol index is 1-based");
        BigUint n = index;
        n -= BigUint(1);
        return uint8_t(n.popcount() & 1);
    }
    uint8_t symbol(uint64_t index) const override {
        if (index == 0) throw std::invalid_argument("symbol index is 1-based");
        return uint8_t(__builtin_popcountll(index - 1) & 1);
    }
    std::string descriptor() const override { return "morse"; }
};

struct ConstantPoint final : PointImpl {
    uint8_t bit;
    explicit ConstantPoint(uint8_t b) : bit(b) {}
    uint8_t symbol(const BigUint&) const override { return bit; }
    uint8_t symbol(uint64_t) const override { return bit; }
    std::string descriptor() const override { return std::string("const b=") + char('0' + bit); }
};

struct WordPoint final : PointImpl {
    Word head;
    uint8_t tail;
    WordPoint(Word w, uint8_t t) : head(std::move(w)), tail(t) {}
    uint8_t symbol(const BigUint& index) const override {
        if (index.is_zero()) throw std::invalid_argument("symbol index is 1-based");
        if (!index.fits_u64()) return tail;
        return symbol(index.to_u64());
    }
    uint8_t symbol(uint64_t index) const override {
        if (index == 0) throw std::invalid_argument("symbol index is 1-based");
        return index <= head.length() ? head.at(size_t(index - 1)) : tail;
    }
    std::string descriptor() const override {
        return "word w=" + head.str() + " tail=" + char('0' + tail);
    }
};

struct ShiftedPoint final : PointImpl {
    BigUint offset;
    bool offset_small;
    uint64_t offset_u64;
    std::shared_ptr<const PointImpl> inner;

    ShiftedPoint(BigUint k, std::shared_ptr<const PointImpl> in)
        : offset(std::move(k)), inner(std::move(in)) {
        offset_small = offset.fits_u64();
        offset_u64 = offset_small ? offset.to_u64() : 0;
    }
    uint8_t symbol(const BigUint& index) const override { return inner->symbol(index + offset); }
    uint8_t symbol(uint64_t index) const override {
        if (offset_small && index <= std::numeric_limits<uint64_t>::max() - offset_u64)
            return inner->symbol(index + offset_u64);
        return inner->symbol(BigUint(index) + offset);
    }
    std::string descriptor() const override {
        return "shift k=" + offset.to_decimal() + " of=" + inner->descriptor();
    }
};

}  // namespace

SymbolicPoint morse_point() {
    static const auto impl = std::make_shared<const MorsePoint>();
    return SymbolicPoint(impl);
}

SymbolicPoint constant_point(uint8_t bit) {
    if (bit > 1) throw std::invalid_argument("constant_point: bit must be 0 or 1");
    return SymbolicPoint(std::make_shared<const ConstantPoint>(bit));
}

SymbolicPoint word_point(Word prefix, uint8_t tail) {
    if (tail > 1) throw std::invalid_argument("word_point: tail must be 0 or 1");
    return SymbolicPoint(std::make_shared<const WordPoint>(std::move(prefix), tail));
}

SymbolicPoint shift(const SymbolicPoint& x, BigUint k) {
    if (k.is_zero()) return x;
    if (auto* nested = dynamic_cast<const ShiftedPoint*>(x.impl())) {
        return SymbolicPoint(
            std::make_shared<const ShiftedPoint>(k + nested->offset, nested->inner));
    }
    return SymbolicPoint(std::make_shared<const ShiftedPoint>(std::move(k), x.share()));
}

SymbolicPoint shift(const SymbolicPoint& x, uint64_t k) { return shift(x, BigUint(k)); }

Word prefix(const SymbolicPoint& x, uint64_t n, uint64_t cap) {
    if (n > cap)
        throw CapacityError("prefix: length " + std::to_string(n) + " exceeds cap " +
                            std::to_string(cap));
    std::vector<uint8_t> bits;
    bits.reserve(size_t(n));
    for (uint64_t i = 1; i <= n; ++i) bits.push_back(x.symbol_at(i));
    return Word::from_bits(std::move(bits));
}

static void check_precision(int precision) {
    if (precision < 1 || precision > kMaxPrecision)
        throw CapacityError("precision must be in [1, " + std::to_string(kMaxPrecision) + "]");
}

uint64_t distance_numerator_at(const PointImpl& u, const PointImpl& v, uint64_t base_u,
                               uint64_t base_v, int precision) {
    uint64_t num = 0;
    for (int i = 1; i <= precision; ++i) {
        if (u.symbol(base_u + uint64_t(i)) != v.symbol(base_v + uint64_t(i)))
            num |= uint64_t(1) << (precision - i);
    }
    return num;
}

TruncatedDistance truncated_distance(const SymbolicPoint& u, const SymbolicPoint& v,
                                     int precision) {
    check_precision(precision);
    return TruncatedDistance{distance_numerator_at(*u.impl(), *v.impl(), 0, 0, precision),
                             precision};
}

DistanceCmp compare_distance(const TruncatedDistance& d, const Rational& delta) {
    // threshold on the 2^-L lattice: A = ceil(delta * 2^L)
    unsigned __int128 t = (unsigned __int128)delta.num << d.precision;
    unsigned __int128 a = (t + delta.den - 1) / delta.den;
    if (d.numerator >= a) return DistanceCmp::AtLeast;
    if (d.numerator + 1 < a) return DistanceCmp::Below;
    return DistanceCmp::Indeterminate;
}

}  // namespace morsedc
