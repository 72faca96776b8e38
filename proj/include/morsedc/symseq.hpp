#pragma once

#include <memory>
#include <string>

#include "morsedc/bigint.hpp"
#include "morsedc/rational.hpp"
#include "morsedc/word.hpp"

namespace morsedc {

/// Evaluation interface for a point of the one-sided 2-shift. Indices are
/// 1-based, matching u = u_1 u_2 u_3 ...; evaluation must be pure (same index,
/// same symbol) so points are safe to query from any number of threads.
class PointImpl {
public:
    virtual ~PointImpl() = default;

    virtual uint8_t symbol(const BigUint& index) const = 0;

    /// Fast path for indices that fit a machine word; sweeps live here.
    virtual uint8_t symbol(uint64_t index) const { return symbol(BigUint(index)); }

    /// Serialized construction descriptor; parse_descriptor round-trips it.
    virtual std::string descriptor() const = 0;
};

/// Value handle on an immutable lazy point.
class SymbolicPoint {
public:
    SymbolicPoint() = default;
    explicit SymbolicPoint(std::shared_ptr<const PointImpl> impl) : impl_(std::move(impl)) {}

    uint8_t symbol_at(uint64_t index) const { return impl_->symbol(index); }
    uint8_t symbol_at(const BigUint& index) const { return impl_->symbol(index); }
    std::string descriptor() const { return impl_->descriptor(); }
    const PointImpl* impl() const { return impl_.get(); }
    std::shared_ptr<const PointImpl> share() const { return impl_; }

private:
    std::shared_ptr<const PointImpl> impl_;
};

/// The fixed point of the doubling recurrence: symbol n is the parity of
/// popcount(n-1). Its length-2^k prefixes are the blocks of `morse_block`.
SymbolicPoint morse_point();

/// Constant sequence b b b ...
SymbolicPoint constant_point(uint8_t bit);

/// `prefix` then all `tail` symbols; handy for controls in tests.
SymbolicPoint word_point(Word prefix, uint8_t tail = 0);

/// sigma^k: drops the first k symbols. Nested shifts collapse into one.
SymbolicPoint shift(const SymbolicPoint& x, BigUint k);
SymbolicPoint shift(const SymbolicPoint& x, uint64_t k);

inline constexpr uint64_t kPrefixCap = uint64_t(1) << 24;

Word prefix(const SymbolicPoint& x, uint64_t n, uint64_t cap = kPrefixCap);

inline constexpr int kDefaultPrecision = 32;
inline constexpr int kMaxPrecision = 62;

/// Truncation of the metric d(u,v) = sum delta(u_i,v_i)/2^i to L terms.
/// numerator/2^L is a certified lower bound; the true distance lies in
/// [value, value + 2^-L].
struct TruncatedDistance {
    uint64_t numerator = 0;
    int precision = kDefaultPrecision;

    Rational value() const { return Rational(numerator, uint64_t(1) << precision); }
    Rational upper() const { return Rational(numerator + 1, uint64_t(1) << precision); }
    Rational error_bound() const { return Rational(1, uint64_t(1) << precision); }
};

TruncatedDistance truncated_distance(const SymbolicPoint& u, const SymbolicPoint& v,
                                     int precision = kDefaultPrecision);

/// Distance between sigma^{base_u}(u) and sigma^{base_v}(v) without building
/// shifted points; the horizon sweeps call this in their inner loop.
uint64_t distance_numerator_at(const PointImpl& u, const PointImpl& v, uint64_t base_u,
                               uint64_t base_v, int precision);

/// Conservative comparison of a truncated distance against a threshold:
/// Below only when value + 2^-L < delta, AtLeast only when value >= delta.
enum class DistanceCmp { Below, AtLeast, Indeterminate };

DistanceCmp compare_distance(const TruncatedDistance& d, const Rational& delta);

}  // namespace morsedc
