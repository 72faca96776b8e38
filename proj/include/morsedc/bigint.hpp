#pragma once

#include <compare>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace morsedc {

/// Arbitrary-precision unsigned integer, little-endian 64-bit limbs.
///
/// Sequence indices are 1-based and unbounded: block boundaries grow like
/// 2^{a_n}, so index arithmetic cannot live in uint64_t. Only the handful of
/// operations the index calculus needs are provided (add, subtract, compare,
/// powers of two, popcount, decimal I/O, small multiply).
class BigUint {
public:
    BigUint() = default;
    BigUint(uint64_t v) {
        if (v != 0) limbs_.push_back(v);
    }

    static BigUint power_of_two(uint64_t exponent) {
        BigUint r;
        r.limbs_.assign(exponent / 64 + 1, 0);
        r.limbs_.back() = uint64_t(1) << (exponent % 64);
        return r;
    }

    static BigUint from_decimal(std::string_view s) {
        if (s.empty()) throw std::invalid_argument("BigUint: empty decimal string");
        BigUint r;
        for (char c : s) {
            if (c < '0' || c > '9')
                throw std::invalid_argument("BigUint: bad decimal digit");
            r.mul_small(10);
            r.add_small(uint64_t(c - '0'));
        }
        return r;
    }

    bool is_zero() const { return limbs_.empty(); }

    bool fits_u64() const { return limbs_.size() <= 1; }

    uint64_t to_u64() const {
        if (!fits_u64()) throw std::overflow_error("BigUint: value exceeds 64 bits");
        return limbs_.empty() ? 0 : limbs_[0];
    }

    /// Number of set bits. For indices p into a Morse block, the parity of
    /// popcount(p - 1) is the symbol itself.
    uint64_t popcount() const {
        uint64_t c = 0;
        for (uint64_t w : limbs_) c += uint64_t(__builtin_popcountll(w));
        return c;
    }

    bool bit(uint64_t i) const {
        size_t limb = i / 64;
        if (limb >= limbs_.size()) return false;
        return (limbs_[limb] >> (i % 64)) & 1;
    }

    /// Index of the highest set bit, or -1 for zero.
    int64_t top_bit() const {
        if (limbs_.empty()) return -1;
        return int64_t(limbs_.size() - 1) * 64 + (63 - __builtin_clzll(limbs_.back()));
    }

    BigUint& operator+=(const BigUint& o) {
        if (limbs_.size() < o.limbs_.size()) limbs_.resize(o.limbs_.size(), 0);
        unsigned char carry = 0;
        size_t i = 0;
        for (; i < o.limbs_.size(); ++i)
            carry = add_with_carry(limbs_[i], o.limbs_[i], carry, limbs_[i]);
        for (; carry && i < limbs_.size(); ++i)
            carry = add_with_carry(limbs_[i], 0, carry, limbs_[i]);
        if (carry) limbs_.push_back(1);
        return *this;
    }

    BigUint& operator+=(uint64_t v) {
        add_small(v);
        return *this;
    }

    /// Subtraction; throws if the result would be negative.
    BigUint& operator-=(const BigUint& o) {
        if (*this < o) throw std::underflow_error("BigUint: negative subtraction");
        unsigned char borrow = 0;
        for (size_t i = 0; i < limbs_.size(); ++i) {
            uint64_t rhs = i < o.limbs_.size() ? o.limbs_[i] : 0;
            borrow = sub_with_borrow(limbs_[i], rhs, borrow, limbs_[i]);
        }
        trim();
        return *this;
    }

    friend BigUint operator+(BigUint a, const BigUint& b) { return a += b; }
    friend BigUint operator+(BigUint a, uint64_t b) { return a += b; }
    friend BigUint operator-(BigUint a, const BigUint& b) { return a -= b; }

    /// Value shifted left by `bits`.
    BigUint shl(uint64_t bits) const {
        if (is_zero()) return {};
        BigUint r;
        uint64_t limb_shift = bits / 64, bit_shift = bits % 64;
        r.limbs_.assign(limbs_.size() + limb_shift + 1, 0);
        for (size_t i = 0; i < limbs_.size(); ++i) {
            r.limbs_[i + limb_shift] |= limbs_[i] << bit_shift;
            if (bit_shift)
                r.limbs_[i + limb_shift + 1] |= limbs_[i] >> (64 - bit_shift);
        }
        r.trim();
        return r;
    }

    BigUint& mul_small(uint64_t m) {
        unsigned __int128 carry = 0;
        for (auto& w : limbs_) {
            unsigned __int128 p = (unsigned __int128)w * m + carry;
            w = uint64_t(p);
            carry = p >> 64;
        }
        if (carry) limbs_.push_back(uint64_t(carry));
        trim();
        return *this;
    }

    friend std::strong_ordering operator<=>(const BigUint& a, const BigUint& b) {
        if (a.limbs_.size() != b.limbs_.size())
            return a.limbs_.size() <=> b.limbs_.size();
        for (size_t i = a.limbs_.size(); i-- > 0;)
            if (a.limbs_[i] != b.limbs_[i]) return a.limbs_[i] <=> b.limbs_[i];
        return std::strong_ordering::equal;
    }
    friend bool operator==(const BigUint& a, const BigUint& b) { return a.limbs_ == b.limbs_; }

    std::string to_decimal() const {
        if (is_zero()) return "0";
        std::vector<uint64_t> work(limbs_);
        std::string out;
        while (!work.empty()) {
            // divide by 10^19, the largest power of ten in a limb
            constexpr uint64_t chunk = 10000000000000000000ull;
            unsigned __int128 rem = 0;
            for (size_t i = work.size(); i-- > 0;) {
                unsigned __int128 cur = (rem << 64) | work[i];
                work[i] = uint64_t(cur / chunk);
                rem = cur % chunk;
            }
            while (!work.empty() && work.back() == 0) work.pop_back();
            std::string part = std::to_string(uint64_t(rem));
            if (!work.empty()) part.insert(0, 19 - part.size(), '0');
            out.insert(0, part);
        }
        return out;
    }

private:
    void add_small(uint64_t v) {
        if (v == 0) return;
        if (limbs_.empty()) {
            limbs_.push_back(v);
            return;
        }
        unsigned char carry = add_with_carry(limbs_[0], v, 0, limbs_[0]);
        for (size_t i = 1; carry && i < limbs_.size(); ++i)
            carry = add_with_carry(limbs_[i], 0, carry, limbs_[i]);
        if (carry) limbs_.push_back(1);
    }

    static unsigned char add_with_carry(uint64_t a, uint64_t b, unsigned char cin, uint64_t& out) {
        unsigned __int128 s = (unsigned __int128)a + b + cin;
        out = uint64_t(s);
        return (unsigned char)(s >> 64);
    }

    static unsigned char sub_with_borrow(uint64_t a, uint64_t b, unsigned char bin, uint64_t& out) {
        unsigned __int128 d = (unsigned __int128)a - b - bin;
        out = uint64_t(d);
        return (unsigned char)((d >> 64) ? 1 : 0);
    }

    void trim() {
        while (!limbs_.empty() && limbs_.back() == 0) limbs_.pop_back();
    }

    std::vector<uint64_t> limbs_;  // little endian, no trailing zeros
};

}  // namespace morsedc
