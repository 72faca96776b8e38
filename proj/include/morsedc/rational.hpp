#pragma once

#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>
#include <string_view>

namespace morsedc {

/// Exact nonnegative rational with 64-bit numerator and denominator.
/// Used for distance thresholds (delta values), tolerances and the truncated
/// metric values num/2^L. All comparisons cross-multiply in 128 bits, so any
/// num, den < 2^63 is safe.
struct Rational {
    uint64_t num = 0;
    uint64_t den = 1;

    Rational() = default;
    Rational(uint64_t n, uint64_t d) : num(n), den(d) {
        if (den == 0) throw std::invalid_argument("Rational: zero denominator");
        normalize();
    }
    static Rational zero() { return Rational(); }
    static Rational one() { return Rational(1, 1); }

    /// 2^-l
    static Rational pow2_inv(unsigned l) {
        if (l >= 63) throw std::invalid_argument("Rational: exponent too large");
        return Rational(1, uint64_t(1) << l);
    }
    /// 1 - 2^-r
    static Rational one_minus_pow2_inv(unsigned r) {
        if (r >= 63) throw std::invalid_argument("Rational: exponent too large");
        return Rational((uint64_t(1) << r) - 1, uint64_t(1) << r);
    }

    /// Accepts "p/q" or a bare integer "p".
    static Rational parse(std::string_view s) {
        auto slash = s.find('/');
        auto to_u64 = [](std::string_view t) -> uint64_t {
            if (t.empty()) throw std::invalid_argument("Rational: empty number");
            uint64_t v = 0;
            for (char c : t) {
                if (c < '0' || c > '9') throw std::invalid_argument("Rational: bad digit");
                if (v > (UINT64_MAX - 9) / 10) throw std::invalid_argument("Rational: overflow");
                v = v * 10 + uint64_t(c - '0');
            }
            return v;
        };
        if (slash == std::string_view::npos) return Rational(to_u64(s), 1);
        return Rational(to_u64(s.substr(0, slash)), to_u64(s.substr(slash + 1)));
    }

    double value() const { return double(num) / double(den); }

    std::string str() const {
        if (den == 1) return std::to_string(num);
        return std::to_string(num) + "/" + std::to_string(den);
    }

    friend bool operator==(const Rational& a, const Rational& b) {
        return a.num == b.num && a.den == b.den;
    }
    friend bool operator<(const Rational& a, const Rational& b) {
        return (unsigned __int128)a.num * b.den < (unsigned __int128)b.num * a.den;
    }
    friend bool operator<=(const Rational& a, const Rational& b) { return !(b < a); }
    friend bool operator>(const Rational& a, const Rational& b) { return b < a; }
    friend bool operator>=(const Rational& a, const Rational& b) { return !(a < b); }

private:
    void normalize() {
        uint64_t g = std::gcd(num, den);
        if (g > 1) {
            num /= g;
            den /= g;
        }
        if (num == 0) den = 1;
    }
};

}  // namespace morsedc
