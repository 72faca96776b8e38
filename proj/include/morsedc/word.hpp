#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace morsedc {

/// Finite binary word. Symbols are 0/1, stored one byte each; positions are
/// 0-based in this module (infinite sequences are 1-based, see symseq).
class Word {
public:
    Word() = default;
    explicit Word(std::string_view ascii);
    static Word from_bits(std::vector<uint8_t> bits);

    size_t length() const { return bits_.size(); }
    bool empty() const { return bits_.empty(); }
    uint8_t at(size_t i) const { return bits_[i]; }

    std::string str() const;
    Word slice(size_t start, size_t len) const;

    const std::vector<uint8_t>& bits() const { return bits_; }

    friend bool operator==(const Word&, const Word&) = default;

private:
    std::vector<uint8_t> bits_;
};

inline constexpr unsigned kMaxBlockOrder = 30;  // 2^30 symbols, 1 GiB materialized

/// The doubling recurrence: order 0 is "0", each next block is the previous
/// one followed by its complement. Length 2^order.
Word morse_block(unsigned order, unsigned max_order = kMaxBlockOrder);

Word complement(const Word& w);
Word concat(const Word& a, const Word& b);

/// Occurrence of a squarish factor: start position and block length.
struct PatternWitness {
    size_t start;
    size_t block_len;
    friend bool operator==(const PatternWitness&, const PatternWitness&) = default;
};

/// First (least start, then least block length) factor B B b with b the first
/// symbol of B. Absent means the word is overlap-free.
std::optional<PatternWitness> find_bbb_pattern(const Word& w);

/// First factor B B B. Absent means cube-free.
std::optional<PatternWitness> find_cube(const Word& w);

bool is_factor(const Word& needle, const Word& haystack);

}  // namespace morsedc
