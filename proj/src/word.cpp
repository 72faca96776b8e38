#include "morsedc/word.hpp"

#include <algorithm>
#include <stdexcept>

#include "morsedc/errors.hpp"

namespace morsedc {

Word::Word(std::string_view ascii) {
    bits_.reserve(ascii.size());
    for (char c : ascii) {
        if (c != '0' && c != '1') throw std::invalid_argument("Word: symbols must be 0 or 1");
        bits_.push_back(uint8_t(c - '0'));
    }
}

Word Word::from_bits(std::vector<uint8_t> bits) {
    for (uint8_t b : bits)
        if (b > 1) throw std::invalid_argument("Word: symbols must be 0 or 1");
    Word w;
    w.bits_ = std::move(bits);
    return w;
}

std::string Word::str() const {
    std::string s(bits_.size(), '0');
    for (size_t i = 0; i < bits_.size(); ++i) s[i] = char('0' + bits_[i]);
    return s;
}

Word Word::slice(size_t start, size_t len) const {
    if (start + len > bits_.size()) throw std::out_of_range("Word::slice");
    Word w;
    w.bits_.assign(bits_.begin() + ptrdiff_t(start), bits_.begin() + ptrdiff_t(start + len));
    return w;
}

Word morse_block(unsigned order, unsigned max_order) {
    if (order > max_order)
        throw CapacityError("morse_block: order " + std::to_string(order) +
                            " exceeds cap " + std::to_string(max_order));
    std::vector<uint8_t> bits{0};
    bits.reserve(size_t(1) << order);
    for (unsigned i = 0; i < order; ++i) {
        size_t half = bits.size();
        for (size_t j = 0; j < half; ++j) bits.push_back(uint8_t(1 - bits[j]));
    }
    return Word::from_bits(std::move(bits));
}

Word complement(const Word& w) {
    std::vector<uint8_t> bits(w.bits());
    for (auto& b : bits) b = uint8_t(1 - b);
    return Word::from_bits(std::move(bits));
}

Word concat(const Word& a, const Word& b) {
    std::vector<uint8_t> bits(a.bits());
    bits.insert(bits.end(), b.bits().begin(), b.bits().end());
    return Word::from_bits(std::move(bits));
}

namespace {

// Scan for period-b repetitions with total length `need` (b+1 symbols of
// common extension gives BBb, 2b gives BBB). For each offset b the common
// extension lengths lce[i] of positions (i, i+b) are built right to left in
// O(n), so the whole scan is O(n^2) with O(n) memory.
std::optional<PatternWitness> find_repetition(const Word& w, bool cube) {
    size_t n = w.length();
    std::optional<PatternWitness> best;
    std::vector<size_t> lce(n + 1, 0);
    for (size_t b = 1; 2 * b + (cube ? b : 1) <= n; ++b) {
        std::fill(lce.begin(), lce.end(), 0);
        for (size_t i = n - b; i-- > 0;)
            lce[i] = (w.at(i) == w.at(i + b)) ? lce[i + 1] + 1 : 0;
        size_t need = cube ? 2 * b : b + 1;
        for (size_t s = 0; s + b + need <= n; ++s) {
            if (lce[s] >= need) {
                if (!best || s < best->start || (s == best->start && b < best->block_len))
                    best = PatternWitness{s, b};
                break;  // earliest start for this offset
            }
        }
    }
    return best;
}

}  // namespace

std::optional<PatternWitness> find_bbb_pattern(const Word& w) {
    return find_repetition(w, /*cube=*/false);
}

std::optional<PatternWitness> find_cube(const Word& w) {
    return find_repetition(w, /*cube=*/true);
}

bool is_factor(const Word& needle, const Word& haystack) {
    if (needle.empty()) return true;
    if (needle.length() > haystack.length()) return false;
    const auto& n = needle.bits();
    const auto& h = haystack.bits();
    return std::search(h.begin(), h.end(), n.begin(), n.end()) != h.end();
}

}  // namespace morsedc
