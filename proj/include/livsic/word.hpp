#pragma once

#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace livsic {

/// Symbols are 0-based internally and printed 1-based.
using Word = std::vector<int>;

/// Renders a word 1-based: "1122" for alphabets of at most nine symbols,
/// dot-separated ("10.2.3") otherwise.
std::string word_to_string(std::span<const int> word, int alphabet_size);

/// Inverse of word_to_string. Raises ParseError on symbols outside 1..k.
Word parse_word(std::string_view text, int alphabet_size);

/// Index of the lexicographically least rotation (Booth's algorithm).
std::size_t least_rotation(std::span<const int> word);

/// Length of the primitive root: the least p dividing n with word = root^(n/p).
std::size_t primitive_period(std::span<const int> word);

bool is_primitive(std::span<const int> word);

Word rotate(std::span<const int> word, std::size_t shift);

/// Least rotation of the primitive root of a cyclic word.
Word canonical_cyclic_root(std::span<const int> word);

}  // namespace livsic
