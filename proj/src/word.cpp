#include "livsic/word.hpp"

#include "livsic/error.hpp"

namespace livsic {

std::string word_to_string(std::span<const int> word, int alphabet_size) {
  std::string out;
  const bool compact = alphabet_size <= 9;
  for (std::size_t i = 0; i < word.size(); ++i) {
    if (!compact && i > 0) out.push_back('.');
    out += std::to_string(word[i] + 1);
  }
  return out;
}

Word parse_word(std::string_view text, int alphabet_size) {
  Word word;
  auto push = [&](int symbol) {
    if (symbol < 1 || symbol > alphabet_size)
      throw Error(ErrorCode::ParseError, "symbol out of range in word '" + std::string(text) + "'");
    word.push_back(symbol - 1);
  };
  if (text.empty()) throw Error(ErrorCode::ParseError, "empty word");
  if (alphabet_size <= 9) {
    for (char c : text) {
      if (c < '0' || c > '9') throw Error(ErrorCode::ParseError, "bad character in word '" + std::string(text) + "'");
      push(c - '0');
    }
    return word;
  }
  std::size_t start = 0;
  while (start <= text.size()) {
    auto dot = text.find('.', start);
    auto piece = text.substr(start, dot == std::string_view::npos ? std::string_view::npos : dot - start);
    if (piece.empty()) throw Error(ErrorCode::ParseError, "empty symbol in word '" + std::string(text) + "'");
    int value = 0;
    for (char c : piece) {
      if (c < '0' || c > '9') throw Error(ErrorCode::ParseError, "bad character in word '" + std::string(text) + "'");
      value = value * 10 + (c - '0');
      if (value > alphabet_size) break;
    }
    push(value);
    if (dot == std::string_view::npos) break;
    start = dot + 1;
  }
  return word;
}

std::size_t least_rotation(std::span<const int> s) {
  const std::size_t n = s.size();
  if (n == 0) return 0;
  std::vector<long> fail(2 * n, -1);
  std::size_t k = 0;
  for (std::size_t j = 1; j < 2 * n; ++j) {
    const int sj = s[j % n];
    long i = fail[j - k - 1];
    while (i != -1 && sj != s[(k + static_cast<std::size_t>(i) + 1) % n]) {
      if (sj < s[(k + static_cast<std::size_t>(i) + 1) % n]) k = j - static_cast<std::size_t>(i) - 1;
      i = fail[static_cast<std::size_t>(i)];
    }
    if (i == -1 && sj != s[(k + static_cast<std::size_t>(i) + 1) % n]) {
      if (sj < s[(k + static_cast<std::size_t>(i) + 1) % n]) k = j;
      fail[j - k] = -1;
    } else {
      fail[j - k] = i + 1;
    }
  }
  return k % n;
}

std::size_t primitive_period(std::span<const int> word) {
  const std::size_t n = word.size();
  for (std::size_t p = 1; p < n; ++p) {
    if (n % p != 0) continue;
    bool repeats = true;
    for (std::size_t i = p; i < n && repeats; ++i) repeats = word[i] == word[i - p];
    if (repeats) return p;
  }
  return n;
}

bool is_primitive(std::span<const int> word) { return primitive_period(word) == word.size(); }

Word rotate(std::span<const int> word, std::size_t shift) {
  Word out(word.size());
  for (std::size_t i = 0; i < word.size(); ++i) out[i] = word[(i + shift) % word.size()];
  return out;
}

Word canonical_cyclic_root(std::span<const int> word) {
  const auto root = word.first(primitive_period(word));
  return rotate(root, least_rotation(root));
}

}  // namespace livsic
