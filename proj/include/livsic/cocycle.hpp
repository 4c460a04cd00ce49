#pragma once

#include <map>
#include <span>
#include <string>

#include "livsic/error.hpp"
#include "livsic/sft.hpp"

namespace livsic {

/// A function on the shift depending on coordinates x_0..x_range, stored as
/// its value on every admissible (range+1)-word. Construction rejects
/// missing or extra words.
template <class Value>
class CocycleTable {
 public:
  CocycleTable(const SftSpec& sft, int range, std::map<Word, Value> values)
      : sft_(sft), range_(range), values_(std::move(values)) {
    if (range_ < 0) throw Error(ErrorCode::InvalidArgument, "cocycle range must be non-negative");
    for (const auto& [word, value] : values_) {
      if (word.size() != static_cast<std::size_t>(range_ + 1) || !sft_.admissible(word))
        throw Error(ErrorCode::RangeMismatch, "cocycle value on a word outside its domain",
                    {{"word", word_to_string(word, sft_.alphabet_size())}});
    }
    for (const auto& word : admissible_words(sft_, range_ + 1, values_.size() + 1)) {
      if (!values_.contains(word))
        throw Error(ErrorCode::RangeMismatch, "cocycle value missing for an admissible word",
                    {{"word", word_to_string(word, sft_.alphabet_size())}});
    }
  }

  const SftSpec& sft() const { return sft_; }
  int range() const { return range_; }
  /// Block length of the graph carrying the cocycle as edge weights.
  int block_length() const { return range_ < 1 ? 1 : range_; }
  const std::map<Word, Value>& values() const { return values_; }

  /// Value on the leading (range+1)-window of `word`.
  const Value& leading(std::span<const int> word) const {
    const auto window = word.first(static_cast<std::size_t>(range_ + 1));
    auto it = values_.find(Word(window.begin(), window.end()));
    if (it == values_.end())
      throw Error(ErrorCode::InadmissibleWord, "window is not admissible",
                  {{"word", word_to_string(window, sft_.alphabet_size())}});
    return it->second;
  }

  /// Value on the cyclic window of `cyclic_word` starting at `position`.
  const Value& cyclic_window(std::span<const int> cyclic_word, std::size_t position) const {
    Word window(static_cast<std::size_t>(range_ + 1));
    for (std::size_t i = 0; i < window.size(); ++i) window[i] = cyclic_word[(position + i) % cyclic_word.size()];
    return leading(window);
  }

 private:
  SftSpec sft_;
  int range_;
  std::map<Word, Value> values_;
};

using RationalCocycle = CocycleTable<Rational>;

/// f^n along a periodic orbit: the sum of f over the n cyclic windows.
Rational birkhoff_sum(const RationalCocycle& f, const PeriodicOrbit& orbit);

/// Same for an arbitrary cyclically admissible word (not necessarily primitive).
Rational cyclic_sum(const RationalCocycle& f, std::span<const int> cyclic_word);

}  // namespace livsic
