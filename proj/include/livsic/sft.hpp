#pragma once

#include <cstddef>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "livsic/limits.hpp"
#include "livsic/rational.hpp"
#include "livsic/word.hpp"

namespace livsic {

/// Subshift of finite type on symbols 0..k-1 given by a 0/1 transition matrix.
/// Construction checks only the shape (square, k >= 2, entries in {0,1});
/// validate_sft() decides the remaining invariants.
class SftSpec {
 public:
  SftSpec(int alphabet_size, std::vector<std::vector<int>> transition);

  static SftSpec full_shift(int alphabet_size);
  static SftSpec golden_mean();

  int alphabet_size() const { return k_; }
  const std::vector<std::vector<int>>& transition() const { return a_; }
  bool allows(int from, int to) const { return a_[from][to] != 0; }

  /// Consecutive symbols admissible (no wrap-around).
  bool admissible(std::span<const int> word) const;
  /// Admissible including the wrap word[n-1] -> word[0].
  bool cyclically_admissible(std::span<const int> word) const;

  bool operator==(const SftSpec&) const = default;

 private:
  int k_;
  std::vector<std::vector<int>> a_;
};

struct ValidationReport {
  bool irreducible = false;
  bool aperiodic = false;
  /// gcd of cycle lengths of the symbol graph (meaningful when irreducible).
  int period = 0;
  std::size_t component_count = 0;
  std::vector<int> dead_rows;
  std::vector<int> dead_columns;
  /// First (i, j) with j unreachable from i, 0-based.
  std::optional<std::pair<int, int>> unreachable;

  bool ok() const { return irreducible && dead_rows.empty() && dead_columns.empty(); }
};

ValidationReport validate_sft(const SftSpec& spec);

/// Throws DeadSymbol or NotIrreducible (with the witness in details) unless
/// validate_sft(spec).ok().
void require_valid(const SftSpec& spec);

struct BlockEdge {
  std::size_t tail;
  std::size_t head;
};

/// Higher-block presentation: vertices are the admissible r-words, edges the
/// admissible (r+1)-words, both in lexicographic order. Edge w joins w[0..r-1]
/// to w[1..r].
class BlockGraph {
 public:
  BlockGraph(int block_length, std::vector<Word> blocks, std::vector<Word> edge_words);

  int block_length() const { return r_; }
  const std::vector<Word>& blocks() const { return blocks_; }
  const std::vector<Word>& edge_words() const { return edge_words_; }
  const std::vector<BlockEdge>& edges() const { return edges_; }
  const std::vector<std::size_t>& out_edges(std::size_t block) const { return out_[block]; }
  std::optional<std::size_t> find_block(std::span<const int> word) const;
  std::optional<std::size_t> find_edge(std::span<const int> word) const;

 private:
  int r_;
  std::vector<Word> blocks_;
  std::vector<Word> edge_words_;
  std::vector<BlockEdge> edges_;
  std::vector<std::vector<std::size_t>> out_;
  std::map<Word, std::size_t> block_index_;
  std::map<Word, std::size_t> edge_index_;
};

/// Requires a validated spec. RangeTooLarge when the number of blocks or
/// edges would exceed limits.max_blocks.
BlockGraph build_block_graph(const SftSpec& spec, int block_length, const Limits& limits = {});

/// All admissible words of the given length, lexicographic.
std::vector<Word> admissible_words(const SftSpec& spec, int length, std::size_t cap);

/// Primitive cyclic word stored as its least rotation.
struct PeriodicOrbit {
  Word word;

  std::size_t period() const { return word.size(); }
  auto operator<=>(const PeriodicOrbit& other) const {
    if (word.size() != other.word.size()) return word.size() <=> other.word.size();
    return word <=> other.word;
  }
  bool operator==(const PeriodicOrbit&) const = default;
};

/// Canonical orbit of a primitive cyclically admissible word; throws
/// InadmissibleWord otherwise, RangeMismatch when the word is a proper power.
PeriodicOrbit make_orbit(const SftSpec& spec, std::span<const int> word);

/// Visits every primitive periodic orbit of period <= max_period in
/// (period, word) order.
void for_each_periodic_orbit(const SftSpec& spec, int max_period,
                             const std::function<void(const PeriodicOrbit&)>& visit,
                             const Limits& limits = {});

std::vector<PeriodicOrbit> enumerate_periodic_orbits(const SftSpec& spec, int max_period,
                                                     const Limits& limits = {});

/// trace(A^n) in exact arithmetic: the number of points of period dividing n.
BigInt count_periodic_points(const SftSpec& spec, int n);

}  // namespace livsic
