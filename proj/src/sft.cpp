#include "livsic/sft.hpp"

#include <deque>
#include <numeric>

#include "livsic/error.hpp"
#include "livsic/graph.hpp"

namespace livsic {

SftSpec::SftSpec(int alphabet_size, std::vector<std::vector<int>> transition)
    : k_(alphabet_size), a_(std::move(transition)) {
  if (k_ < 2) throw Error(ErrorCode::BadShape, "alphabet size must be at least 2", {{"k", k_}});
  if (a_.size() != static_cast<std::size_t>(k_))
    throw Error(ErrorCode::BadShape, "transition matrix must have k rows", {{"k", k_}, {"rows", a_.size()}});
  for (std::size_t i = 0; i < a_.size(); ++i) {
    if (a_[i].size() != static_cast<std::size_t>(k_))
      throw Error(ErrorCode::BadShape, "transition matrix must be square", {{"row", i + 1}, {"length", a_[i].size()}});
    for (std::size_t j = 0; j < a_[i].size(); ++j)
      if (a_[i][j] != 0 && a_[i][j] != 1)
        throw Error(ErrorCode::BadShape, "transition entries must be 0 or 1",
                    {{"row", i + 1}, {"column", j + 1}, {"value", a_[i][j]}});
  }
}

SftSpec SftSpec::full_shift(int alphabet_size) {
  return SftSpec(alphabet_size, std::vector<std::vector<int>>(alphabet_size, std::vector<int>(alphabet_size, 1)));
}

SftSpec SftSpec::golden_mean() { return SftSpec(2, {{1, 1}, {1, 0}}); }

bool SftSpec::admissible(std::span<const int> word) const {
  for (int s : word)
    if (s < 0 || s >= k_) return false;
  for (std::size_t i = 1; i < word.size(); ++i)
    if (!allows(word[i - 1], word[i])) return false;
  return true;
}

bool SftSpec::cyclically_admissible(std::span<const int> word) const {
  if (word.empty() || !admissible(word)) return false;
  return allows(word.back(), word.front());
}

namespace {

Digraph symbol_graph(const SftSpec& spec) {
  const int k = spec.alphabet_size();
  Digraph g(static_cast<std::size_t>(k));
  std::size_t edge = 0;
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j)
      if (spec.allows(i, j)) g.add_edge(edge++, static_cast<std::size_t>(i), static_cast<std::size_t>(j));
  return g;
}

int cycle_length_gcd(const Digraph& g) {
  std::vector<long> level(g.vertex_count(), -1);
  std::deque<std::size_t> queue{0};
  level[0] = 0;
  long d = 0;
  while (!queue.empty()) {
    const auto v = queue.front();
    queue.pop_front();
    for (const auto& arc : g.out(v)) {
      if (level[arc.target] < 0) {
        level[arc.target] = level[v] + 1;
        queue.push_back(arc.target);
      } else {
        d = std::gcd(d, std::labs(level[v] + 1 - level[arc.target]));
      }
    }
  }
  return static_cast<int>(d);
}

}  // namespace

ValidationReport validate_sft(const SftSpec& spec) {
  ValidationReport report;
  const int k = spec.alphabet_size();
  for (int i = 0; i < k; ++i) {
    bool row = false, column = false;
    for (int j = 0; j < k; ++j) {
      row = row || spec.allows(i, j);
      column = column || spec.allows(j, i);
    }
    if (!row) report.dead_rows.push_back(i);
    if (!column) report.dead_columns.push_back(i);
  }
  const Digraph g = symbol_graph(spec);
  strongly_connected_components(g, &report.component_count);
  if (auto pair = first_unreachable_pair(g)) {
    report.unreachable = std::make_pair(static_cast<int>(pair->first), static_cast<int>(pair->second));
  }
  report.irreducible = !report.unreachable.has_value();
  if (report.irreducible) {
    report.period = cycle_length_gcd(g);
    report.aperiodic = report.period == 1;
  }
  return report;
}

void require_valid(const SftSpec& spec) {
  const auto report = validate_sft(spec);
  if (!report.dead_rows.empty() || !report.dead_columns.empty()) {
    nlohmann::json rows = nlohmann::json::array(), columns = nlohmann::json::array();
    for (int r : report.dead_rows) rows.push_back(r + 1);
    for (int c : report.dead_columns) columns.push_back(c + 1);
    throw Error(ErrorCode::DeadSymbol, "transition matrix has a zero row or column",
                {{"zero_rows", rows}, {"zero_columns", columns}});
  }
  if (!report.irreducible) {
    const auto [i, j] = *report.unreachable;
    throw Error(ErrorCode::NotIrreducible, "symbol " + std::to_string(j + 1) + " is unreachable from symbol " + std::to_string(i + 1),
                {{"unreachable_pair", {i + 1, j + 1}}});
  }
}

BlockGraph::BlockGraph(int block_length, std::vector<Word> blocks, std::vector<Word> edge_words)
    : r_(block_length), blocks_(std::move(blocks)), edge_words_(std::move(edge_words)), out_(blocks_.size()) {
  for (std::size_t i = 0; i < blocks_.size(); ++i) block_index_.emplace(blocks_[i], i);
  edges_.reserve(edge_words_.size());
  for (std::size_t e = 0; e < edge_words_.size(); ++e) {
    const Word& w = edge_words_[e];
    const auto tail = find_block(std::span<const int>(w).first(static_cast<std::size_t>(r_)));
    const auto head = find_block(std::span<const int>(w).subspan(1));
    if (!tail || !head) throw Error(ErrorCode::RangeMismatch, "edge word does not overlap two blocks");
    edges_.push_back({*tail, *head});
    out_[*tail].push_back(e);
    edge_index_.emplace(w, e);
  }
}

std::optional<std::size_t> BlockGraph::find_block(std::span<const int> word) const {
  auto it = block_index_.find(Word(word.begin(), word.end()));
  if (it == block_index_.end()) return std::nullopt;
  return it->second;
}

std::optional<std::size_t> BlockGraph::find_edge(std::span<const int> word) const {
  auto it = edge_index_.find(Word(word.begin(), word.end()));
  if (it == edge_index_.end()) return std::nullopt;
  return it->second;
}

std::vector<Word> admissible_words(const SftSpec& spec, int length, std::size_t cap) {
  std::vector<Word> out;
  if (length <= 0) return out;
  Word w;
  const int k = spec.alphabet_size();
  std::function<void()> extend = [&]() {
    if (static_cast<int>(w.size()) == length) {
      if (out.size() >= cap)
        throw Error(ErrorCode::RangeTooLarge, "too many admissible words", {{"length", length}, {"cap", cap}});
      out.push_back(w);
      return;
    }
    for (int s = 0; s < k; ++s) {
      if (!w.empty() && !spec.allows(w.back(), s)) continue;
      w.push_back(s);
      extend();
      w.pop_back();
    }
  };
  extend();
  return out;
}

BlockGraph build_block_graph(const SftSpec& spec, int block_length, const Limits& limits) {
  if (block_length < 1) throw Error(ErrorCode::InvalidArgument, "block length must be positive");
  require_valid(spec);
  auto blocks = admissible_words(spec, block_length, limits.max_blocks);
  auto edges = admissible_words(spec, block_length + 1, limits.max_blocks);
  return BlockGraph(block_length, std::move(blocks), std::move(edges));
}

PeriodicOrbit make_orbit(const SftSpec& spec, std::span<const int> word) {
  if (!spec.cyclically_admissible(word))
    throw Error(ErrorCode::InadmissibleWord, "word is not cyclically admissible",
                {{"word", word_to_string(word, spec.alphabet_size())}});
  if (!is_primitive(word))
    throw Error(ErrorCode::RangeMismatch, "periodic orbit words must be primitive",
                {{"word", word_to_string(word, spec.alphabet_size())}});
  return PeriodicOrbit{rotate(word, least_rotation(word))};
}

namespace {

void check_enumeration_range(const SftSpec& spec, int max_period, const Limits& limits) {
  if (max_period > limits.max_period)
    throw Error(ErrorCode::RangeTooLarge, "period exceeds the configured cap",
                {{"max_period", max_period}, {"cap", limits.max_period}});
  if (spec.alphabet_size() > limits.max_symbols)
    throw Error(ErrorCode::RangeTooLarge, "alphabet exceeds the configured cap",
                {{"k", spec.alphabet_size()}, {"cap", limits.max_symbols}});
}

// Fredricksen-Kessler-Maiorana generation restricted to admissible
// prefixes: a prefix of length t whose Lyndon factor length equals t is a
// Lyndon word, i.e. a primitive word equal to its least rotation.
class LyndonSearch {
 public:
  LyndonSearch(const SftSpec& spec, std::size_t length, const std::function<void(const PeriodicOrbit&)>& visit,
               std::size_t& emitted, std::size_t cap)
      : spec_(spec), n_(length), visit_(visit), emitted_(emitted), cap_(cap), a_(length + 1, 0) {}

  void run() { descend(1, 1); }

 private:
  void descend(std::size_t t, std::size_t p) {
    if (t > n_) {
      if (p == n_ && spec_.allows(a_[n_], a_[1])) emit();
      return;
    }
    const int k = spec_.alphabet_size();
    for (int j = a_[t - p]; j < k; ++j) {
      if (t > 1 && !spec_.allows(a_[t - 1], j)) continue;
      a_[t] = j;
      descend(t + 1, j == a_[t - p] ? p : t);
    }
  }

  void emit() {
    if (++emitted_ > cap_)
      throw Error(ErrorCode::RangeTooLarge, "too many periodic orbits", {{"cap", cap_}});
    visit_(PeriodicOrbit{Word(a_.begin() + 1, a_.end())});
  }

  const SftSpec& spec_;
  std::size_t n_;
  const std::function<void(const PeriodicOrbit&)>& visit_;
  std::size_t& emitted_;
  std::size_t cap_;
  Word a_;
};

}  // namespace

void for_each_periodic_orbit(const SftSpec& spec, int max_period,
                             const std::function<void(const PeriodicOrbit&)>& visit, const Limits& limits) {
  check_enumeration_range(spec, max_period, limits);
  std::size_t emitted = 0;
  for (int n = 1; n <= max_period; ++n) LyndonSearch(spec, static_cast<std::size_t>(n), visit, emitted, limits.max_orbits).run();
}

std::vector<PeriodicOrbit> enumerate_periodic_orbits(const SftSpec& spec, int max_period, const Limits& limits) {
  require_valid(spec);
  std::vector<PeriodicOrbit> orbits;
  for_each_periodic_orbit(spec, max_period, [&](const PeriodicOrbit& o) { orbits.push_back(o); }, limits);
  return orbits;
}

BigInt count_periodic_points(const SftSpec& spec, int n) {
  if (n < 1) throw Error(ErrorCode::InvalidArgument, "period must be positive");
  const auto k = static_cast<std::size_t>(spec.alphabet_size());
  std::vector<std::vector<BigInt>> a(k, std::vector<BigInt>(k)), power(k, std::vector<BigInt>(k));
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j) a[i][j] = power[i][j] = spec.transition()[i][j];
  for (int step = 1; step < n; ++step) {
    std::vector<std::vector<BigInt>> next(k, std::vector<BigInt>(k, 0));
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t m = 0; m < k; ++m) {
        if (power[i][m] == 0) continue;
        for (std::size_t j = 0; j < k; ++j) next[i][j] += power[i][m] * a[m][j];
      }
    power = std::move(next);
  }
  BigInt trace = 0;
  for (std::size_t i = 0; i < k; ++i) trace += power[i][i];
  return trace;
}

}  // namespace livsic

#include "livsic/cocycle.hpp"

namespace livsic {

Rational cyclic_sum(const RationalCocycle& f, std::span<const int> cyclic_word) {
  if (!f.sft().cyclically_admissible(cyclic_word))
    throw Error(ErrorCode::InadmissibleWord, "orbit word is not cyclically admissible",
                {{"word", word_to_string(cyclic_word, f.sft().alphabet_size())}});
  Rational sum = 0;
  for (std::size_t i = 0; i < cyclic_word.size(); ++i) sum += f.cyclic_window(cyclic_word, i);
  return sum;
}

Rational birkhoff_sum(const RationalCocycle& f, const PeriodicOrbit& orbit) { return cyclic_sum(f, orbit.word); }

}  // namespace livsic
