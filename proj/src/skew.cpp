#include "livsic/skew.hpp"

#include <algorithm>
#include <deque>
#include <numeric>
#include <set>

#include "livsic/error.hpp"
#include "livsic/lattice.hpp"

namespace livsic {

SkewSystem::SkewSystem(SftSpec sft, std::shared_ptr<const Group> group, std::vector<GroupElement> psi)
    : sft_(std::move(sft)), group_(std::move(group)), psi_(std::move(psi)) {
  if (!group_) throw Error(ErrorCode::InvalidArgument, "skew system needs a group");
  if (psi_.size() != static_cast<std::size_t>(sft_.alphabet_size()))
    throw Error(ErrorCode::RangeMismatch, "psi must assign an element to every symbol",
                {{"k", sft_.alphabet_size()}, {"psi", psi_.size()}});
  for (const auto& g : psi_) group_->check(g);
}

GroupElement psi_n(const SkewSystem& system, std::span<const int> word) {
  if (!system.sft().admissible(word))
    throw Error(ErrorCode::InadmissibleWord, "word is not admissible",
                {{"word", word_to_string(word, system.sft().alphabet_size())}});
  const Group& g = system.group();
  GroupElement acc = g.identity();
  for (int s : word) acc = g.multiply(system.psi(s), acc);
  return acc;
}

FrobeniusClassTag frobenius_class(const SkewSystem& system, const PeriodicOrbit& orbit) {
  if (!system.sft().cyclically_admissible(orbit.word))
    throw Error(ErrorCode::InadmissibleWord, "orbit word is not cyclically admissible",
                {{"word", word_to_string(orbit.word, system.sft().alphabet_size())}});
  FrobeniusClassTag tag{psi_n(system, orbit.word), std::nullopt, false};
  tag.trivial = system.group().is_identity(tag.return_element);
  if (system.group().is_finite()) tag.conjugacy_class = conjugacy_class_of(system.group(), tag.return_element);
  return tag;
}

ProductGraph::ProductGraph(const SkewSystem& system, BlockGraph base)
    : base_(std::move(base)), fiber_(system.group().order()), digraph_(base_.blocks().size() * fiber_) {
  const Group& g = system.group();
  const auto& words = base_.edge_words();
  for (std::size_t e = 0; e < base_.edges().size(); ++e) {
    const auto& be = base_.edges()[e];
    const GroupElement& step = system.psi(words[e].front());
    for (std::size_t x = 0; x < fiber_; ++x) {
      const std::size_t y = g.multiply(step, g.element(x)).index();
      const Edge edge{vertex(be.tail, x), vertex(be.head, y), e};
      digraph_.add_edge(edges_.size(), edge.tail, edge.head);
      edges_.push_back(edge);
    }
  }
}

std::string ProductGraph::label(const SkewSystem& system, std::size_t v) const {
  return "(" + word_to_string(base_.blocks()[block_of(v)], system.sft().alphabet_size()) + "," +
         system.group().name(system.group().element(element_of(v))) + ")";
}

ProductGraph build_product_graph(const SkewSystem& system, int block_length, const Limits& limits) {
  if (!system.group().is_finite())
    throw Error(ErrorCode::InfiniteGroup, "product graphs need a finite covering group");
  BlockGraph base = build_block_graph(system.sft(), block_length, limits);
  const std::size_t states = base.blocks().size() * system.group().order();
  if (states > limits.max_states)
    throw Error(ErrorCode::RangeTooLarge, "product graph exceeds the state cap",
                {{"states", states}, {"cap", limits.max_states}});
  return ProductGraph(system, std::move(base));
}

std::vector<std::vector<std::int64_t>> cycle_space_weights(const SkewSystem& system) {
  if (system.group().is_finite())
    throw Error(ErrorCode::InvalidArgument, "cycle-space weights are defined for free abelian covers");
  const int k = system.sft().alphabet_size();
  const auto d = static_cast<std::size_t>(system.group().rank());
  // Undirected spanning forest; potential(b) = potential(a) + psi(a) along a -> b.
  std::vector<std::optional<std::vector<std::int64_t>>> potential(static_cast<std::size_t>(k));
  std::set<std::pair<int, int>> tree_edges;
  for (int root = 0; root < k; ++root) {
    if (potential[static_cast<std::size_t>(root)]) continue;
    potential[static_cast<std::size_t>(root)] = std::vector<std::int64_t>(d, 0);
    std::deque<int> queue{root};
    while (!queue.empty()) {
      const int a = queue.front();
      queue.pop_front();
      const auto pa = *potential[static_cast<std::size_t>(a)];
      for (int b = 0; b < k; ++b) {
        if (system.sft().allows(a, b) && !potential[static_cast<std::size_t>(b)]) {
          auto pb = pa;
          for (std::size_t i = 0; i < d; ++i) pb[i] += system.psi(a).coords()[i];
          potential[static_cast<std::size_t>(b)] = pb;
          tree_edges.insert({a, b});
          queue.push_back(b);
        } else if (system.sft().allows(b, a) && !potential[static_cast<std::size_t>(b)]) {
          auto pb = pa;
          for (std::size_t i = 0; i < d; ++i) pb[i] -= system.psi(b).coords()[i];
          potential[static_cast<std::size_t>(b)] = pb;
          tree_edges.insert({b, a});
          queue.push_back(b);
        }
      }
    }
  }
  std::vector<std::vector<std::int64_t>> weights;
  for (int a = 0; a < k; ++a)
    for (int b = 0; b < k; ++b) {
      if (!system.sft().allows(a, b) || tree_edges.contains({a, b})) continue;
      std::vector<std::int64_t> w(d);
      for (std::size_t i = 0; i < d; ++i)
        w[i] = system.psi(a).coords()[i] + (*potential[static_cast<std::size_t>(a)])[i] -
               (*potential[static_cast<std::size_t>(b)])[i];
      weights.push_back(std::move(w));
    }
  return weights;
}

namespace {

// Largest depth <= requested whose orbit census stays inside the budget.
int affordable_depth(const SftSpec& sft, int requested, const Limits& limits) {
  const BigInt budget = static_cast<unsigned long>(std::min<std::size_t>(limits.max_orbits, 400'000));
  BigInt total = 0;
  int depth = 0;
  for (int n = 1; n <= std::min(requested, limits.max_period); ++n) {
    total += count_periodic_points(sft, n);
    if (total > budget) break;
    depth = n;
  }
  return depth;
}

std::vector<Rational> direction(const std::vector<std::int64_t>& v) {
  std::int64_t g = 0;
  for (auto x : v) g = std::gcd(g, x < 0 ? -x : x);
  std::vector<Rational> out;
  for (auto x : v) out.emplace_back(static_cast<long>(g ? x / g : 0));
  return out;
}

TransitivityVerdict lattice_verdict(const SkewSystem& system, const TransitivityOptions& options) {
  const auto d = static_cast<std::size_t>(system.group().rank());
  const auto cycles = cycle_space_weights(system);
  const LatticeReport cycle_lattice = subgroup_rank_and_index(cycles, system.group().rank());
  if (!cycle_lattice.full) {
    NotTransitive verdict;
    verdict.certificate = "proper_subgroup";
    verdict.cycle_lattice = cycle_lattice;
    return verdict;
  }

  const int k = system.sft().alphabet_size();
  const int depth = affordable_depth(system.sft(), std::max(options.probe_depth, k), options.limits);
  std::vector<std::vector<std::int64_t>> probed;
  std::set<std::vector<Rational>> directions;
  bool has_zero = false;
  for_each_periodic_orbit(
      system.sft(), depth,
      [&](const PeriodicOrbit& o) {
        auto v = psi_n(system, o.word).coords();
        if (static_cast<int>(o.period()) <= options.probe_depth) probed.push_back(v);
        if (std::all_of(v.begin(), v.end(), [](std::int64_t x) { return x == 0; })) has_zero = true;
        else directions.insert(direction(v));
      },
      options.limits);
  std::vector<std::vector<Rational>> dirs(directions.begin(), directions.end());

  // Every closed walk splits into simple cycles of length <= k, all of which
  // were probed when depth >= k; a functional positive on them forces drift.
  if (depth >= k && !has_zero) {
    if (auto lambda = strictly_positive_functional(dirs, d)) {
      NotTransitive verdict;
      verdict.certificate = "drift";
      verdict.drift_functional = std::move(*lambda);
      verdict.cycle_lattice = cycle_lattice;
      return verdict;
    }
  }
  TransitivityUnknown evidence;
  evidence.probe_depth = std::min(depth, options.probe_depth);
  evidence.probed_orbits = probed.size();
  evidence.probed_lattice = subgroup_rank_and_index(probed, system.group().rank());
  evidence.cycle_lattice = cycle_lattice;
  evidence.zero_in_interior = zero_in_hull_interior(dirs, d);
  return evidence;
}

}  // namespace

TransitivityVerdict check_transitivity(const SkewSystem& system, const TransitivityOptions& options) {
  require_valid(system.sft());
  if (!system.group().is_finite()) return lattice_verdict(system, options);
  const ProductGraph graph = build_product_graph(system, 1, options.limits);
  if (is_strongly_connected(graph.digraph())) return Transitive{};
  NotTransitive verdict;
  if (auto pair = first_unreachable_pair(graph.digraph()))
    verdict.unreachable = std::make_pair(graph.label(system, pair->first), graph.label(system, pair->second));
  verdict.certificate = "unreachable_state";
  return verdict;
}

std::vector<TaggedOrbit> enumerate_trivial_class_orbits(const SkewSystem& system, int max_period,
                                                        const Limits& limits) {
  std::vector<TaggedOrbit> out;
  if (max_period < 1) return out;
  require_valid(system.sft());
  for_each_periodic_orbit(
      system.sft(), max_period,
      [&](const PeriodicOrbit& o) {
        if (system.group().is_identity(psi_n(system, o.word))) out.push_back({o, frobenius_class(system, o)});
      },
      limits);
  return out;
}

}  // namespace livsic
