#include "livsic/abelian.hpp"

#include <algorithm>
#include <stdexcept>

#include "livsic/error.hpp"
#include "livsic/lattice.hpp"
#include "livsic/linear.hpp"
#include "livsic/rng.hpp"

namespace livsic {

Word ViolationWitness::periodic_word() const {
  Word out;
  for (int i = 0; i < repetitions; ++i) out.insert(out.end(), orbit.word.begin(), orbit.word.end());
  return out;
}

namespace {

void require_same_shift(const SkewSystem& system, const RationalCocycle& f) {
  if (!(system.sft() == f.sft()))
    throw Error(ErrorCode::RangeMismatch, "cocycle and skew system use different shifts");
}

// (total period, periodic word) ordering for witnesses.
bool precedes(const ViolationWitness& a, const ViolationWitness& b) {
  const Word wa = a.periodic_word(), wb = b.periodic_word();
  if (wa.size() != wb.size()) return wa.size() < wb.size();
  return wa < wb;
}

}  // namespace

std::optional<ViolationWitness> verify_vanishing(const SkewSystem& system, const RationalCocycle& f, int max_period,
                                                 const Limits& limits) {
  require_same_shift(system, f);
  if (max_period < 1) return std::nullopt;
  require_valid(system.sft());
  const Group& group = system.group();
  std::optional<ViolationWitness> best;
  for_each_periodic_orbit(
      system.sft(), max_period,
      [&](const PeriodicOrbit& orbit) {
        const auto p = static_cast<int>(orbit.period());
        if (best && p > static_cast<int>(best->periodic_word().size())) return;
        const GroupElement g = psi_n(system, orbit.word);
        int m = 1;
        if (!group.is_identity(g)) {
          if (!group.is_finite()) return;
          m = static_cast<int>(group.element_order(g));
          if (static_cast<long>(m) * p > max_period) return;
        }
        const Rational sum = cyclic_sum(f, orbit.word);
        if (sum == 0) return;
        ViolationWitness candidate{orbit, m, Rational(sum * m)};
        if (!best || precedes(candidate, *best)) best = std::move(candidate);
      },
      limits);
  return best;
}

bool Alpha::is_zero() const {
  return std::all_of(values.begin(), values.end(), [](const Rational& q) { return q == 0; });
}

Rational Alpha::evaluate(const Group& group, const GroupElement& element) const {
  group.check(element);
  if (values.empty()) return 0;
  if (group.is_finite()) return values.at(element.index());
  Rational out = 0;
  for (std::size_t j = 0; j < element.coords().size(); ++j)
    out += values.at(j) * Rational(static_cast<long>(element.coords()[j]));
  return out;
}

Alpha zero_alpha(const Group& group) {
  const std::size_t n = group.is_finite() ? group.order() : static_cast<std::size_t>(group.rank());
  return Alpha{std::vector<Rational>(n, 0)};
}

namespace {

int affordable_witness_depth(const SftSpec& sft, int requested, const Limits& limits) {
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


// Closed walk in the product graph -> canonical trivial-class witness.
ViolationWitness witness_from_walk(const SkewSystem& system, const RationalCocycle& f, const ProductGraph& graph,
                                   const std::vector<std::size_t>& walk) {
  Word symbols;
  for (auto e : walk) symbols.push_back(graph.base().edge_words()[graph.edges()[e].base_edge].front());
  const Word root = canonical_cyclic_root(symbols);
  const auto m = system.group().element_order(psi_n(system, root));
  ViolationWitness w{PeriodicOrbit{root}, static_cast<int>(m), Rational(cyclic_sum(f, root) * static_cast<long>(m))};
  if (w.sum == 0) throw std::logic_error("product-graph loop with nonzero weight projected to a zero sum");
  return w;
}

// Replaces a walk witness by the least violation in (period, word) order when
// the scan up to the walk's length is affordable.
ViolationWitness least_witness(const SkewSystem& system, const RationalCocycle& f, ViolationWitness found,
                               const Limits& limits) {
  const int length = static_cast<int>(found.periodic_word().size());
  if (affordable_witness_depth(system.sft(), length, limits) < length) return found;
  if (auto least = verify_vanishing(system, f, length, limits)) return *least;
  return found;
}

std::vector<std::size_t> path_from_root(const SearchTree& out_tree, const ProductGraph& graph, std::size_t v) {
  std::vector<std::size_t> path;
  while (out_tree.parent_edge[v]) {
    path.push_back(*out_tree.parent_edge[v]);
    v = graph.edges()[path.back()].tail;
  }
  std::reverse(path.begin(), path.end());
  return path;
}

std::vector<std::size_t> path_to_root(const SearchTree& in_tree, const ProductGraph& graph, std::size_t v) {
  std::vector<std::size_t> path;
  while (in_tree.parent_edge[v]) {
    path.push_back(*in_tree.parent_edge[v]);
    v = graph.edges()[path.back()].head;
  }
  return path;
}

}  // namespace

FiniteSolveResult solve_finite_gamma(const SkewSystem& system, const RationalCocycle& f, const Limits& limits) {
  require_same_shift(system, f);
  const Group& group = system.group();
  if (!group.is_finite()) throw Error(ErrorCode::InvalidArgument, "solve_finite_gamma needs a finite covering group");
  const ProductGraph graph = build_product_graph(system, f.block_length(), limits);
  const Digraph& dg = graph.digraph();
  if (!is_strongly_connected(dg)) {
    const auto pair = first_unreachable_pair(dg);
    return FiniteNotTransitive{graph.label(system, pair->first), graph.label(system, pair->second)};
  }

  std::vector<Rational> weight;
  weight.reserve(graph.edges().size());
  for (const auto& e : graph.edges()) weight.push_back(f.leading(graph.base().edge_words()[e.base_edge]));

  const std::size_t identity = group.identity().index();
  const std::size_t root = graph.vertex(0, identity);
  const SearchTree out_tree = breadth_first_out_tree(dg, root);
  const SearchTree in_tree = breadth_first_in_tree(dg, root);

  std::vector<Rational> potential(dg.vertex_count(), 0), to_root(dg.vertex_count(), 0);
  for (auto v : out_tree.order)
    if (out_tree.parent_edge[v]) potential[v] = potential[*out_tree.parent[v]] + weight[*out_tree.parent_edge[v]];
  for (auto v : in_tree.order)
    if (in_tree.parent_edge[v]) to_root[v] = weight[*in_tree.parent_edge[v]] + to_root[*in_tree.parent[v]];

  for (std::size_t v = 0; v < dg.vertex_count(); ++v) {
    if (potential[v] + to_root[v] == 0) continue;
    auto walk = path_from_root(out_tree, graph, v);
    auto back = path_to_root(in_tree, graph, v);
    walk.insert(walk.end(), back.begin(), back.end());
    return least_witness(system, f, witness_from_walk(system, f, graph, walk), limits);
  }
  for (std::size_t e = 0; e < graph.edges().size(); ++e) {
    const auto& edge = graph.edges()[e];
    if (weight[e] - potential[edge.head] + potential[edge.tail] == 0) continue;
    auto walk = path_from_root(out_tree, graph, edge.tail);
    walk.push_back(e);
    auto back = path_to_root(in_tree, graph, edge.head);
    walk.insert(walk.end(), back.begin(), back.end());
    return least_witness(system, f, witness_from_walk(system, f, graph, walk), limits);
  }

  CohomologySolution solution;
  solution.block_length = f.block_length();
  solution.blocks = graph.base().blocks();
  for (std::size_t b = 0; b < solution.blocks.size(); ++b) {
    const Rational base = potential[graph.vertex(b, identity)];
    for (std::size_t x = 0; x < graph.fiber_size(); ++x)
      if (potential[graph.vertex(b, x)] != base)
        throw std::logic_error("fiber potential differs across Gamma after a consistent solve");
    solution.u.push_back(base);
  }
  solution.alpha = zero_alpha(group);
  solution.certificate = verify_solution(system, f, solution);
  if (!solution.certificate.certified()) throw std::logic_error("finite-Gamma solution failed its own certificate");
  return solution;
}


FreeAbelianSolveResult solve_free_abelian(const SkewSystem& system, const RationalCocycle& f,
                                          const FreeAbelianOptions& options) {
  require_same_shift(system, f);
  const Group& group = system.group();
  if (group.is_finite()) throw Error(ErrorCode::InvalidArgument, "solve_free_abelian needs a free abelian cover");
  const BlockGraph graph = build_block_graph(system.sft(), f.block_length(), options.limits);
  Digraph dg(graph.blocks().size());
  for (std::size_t e = 0; e < graph.edges().size(); ++e) dg.add_edge(e, graph.edges()[e].tail, graph.edges()[e].head);
  if (!is_strongly_connected(dg)) throw Error(ErrorCode::NotStronglyConnected, "block graph is not strongly connected");

  const std::size_t blocks = graph.blocks().size();
  const auto d = static_cast<std::size_t>(group.rank());
  // Unknowns: u(B) for B >= 1 (u of the first block is pinned to 0), then alpha.
  SparseRationalSystem linear(blocks - 1 + d);
  for (std::size_t e = 0; e < graph.edges().size(); ++e) {
    const auto& edge = graph.edges()[e];
    std::vector<std::pair<std::size_t, Rational>> terms;
    if (edge.head != 0) terms.emplace_back(edge.head - 1, Rational(1));
    if (edge.tail != 0) terms.emplace_back(edge.tail - 1, Rational(-1));
    const auto& psi = system.psi(graph.edge_words()[e].front()).coords();
    for (std::size_t j = 0; j < d; ++j)
      if (psi[j] != 0) terms.emplace_back(blocks - 1 + j, Rational(static_cast<long>(psi[j])));
    linear.add_equation(terms, f.leading(graph.edge_words()[e]));
  }

  const LatticeReport cycle_lattice = subgroup_rank_and_index(cycle_space_weights(system), group.rank());
  auto outcome = linear.solve();
  if (auto* bad = std::get_if<SparseRationalSystem::Inconsistency>(&outcome)) {
    const int depth = affordable_witness_depth(system.sft(), options.witness_depth, options.limits);
    if (auto witness = verify_vanishing(system, f, depth, options.limits)) return *witness;
    Degenerate report;
    report.kind = Degenerate::Kind::Inconsistent;
    report.cycle_lattice = cycle_lattice;
    report.certificate_flow = bad->multipliers;
    report.certificate_value = bad->value;
    report.note = "no solution exists; no trivial-class periodic point of period <= " + std::to_string(depth) +
                  " carries a nonzero sum, the obstruction is the edge combination in certificate_flow";
    return report;
  }

  const auto& solved = std::get<SparseRationalSystem::Solution>(outcome);
  CohomologySolution solution;
  solution.block_length = f.block_length();
  solution.blocks = graph.blocks();
  solution.u.push_back(0);
  for (std::size_t b = 1; b < blocks; ++b) solution.u.push_back(solved.values[b - 1]);
  for (std::size_t j = 0; j < d; ++j) solution.alpha.values.push_back(solved.values[blocks - 1 + j]);
  solution.certificate = verify_solution(system, f, solution);
  if (!solution.certificate.certified()) throw std::logic_error("free abelian solution failed its own certificate");

  std::vector<std::size_t> free_alpha;
  for (auto c : solved.free_unknowns)
    if (c >= blocks - 1) free_alpha.push_back(c - (blocks - 1));
  if (free_alpha.empty()) return solution;

  Degenerate report;
  report.kind = Degenerate::Kind::UnderdeterminedAlpha;
  report.cycle_lattice = cycle_lattice;
  report.solution = std::move(solution);
  std::string coords;
  for (auto j : free_alpha) coords += (coords.empty() ? "" : ",") + std::to_string(j + 1);
  report.note = "cycle psi-weights span rank " + std::to_string(cycle_lattice.rank) + " < " + std::to_string(d) +
                "; alpha is unique only on their span, free coordinates {" + coords + "} pinned to 0";
  return report;
}

ResidualReport verify_solution(const SkewSystem& system, const RationalCocycle& f, const CohomologySolution& solution) {
  require_same_shift(system, f);
  const Group& group = system.group();
  if (solution.block_length < f.range())
    throw Error(ErrorCode::RangeMismatch, "solution blocks are shorter than the cocycle range");
  Limits limits;
  const BlockGraph graph = build_block_graph(system.sft(), solution.block_length, limits);
  if (solution.blocks != graph.blocks() || solution.u.size() != graph.blocks().size())
    throw Error(ErrorCode::RangeMismatch, "solution blocks do not match the block graph");
  const std::size_t alpha_size = group.is_finite() ? group.order() : static_cast<std::size_t>(group.rank());
  if (solution.alpha.values.size() != alpha_size)
    throw Error(ErrorCode::RangeMismatch, "alpha has the wrong number of values",
                {{"expected", alpha_size}, {"got", solution.alpha.values.size()}});

  ResidualReport report;
  for (std::size_t e = 0; e < graph.edges().size(); ++e) {
    const auto& edge = graph.edges()[e];
    const Word& w = graph.edge_words()[e];
    const Rational predicted =
        solution.u[edge.head] - solution.u[edge.tail] + solution.alpha.evaluate(group, system.psi(w.front()));
    const Rational residual = f.leading(w) - predicted;
    ++report.edges_checked;
    if (residual != 0) report.residuals.push_back({e, w, residual});
  }
  if (group.is_finite()) {
    if (!solution.alpha.is_zero()) report.homomorphism_failures.push_back("alpha must vanish on a finite group");
    for (const auto& a : group.elements())
      for (const auto& b : group.elements()) {
        const Rational lhs = solution.alpha.evaluate(group, group.multiply(a, b));
        const Rational rhs = solution.alpha.evaluate(group, a) + solution.alpha.evaluate(group, b);
        if (lhs != rhs) report.homomorphism_failures.push_back(group.name(a) + "*" + group.name(b));
      }
  }
  return report;
}

RationalCocycle generate_cocycle(const SkewSystem& system, int block_length, const std::vector<Rational>& u,
                                 const Alpha& alpha, const Limits& limits) {
  const Group& group = system.group();
  const std::size_t alpha_size = group.is_finite() ? group.order() : static_cast<std::size_t>(group.rank());
  if (group.is_finite() && !alpha.is_zero())
    throw Error(ErrorCode::TorsionAlpha, "a homomorphism from a finite group to Q must vanish");
  if (!alpha.values.empty() && alpha.values.size() != alpha_size)
    throw Error(ErrorCode::RangeMismatch, "alpha has the wrong number of values");
  const BlockGraph graph = build_block_graph(system.sft(), block_length, limits);
  if (u.size() != graph.blocks().size())
    throw Error(ErrorCode::RangeMismatch, "u must assign a value to every block",
                {{"blocks", graph.blocks().size()}, {"values", u.size()}});
  std::map<Word, Rational> values;
  for (std::size_t e = 0; e < graph.edges().size(); ++e) {
    const auto& edge = graph.edges()[e];
    const Word& w = graph.edge_words()[e];
    values.emplace(w, u[edge.head] - u[edge.tail] + alpha.evaluate(group, system.psi(w.front())));
  }
  return RationalCocycle(system.sft(), block_length, std::move(values));
}

std::vector<Rational> random_potential(const SftSpec& sft, int block_length, std::uint64_t seed, std::int64_t bound,
                                       const Limits& limits) {
  const BlockGraph graph = build_block_graph(sft, block_length, limits);
  Rng rng(seed);
  std::vector<Rational> u;
  for (std::size_t b = 0; b < graph.blocks().size(); ++b) u.push_back(rng.rational(bound));
  return u;
}

}  // namespace livsic
