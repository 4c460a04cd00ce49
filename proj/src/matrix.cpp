#include "livsic/matrix.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "livsic/error.hpp"

namespace livsic {

double distance(const Matrix& a, const Matrix& b) { return (a - b).norm(); }

namespace {

Eigen::VectorXd vec(const Matrix& m) { return Eigen::Map<const Eigen::VectorXd>(m.data(), m.size()); }

Matrix stack_basis(const std::vector<Matrix>& basis) {
  const auto d2 = basis.front().size();
  Matrix out(d2, static_cast<Eigen::Index>(basis.size()));
  for (std::size_t j = 0; j < basis.size(); ++j) out.col(static_cast<Eigen::Index>(j)) = vec(basis[j]);
  return out;
}

void check_algebra(const std::vector<Matrix>& basis, int d) {
  if (basis.empty()) throw Error(ErrorCode::AlgebraNotClosed, "algebra basis is empty");
  for (const auto& x : basis)
    if (x.rows() != d || x.cols() != d)
      throw Error(ErrorCode::DimensionMismatch, "algebra basis element has the wrong shape");
  const Matrix stacked = stack_basis(basis);
  const auto qr = stacked.colPivHouseholderQr();
  if (qr.rank() != static_cast<Eigen::Index>(basis.size()))
    throw Error(ErrorCode::AlgebraNotClosed, "algebra basis is linearly dependent");
  for (std::size_t i = 0; i < basis.size(); ++i)
    for (std::size_t j = i + 1; j < basis.size(); ++j) {
      const Eigen::VectorXd bracket = vec(basis[i] * basis[j] - basis[j] * basis[i]);
      const Eigen::VectorXd coords = qr.solve(bracket);
      if ((stacked * coords - bracket).norm() > 1e-9 * std::max(1.0, bracket.norm()))
        throw Error(ErrorCode::AlgebraNotClosed, "algebra basis is not closed under the bracket",
                    {{"pair", {i, j}}});
    }
}

}  // namespace

MatrixCocycle::MatrixCocycle(const SftSpec& sft, int range, std::map<Word, Matrix> values,
                             std::optional<std::vector<Matrix>> algebra, double singular_tolerance)
    : table_(sft, range, std::move(values)), dimension_(0), algebra_(std::move(algebra)) {
  if (table_.values().empty()) throw Error(ErrorCode::RangeMismatch, "matrix cocycle has no values");
  dimension_ = static_cast<int>(table_.values().begin()->second.rows());
  if (dimension_ < 1) throw Error(ErrorCode::DimensionMismatch, "matrix dimension must be positive");
  for (const auto& [word, m] : table_.values()) {
    const std::string w = word_to_string(word, sft.alphabet_size());
    if (m.rows() != dimension_ || m.cols() != dimension_)
      throw Error(ErrorCode::DimensionMismatch, "cocycle values have different shapes", {{"word", w}});
    if (std::abs(m.determinant()) <= singular_tolerance)
      throw Error(ErrorCode::SingularMatrix, "cocycle value is not invertible", {{"word", w}});
  }
  if (algebra_) check_algebra(*algebra_, dimension_);
}

Matrix birkhoff_product(const MatrixCocycle& f, std::span<const int> cyclic_word) {
  Matrix acc = Matrix::Identity(f.dimension(), f.dimension());
  for (std::size_t i = 0; i < cyclic_word.size(); ++i) acc = f.table().cyclic_window(cyclic_word, i) * acc;
  return acc;
}

Word MatrixViolationWitness::periodic_word() const {
  Word out;
  for (int i = 0; i < repetitions; ++i) out.insert(out.end(), orbit.word.begin(), orbit.word.end());
  return out;
}

namespace {

void require_same_shift(const SkewSystem& system, const MatrixCocycle& f) {
  if (!(system.sft() == f.sft()))
    throw Error(ErrorCode::RangeMismatch, "cocycle and skew system use different shifts");
}

Matrix matrix_power(const Matrix& m, int n) {
  Matrix out = Matrix::Identity(m.rows(), m.cols());
  for (int i = 0; i < n; ++i) out = m * out;
  return out;
}

MatrixViolationWitness witness_from_walk(const SkewSystem& system, const MatrixCocycle& f, const ProductGraph& graph,
                                         const std::vector<std::size_t>& walk) {
  Word symbols;
  for (auto e : walk) symbols.push_back(graph.base().edge_words()[graph.edges()[e].base_edge].front());
  const Word root = canonical_cyclic_root(symbols);
  const Matrix single = birkhoff_product(f, root);
  const int order = static_cast<int>(system.group().element_order(psi_n(system, root)));
  const int walked = static_cast<int>(symbols.size() / root.size());
  MatrixViolationWitness w{PeriodicOrbit{root}, order, matrix_power(single, order), 0.0};
  w.deviation = distance(w.product, Matrix::Identity(f.dimension(), f.dimension()));
  if (walked != order) {
    // The walk itself is a trivial-class point too; keep whichever deviates more.
    Matrix p = matrix_power(single, walked);
    const double dev = distance(p, Matrix::Identity(f.dimension(), f.dimension()));
    if (dev > w.deviation) w = MatrixViolationWitness{PeriodicOrbit{root}, walked, std::move(p), dev};
  }
  return w;
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

bool precedes(const MatrixViolationWitness& a, const MatrixViolationWitness& b) {
  const Word wa = a.periodic_word(), wb = b.periodic_word();
  if (wa.size() != wb.size()) return wa.size() < wb.size();
  return wa < wb;
}

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

std::string block_label(const Word& block, int k) { return word_to_string(block, k); }

}  // namespace

std::optional<MatrixViolationWitness> verify_matrix_vanishing(const SkewSystem& system, const MatrixCocycle& f,
                                                              int max_period, double tolerance, const Limits& limits) {
  require_same_shift(system, f);
  if (max_period < 1) return std::nullopt;
  require_valid(system.sft());
  const Group& group = system.group();
  const Matrix identity = Matrix::Identity(f.dimension(), f.dimension());
  std::optional<MatrixViolationWitness> best;
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
        Matrix product = matrix_power(birkhoff_product(f, orbit.word), m);
        const double deviation = distance(product, identity);
        if (deviation <= tolerance) return;
        MatrixViolationWitness candidate{orbit, m, std::move(product), deviation};
        if (!best || precedes(candidate, *best)) best = std::move(candidate);
      },
      limits);
  return best;
}

namespace {

MatrixViolationWitness least_witness(const SkewSystem& system, const MatrixCocycle& f, MatrixViolationWitness found,
                                     double tolerance, const Limits& limits) {
  const int length = static_cast<int>(found.periodic_word().size());
  if (affordable_depth(system.sft(), length, limits) < length) return found;
  if (auto least = verify_matrix_vanishing(system, f, length, tolerance, limits)) return *least;
  return found;
}

}  // namespace

MatrixSolveResult solve_matrix_finite(const SkewSystem& system, const MatrixCocycle& f, double tolerance,
                                      const Limits& limits) {
  require_same_shift(system, f);
  const Group& group = system.group();
  if (!group.is_finite()) throw Error(ErrorCode::InvalidArgument, "matrix solver needs a finite covering group");
  const ProductGraph graph = build_product_graph(system, f.block_length(), limits);
  const Digraph& dg = graph.digraph();
  if (!is_strongly_connected(dg)) {
    const auto pair = first_unreachable_pair(dg);
    return FiniteNotTransitive{graph.label(system, pair->first), graph.label(system, pair->second)};
  }
  const int d = f.dimension();
  const Matrix identity = Matrix::Identity(d, d);

  std::vector<const Matrix*> weight;
  weight.reserve(graph.edges().size());
  for (const auto& e : graph.edges()) weight.push_back(&f.leading(graph.base().edge_words()[e.base_edge]));

  const std::size_t id = group.identity().index();
  const std::size_t root = graph.vertex(0, id);
  const SearchTree out_tree = breadth_first_out_tree(dg, root);
  const SearchTree in_tree = breadth_first_in_tree(dg, root);

  // hat(v): product along the tree path root -> v; to_root(v): along v -> root.
  std::vector<Matrix> hat(dg.vertex_count(), identity), to_root(dg.vertex_count(), identity);
  for (auto v : out_tree.order)
    if (out_tree.parent_edge[v]) hat[v] = *weight[*out_tree.parent_edge[v]] * hat[*out_tree.parent[v]];
  for (auto v : in_tree.order)
    if (in_tree.parent_edge[v]) to_root[v] = to_root[*in_tree.parent[v]] * *weight[*in_tree.parent_edge[v]];

  for (std::size_t v = 0; v < dg.vertex_count(); ++v) {
    if (distance(to_root[v] * hat[v], identity) <= tolerance) continue;
    auto walk = path_from_root(out_tree, graph, v);
    auto back = path_to_root(in_tree, graph, v);
    walk.insert(walk.end(), back.begin(), back.end());
    return least_witness(system, f, witness_from_walk(system, f, graph, walk), tolerance, limits);
  }
  std::vector<Matrix> hat_inverse;
  hat_inverse.reserve(hat.size());
  for (const auto& h : hat) hat_inverse.push_back(h.inverse());
  for (std::size_t e = 0; e < graph.edges().size(); ++e) {
    const auto& edge = graph.edges()[e];
    if (distance(*weight[e], hat[edge.head] * hat_inverse[edge.tail]) <= tolerance) continue;
    auto walk = path_from_root(out_tree, graph, edge.tail);
    walk.push_back(e);
    auto back = path_to_root(in_tree, graph, edge.head);
    walk.insert(walk.end(), back.begin(), back.end());
    return least_witness(system, f, witness_from_walk(system, f, graph, walk), tolerance, limits);
  }

  MatrixSolution solution;
  solution.tolerance = tolerance;
  solution.block_length = f.block_length();
  solution.blocks = graph.base().blocks();
  const std::size_t n = graph.fiber_size();
  const int k = system.sft().alphabet_size();
  for (std::size_t g = 0; g < n; ++g) solution.alpha.push_back(hat[graph.vertex(0, g)]);
  for (std::size_t b = 0; b < solution.blocks.size(); ++b) {
    for (std::size_t g = 0; g < n; ++g)
      for (std::size_t eta = 0; eta < n; ++eta) {
        const auto prod = group.multiply(group.element(g), group.element(eta)).index();
        const double gap =
            distance(hat[graph.vertex(b, prod)] * hat_inverse[graph.vertex(b, eta)], solution.alpha[g]);
        if (gap > tolerance)
          return NoCentralSolution{"fiber shift depends on the point: block " + block_label(solution.blocks[b], k) +
                                       ", element " + group.name(group.element(g)) + ", base " +
                                       group.name(group.element(eta)),
                                   gap};
      }
    solution.u.push_back(hat[graph.vertex(b, id)]);
  }

  const MatrixResidualReport report = verify_matrix_solution(system, f, solution, tolerance);
  if (!report.homomorphism.empty())
    return NoCentralSolution{"fiber shift is not a homomorphism: " + report.homomorphism.front().where,
                             report.max_homomorphism};
  if (!report.centrality.empty())
    return NoCentralSolution{"fiber shift is not central: " + report.centrality.front().where,
                             report.max_centrality};
  if (!report.reconstruction.empty())
    throw std::logic_error("matrix solution failed reconstruction after a consistent solve");
  solution.residual = report.max_reconstruction;
  return solution;
}

MatrixResidualReport verify_matrix_solution(const SkewSystem& system, const MatrixCocycle& f,
                                            const MatrixSolution& solution, double tolerance) {
  require_same_shift(system, f);
  const Group& group = system.group();
  if (!group.is_finite()) throw Error(ErrorCode::InvalidArgument, "matrix solutions need a finite covering group");
  const int k = system.sft().alphabet_size();
  const BlockGraph graph = build_block_graph(system.sft(), solution.block_length);
  if (graph.blocks() != solution.blocks || solution.u.size() != solution.blocks.size())
    throw Error(ErrorCode::RangeMismatch, "solution blocks do not match the block graph");
  if (solution.alpha.size() != group.order())
    throw Error(ErrorCode::RangeMismatch, "solution alpha is not defined on every group element");
  const int d = f.dimension();
  auto shape_ok = [d](const Matrix& m) { return m.rows() == d && m.cols() == d; };
  if (!std::all_of(solution.u.begin(), solution.u.end(), shape_ok) ||
      !std::all_of(solution.alpha.begin(), solution.alpha.end(), shape_ok))
    throw Error(ErrorCode::DimensionMismatch, "solution matrices have the wrong shape");

  MatrixResidualReport report;
  report.tolerance = tolerance;
  auto record = [tolerance](std::vector<MatrixResidualReport::Entry>& list, double& max, std::string where,
                            double value) {
    max = std::max(max, value);
    if (value > tolerance) list.push_back({std::move(where), value});
  };

  std::vector<Matrix> u_inverse;
  for (const auto& u : solution.u) u_inverse.push_back(u.inverse());
  for (std::size_t e = 0; e < graph.edges().size(); ++e) {
    const Word& word = graph.edge_words()[e];
    if (word.size() < static_cast<std::size_t>(f.range() + 1))
      throw Error(ErrorCode::RangeMismatch, "solution blocks are shorter than the cocycle range");
    const auto& edge = graph.edges()[e];
    const Matrix model =
        solution.alpha[system.psi(word.front()).index()] * solution.u[edge.head] * u_inverse[edge.tail];
    record(report.reconstruction, report.max_reconstruction, word_to_string(word, k),
           distance(f.leading(word), model));
  }
  const auto n = group.order();
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) {
      const auto ab = group.multiply(group.element(a), group.element(b)).index();
      record(report.homomorphism, report.max_homomorphism,
             group.name(group.element(a)) + "*" + group.name(group.element(b)),
             distance(solution.alpha[ab], solution.alpha[a] * solution.alpha[b]));
    }
  for (std::size_t a = 0; a < n; ++a)
    for (const auto& [word, value] : f.table().values())
      record(report.centrality, report.max_centrality,
             group.name(group.element(a)) + " vs " + word_to_string(word, k),
             distance(solution.alpha[a] * value, value * solution.alpha[a]));
  return report;
}

namespace {

struct Adjoint {
  Matrix forward;
  Matrix inverse;
};

Matrix ambient_adjoint(const Matrix& g, const Matrix& g_inverse) {
  // vec(g X g^{-1}) = (g^{-T} kron g) vec(X), column-major.
  const auto d = g.rows();
  const Matrix left = g_inverse.transpose();
  Matrix out(d * d, d * d);
  for (Eigen::Index i = 0; i < d; ++i)
    for (Eigen::Index j = 0; j < d; ++j) out.block(i * d, j * d, d, d) = left(i, j) * g;
  return out;
}

Matrix declared_adjoint(const Matrix& g, const Matrix& g_inverse, const std::vector<Matrix>& basis,
                        const Matrix& stacked, const Eigen::ColPivHouseholderQR<Matrix>& qr, const std::string& where) {
  Matrix out(static_cast<Eigen::Index>(basis.size()), static_cast<Eigen::Index>(basis.size()));
  for (std::size_t j = 0; j < basis.size(); ++j) {
    const Eigen::VectorXd image = vec(g * basis[j] * g_inverse);
    const Eigen::VectorXd coords = qr.solve(image);
    if ((stacked * coords - image).norm() > 1e-8 * std::max(1.0, image.norm()))
      throw Error(ErrorCode::AlgebraNotClosed, "cocycle value does not preserve the declared algebra",
                  {{"word", where}});
    out.col(static_cast<Eigen::Index>(j)) = coords;
  }
  return out;
}

double largest_singular_value(const Matrix& m) {
  if (m.size() == 1) return std::abs(m(0, 0));
  return Eigen::JacobiSVD<Matrix>(m).singularValues()(0);
}

std::pair<double, double> spectral_extremes(const Matrix& m) {
  if (m.size() == 1) return {std::abs(m(0, 0)), std::abs(m(0, 0))};
  const Eigen::VectorXd moduli = Eigen::EigenSolver<Matrix>(m, false).eigenvalues().cwiseAbs();
  return {moduli.maxCoeff(), moduli.minCoeff()};
}

double scan_size(const SftSpec& sft, int first, int last) {
  const int k = sft.alphabet_size();
  std::vector<double> ends(static_cast<std::size_t>(k), 1.0);
  double total = 0.0;
  for (int len = 1; len <= last; ++len) {
    if (len > 1) {
      std::vector<double> next(static_cast<std::size_t>(k), 0.0);
      for (int a = 0; a < k; ++a)
        for (int b = 0; b < k; ++b)
          if (sft.allows(a, b)) next[static_cast<std::size_t>(b)] += ends[static_cast<std::size_t>(a)];
      ends = std::move(next);
    }
    if (len >= first)
      for (double c : ends) total += c;
  }
  return total;
}

}  // namespace

DistortionReport estimate_distortion(const MatrixCocycle& f, int depth, AdjointMode mode, const Limits& limits,
                                     double tolerance) {
  if (depth < 1) throw Error(ErrorCode::InvalidArgument, "distortion depth must be positive");
  if (mode == AdjointMode::DeclaredAlgebra && !f.algebra())
    throw Error(ErrorCode::InvalidArgument, "declared-algebra mode needs an algebra basis on the cocycle");
  const SftSpec& sft = f.sft();
  const int range = f.range();
  const double words = scan_size(sft, range + 1, range + depth);
  if (words > static_cast<double>(limits.max_words))
    throw Error(ErrorCode::RangeTooLarge, "distortion scan exceeds the word budget",
                {{"words", words}, {"max_words", limits.max_words}});

  std::map<Word, Adjoint> adjoint;
  std::optional<Matrix> stacked;
  std::optional<Eigen::ColPivHouseholderQR<Matrix>> qr;
  if (mode == AdjointMode::DeclaredAlgebra) {
    stacked = stack_basis(*f.algebra());
    qr.emplace(*stacked);
  }
  for (const auto& [word, g] : f.table().values()) {
    const Matrix g_inverse = g.inverse();
    Matrix a = mode == AdjointMode::Ambient
                   ? ambient_adjoint(g, g_inverse)
                   : declared_adjoint(g, g_inverse, *f.algebra(), *stacked, *qr,
                                      word_to_string(word, sft.alphabet_size()));
    Matrix a_inverse = a.inverse();
    adjoint.emplace(word, Adjoint{std::move(a), std::move(a_inverse)});
  }

  DistortionReport report;
  report.depth = depth;
  report.mode = mode;
  report.tolerance = tolerance;
  std::vector<double> max_forward(static_cast<std::size_t>(depth), 0.0), max_inverse(max_forward);
  double spectral_s = 0.0, spectral_u = 0.0;

  const auto dim = adjoint.begin()->second.forward.rows();
  Word path;
  // Depth-first over admissible words; the n-th window closes f_n.
  auto visit = [&](auto&& self, const Matrix& forward, const Matrix& inverse) -> void {
    const int windows = static_cast<int>(path.size()) - range;
    if (windows >= 1) {
      const auto n = static_cast<std::size_t>(windows - 1);
      max_forward[n] = std::max(max_forward[n], largest_singular_value(forward));
      max_inverse[n] = std::max(max_inverse[n], largest_singular_value(inverse));
      bool periodic = range > 0 || sft.allows(path.back(), path.front());
      for (std::size_t j = static_cast<std::size_t>(windows); periodic && j < path.size(); ++j)
        periodic = path[j] == path[j - static_cast<std::size_t>(windows)];
      if (periodic) {
        const auto [high, low] = spectral_extremes(forward);
        const double inv_n = 1.0 / windows;
        spectral_s = std::max(spectral_s, std::pow(high, inv_n));
        spectral_u = std::max(spectral_u, std::pow(1.0 / low, inv_n));
      }
      if (windows == depth) return;
    }
    for (int s = 0; s < sft.alphabet_size(); ++s) {
      if (!path.empty() && !sft.allows(path.back(), s)) continue;
      path.push_back(s);
      if (static_cast<int>(path.size()) > range) {
        const Word window(path.end() - range - 1, path.end());
        const Adjoint& a = adjoint.at(window);
        self(self, Matrix(a.forward * forward), Matrix(inverse * a.inverse));
      } else {
        self(self, forward, inverse);
      }
      path.pop_back();
    }
  };
  const Matrix start = Matrix::Identity(dim, dim);
  visit(visit, start, start);

  for (int n = 1; n <= depth; ++n) {
    report.mu_s_sequence.push_back(std::pow(max_forward[static_cast<std::size_t>(n - 1)], 1.0 / n));
    report.mu_u_sequence.push_back(std::pow(max_inverse[static_cast<std::size_t>(n - 1)], 1.0 / n));
  }
  report.mu_s_upper = *std::min_element(report.mu_s_sequence.begin(), report.mu_s_sequence.end());
  report.mu_u_upper = *std::min_element(report.mu_u_sequence.begin(), report.mu_u_sequence.end());
  report.mu_s = std::min(std::max(spectral_s, 1.0), report.mu_s_upper);
  report.mu_u = std::min(std::max(spectral_u, 1.0), report.mu_u_upper);
  report.threshold = std::max(std::abs(std::log(report.mu_s)), std::abs(std::log(report.mu_u))) / std::log(2.0);
  return report;
}

DistortionVerdict check_distortion_assumption(const DistortionReport& report, double theta) {
  const double margin = theta - report.threshold;
  const double rounding = 1e-12 * std::max(1.0, std::abs(theta));
  if (margin <= rounding) return DistortionVerdict::Violated;
  if (margin <= report.tolerance) return DistortionVerdict::Marginal;
  return DistortionVerdict::Satisfied;
}

std::string to_string(DistortionVerdict verdict) {
  switch (verdict) {
    case DistortionVerdict::Satisfied: return "satisfied";
    case DistortionVerdict::Marginal: return "marginal";
    case DistortionVerdict::Violated: return "violated";
  }
  return "unknown";
}

std::string to_string(AdjointMode mode) {
  return mode == AdjointMode::Ambient ? "ambient" : "declared_algebra";
}

MatrixCocycle generate_matrix_cocycle(const SkewSystem& system, int block_length, const std::vector<Matrix>& u,
                                      const std::vector<Matrix>& alpha, std::optional<std::vector<Matrix>> algebra,
                                      double tolerance, const Limits& limits) {
  const Group& group = system.group();
  if (!group.is_finite()) throw Error(ErrorCode::InvalidArgument, "matrix generation needs a finite covering group");
  if (block_length < 1) throw Error(ErrorCode::InvalidArgument, "block length must be positive");
  const BlockGraph graph = build_block_graph(system.sft(), block_length, limits);
  if (u.size() != graph.blocks().size())
    throw Error(ErrorCode::RangeMismatch, "one potential matrix per block is required",
                {{"expected", graph.blocks().size()}, {"got", u.size()}});
  if (alpha.size() != group.order())
    throw Error(ErrorCode::RangeMismatch, "one alpha matrix per group element is required",
                {{"expected", group.order()}, {"got", alpha.size()}});
  const auto d = u.front().rows();
  for (const auto* list : {&u, &alpha})
    for (const auto& m : *list)
      if (m.rows() != d || m.cols() != d) throw Error(ErrorCode::DimensionMismatch, "matrices have different shapes");

  const auto n = group.order();
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) {
      const auto ab = group.multiply(group.element(a), group.element(b)).index();
      const double gap = distance(alpha[ab], alpha[a] * alpha[b]);
      if (gap > tolerance)
        throw Error(ErrorCode::NotAHomomorphism, "alpha does not respect the group law",
                    {{"a", group.name(group.element(a))}, {"b", group.name(group.element(b))}, {"gap", gap}});
      const double bracket = distance(alpha[a] * alpha[b], alpha[b] * alpha[a]);
      if (bracket > tolerance)
        throw Error(ErrorCode::CentralityImpossible, "alpha values do not commute",
                    {{"a", group.name(group.element(a))}, {"b", group.name(group.element(b))}, {"gap", bracket}});
    }

  std::map<Word, Matrix> values;
  for (std::size_t e = 0; e < graph.edges().size(); ++e) {
    const Word& word = graph.edge_words()[e];
    const auto& edge = graph.edges()[e];
    values.emplace(word, alpha[system.psi(word.front()).index()] * u[edge.head] * u[edge.tail].inverse());
  }
  const int k = system.sft().alphabet_size();
  for (std::size_t a = 0; a < n; ++a)
    for (const auto& [word, value] : values) {
      const double gap = distance(alpha[a] * value, value * alpha[a]);
      if (gap > tolerance)
        throw Error(ErrorCode::CentralityImpossible, "alpha is not central in the group generated by the cocycle",
                    {{"element", group.name(group.element(a))}, {"word", word_to_string(word, k)}, {"gap", gap}});
    }
  return MatrixCocycle(system.sft(), block_length, std::move(values), std::move(algebra));
}

Matrix rotation2(double angle) {
  Matrix r(2, 2);
  r << std::cos(angle), -std::sin(angle), std::sin(angle), std::cos(angle);
  return r;
}

Matrix random_matrix(MatrixFamily family, Rng& rng) {
  switch (family) {
    case MatrixFamily::SO2: return rotation2(2.0 * std::numbers::pi * rng.unit());
    case MatrixFamily::SO3: {
      Eigen::Vector3d axis;
      do {
        axis = Eigen::Vector3d(2 * rng.unit() - 1, 2 * rng.unit() - 1, 2 * rng.unit() - 1);
      } while (axis.norm() < 1e-3 || axis.norm() > 1.0);
      const double angle = 2.0 * std::numbers::pi * rng.unit();
      return Eigen::AngleAxisd(angle, axis.normalized()).toRotationMatrix();
    }
    case MatrixFamily::Unipotent3: {
      Matrix m = Matrix::Identity(3, 3);
      m(0, 1) = 2 * rng.unit() - 1;
      m(0, 2) = 2 * rng.unit() - 1;
      m(1, 2) = 2 * rng.unit() - 1;
      return m;
    }
  }
  throw std::logic_error("unknown matrix family");
}

std::vector<Matrix> family_algebra(MatrixFamily family) {
  auto unit = [](int d, int i, int j) {
    Matrix m = Matrix::Zero(d, d);
    m(i, j) = 1;
    return m;
  };
  switch (family) {
    case MatrixFamily::SO2: return {unit(2, 1, 0) - unit(2, 0, 1)};
    case MatrixFamily::SO3:
      return {unit(3, 2, 1) - unit(3, 1, 2), unit(3, 0, 2) - unit(3, 2, 0), unit(3, 1, 0) - unit(3, 0, 1)};
    case MatrixFamily::Unipotent3: return {unit(3, 0, 1), unit(3, 0, 2), unit(3, 1, 2)};
  }
  throw std::logic_error("unknown matrix family");
}

std::vector<Matrix> sl2_algebra() {
  Matrix h(2, 2), e(2, 2), f(2, 2);
  h << 1, 0, 0, -1;
  e << 0, 1, 0, 0;
  f << 0, 0, 1, 0;
  return {h, e, f};
}

}  // namespace livsic
