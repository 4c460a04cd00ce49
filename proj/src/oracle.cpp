#include "livsic/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <functional>
#include <map>

#include "livsic/error.hpp"
#include "livsic/rng.hpp"

namespace livsic::oracle {

void OracleConfig::check(const Limits& limits) const {
  if (max_period < 1 || max_period > limits.max_period)
    throw Error(ErrorCode::InvalidArgument, "oracle period cap out of range", {{"max_period", max_period}});
  if (max_state_count < 1 || max_state_count > limits.max_states)
    throw Error(ErrorCode::InvalidArgument, "oracle state cap out of range", {{"max_state_count", max_state_count}});
  if (!(tolerance > 0)) throw Error(ErrorCode::InvalidArgument, "oracle tolerance must be positive");
}

namespace {

constexpr std::uint64_t kMaxWords = 1u << 24;

// Calls visit(word) on every word of length n over k symbols, lexicographic.
void each_word(int k, int n, const std::function<void(const Word&)>& visit) {
  Word w(static_cast<std::size_t>(n), 0);
  for (;;) {
    visit(w);
    int i = n - 1;
    while (i >= 0 && w[static_cast<std::size_t>(i)] == k - 1) w[static_cast<std::size_t>(i--)] = 0;
    if (i < 0) return;
    ++w[static_cast<std::size_t>(i)];
  }
}

bool allowed(const SftSpec& sft, int a, int b) { return sft.transition()[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)] == 1; }

bool path_ok(const SftSpec& sft, const Word& w) {
  for (std::size_t i = 0; i + 1 < w.size(); ++i)
    if (!allowed(sft, w[i], w[i + 1])) return false;
  return true;
}

bool cycle_ok(const SftSpec& sft, const Word& w) { return path_ok(sft, w) && allowed(sft, w.back(), w.front()); }

// psi(w_{n-1}) ... psi(w_0), multiplied one symbol at a time on the left.
GroupElement fiber_return(const SkewSystem& system, const Word& w, std::size_t n) {
  const Group& g = system.group();
  GroupElement acc = g.identity();
  for (std::size_t i = 0; i < n; ++i) acc = g.multiply(system.psi(w[i]), acc);
  return acc;
}

template <class Value>
const Value& lookup(const std::map<Word, Value>& table, const Word& cyclic, std::size_t start, int range) {
  Word window;
  for (int j = 0; j <= range; ++j) window.push_back(cyclic[(start + static_cast<std::size_t>(j)) % cyclic.size()]);
  return table.at(window);
}

void check_word_budget(int k, int max_period) {
  double total = 0;
  for (int n = 1; n <= max_period; ++n) total += std::pow(static_cast<double>(k), n);
  if (total > static_cast<double>(kMaxWords))
    throw Error(ErrorCode::StateSpaceTooLarge, "brute-force word scan too large", {{"words", total}});
}

Word least_rotation_naive(const Word& w) {
  Word best = w;
  for (std::size_t s = 1; s < w.size(); ++s) {
    Word r(w.begin() + static_cast<std::ptrdiff_t>(s), w.end());
    r.insert(r.end(), w.begin(), w.begin() + static_cast<std::ptrdiff_t>(s));
    best = std::min(best, r);
  }
  return best;
}

Matrix mat_identity(int d) { return Matrix::Identity(d, d); }

}  // namespace

bool brute_transitivity(const SkewSystem& system, const OracleConfig& config, int block_length) {
  const SftSpec& sft = system.sft();
  const Group& group = system.group();
  if (!group.is_finite()) throw Error(ErrorCode::InfiniteGroup, "brute transitivity needs a finite group");
  std::vector<Word> blocks;
  each_word(sft.alphabet_size(), block_length, [&](const Word& w) {
    if (path_ok(sft, w)) blocks.push_back(w);
  });
  const std::size_t n = group.order();
  const std::size_t states = blocks.size() * n;
  if (states > config.max_state_count)
    throw Error(ErrorCode::StateSpaceTooLarge, "product state space exceeds the oracle cap",
                {{"states", states}, {"max_state_count", config.max_state_count}});
  std::map<Word, std::size_t> index;
  for (std::size_t i = 0; i < blocks.size(); ++i) index[blocks[i]] = i;

  std::vector<std::vector<std::size_t>> next(states);
  for (std::size_t b = 0; b < blocks.size(); ++b)
    for (int s = 0; s < sft.alphabet_size(); ++s) {
      if (!allowed(sft, blocks[b].back(), s)) continue;
      Word shifted(blocks[b].begin() + 1, blocks[b].end());
      shifted.push_back(s);
      const std::size_t b2 = index.at(shifted);
      for (std::size_t x = 0; x < n; ++x) {
        const auto y = group.multiply(system.psi(blocks[b].front()), group.element(x)).index();
        next[b * n + x].push_back(b2 * n + y);
      }
    }
  for (std::size_t start = 0; start < states; ++start) {
    std::vector<bool> seen(states, false);
    std::deque<std::size_t> queue{start};
    seen[start] = true;
    std::size_t count = 1;
    while (!queue.empty()) {
      const auto v = queue.front();
      queue.pop_front();
      for (auto w : next[v])
        if (!seen[w]) {
          seen[w] = true;
          ++count;
          queue.push_back(w);
        }
    }
    if (count != states) return false;
  }
  return true;
}

std::optional<BruteViolation> brute_vanishing(const SkewSystem& system, const RationalCocycle& f,
                                              const OracleConfig& config) {
  const SftSpec& sft = system.sft();
  check_word_budget(sft.alphabet_size(), config.max_period);
  const Group& group = system.group();
  for (int n = 1; n <= config.max_period; ++n) {
    std::optional<BruteViolation> found;
    each_word(sft.alphabet_size(), n, [&](const Word& w) {
      if (found || !cycle_ok(sft, w)) return;
      if (!group.is_identity(fiber_return(system, w, w.size()))) return;
      Rational sum = 0;
      for (std::size_t i = 0; i < w.size(); ++i) sum += lookup(f.values(), w, i, f.range());
      if (sum != 0) found = BruteViolation{w, sum};
    });
    if (found) return found;
  }
  return std::nullopt;
}

std::optional<BruteMatrixViolation> brute_matrix_vanishing(const SkewSystem& system, const MatrixCocycle& f,
                                                           const OracleConfig& config) {
  const SftSpec& sft = system.sft();
  check_word_budget(sft.alphabet_size(), config.max_period);
  const Group& group = system.group();
  const Matrix id = mat_identity(f.dimension());
  for (int n = 1; n <= config.max_period; ++n) {
    std::optional<BruteMatrixViolation> found;
    each_word(sft.alphabet_size(), n, [&](const Word& w) {
      if (found || !cycle_ok(sft, w)) return;
      if (!group.is_identity(fiber_return(system, w, w.size()))) return;
      Matrix p = id;
      for (std::size_t i = 0; i < w.size(); ++i) p = lookup(f.table().values(), w, i, f.range()) * p;
      const double dev = (p - id).norm();
      if (dev > config.tolerance) found = BruteMatrixViolation{w, dev};
    });
    if (found) return found;
  }
  return std::nullopt;
}

namespace {

Word sample_word(const SftSpec& sft, Rng& rng, int length) {
  const int k = sft.alphabet_size();
  Word w{static_cast<int>(rng.uniform(0, k - 1))};
  while (static_cast<int>(w.size()) < length) {
    std::vector<int> options;
    for (int s = 0; s < k; ++s)
      if (allowed(sft, w.back(), s)) options.push_back(s);
    w.push_back(options[static_cast<std::size_t>(rng.uniform(0, static_cast<std::int64_t>(options.size()) - 1))]);
  }
  return w;
}

Word slice(const Word& w, std::size_t from, int len) {
  return Word(w.begin() + static_cast<std::ptrdiff_t>(from),
              w.begin() + static_cast<std::ptrdiff_t>(from) + len);
}

}  // namespace

bool brute_solution_check(const SkewSystem& system, const RationalCocycle& f, const CohomologySolution& solution,
                          std::uint64_t seed, int samples, int length) {
  const int r = solution.block_length;
  if (length <= r || r < f.range() || solution.u.size() != solution.blocks.size()) return false;
  std::map<Word, Rational> u;
  for (std::size_t i = 0; i < solution.blocks.size(); ++i) u[solution.blocks[i]] = solution.u[i];
  const Group& group = system.group();
  Rng rng(seed);
  for (int s = 0; s < samples; ++s) {
    const Word w = sample_word(system.sft(), rng, length);
    const auto n = static_cast<std::size_t>(length - r);
    Rational lhs = 0;
    for (std::size_t i = 0; i < n; ++i) lhs += f.values().at(slice(w, i, f.range() + 1));
    const GroupElement g = fiber_return(system, w, n);
    Rational a = 0;
    if (group.is_finite()) {
      if (!solution.alpha.values.empty()) a = solution.alpha.values.at(g.index());
    } else {
      for (std::size_t j = 0; j < g.coords().size(); ++j)
        a += solution.alpha.values.at(j) * Rational(static_cast<long>(g.coords()[j]));
    }
    const auto start = u.find(slice(w, 0, r)), end = u.find(slice(w, n, r));
    if (start == u.end() || end == u.end()) return false;
    if (lhs != end->second - start->second + a) return false;
  }
  return true;
}

bool brute_matrix_solution_check(const SkewSystem& system, const MatrixCocycle& f, const MatrixSolution& solution,
                                 const OracleConfig& config, std::uint64_t seed, int samples, int length) {
  const int r = solution.block_length;
  if (length <= r || r < f.range() || solution.u.size() != solution.blocks.size()) return false;
  std::map<Word, Matrix> u;
  for (std::size_t i = 0; i < solution.blocks.size(); ++i) u[solution.blocks[i]] = solution.u[i];
  Rng rng(seed);
  for (int s = 0; s < samples; ++s) {
    const Word w = sample_word(system.sft(), rng, length);
    const auto n = static_cast<std::size_t>(length - r);
    Matrix lhs = mat_identity(f.dimension());
    for (std::size_t i = 0; i < n; ++i) lhs = f.table().values().at(slice(w, i, f.range() + 1)) * lhs;
    const GroupElement g = fiber_return(system, w, n);
    const auto start = u.find(slice(w, 0, r)), end = u.find(slice(w, n, r));
    if (start == u.end() || end == u.end()) return false;
    const Matrix rhs = solution.alpha.at(g.index()) * end->second * start->second.inverse();
    if ((lhs - rhs).norm() > config.tolerance) return false;
  }
  return true;
}

WitnessCheck check_witness(const SkewSystem& system, const RationalCocycle& f, const Word& periodic_word) {
  WitnessCheck out;
  if (periodic_word.empty() || !cycle_ok(system.sft(), periodic_word)) return out;
  out.admissible = true;
  out.trivial_class = system.group().is_identity(fiber_return(system, periodic_word, periodic_word.size()));
  out.sum = 0;
  for (std::size_t i = 0; i < periodic_word.size(); ++i) out.sum += lookup(f.values(), periodic_word, i, f.range());
  return out;
}

MatrixWitnessCheck check_matrix_witness(const SkewSystem& system, const MatrixCocycle& f, const Word& periodic_word,
                                        double tolerance) {
  MatrixWitnessCheck out;
  out.tolerance = tolerance;
  if (periodic_word.empty() || !cycle_ok(system.sft(), periodic_word)) return out;
  out.admissible = true;
  out.trivial_class = system.group().is_identity(fiber_return(system, periodic_word, periodic_word.size()));
  Matrix p = mat_identity(f.dimension());
  for (std::size_t i = 0; i < periodic_word.size(); ++i)
    p = lookup(f.table().values(), periodic_word, i, f.range()) * p;
  out.deviation = (p - mat_identity(f.dimension())).norm();
  return out;
}

bool check_flow_certificate(const SkewSystem& system, const RationalCocycle& f,
                            const std::map<Word, Rational>& flow, const Rational& value) {
  if (value == 0) return false;
  const int r = f.range() < 1 ? 1 : f.range();
  const Group& group = system.group();
  std::map<Word, Rational> balance;
  std::vector<Rational> weight(static_cast<std::size_t>(group.is_finite() ? 0 : group.rank()), 0);
  Rational total = 0;
  for (const auto& [word, y] : flow) {
    if (static_cast<int>(word.size()) != r + 1 || !path_ok(system.sft(), word)) return false;
    balance[Word(word.begin(), word.end() - 1)] -= y;
    balance[Word(word.begin() + 1, word.end())] += y;
    const GroupElement g = system.psi(word.front());
    for (std::size_t j = 0; j < weight.size(); ++j) weight[j] += y * Rational(static_cast<long>(g.coords()[j]));
    total += y * f.values().at(Word(word.begin(), word.begin() + f.range() + 1));
  }
  for (const auto& [block, b] : balance)
    if (b != 0) return false;
  for (const auto& w : weight)
    if (w != 0) return false;
  return total == value;
}

namespace {

Matrix conjugation_operator(const Matrix& p, const std::vector<Matrix>& basis) {
  const Matrix p_inv = p.inverse();
  const auto m = static_cast<Eigen::Index>(basis.size());
  const auto d2 = basis.front().size();
  Matrix stacked(d2, m), images(d2, m);
  for (Eigen::Index j = 0; j < m; ++j) {
    const Matrix& x = basis[static_cast<std::size_t>(j)];
    const Matrix y = p * x * p_inv;
    for (Eigen::Index i = 0; i < d2; ++i) {
      stacked(i, j) = x(i % x.rows(), i / x.rows());
      images(i, j) = y(i % y.rows(), i / y.rows());
    }
  }
  return stacked.fullPivHouseholderQr().solve(images);
}

std::vector<Matrix> ambient_basis(int d) {
  std::vector<Matrix> out;
  for (int j = 0; j < d; ++j)
    for (int i = 0; i < d; ++i) {
      Matrix e = Matrix::Zero(d, d);
      e(i, j) = 1;
      out.push_back(e);
    }
  return out;
}

}  // namespace

double brute_adjoint_growth(const MatrixCocycle& f, int max_length, bool ambient) {
  const SftSpec& sft = f.sft();
  check_word_budget(sft.alphabet_size(), max_length);
  const std::vector<Matrix> basis = ambient || !f.algebra() ? ambient_basis(f.dimension()) : *f.algebra();
  double best = 1.0;
  for (int n = 1; n <= max_length; ++n)
    each_word(sft.alphabet_size(), n, [&](const Word& w) {
      if (!cycle_ok(sft, w)) return;
      Matrix p = mat_identity(f.dimension());
      for (std::size_t i = 0; i < w.size(); ++i) p = lookup(f.table().values(), w, i, f.range()) * p;
      const Matrix ad = conjugation_operator(p, basis);
      const Eigen::VectorXd moduli = Eigen::EigenSolver<Matrix>(ad, false).eigenvalues().cwiseAbs();
      best = std::max(best, std::pow(moduli.maxCoeff(), 1.0 / n));
      best = std::max(best, std::pow(1.0 / moduli.minCoeff(), 1.0 / n));
    });
  return best;
}

std::set<Word> brute_product_cycles(const SkewSystem& system, int max_length) {
  const SftSpec& sft = system.sft();
  check_word_budget(sft.alphabet_size(), max_length);
  const Group& group = system.group();
  std::set<Word> out;
  for (int n = 1; n <= max_length; ++n)
    each_word(sft.alphabet_size(), n, [&](const Word& w) {
      if (!cycle_ok(sft, w) || !group.is_identity(fiber_return(system, w, w.size()))) return;
      // A closed walk is a proper power when its state sequence repeats with a
      // shorter period p: w is p-periodic and the first p steps already close.
      for (int p = 1; p < n; ++p) {
        if (n % p != 0) continue;
        bool periodic = true;
        for (int i = p; i < n && periodic; ++i) periodic = w[static_cast<std::size_t>(i)] == w[static_cast<std::size_t>(i - p)];
        if (periodic && group.is_identity(fiber_return(system, w, static_cast<std::size_t>(p)))) return;
      }
      out.insert(least_rotation_naive(w));
    });
  return out;
}

bool brute_irreducible(const SftSpec& sft) {
  const int k = sft.alphabet_size();
  for (int a = 0; a < k; ++a) {
    std::vector<bool> seen(static_cast<std::size_t>(k), false);
    std::vector<int> stack;
    for (int b = 0; b < k; ++b)
      if (allowed(sft, a, b) && !seen[static_cast<std::size_t>(b)]) {
        seen[static_cast<std::size_t>(b)] = true;
        stack.push_back(b);
      }
    while (!stack.empty()) {
      const int v = stack.back();
      stack.pop_back();
      for (int b = 0; b < k; ++b)
        if (allowed(sft, v, b) && !seen[static_cast<std::size_t>(b)]) {
          seen[static_cast<std::size_t>(b)] = true;
          stack.push_back(b);
        }
    }
    if (!std::all_of(seen.begin(), seen.end(), [](bool x) { return x; })) return false;
  }
  return true;
}

std::uint64_t brute_fixed_points(const SftSpec& sft, int n) {
  check_word_budget(sft.alphabet_size(), n);
  std::uint64_t count = 0;
  each_word(sft.alphabet_size(), n, [&](const Word& w) {
    if (cycle_ok(sft, w)) ++count;
  });
  return count;
}

}  // namespace livsic::oracle
