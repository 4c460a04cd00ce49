#include "livsic/lattice.hpp"

#include <algorithm>
#include <set>

#include "livsic/error.hpp"

namespace livsic {

std::vector<BigInt> smith_diagonal(std::vector<std::vector<BigInt>> a) {
  const std::size_t rows = a.size();
  const std::size_t cols = rows ? a[0].size() : 0;
  const std::size_t steps = std::min(rows, cols);
  for (std::size_t t = 0; t < steps; ++t) {
    // Pivot: smallest nonzero magnitude in the trailing block.
    for (;;) {
      std::optional<std::pair<std::size_t, std::size_t>> pivot;
      for (std::size_t i = t; i < rows; ++i)
        for (std::size_t j = t; j < cols; ++j)
          if (a[i][j] != 0 && (!pivot || abs(a[i][j]) < abs(a[pivot->first][pivot->second]))) pivot = {i, j};
      if (!pivot) break;
      std::swap(a[t], a[pivot->first]);
      for (auto& row : a) std::swap(row[t], row[pivot->second]);

      bool clean = true;
      for (std::size_t i = t + 1; i < rows; ++i) {
        const BigInt q = a[i][t] / a[t][t];
        if (q != 0)
          for (std::size_t j = t; j < cols; ++j) a[i][j] -= q * a[t][j];
        clean = clean && a[i][t] == 0;
      }
      for (std::size_t j = t + 1; j < cols; ++j) {
        const BigInt q = a[t][j] / a[t][t];
        if (q != 0)
          for (std::size_t i = t; i < rows; ++i) a[i][j] -= q * a[i][t];
        clean = clean && a[t][j] == 0;
      }
      if (!clean) continue;
      // Divisibility: fold any trailing entry not divisible by the pivot into row t.
      std::optional<std::size_t> offending;
      for (std::size_t i = t + 1; i < rows && !offending; ++i)
        for (std::size_t j = t + 1; j < cols; ++j)
          if (a[i][j] % a[t][t] != 0) {
            offending = i;
            break;
          }
      if (!offending) break;
      for (std::size_t j = t; j < cols; ++j) a[t][j] += a[*offending][j];
    }
  }
  std::vector<BigInt> diagonal;
  for (std::size_t t = 0; t < steps; ++t) diagonal.push_back(abs(a[t][t]));
  std::stable_partition(diagonal.begin(), diagonal.end(), [](const BigInt& x) { return x != 0; });
  return diagonal;
}

LatticeReport subgroup_rank_and_index(std::span<const std::vector<std::int64_t>> vectors, int d) {
  if (d < 1) throw Error(ErrorCode::DimensionMismatch, "lattice dimension must be positive");
  std::vector<std::vector<BigInt>> m;
  for (const auto& v : vectors) {
    if (v.size() != static_cast<std::size_t>(d))
      throw Error(ErrorCode::DimensionMismatch, "vector length differs from the lattice dimension",
                  {{"expected", d}, {"got", v.size()}});
    std::vector<BigInt> row;
    for (auto x : v) row.emplace_back(static_cast<long>(x));
    m.push_back(std::move(row));
  }
  LatticeReport report;
  if (m.empty()) return report;
  for (auto& x : smith_diagonal(std::move(m)))
    if (x != 0) report.divisors.push_back(x);
  report.rank = static_cast<int>(report.divisors.size());
  report.full = report.rank == d &&
                std::all_of(report.divisors.begin(), report.divisors.end(), [](const BigInt& x) { return x == 1; });
  return report;
}

namespace {

// Scale to a canonical representative so duplicates collapse.
LinearInequality normalized(LinearInequality in) {
  Rational scale = 0;
  for (const auto& c : in.coefficients)
    if (c != 0) {
      scale = abs(c);
      break;
    }
  if (scale == 0) return in;
  for (auto& c : in.coefficients) c /= scale;
  in.bound /= scale;
  return in;
}

struct InequalityLess {
  bool operator()(const LinearInequality& a, const LinearInequality& b) const {
    if (a.coefficients != b.coefficients) return a.coefficients < b.coefficients;
    return a.bound < b.bound;
  }
};

}  // namespace

std::optional<std::vector<Rational>> solve_inequalities(std::vector<LinearInequality> system, std::size_t dimension) {
  // stages[j] holds the system over variables 0..j (later ones eliminated).
  std::vector<std::vector<LinearInequality>> stages(dimension + 1);
  {
    std::set<LinearInequality, InequalityLess> unique;
    for (auto& q : system) unique.insert(normalized(std::move(q)));
    stages[dimension].assign(unique.begin(), unique.end());
  }
  for (std::size_t var = dimension; var-- > 0;) {
    const auto& current = stages[var + 1];
    std::vector<const LinearInequality*> lower, upper;
    std::set<LinearInequality, InequalityLess> next;
    for (const auto& q : current) {
      if (q.coefficients[var] > 0) lower.push_back(&q);
      else if (q.coefficients[var] < 0) upper.push_back(&q);
      else next.insert(q);
    }
    for (const auto* lo : lower)
      for (const auto* up : upper) {
        // lo: a x_var + r.x >= b (a>0); up: -c x_var + s.x >= e (c>0)
        const Rational a = lo->coefficients[var], c = -up->coefficients[var];
        LinearInequality combined;
        combined.coefficients.resize(dimension);
        for (std::size_t i = 0; i < dimension; ++i)
          combined.coefficients[i] = c * lo->coefficients[i] + a * up->coefficients[i];
        combined.coefficients[var] = 0;
        combined.bound = c * lo->bound + a * up->bound;
        next.insert(normalized(std::move(combined)));
      }
    stages[var].assign(next.begin(), next.end());
  }
  for (const auto& q : stages[0])
    if (q.bound > 0) return std::nullopt;  // 0 >= positive

  std::vector<Rational> x(dimension, 0);
  for (std::size_t var = 0; var < dimension; ++var) {
    std::optional<Rational> lo, hi;
    for (const auto& q : stages[var + 1]) {
      const Rational a = q.coefficients[var];
      if (a == 0) continue;
      Rational rest = q.bound;
      for (std::size_t i = 0; i < var; ++i) rest -= q.coefficients[i] * x[i];
      const Rational limit = rest / a;
      if (a > 0) lo = lo ? std::max(*lo, limit) : limit;
      else hi = hi ? std::min(*hi, limit) : limit;
    }
    if (lo && hi) x[var] = (*lo + *hi) / 2;
    else if (lo) x[var] = *lo + 1;
    else if (hi) x[var] = *hi - 1;
    else x[var] = 0;
  }
  return x;
}

std::optional<std::vector<Rational>> strictly_positive_functional(std::span<const std::vector<Rational>> vectors,
                                                                  std::size_t dimension) {
  std::vector<LinearInequality> system;
  for (const auto& v : vectors) system.push_back({v, 1});
  return solve_inequalities(std::move(system), dimension);
}

bool zero_in_hull_interior(std::span<const std::vector<Rational>> vectors, std::size_t dimension) {
  for (std::size_t i = 0; i < dimension; ++i)
    for (int sign : {1, -1}) {
      std::vector<LinearInequality> system;
      for (const auto& v : vectors) system.push_back({v, 0});
      LinearInequality pin;
      pin.coefficients.assign(dimension, 0);
      pin.coefficients[i] = sign;
      pin.bound = 1;
      system.push_back(std::move(pin));
      if (solve_inequalities(std::move(system), dimension)) return false;
    }
  return true;
}

}  // namespace livsic
