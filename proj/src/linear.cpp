#include "livsic/linear.hpp"

#include "livsic/error.hpp"

namespace livsic {

void SparseRationalSystem::add_equation(const std::vector<std::pair<std::size_t, Rational>>& terms,
                                        const Rational& rhs) {
  Row row;
  for (const auto& [col, coef] : terms) {
    if (col >= unknowns_) throw Error(ErrorCode::DimensionMismatch, "equation refers to an unknown out of range");
    row.terms[col] += coef;
    if (row.terms[col] == 0) row.terms.erase(col);
  }
  row.rhs = rhs;
  rows_.push_back(std::move(row));
}

std::variant<SparseRationalSystem::Solution, SparseRationalSystem::Inconsistency> SparseRationalSystem::solve()
    const {
  struct Reduced {
    std::map<std::size_t, Rational> terms;
    Rational rhs;
    std::map<std::size_t, Rational> combination;
  };
  std::map<std::size_t, Reduced> pivots;  // keyed by pivot column (the row's least column)

  for (std::size_t i = 0; i < rows_.size(); ++i) {
    Reduced r{rows_[i].terms, rows_[i].rhs, {{i, Rational(1)}}};
    auto it = r.terms.begin();
    while (it != r.terms.end()) {
      const std::size_t col = it->first;
      auto p = pivots.find(col);
      if (p == pivots.end()) {
        ++it;
        continue;
      }
      const Rational factor = it->second;
      for (const auto& [c, v] : p->second.terms) {
        Rational& slot = r.terms[c];
        slot -= factor * v;
        if (slot == 0) r.terms.erase(c);
      }
      r.rhs -= factor * p->second.rhs;
      for (const auto& [eq, v] : p->second.combination) {
        Rational& slot = r.combination[eq];
        slot -= factor * v;
        if (slot == 0) r.combination.erase(eq);
      }
      it = r.terms.upper_bound(col);
    }
    if (r.terms.empty()) {
      if (r.rhs != 0) {
        Inconsistency bad{std::vector<Rational>(rows_.size(), 0), r.rhs};
        for (const auto& [eq, v] : r.combination) bad.multipliers[eq] = v;
        return bad;
      }
      continue;
    }
    const Rational lead = r.terms.begin()->second;
    for (auto& [c, v] : r.terms) v /= lead;
    r.rhs /= lead;
    for (auto& [eq, v] : r.combination) v /= lead;
    const std::size_t col = r.terms.begin()->first;
    pivots.emplace(col, std::move(r));
  }

  Solution solution{std::vector<Rational>(unknowns_, 0), {}};
  for (std::size_t c = 0; c < unknowns_; ++c)
    if (!pivots.contains(c)) solution.free_unknowns.push_back(c);
  for (auto it = pivots.rbegin(); it != pivots.rend(); ++it) {
    Rational value = it->second.rhs;
    for (const auto& [c, v] : it->second.terms)
      if (c != it->first) value -= v * solution.values[c];
    solution.values[it->first] = value;
  }
  return solution;
}

}  // namespace livsic
