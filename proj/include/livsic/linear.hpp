#pragma once

#include <map>
#include <utility>
#include <variant>
#include <vector>

#include "livsic/rational.hpp"

namespace livsic {

/// Exact sparse linear system over Q, solved by incremental row echelon
/// reduction. Each reduced row remembers which original equations it
/// combines, so an inconsistency comes with its left-null certificate.
class SparseRationalSystem {
 public:
  explicit SparseRationalSystem(std::size_t unknowns) : unknowns_(unknowns) {}

  void add_equation(const std::vector<std::pair<std::size_t, Rational>>& terms, const Rational& rhs);

  std::size_t unknowns() const { return unknowns_; }
  std::size_t equations() const { return rows_.size(); }

  struct Solution {
    std::vector<Rational> values;
    /// Unknowns without a pivot; they are pinned to zero.
    std::vector<std::size_t> free_unknowns;
  };

  /// sum_i multipliers[i] * equation_i has all coefficients zero and right
  /// hand side `value` != 0.
  struct Inconsistency {
    std::vector<Rational> multipliers;
    Rational value;
  };

  std::variant<Solution, Inconsistency> solve() const;

 private:
  struct Row {
    std::map<std::size_t, Rational> terms;
    Rational rhs;
  };

  std::size_t unknowns_;
  std::vector<Row> rows_;
};

}  // namespace livsic
