#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "livsic/group.hpp"
#include "livsic/rational.hpp"

namespace livsic {

/// Smith normal form diagonal of an integer matrix (rows x cols), including
/// zeros, in divisibility order.
std::vector<BigInt> smith_diagonal(std::vector<std::vector<BigInt>> matrix);

/// coefficients . x >= bound
struct LinearInequality {
  std::vector<Rational> coefficients;
  Rational bound;
};

/// Fourier-Motzkin elimination with back-substitution. Returns a feasible
/// point or std::nullopt when the system is infeasible.
std::optional<std::vector<Rational>> solve_inequalities(std::vector<LinearInequality> system, std::size_t dimension);

/// A functional lambda with lambda . v >= 1 for every v (so strictly positive),
/// or std::nullopt when 0 lies in the convex hull of the vectors.
std::optional<std::vector<Rational>> strictly_positive_functional(std::span<const std::vector<Rational>> vectors,
                                                                  std::size_t dimension);

/// True iff 0 is an interior point of the convex hull, i.e. no nonzero lambda
/// satisfies lambda . v >= 0 for every v.
bool zero_in_hull_interior(std::span<const std::vector<Rational>> vectors, std::size_t dimension);

}  // namespace livsic
