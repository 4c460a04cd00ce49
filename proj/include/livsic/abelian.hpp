#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "livsic/cocycle.hpp"
#include "livsic/limits.hpp"
#include "livsic/skew.hpp"

namespace livsic {

/// A periodic point w^m (w primitive, canonical) with psi of w^m equal to e
/// and nonzero Birkhoff sum. repetitions is 1 unless psi(w) has finite order
/// m > 1, in which case w^m is the shortest trivial-class loop over w.
struct ViolationWitness {
  PeriodicOrbit orbit;
  int repetitions = 1;
  Rational sum;

  Word periodic_word() const;
};

/// Checks f^n = 0 over every periodic point of period <= max_period whose
/// psi_n is trivial, by scanning primitive orbits and their trivial-class
/// powers. Returns the first violation in (period, word) order.
std::optional<ViolationWitness> verify_vanishing(const SkewSystem& system, const RationalCocycle& f,
                                                 int max_period, const Limits& limits = {});

/// Homomorphism Gamma -> Q. Finite Gamma: one value per element (forced to
/// zero). Z^d: the images of the standard basis vectors.
struct Alpha {
  std::vector<Rational> values;

  bool is_zero() const;
  Rational evaluate(const Group& group, const GroupElement& element) const;
};

struct EdgeResidual {
  std::size_t edge;
  Word word;
  Rational residual;
};

struct ResidualReport {
  std::size_t edges_checked = 0;
  std::vector<EdgeResidual> residuals;  // nonzero only
  std::vector<std::string> homomorphism_failures;

  bool certified() const { return residuals.empty() && homomorphism_failures.empty(); }
};

/// f(edge) = u(B') - u(B) + alpha(psi(B_0)) on every edge B -> B' of BlockGraph(r).
struct CohomologySolution {
  int block_length = 1;
  std::vector<Word> blocks;
  std::vector<Rational> u;
  Alpha alpha;
  ResidualReport certificate;
};

struct FiniteNotTransitive {
  std::string from;
  std::string to;
};

using FiniteSolveResult = std::variant<CohomologySolution, ViolationWitness, FiniteNotTransitive>;

/// Spanning-tree potential on the product graph over max(r_f, 1)-blocks.
FiniteSolveResult solve_finite_gamma(const SkewSystem& system, const RationalCocycle& f,
                                     const Limits& limits = {});

struct Degenerate {
  enum class Kind { UnderdeterminedAlpha, Inconsistent };
  Kind kind = Kind::UnderdeterminedAlpha;
  /// Present for UnderdeterminedAlpha: free alpha coordinates pinned to zero.
  std::optional<CohomologySolution> solution;
  /// Lattice generated by psi-weights of cycles.
  LatticeReport cycle_lattice;
  /// Inconsistent: edge multipliers y with y.(incidence) = 0, y.psi = 0 and
  /// y.f = certificate_value != 0.
  std::vector<Rational> certificate_flow;
  Rational certificate_value;
  std::string note;
};

using FreeAbelianSolveResult = std::variant<CohomologySolution, ViolationWitness, Degenerate>;

struct FreeAbelianOptions {
  /// Deepest period scanned when turning an inconsistency into an orbit witness.
  int witness_depth = 12;
  Limits limits{};
};

/// Exact solve of u(B') - u(B) + alpha . psi(B_0) = f(edge). Throws
/// NotStronglyConnected when the base block graph is not strongly connected.
FreeAbelianSolveResult solve_free_abelian(const SkewSystem& system, const RationalCocycle& f,
                                          const FreeAbelianOptions& options = {});

ResidualReport verify_solution(const SkewSystem& system, const RationalCocycle& f, const CohomologySolution& solution);

/// f(edge) := u(B') - u(B) + alpha(psi(B_0)) on BlockGraph(block_length);
/// the resulting cocycle has range block_length. TorsionAlpha when alpha is
/// nonzero over a finite group.
RationalCocycle generate_cocycle(const SkewSystem& system, int block_length, const std::vector<Rational>& u,
                                 const Alpha& alpha, const Limits& limits = {});

/// Random potential on BlockGraph(block_length): |numerator| <= bound,
/// denominator in [1, bound].
std::vector<Rational> random_potential(const SftSpec& sft, int block_length, std::uint64_t seed,
                                       std::int64_t bound = 9, const Limits& limits = {});

Alpha zero_alpha(const Group& group);

}  // namespace livsic
