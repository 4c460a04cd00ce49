#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <vector>

#include "livsic/abelian.hpp"
#include "livsic/matrix.hpp"
#include "livsic/skew.hpp"

namespace livsic::oracle {

/// Brute-force reference checks. They work from the transition matrix, the
/// group law and the raw cocycle tables only.
struct OracleConfig {
  int max_period = 10;
  std::size_t max_state_count = 4096;
  double tolerance = 1e-9;

  /// InvalidArgument unless caps are positive and within `limits`.
  void check(const Limits& limits = {}) const;
};

/// Every state (r-word, element) reaches every other. StateSpaceTooLarge
/// beyond config.max_state_count.
bool brute_transitivity(const SkewSystem& system, const OracleConfig& config = {}, int block_length = 1);

struct BruteViolation {
  Word word;  // first cyclic word in (length, lexicographic) order
  Rational sum;
};

/// All cyclically admissible words up to config.max_period, proper powers and
/// rotations included; returns the first with psi_n = e and nonzero sum.
std::optional<BruteViolation> brute_vanishing(const SkewSystem& system, const RationalCocycle& f,
                                              const OracleConfig& config = {});

struct BruteMatrixViolation {
  Word word;
  double deviation;
};

std::optional<BruteMatrixViolation> brute_matrix_vanishing(const SkewSystem& system, const MatrixCocycle& f,
                                                           const OracleConfig& config = {});

/// Telescoping check on sampled admissible words.
bool brute_solution_check(const SkewSystem& system, const RationalCocycle& f, const CohomologySolution& solution,
                          std::uint64_t seed = 1, int samples = 1000, int length = 50);
bool brute_matrix_solution_check(const SkewSystem& system, const MatrixCocycle& f, const MatrixSolution& solution,
                                 const OracleConfig& config = {}, std::uint64_t seed = 1, int samples = 1000,
                                 int length = 50);

struct WitnessCheck {
  bool admissible = false;
  bool trivial_class = false;
  Rational sum;

  bool valid() const { return admissible && trivial_class && sum != 0; }
};

/// Re-evaluates a periodic word claimed as a violation.
WitnessCheck check_witness(const SkewSystem& system, const RationalCocycle& f, const Word& periodic_word);

struct MatrixWitnessCheck {
  bool admissible = false;
  bool trivial_class = false;
  double deviation = 0.0;
  double tolerance = 1e-9;

  bool valid() const { return admissible && trivial_class && deviation > tolerance; }
};

MatrixWitnessCheck check_matrix_witness(const SkewSystem& system, const MatrixCocycle& f, const Word& periodic_word,
                                        double tolerance = 1e-9);

/// An edge combination on BlockGraph(f.block_length()) given by its (r+1)-words:
/// balanced at every block, zero psi-weight, f-weight equal to `value` != 0.
bool check_flow_certificate(const SkewSystem& system, const RationalCocycle& f,
                            const std::map<Word, Rational>& flow, const Rational& value);

/// Largest of rho(Ad P)^{1/n} and rho(Ad P^{-1})^{1/n} over the ordered
/// products P of f around cyclic words of length <= max_length. Ad acts on
/// all d x d matrices (ambient) or on the cocycle's declared algebra.
double brute_adjoint_growth(const MatrixCocycle& f, int max_length, bool ambient);

/// Least rotations of the symbol words of primitive closed walks of length
/// <= max_length in the one-block product graph.
std::set<Word> brute_product_cycles(const SkewSystem& system, int max_length);

/// Strongly connected check of the symbol graph by repeated search.
bool brute_irreducible(const SftSpec& sft);

/// Number of cyclically admissible words of length n.
std::uint64_t brute_fixed_points(const SftSpec& sft, int n);

}  // namespace livsic::oracle
