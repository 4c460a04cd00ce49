#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include <Eigen/Dense>

#include "livsic/abelian.hpp"
#include "livsic/cocycle.hpp"
#include "livsic/limits.hpp"
#include "livsic/rng.hpp"
#include "livsic/skew.hpp"

namespace livsic {

using Matrix = Eigen::MatrixXd;

/// Frobenius norm of a - b; every tolerance in this module refers to it.
double distance(const Matrix& a, const Matrix& b);

/// Locally constant GL(d)-valued cocycle, optionally with the Lie algebra of
/// the subgroup it lives in (used for the adjoint action).
class MatrixCocycle {
 public:
  /// Throws DimensionMismatch, SingularMatrix (|det| <= singular_tolerance)
  /// or AlgebraNotClosed.
  MatrixCocycle(const SftSpec& sft, int range, std::map<Word, Matrix> values,
                std::optional<std::vector<Matrix>> algebra = std::nullopt, double singular_tolerance = 1e-12);

  const CocycleTable<Matrix>& table() const { return table_; }
  const SftSpec& sft() const { return table_.sft(); }
  int range() const { return table_.range(); }
  int block_length() const { return table_.block_length(); }
  int dimension() const { return dimension_; }
  const std::optional<std::vector<Matrix>>& algebra() const { return algebra_; }
  const Matrix& leading(std::span<const int> word) const { return table_.leading(word); }

 private:
  CocycleTable<Matrix> table_;
  int dimension_;
  std::optional<std::vector<Matrix>> algebra_;
};

/// f(w_{n-1}) ... f(w_1) f(w_0) over the cyclic windows of a cyclically admissible word.
Matrix birkhoff_product(const MatrixCocycle& f, std::span<const int> cyclic_word);

/// f(edge) = alpha(psi(B_0)) u(B') u(B)^{-1}; alpha indexed by element.
struct MatrixSolution {
  int block_length = 1;
  std::vector<Word> blocks;
  std::vector<Matrix> u;
  std::vector<Matrix> alpha;
  double residual = 0.0;
  double tolerance = 1e-9;
};

struct MatrixViolationWitness {
  PeriodicOrbit orbit;
  int repetitions = 1;
  Matrix product;
  double deviation = 0.0;  // distance(product, I)

  Word periodic_word() const;
};

/// The cycle condition holds but the fiber shift is not a central
/// homomorphism, so no solution of the required form exists.
struct NoCentralSolution {
  std::string reason;
  double discrepancy = 0.0;
};

/// First trivial-class periodic point of period <= max_period (primitive
/// orbits and their trivial-class powers, in (period, word) order) whose
/// ordered product is farther than `tolerance` from I.
std::optional<MatrixViolationWitness> verify_matrix_vanishing(const SkewSystem& system, const MatrixCocycle& f,
                                                              int max_period, double tolerance = 1e-9,
                                                              const Limits& limits = {});

using MatrixSolveResult = std::variant<MatrixSolution, MatrixViolationWitness, FiniteNotTransitive, NoCentralSolution>;

MatrixSolveResult solve_matrix_finite(const SkewSystem& system, const MatrixCocycle& f, double tolerance = 1e-9,
                                      const Limits& limits = {});

struct MatrixResidualReport {
  struct Entry {
    std::string where;
    double value;
  };
  double tolerance = 1e-9;
  double max_reconstruction = 0.0;
  double max_homomorphism = 0.0;
  double max_centrality = 0.0;
  std::vector<Entry> reconstruction;  // entries above tolerance
  std::vector<Entry> homomorphism;
  std::vector<Entry> centrality;

  bool certified() const { return reconstruction.empty() && homomorphism.empty() && centrality.empty(); }
};

MatrixResidualReport verify_matrix_solution(const SkewSystem& system, const MatrixCocycle& f,
                                            const MatrixSolution& solution, double tolerance = 1e-9);

enum class AdjointMode { DeclaredAlgebra, Ambient };

struct DistortionReport {
  int depth = 0;
  AdjointMode mode = AdjointMode::DeclaredAlgebra;
  double tolerance = 1e-6;
  /// (max over admissible words of ||Ad(f_n)||)^{1/n}, n = 1..depth.
  std::vector<double> mu_s_sequence;
  /// Same with Ad(f_n)^{-1}.
  std::vector<double> mu_u_sequence;
  /// Spectral estimates: max over n, words of rho(Ad(f_n))^{1/n}, capped by the
  /// norm bounds below. These are the reported mu_s, mu_u.
  double mu_s = 1.0;
  double mu_u = 1.0;
  /// min_n of the norm sequences: upper bounds for the limits.
  double mu_s_upper = 1.0;
  double mu_u_upper = 1.0;
  /// max(|log mu_s|, |log mu_u|) / log 2
  double threshold = 0.0;
};

/// RangeTooLarge when the word scan exceeds limits.max_words; AlgebraNotClosed
/// when a cocycle value does not preserve the declared algebra.
DistortionReport estimate_distortion(const MatrixCocycle& f, int depth, AdjointMode mode, const Limits& limits = {},
                                     double tolerance = 1e-6);

enum class DistortionVerdict { Satisfied, Marginal, Violated };

/// Satisfied when theta exceeds the threshold by more than the report's
/// tolerance, Violated when theta does not exceed it at all, Marginal between.
DistortionVerdict check_distortion_assumption(const DistortionReport& report, double theta);

std::string to_string(DistortionVerdict verdict);
std::string to_string(AdjointMode mode);

/// f(edge) := alpha(psi(B_0)) u(B') u(B)^{-1} over BlockGraph(block_length).
/// NotAHomomorphism unless alpha(ab) = alpha(a) alpha(b); CentralityImpossible
/// when alpha values fail to commute with each other or with the generated f.
MatrixCocycle generate_matrix_cocycle(const SkewSystem& system, int block_length, const std::vector<Matrix>& u,
                                      const std::vector<Matrix>& alpha,
                                      std::optional<std::vector<Matrix>> algebra = std::nullopt,
                                      double tolerance = 1e-9, const Limits& limits = {});

enum class MatrixFamily { SO2, SO3, Unipotent3 };

Matrix rotation2(double angle);
Matrix random_matrix(MatrixFamily family, Rng& rng);
/// Basis of the Lie algebra of the family (so(2), so(3), strictly upper triangular 3x3).
std::vector<Matrix> family_algebra(MatrixFamily family);
/// sl(2) basis {H, E, F}.
std::vector<Matrix> sl2_algebra();

}  // namespace livsic
