#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "livsic/abelian.hpp"
#include "livsic/matrix.hpp"
#include "livsic/skew.hpp"

namespace livsic::io {

using nlohmann::json;

/// A parsed system document: shift, group, psi and an optional cocycle.
struct SystemDocument {
  json source;
  SkewSystem system;
  std::optional<RationalCocycle> rational;
  std::optional<MatrixCocycle> matrix;
};

/// Errors raised while reading a section carry its JSON pointer in
/// details["pointer"]. The shift is checked for shape only.
SystemDocument parse_system(const json& document, const Limits& limits = {});

/// Reads and parses a JSON file; unreadable files and malformed JSON raise ParseError.
json read_json_file(const std::string& path);

Matrix matrix_from_json(const json& value, const std::string& pointer);
json matrix_to_json(const Matrix& m);
std::vector<Matrix> algebra_from_json(const json& value, const std::string& pointer);

json cocycle_to_json(const RationalCocycle& f);
json cocycle_to_json(const MatrixCocycle& f);

/// Output or input of solve / verify-solution.
struct SolutionDocument {
  std::string kind;  // "rational" or "matrix"
  int block_length = 1;
  std::vector<std::pair<std::string, Rational>> u_rational;
  std::vector<std::pair<std::string, Rational>> alpha_rational;
  std::vector<std::pair<std::string, Matrix>> u_matrix;
  std::vector<std::pair<std::string, Matrix>> alpha_matrix;
  bool alpha_is_zero = true;
  json certification = json::object();
  json provenance = json::object();
};

SolutionDocument make_solution_document(const SkewSystem& system, const CohomologySolution& solution,
                                        json provenance);
SolutionDocument make_solution_document(const SkewSystem& system, const MatrixSolution& solution,
                                        const MatrixResidualReport& report, json provenance);

json to_json(const SolutionDocument& document);
SolutionDocument solution_from_json(const json& value);

CohomologySolution to_cohomology_solution(const SkewSystem& system, const SolutionDocument& document);
MatrixSolution to_matrix_solution(const SkewSystem& system, const SolutionDocument& document);

json residual_report_to_json(const SkewSystem& system, const ResidualReport& report);
json matrix_report_to_json(const MatrixResidualReport& report);

/// Two-space indented JSON with sorted keys and a trailing newline.
std::string serialize(const json& value);

}  // namespace livsic::io
