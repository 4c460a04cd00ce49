#include "livsic/io.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "livsic/error.hpp"

namespace livsic::io {

namespace {

[[noreturn]] void fail(const std::string& pointer, const std::string& message) {
  throw Error(ErrorCode::ParseError, message, {{"pointer", pointer}});
}

// Re-raises library errors from a section with the section's pointer attached.
template <class F>
auto at_pointer(const std::string& pointer, F&& body) -> decltype(body()) {
  try {
    return body();
  } catch (const Error& e) {
    if (e.details().contains("pointer")) throw;
    json details = e.details().is_object() ? e.details() : json::object();
    details["pointer"] = pointer;
    throw Error(e.code(), e.what(), details);
  } catch (const json::exception& e) {
    fail(pointer, e.what());
  }
}

const json& member(const json& object, const std::string& key, const std::string& pointer) {
  if (!object.is_object()) fail(pointer, "expected an object");
  auto it = object.find(key);
  if (it == object.end()) fail(pointer + "/" + key, "missing field '" + key + "'");
  return *it;
}

int integer(const json& value, const std::string& pointer) {
  if (!value.is_number_integer()) fail(pointer, "expected an integer");
  return value.get<int>();
}

Rational rational_value(const json& value, const std::string& pointer) {
  if (value.is_number_integer()) return Rational(value.get<long>());
  if (!value.is_string()) fail(pointer, "expected a rational string such as \"-3/4\"");
  return at_pointer(pointer, [&] { return parse_rational(value.get<std::string>()); });
}

double real_value(const json& value, const std::string& pointer) {
  if (value.is_number()) return value.get<double>();
  const Rational q = rational_value(value, pointer);
  return q.get_d();
}

GroupSpec group_spec(const json& g, const std::string& pointer) {
  const std::string type = [&] {
    const json& t = member(g, "type", pointer);
    if (!t.is_string()) fail(pointer + "/type", "expected a string");
    return t.get<std::string>();
  }();
  if (type == "cyclic") return CyclicSpec{integer(member(g, "order", pointer), pointer + "/order")};
  if (type == "free_abelian") return FreeAbelianSpec{integer(member(g, "rank", pointer), pointer + "/rank")};
  if (type == "permutation") {
    PermutationSpec spec;
    spec.points = integer(member(g, "points", pointer), pointer + "/points");
    const json& gens = member(g, "generators", pointer);
    if (!gens.is_array()) fail(pointer + "/generators", "expected an array");
    for (std::size_t i = 0; i < gens.size(); ++i) {
      const std::string p = pointer + "/generators/" + std::to_string(i);
      if (gens[i].is_string()) {
        spec.generators.push_back(at_pointer(p, [&] { return parse_cycles(gens[i].get<std::string>(), spec.points); }));
      } else if (gens[i].is_array()) {
        std::vector<int> images;
        for (std::size_t j = 0; j < gens[i].size(); ++j) images.push_back(integer(gens[i][j], p + "/" + std::to_string(j)));
        spec.generators.push_back(std::move(images));
      } else {
        fail(p, "expected cycle notation or an image list");
      }
    }
    return spec;
  }
  if (type == "table") {
    TableSpec spec;
    at_pointer(pointer, [&] {
      spec.elements = member(g, "elements", pointer).get<std::vector<std::string>>();
      spec.table = member(g, "table", pointer).get<std::vector<std::vector<std::string>>>();
      return 0;
    });
    return spec;
  }
  fail(pointer + "/type", "unknown group type '" + type + "'");
}

std::map<Word, json> word_table(const json& values, int k, const std::string& pointer) {
  if (!values.is_object()) fail(pointer, "expected an object keyed by words");
  std::map<Word, json> out;
  for (const auto& [key, value] : values.items()) {
    const Word w = at_pointer(pointer + "/" + key, [&] { return parse_word(key, k); });
    if (!out.emplace(w, value).second) fail(pointer + "/" + key, "duplicate word");
  }
  return out;
}

}  // namespace

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::ParseError, "cannot read '" + path + "'", {{"pointer", ""}});
  std::stringstream buffer;
  buffer << in.rdbuf();
  try {
    return json::parse(buffer.str());
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::ParseError, std::string("malformed JSON: ") + e.what(),
                {{"pointer", ""}, {"byte", e.byte}});
  }
}

Matrix matrix_from_json(const json& value, const std::string& pointer) {
  if (!value.is_array() || value.empty()) fail(pointer, "expected a non-empty array of rows");
  const auto rows = static_cast<Eigen::Index>(value.size());
  if (!value[0].is_array() || value[0].empty()) fail(pointer + "/0", "expected a non-empty row");
  const auto cols = static_cast<Eigen::Index>(value[0].size());
  Matrix m(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i) {
    const json& row = value[static_cast<std::size_t>(i)];
    const std::string p = pointer + "/" + std::to_string(i);
    if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != cols)
      throw Error(ErrorCode::DimensionMismatch, "matrix rows have different lengths", {{"pointer", p}});
    for (Eigen::Index j = 0; j < cols; ++j)
      m(i, j) = real_value(row[static_cast<std::size_t>(j)], p + "/" + std::to_string(j));
  }
  return m;
}

json matrix_to_json(const Matrix& m) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j) == 0.0 ? 0.0 : m(i, j));
    rows.push_back(std::move(row));
  }
  return rows;
}

std::vector<Matrix> algebra_from_json(const json& value, const std::string& pointer) {
  if (!value.is_array()) fail(pointer, "expected an array of matrices");
  std::vector<Matrix> out;
  for (std::size_t i = 0; i < value.size(); ++i) out.push_back(matrix_from_json(value[i], pointer + "/" + std::to_string(i)));
  return out;
}

SystemDocument parse_system(const json& document, const Limits& limits) {
  if (!document.is_object()) fail("", "expected a JSON object");
  const json& s = member(document, "sft", "");
  const int k = integer(member(s, "k", "/sft"), "/sft/k");
  if (k > limits.max_symbols)
    throw Error(ErrorCode::RangeTooLarge, "alphabet exceeds the configured cap",
                {{"pointer", "/sft/k"}, {"k", k}, {"max_symbols", limits.max_symbols}});
  const json& t = member(s, "transition", "/sft");
  SftSpec sft = at_pointer("/sft/transition", [&] {
    std::vector<std::vector<int>> rows;
    if (!t.is_array()) fail("/sft/transition", "expected an array of rows");
    for (std::size_t i = 0; i < t.size(); ++i) {
      if (!t[i].is_array()) fail("/sft/transition/" + std::to_string(i), "expected an array");
      std::vector<int> row;
      for (std::size_t j = 0; j < t[i].size(); ++j)
        row.push_back(integer(t[i][j], "/sft/transition/" + std::to_string(i) + "/" + std::to_string(j)));
      rows.push_back(std::move(row));
    }
    return SftSpec(k, std::move(rows));
  });

  auto group = at_pointer("/group", [&] {
    return std::make_shared<const Group>(Group::build(group_spec(member(document, "group", ""), "/group"), limits));
  });

  const json& p = member(document, "psi", "");
  if (!p.is_array() || static_cast<int>(p.size()) != k)
    throw Error(ErrorCode::RangeMismatch, "psi needs one element per symbol", {{"pointer", "/psi"}, {"k", k}});
  std::vector<GroupElement> psi;
  for (std::size_t i = 0; i < p.size(); ++i) {
    const std::string ptr = "/psi/" + std::to_string(i);
    if (p[i].is_string()) {
      psi.push_back(at_pointer(ptr, [&] { return group->parse(p[i].get<std::string>()); }));
    } else if (p[i].is_array() && !group->is_finite()) {
      std::vector<std::int64_t> coords;
      for (std::size_t j = 0; j < p[i].size(); ++j) coords.push_back(integer(p[i][j], ptr + "/" + std::to_string(j)));
      if (static_cast<int>(coords.size()) != group->rank())
        throw Error(ErrorCode::DimensionMismatch, "psi value has the wrong length", {{"pointer", ptr}});
      psi.push_back(GroupElement::lattice(std::move(coords)));
    } else {
      fail(ptr, "expected a group element name");
    }
  }
  SystemDocument out{document, SkewSystem(sft, group, std::move(psi)), std::nullopt, std::nullopt};

  auto c = document.find("cocycle");
  if (c == document.end() || c->is_null()) return out;
  const std::string kind = [&] {
    const json& kv = member(*c, "kind", "/cocycle");
    if (!kv.is_string()) fail("/cocycle/kind", "expected a string");
    return kv.get<std::string>();
  }();
  const int range = integer(member(*c, "range", "/cocycle"), "/cocycle/range");
  const auto table = word_table(member(*c, "values", "/cocycle"), k, "/cocycle/values");
  if (kind == "rational") {
    std::map<Word, Rational> values;
    for (const auto& [w, v] : table)
      values.emplace(w, rational_value(v, "/cocycle/values/" + word_to_string(w, k)));
    out.rational = at_pointer("/cocycle/values", [&] { return RationalCocycle(sft, range, std::move(values)); });
  } else if (kind == "matrix") {
    std::map<Word, Matrix> values;
    for (const auto& [w, v] : table) values.emplace(w, matrix_from_json(v, "/cocycle/values/" + word_to_string(w, k)));
    std::optional<std::vector<Matrix>> algebra;
    if (auto a = c->find("algebra"); a != c->end() && !a->is_null()) algebra = algebra_from_json(*a, "/cocycle/algebra");
    out.matrix = at_pointer("/cocycle", [&] { return MatrixCocycle(sft, range, std::move(values), std::move(algebra)); });
  } else {
    fail("/cocycle/kind", "unknown cocycle kind '" + kind + "'");
  }
  return out;
}

json cocycle_to_json(const RationalCocycle& f) {
  json values = json::object();
  for (const auto& [w, v] : f.values()) values[word_to_string(w, f.sft().alphabet_size())] = to_string(v);
  return {{"kind", "rational"}, {"range", f.range()}, {"values", values}};
}

json cocycle_to_json(const MatrixCocycle& f) {
  json values = json::object();
  for (const auto& [w, v] : f.table().values()) values[word_to_string(w, f.sft().alphabet_size())] = matrix_to_json(v);
  json out = {{"kind", "matrix"}, {"range", f.range()}, {"values", values}};
  if (f.algebra()) {
    json basis = json::array();
    for (const auto& x : *f.algebra()) basis.push_back(matrix_to_json(x));
    out["algebra"] = basis;
  }
  return out;
}

json residual_report_to_json(const SkewSystem& system, const ResidualReport& report) {
  json residuals = json::array();
  for (const auto& r : report.residuals)
    residuals.push_back({{"edge", word_to_string(r.word, system.sft().alphabet_size())}, {"residual", to_string(r.residual)}});
  return {{"certified", report.certified()},
          {"edges_checked", report.edges_checked},
          {"homomorphism_failures", report.homomorphism_failures},
          {"residuals", residuals},
          {"tolerance", "0"}};
}

json matrix_report_to_json(const MatrixResidualReport& report) {
  auto entries = [](const std::vector<MatrixResidualReport::Entry>& list) {
    json out = json::array();
    for (const auto& e : list) out.push_back({{"where", e.where}, {"value", e.value}});
    return out;
  };
  return {{"certified", report.certified()},
          {"centrality", entries(report.centrality)},
          {"homomorphism", entries(report.homomorphism)},
          {"max_centrality", report.max_centrality},
          {"max_homomorphism", report.max_homomorphism},
          {"max_reconstruction", report.max_reconstruction},
          {"residuals", entries(report.reconstruction)},
          {"tolerance", report.tolerance}};
}

namespace {

std::vector<std::string> alpha_keys(const Group& group) {
  std::vector<std::string> keys;
  if (group.is_finite()) {
    for (const auto& g : group.elements()) keys.push_back(group.name(g));
  } else {
    for (int j = 0; j < group.rank(); ++j) {
      std::vector<std::int64_t> unit(static_cast<std::size_t>(group.rank()), 0);
      unit[static_cast<std::size_t>(j)] = 1;
      keys.push_back(group.name(GroupElement::lattice(unit)));
    }
  }
  return keys;
}

}  // namespace

SolutionDocument make_solution_document(const SkewSystem& system, const CohomologySolution& solution,
                                        json provenance) {
  SolutionDocument doc;
  doc.kind = "rational";
  doc.block_length = solution.block_length;
  const int k = system.sft().alphabet_size();
  for (std::size_t b = 0; b < solution.blocks.size(); ++b)
    doc.u_rational.emplace_back(word_to_string(solution.blocks[b], k), solution.u[b]);
  const auto keys = alpha_keys(system.group());
  for (std::size_t i = 0; i < keys.size(); ++i)
    doc.alpha_rational.emplace_back(keys[i], i < solution.alpha.values.size() ? solution.alpha.values[i] : Rational(0));
  doc.alpha_is_zero = solution.alpha.is_zero();
  doc.certification = residual_report_to_json(system, solution.certificate);
  doc.provenance = std::move(provenance);
  return doc;
}

SolutionDocument make_solution_document(const SkewSystem& system, const MatrixSolution& solution,
                                        const MatrixResidualReport& report, json provenance) {
  SolutionDocument doc;
  doc.kind = "matrix";
  doc.block_length = solution.block_length;
  const int k = system.sft().alphabet_size();
  for (std::size_t b = 0; b < solution.blocks.size(); ++b)
    doc.u_matrix.emplace_back(word_to_string(solution.blocks[b], k), solution.u[b]);
  const auto keys = alpha_keys(system.group());
  doc.alpha_is_zero = true;
  for (std::size_t i = 0; i < keys.size(); ++i) {
    doc.alpha_matrix.emplace_back(keys[i], solution.alpha[i]);
    const auto d = solution.alpha[i].rows();
    if (distance(solution.alpha[i], Matrix::Identity(d, d)) > solution.tolerance) doc.alpha_is_zero = false;
  }
  doc.certification = matrix_report_to_json(report);
  doc.provenance = std::move(provenance);
  return doc;
}

json to_json(const SolutionDocument& doc) {
  json u = json::object(), alpha = json::object();
  if (doc.kind == "rational") {
    for (const auto& [key, value] : doc.u_rational) u[key] = to_string(value);
    for (const auto& [key, value] : doc.alpha_rational) alpha[key] = to_string(value);
  } else {
    for (const auto& [key, value] : doc.u_matrix) u[key] = matrix_to_json(value);
    for (const auto& [key, value] : doc.alpha_matrix) alpha[key] = matrix_to_json(value);
  }
  return {{"kind", doc.kind},       {"block_length", doc.block_length},   {"u", u},
          {"alpha", alpha},         {"alpha_is_zero", doc.alpha_is_zero}, {"certification", doc.certification},
          {"provenance", doc.provenance}};
}

SolutionDocument solution_from_json(const json& value) {
  SolutionDocument doc;
  const json& kind = member(value, "kind", "");
  if (!kind.is_string() || (kind != "rational" && kind != "matrix")) fail("/kind", "expected \"rational\" or \"matrix\"");
  doc.kind = kind.get<std::string>();
  doc.block_length = integer(member(value, "block_length", ""), "/block_length");
  const json& z = member(value, "alpha_is_zero", "");
  if (!z.is_boolean()) fail("/alpha_is_zero", "expected a boolean");
  doc.alpha_is_zero = z.get<bool>();
  for (const char* section : {"u", "alpha"}) {
    const std::string ptr = std::string("/") + section;
    const json& table = member(value, section, "");
    if (!table.is_object()) fail(ptr, "expected an object");
    for (const auto& [key, v] : table.items()) {
      if (doc.kind == "rational") {
        auto& list = std::string(section) == "u" ? doc.u_rational : doc.alpha_rational;
        list.emplace_back(key, rational_value(v, ptr + "/" + key));
      } else {
        auto& list = std::string(section) == "u" ? doc.u_matrix : doc.alpha_matrix;
        list.emplace_back(key, matrix_from_json(v, ptr + "/" + key));
      }
    }
  }
  doc.certification = member(value, "certification", "");
  if (!doc.certification.is_object()) fail("/certification", "expected an object");
  doc.provenance = member(value, "provenance", "");
  if (!doc.provenance.is_object()) fail("/provenance", "expected an object");
  return doc;
}

namespace {

template <class Value>
std::pair<std::vector<Word>, std::vector<Value>> blocks_of(const std::vector<std::pair<std::string, Value>>& u, int k) {
  std::map<Word, Value> sorted;
  for (const auto& [key, value] : u)
    sorted.emplace(at_pointer("/u/" + key, [&] { return parse_word(key, k); }), value);
  std::pair<std::vector<Word>, std::vector<Value>> out;
  for (auto& [w, v] : sorted) {
    out.first.push_back(w);
    out.second.push_back(v);
  }
  return out;
}

template <class Value>
std::vector<Value> alpha_values(const Group& group, const std::vector<std::pair<std::string, Value>>& alpha,
                                const Value& fallback) {
  const auto keys = alpha_keys(group);
  std::vector<Value> out(keys.size(), fallback);
  std::vector<bool> seen(keys.size(), false);
  for (const auto& [key, value] : alpha) {
    auto it = std::find(keys.begin(), keys.end(), key);
    if (it == keys.end()) {
      // Accept any spelling the group parser understands.
      const GroupElement g = at_pointer("/alpha/" + key, [&] { return group.parse(key); });
      it = std::find(keys.begin(), keys.end(), group.name(g));
      if (it == keys.end()) fail("/alpha/" + key, "alpha is given on generators only");
    }
    const auto i = static_cast<std::size_t>(it - keys.begin());
    out[i] = value;
    seen[i] = true;
  }
  for (std::size_t i = 0; i < keys.size(); ++i)
    if (!seen[i]) fail("/alpha", "alpha value missing for '" + keys[i] + "'");
  return out;
}

}  // namespace

CohomologySolution to_cohomology_solution(const SkewSystem& system, const SolutionDocument& doc) {
  if (doc.kind != "rational") fail("/kind", "expected a rational solution");
  CohomologySolution out;
  out.block_length = doc.block_length;
  std::tie(out.blocks, out.u) = blocks_of(doc.u_rational, system.sft().alphabet_size());
  out.alpha.values = alpha_values(system.group(), doc.alpha_rational, Rational(0));
  return out;
}

MatrixSolution to_matrix_solution(const SkewSystem& system, const SolutionDocument& doc) {
  if (doc.kind != "matrix") fail("/kind", "expected a matrix solution");
  MatrixSolution out;
  out.block_length = doc.block_length;
  std::tie(out.blocks, out.u) = blocks_of(doc.u_matrix, system.sft().alphabet_size());
  out.alpha = alpha_values(system.group(), doc.alpha_matrix, Matrix());
  if (doc.certification.contains("tolerance") && doc.certification["tolerance"].is_number())
    out.tolerance = doc.certification["tolerance"].get<double>();
  return out;
}

std::string serialize(const json& value) { return value.dump(2) + "\n"; }

}  // namespace livsic::io
