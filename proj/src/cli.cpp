#include "livsic/cli.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "livsic/abelian.hpp"
#include "livsic/error.hpp"
#include "livsic/io.hpp"
#include "livsic/matrix.hpp"
#include "livsic/rng.hpp"
#include "livsic/skew.hpp"

namespace livsic::cli {

using io::json;

namespace {

struct Outcome {
  int code;
  json payload;
};

Limits limits_from_environment() {
  Limits limits;
  auto read = [](const char* name, auto& target) {
    const char* raw = std::getenv(name);
    if (!raw) return;
    const std::string text(raw);
    char* end = nullptr;
    const long long value = std::strtoll(text.c_str(), &end, 10);
    if (text.empty() || *end != '\0' || value < 1)
      throw Error(ErrorCode::InvalidArgument, std::string(name) + " must be a positive integer", {{"value", text}});
    target = static_cast<std::remove_reference_t<decltype(target)>>(value);
  };
  read("LIVSIC_MAX_STATES", limits.max_states);
  read("LIVSIC_MAX_PERIOD", limits.max_period);
  return limits;
}

json lattice_json(const LatticeReport& report) {
  json divisors = json::array();
  for (const auto& d : report.divisors) divisors.push_back(d.get_str());
  return {{"rank", report.rank}, {"full", report.full}, {"divisors", divisors}};
}

json witness_json(const SkewSystem& system, const ViolationWitness& w) {
  const int k = system.sft().alphabet_size();
  return {{"orbit", word_to_string(w.orbit.word, k)},
          {"period", w.orbit.period()},
          {"repetitions", w.repetitions},
          {"periodic_word", word_to_string(w.periodic_word(), k)},
          {"sum", to_string(w.sum)}};
}

json witness_json(const SkewSystem& system, const MatrixViolationWitness& w, double tolerance) {
  const int k = system.sft().alphabet_size();
  return {{"orbit", word_to_string(w.orbit.word, k)},
          {"period", w.orbit.period()},
          {"repetitions", w.repetitions},
          {"periodic_word", word_to_string(w.periodic_word(), k)},
          {"product", io::matrix_to_json(w.product)},
          {"deviation", w.deviation},
          {"tolerance", tolerance}};
}

json group_json(const Group& group) {
  static const char* kinds[] = {"table", "permutation", "cyclic", "free_abelian"};
  json out = {{"type", kinds[static_cast<int>(group.kind())]}};
  if (group.is_finite()) {
    out["order"] = group.order();
    out["trusted"] = group.trusted();
  } else {
    out["rank"] = group.rank();
  }
  return out;
}


void require_cocycle(const io::SystemDocument& doc) {
  if (!doc.rational && !doc.matrix) throw Error(ErrorCode::InvalidArgument, "the document has no cocycle");
}

std::string basename_if_path(const std::string& arg) {
  std::error_code ec;
  if (arg.find('/') != std::string::npos && std::filesystem::exists(arg, ec))
    return std::filesystem::path(arg).filename().string();
  return arg;
}

json provenance(const std::vector<std::string>& args, std::optional<std::uint64_t> seed) {
  json command = json::array();
  for (std::size_t i = 0; i < args.size(); ++i) {
    const bool output_path = i > 0 && args[i - 1] == "--out";
    command.push_back(output_path ? std::filesystem::path(args[i]).filename().string() : basename_if_path(args[i]));
  }
  json out = {{"tool", "livsic"}, {"version", kVersion}, {"command", command}};
  out["seed"] = seed ? json(*seed) : json(nullptr);
  return out;
}

// ---- commands ----

Outcome cmd_validate(const io::SystemDocument& doc) {
  const ValidationReport report = validate_sft(doc.system.sft());
  require_valid(doc.system.sft());
  const Group& group = doc.system.group();
  json psi = json::array();
  for (const auto& g : doc.system.psi_values()) psi.push_back(group.name(g));
  json cocycle = nullptr;
  if (doc.rational)
    cocycle = {{"kind", "rational"}, {"range", doc.rational->range()}, {"words", doc.rational->values().size()}};
  if (doc.matrix)
    cocycle = {{"kind", "matrix"},
               {"range", doc.matrix->range()},
               {"words", doc.matrix->table().values().size()},
               {"dimension", doc.matrix->dimension()},
               {"algebra_dimension", doc.matrix->algebra() ? json(doc.matrix->algebra()->size()) : json(nullptr)}};
  return {0,
          {{"status", "valid"},
           {"sft",
            {{"k", doc.system.sft().alphabet_size()},
             {"irreducible", report.irreducible},
             {"aperiodic", report.aperiodic},
             {"period", report.period}}},
           {"group", group_json(group)},
           {"psi", psi},
           {"cocycle", cocycle}}};
}

Outcome cmd_transitivity(const io::SystemDocument& doc, int probe_depth, const Limits& limits) {
  TransitivityOptions options;
  options.probe_depth = probe_depth;
  options.limits = limits;
  const auto verdict = check_transitivity(doc.system, options);
  if (std::holds_alternative<Transitive>(verdict)) return {0, {{"verdict", "transitive"}}};
  if (const auto* no = std::get_if<NotTransitive>(&verdict)) {
    json out = {{"verdict", "not_transitive"}, {"certificate", no->certificate}};
    if (no->unreachable) out["witness"] = {{"from", no->unreachable->first}, {"to", no->unreachable->second}};
    if (no->cycle_lattice) out["cycle_lattice"] = lattice_json(*no->cycle_lattice);
    if (no->drift_functional) {
      json f = json::array();
      for (const auto& q : *no->drift_functional) f.push_back(to_string(q));
      out["drift_functional"] = f;
    }
    return {1, out};
  }
  const auto& unknown = std::get<TransitivityUnknown>(verdict);
  return {0,
          {{"verdict", "unknown"},
           {"evidence",
            {{"probe_depth", unknown.probe_depth},
             {"probed_orbits", unknown.probed_orbits},
             {"probed_lattice", lattice_json(unknown.probed_lattice)},
             {"cycle_lattice", lattice_json(unknown.cycle_lattice)},
             {"zero_in_interior", unknown.zero_in_interior}}}}};
}

Outcome cmd_orbits(const io::SystemDocument& doc, int max_period, bool trivial_only, const Limits& limits) {
  require_valid(doc.system.sft());
  const Group& group = doc.system.group();
  const int k = doc.system.sft().alphabet_size();
  json orbits = json::array();
  for (const auto& orbit : enumerate_periodic_orbits(doc.system.sft(), max_period, limits)) {
    const FrobeniusClassTag tag = frobenius_class(doc.system, orbit);
    if (trivial_only && !tag.trivial) continue;
    json entry = {{"word", word_to_string(orbit.word, k)},
                  {"period", orbit.period()},
                  {"return_element", group.name(tag.return_element)},
                  {"trivial", tag.trivial}};
    if (tag.conjugacy_class) {
      json members = json::array();
      for (const auto& m : tag.conjugacy_class->members) members.push_back(group.name(m));
      entry["class"] = members;
    }
    orbits.push_back(std::move(entry));
  }
  const auto count = orbits.size();
  return {0, {{"max_period", max_period}, {"trivial_only", trivial_only}, {"count", count}, {"orbits", orbits}}};
}

Outcome cmd_vanishing(const io::SystemDocument& doc, int max_period, double tol, const Limits& limits) {
  require_cocycle(doc);
  if (doc.rational) {
    if (auto w = verify_vanishing(doc.system, *doc.rational, max_period, limits))
      return {1, {{"status", "violation"}, {"max_period", max_period}, {"witness", witness_json(doc.system, *w)}}};
  } else if (auto w = verify_matrix_vanishing(doc.system, *doc.matrix, max_period, tol, limits)) {
    return {1, {{"status", "violation"}, {"max_period", max_period}, {"witness", witness_json(doc.system, *w, tol)}}};
  }
  return {0, {{"status", "ok"}, {"max_period", max_period}}};
}

Outcome not_transitive(const FiniteNotTransitive& n) {
  return {1, {{"status", "not_transitive"}, {"witness", {{"from", n.from}, {"to", n.to}}}}};
}

Outcome cmd_solve(const io::SystemDocument& doc, double tol, int witness_depth, const std::string& out_path,
                  const json& prov, const Limits& limits) {
  require_cocycle(doc);
  require_valid(doc.system.sft());
  std::optional<io::SolutionDocument> solution;
  Outcome failure{1, nullptr};
  if (doc.rational) {
    if (doc.system.group().is_finite()) {
      const auto result = solve_finite_gamma(doc.system, *doc.rational, limits);
      if (const auto* s = std::get_if<CohomologySolution>(&result)) solution = io::make_solution_document(doc.system, *s, prov);
      else if (const auto* w = std::get_if<ViolationWitness>(&result))
        failure.payload = {{"status", "violation"}, {"witness", witness_json(doc.system, *w)}};
      else failure = not_transitive(std::get<FiniteNotTransitive>(result));
    } else {
      FreeAbelianOptions options;
      options.witness_depth = witness_depth;
      options.limits = limits;
      const auto result = solve_free_abelian(doc.system, *doc.rational, options);
      if (const auto* s = std::get_if<CohomologySolution>(&result)) {
        solution = io::make_solution_document(doc.system, *s, prov);
      } else if (const auto* w = std::get_if<ViolationWitness>(&result)) {
        failure.payload = {{"status", "violation"}, {"witness", witness_json(doc.system, *w)}};
      } else {
        const auto& d = std::get<Degenerate>(result);
        if (d.kind == Degenerate::Kind::UnderdeterminedAlpha) {
          solution = io::make_solution_document(doc.system, *d.solution, prov);
          solution->certification["degenerate"] = {{"kind", "underdetermined_alpha"},
                                                   {"cycle_lattice", lattice_json(d.cycle_lattice)},
                                                   {"note", d.note}};
        } else {
          const auto& graph_words = build_block_graph(doc.system.sft(), doc.rational->block_length(), limits).edge_words();
          json flow = json::object();
          for (std::size_t e = 0; e < d.certificate_flow.size(); ++e)
            if (d.certificate_flow[e] != 0)
              flow[word_to_string(graph_words[e], doc.system.sft().alphabet_size())] = to_string(d.certificate_flow[e]);
          failure.payload = {{"status", "inconsistent"},
                             {"certificate",
                              {{"flow", flow},
                               {"value", to_string(d.certificate_value)},
                               {"cycle_lattice", lattice_json(d.cycle_lattice)},
                               {"note", d.note}}}};
        }
      }
    }
  } else {
    const auto result = solve_matrix_finite(doc.system, *doc.matrix, tol, limits);
    if (const auto* s = std::get_if<MatrixSolution>(&result)) {
      solution = io::make_solution_document(doc.system, *s, verify_matrix_solution(doc.system, *doc.matrix, *s, tol), prov);
    } else if (const auto* w = std::get_if<MatrixViolationWitness>(&result)) {
      failure.payload = {{"status", "violation"}, {"witness", witness_json(doc.system, *w, tol)}};
    } else if (const auto* n = std::get_if<NoCentralSolution>(&result)) {
      failure.payload = {{"status", "no_central_solution"}, {"reason", n->reason}, {"discrepancy", n->discrepancy}, {"tolerance", tol}};
    } else {
      failure = not_transitive(std::get<FiniteNotTransitive>(result));
    }
  }
  if (!solution) return failure;
  const json payload = io::to_json(*solution);
  if (!out_path.empty()) {
    std::ofstream file(out_path, std::ios::binary);
    if (!file) throw Error(ErrorCode::InvalidArgument, "cannot write '" + out_path + "'");
    file << io::serialize(payload);
  }
  return {0, payload};
}

Outcome cmd_verify_solution(const io::SystemDocument& doc, const std::string& path, std::optional<double> tol) {
  require_cocycle(doc);
  const io::SolutionDocument sol = io::solution_from_json(io::read_json_file(path));
  if (doc.rational) {
    const CohomologySolution s = io::to_cohomology_solution(doc.system, sol);
    const ResidualReport report = verify_solution(doc.system, *doc.rational, s);
    const json cert = io::residual_report_to_json(doc.system, report);
    return {report.certified() ? 0 : 1, {{"status", report.certified() ? "certified" : "residuals"}, {"certification", cert}}};
  }
  MatrixSolution s = io::to_matrix_solution(doc.system, sol);
  const double t = tol.value_or(s.tolerance);
  const MatrixResidualReport report = verify_matrix_solution(doc.system, *doc.matrix, s, t);
  return {report.certified() ? 0 : 1,
          {{"status", report.certified() ? "certified" : "residuals"}, {"certification", io::matrix_report_to_json(report)}}};
}

MatrixFamily family_of(const std::string& name) {
  if (name == "so2") return MatrixFamily::SO2;
  if (name == "so3") return MatrixFamily::SO3;
  if (name == "unipotent3") return MatrixFamily::Unipotent3;
  throw Error(ErrorCode::InvalidArgument, "unknown matrix family '" + name + "'", {{"families", {"so2", "so3", "unipotent3"}}});
}

json json_argument(const std::string& text) {
  const auto first = text.find_first_not_of(" \t\n");
  if (first != std::string::npos && (text[first] == '{' || text[first] == '[')) {
    try {
      return json::parse(text);
    } catch (const json::parse_error& e) {
      throw Error(ErrorCode::ParseError, std::string("malformed inline JSON: ") + e.what(), {{"pointer", ""}});
    }
  }
  return io::read_json_file(text);
}

Alpha rational_alpha(const Group& group, const std::string& spec) {
  Alpha alpha = zero_alpha(group);
  if (spec.empty()) return alpha;
  std::vector<Rational> parts;
  std::stringstream stream(spec);
  std::string piece;
  while (std::getline(stream, piece, ',')) parts.push_back(parse_rational(piece));
  if (group.is_finite()) {
    for (const auto& q : parts)
      if (q != 0) throw Error(ErrorCode::TorsionAlpha, "a finite group admits only the zero homomorphism to Q", {{"alpha", spec}});
    return alpha;
  }
  if (parts.size() != static_cast<std::size_t>(group.rank()))
    throw Error(ErrorCode::DimensionMismatch, "alpha needs one value per generator", {{"rank", group.rank()}, {"alpha", spec}});
  alpha.values = parts;
  return alpha;
}

std::vector<Matrix> matrix_alpha(const Group& group, const std::string& spec, int d) {
  std::vector<Matrix> alpha(group.order(), Matrix::Identity(d, d));
  if (spec.empty() || spec == "identity") return alpha;
  const json table = json_argument(spec);
  if (!table.is_object()) throw Error(ErrorCode::ParseError, "alpha must map element names to matrices", {{"pointer", ""}});
  std::vector<bool> seen(group.order(), false);
  for (const auto& [name, value] : table.items()) {
    const GroupElement g = group.parse(name);
    alpha[g.index()] = io::matrix_from_json(value, "/" + name);
    seen[g.index()] = true;
  }
  for (std::size_t i = 0; i < seen.size(); ++i)
    if (!seen[i] && !group.is_identity(group.element(i)))
      throw Error(ErrorCode::RangeMismatch, "alpha value missing for '" + group.name(group.element(i)) + "'");
  return alpha;
}

struct GenerateFlags {
  std::string u_file;
  bool random = false;
  std::string alpha;
  std::optional<std::uint64_t> seed;
  int block_length = 1;
  std::string kind = "rational";
  std::string family = "so2";
  int bound = 9;
};

Outcome cmd_generate(const io::SystemDocument& doc, const GenerateFlags& flags, const json& prov, const Limits& limits) {
  if (flags.random == !flags.u_file.empty())
    throw Error(ErrorCode::InvalidArgument, "generate needs exactly one of --u FILE or --random");
  if (flags.random && !flags.seed) throw Error(ErrorCode::InvalidArgument, "--random requires --seed");
  require_valid(doc.system.sft());
  const int k = doc.system.sft().alphabet_size();
  const BlockGraph graph = build_block_graph(doc.system.sft(), flags.block_length, limits);
  json out = doc.source;
  out.erase("provenance");

  if (flags.kind == "rational") {
    std::vector<Rational> u;
    if (flags.random) {
      u = random_potential(doc.system.sft(), flags.block_length, *flags.seed, flags.bound, limits);
    } else {
      const json table = io::read_json_file(flags.u_file);
      u.assign(graph.blocks().size(), 0);
      std::vector<bool> seen(u.size(), false);
      if (!table.is_object()) throw Error(ErrorCode::ParseError, "u must map blocks to rationals", {{"pointer", ""}});
      for (const auto& [key, value] : table.items()) {
        const auto b = graph.find_block(parse_word(key, k));
        if (!b) throw Error(ErrorCode::RangeMismatch, "u is given on a word that is not a block", {{"pointer", "/" + key}});
        if (!value.is_string() && !value.is_number_integer())
          throw Error(ErrorCode::ParseError, "expected a rational string", {{"pointer", "/" + key}});
        u[*b] = value.is_string() ? parse_rational(value.get<std::string>()) : Rational(value.get<long>());
        seen[*b] = true;
      }
      for (std::size_t b = 0; b < seen.size(); ++b)
        if (!seen[b])
          throw Error(ErrorCode::RangeMismatch, "u value missing for block " + word_to_string(graph.blocks()[b], k));
    }
    const Alpha alpha = rational_alpha(doc.system.group(), flags.alpha);
    out["cocycle"] = io::cocycle_to_json(generate_cocycle(doc.system, flags.block_length, u, alpha, limits));
  } else if (flags.kind == "matrix") {
    if (!doc.system.group().is_finite()) throw Error(ErrorCode::InvalidArgument, "matrix cocycles need a finite group");
    std::vector<Matrix> u;
    std::optional<std::vector<Matrix>> algebra;
    if (flags.random) {
      const MatrixFamily family = family_of(flags.family);
      Rng rng(*flags.seed);
      for (std::size_t b = 0; b < graph.blocks().size(); ++b) u.push_back(random_matrix(family, rng));
      algebra = family_algebra(family);
    } else {
      const json table = io::read_json_file(flags.u_file);
      if (!table.is_object()) throw Error(ErrorCode::ParseError, "u must map blocks to matrices", {{"pointer", ""}});
      std::vector<std::optional<Matrix>> slots(graph.blocks().size());
      for (const auto& [key, value] : table.items()) {
        const auto b = graph.find_block(parse_word(key, k));
        if (!b) throw Error(ErrorCode::RangeMismatch, "u is given on a word that is not a block", {{"pointer", "/" + key}});
        slots[*b] = io::matrix_from_json(value, "/" + key);
      }
      for (std::size_t b = 0; b < slots.size(); ++b) {
        if (!slots[b]) throw Error(ErrorCode::RangeMismatch, "u value missing for block " + word_to_string(graph.blocks()[b], k));
        u.push_back(*slots[b]);
      }
    }
    const int d = static_cast<int>(u.front().rows());
    const auto alpha = matrix_alpha(doc.system.group(), flags.alpha, d);
    out["cocycle"] = io::cocycle_to_json(
        generate_matrix_cocycle(doc.system, flags.block_length, u, alpha, std::move(algebra), 1e-9, limits));
  } else {
    throw Error(ErrorCode::InvalidArgument, "unknown cocycle kind '" + flags.kind + "'");
  }
  out["provenance"] = prov;
  return {0, out};
}

const MatrixCocycle& matrix_of(const io::SystemDocument& doc) {
  if (!doc.matrix) throw Error(ErrorCode::InvalidArgument, "distortion needs a matrix cocycle");
  return *doc.matrix;
}

DistortionReport distortion_report(const io::SystemDocument& doc, int depth, const std::string& algebra_file,
                                   bool ambient, double tol, const Limits& limits) {
  const MatrixCocycle& f = matrix_of(doc);
  if (ambient && !algebra_file.empty()) throw Error(ErrorCode::InvalidArgument, "--algebra and --ambient are exclusive");
  if (!algebra_file.empty()) {
    const auto basis = io::algebra_from_json(io::read_json_file(algebra_file), "");
    const MatrixCocycle g(f.sft(), f.range(), f.table().values(), basis);
    return estimate_distortion(g, depth, AdjointMode::DeclaredAlgebra, limits, tol);
  }
  const AdjointMode mode = ambient || !f.algebra() ? AdjointMode::Ambient : AdjointMode::DeclaredAlgebra;
  return estimate_distortion(f, depth, mode, limits, tol);
}

json distortion_json(const DistortionReport& r) {
  return {{"depth", r.depth},
          {"mode", to_string(r.mode)},
          {"mu_s", r.mu_s},
          {"mu_u", r.mu_u},
          {"mu_s_upper", r.mu_s_upper},
          {"mu_u_upper", r.mu_u_upper},
          {"mu_s_sequence", r.mu_s_sequence},
          {"mu_u_sequence", r.mu_u_sequence},
          {"threshold", r.threshold},
          {"tolerance", r.tolerance},
          {"note", "finite-depth estimate: the sequences are not guaranteed to have converged"}};
}

void add_file_option(CLI::App* cmd, std::string& file) {
  cmd->add_option("FILE", file, "system document (JSON)")->required();
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Livsic cohomology tools for skew products over subshifts of finite type", "livsic"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kVersion);

  std::string file, out_path, solution_path, algebra_file;
  int max_period = 0, probe_depth = 12, witness_depth = 12, depth = 10;
  bool trivial_only = false, ambient = false;
  double tol = 1e-9, dist_tol = 1e-6, theta = 0.0;
  std::optional<double> verify_tol;
  GenerateFlags gen;

  auto* validate = app.add_subcommand("validate", "check a system document");
  add_file_option(validate, file);

  auto* transitivity = app.add_subcommand("check-transitivity", "decide transitivity of the skew product");
  add_file_option(transitivity, file);
  transitivity->add_option("--probe-depth", probe_depth, "orbit probe depth for free abelian covers")->check(CLI::PositiveNumber);

  auto* orbits = app.add_subcommand("orbits", "list primitive periodic orbits with their classes");
  add_file_option(orbits, file);
  orbits->add_option("--max-period", max_period)->required()->check(CLI::PositiveNumber);
  orbits->add_flag("--trivial-only", trivial_only);

  auto* vanishing = app.add_subcommand("verify-vanishing", "check sums over trivial-class periodic points");
  add_file_option(vanishing, file);
  vanishing->add_option("--max-period", max_period)->required()->check(CLI::PositiveNumber);
  vanishing->add_option("--tol", tol, "matrix tolerance");

  auto* solve = app.add_subcommand("solve", "solve the cohomological equation");
  add_file_option(solve, file);
  solve->add_option("--tol", tol, "matrix tolerance");
  solve->add_option("--out", out_path, "also write the solution document here");
  solve->add_option("--witness-depth", witness_depth)->check(CLI::PositiveNumber);

  auto* verify = app.add_subcommand("verify-solution", "re-check a solution document");
  add_file_option(verify, file);
  verify->add_option("--solution", solution_path)->required();
  verify->add_option("--tol", verify_tol, "matrix tolerance");

  auto* generate = app.add_subcommand("generate", "build a cocycle from a potential and a homomorphism");
  add_file_option(generate, file);
  generate->add_option("--u", gen.u_file, "JSON file mapping blocks to potential values");
  generate->add_flag("--random", gen.random, "draw the potential from --seed");
  generate->add_option("--alpha", gen.alpha, "rational list for Z^d, or JSON element->matrix map (inline or file)");
  generate->add_option("--seed", gen.seed);
  generate->add_option("--block-length", gen.block_length)->check(CLI::PositiveNumber);
  generate->add_option("--kind", gen.kind)->check(CLI::IsMember({"rational", "matrix"}));
  generate->add_option("--family", gen.family)->check(CLI::IsMember({"so2", "so3", "unipotent3"}));
  generate->add_option("--bound", gen.bound)->check(CLI::PositiveNumber);

  auto* distortion = app.add_subcommand("distortion", "estimate the distortion constants");
  add_file_option(distortion, file);
  distortion->add_option("--depth", depth)->required()->check(CLI::PositiveNumber);
  distortion->add_option("--algebra", algebra_file, "JSON list of basis matrices");
  distortion->add_flag("--ambient", ambient);
  distortion->add_option("--tol", dist_tol);

  auto* check = app.add_subcommand("check-distortion", "compare a Holder exponent with the distortion threshold");
  add_file_option(check, file);
  check->add_option("--theta", theta)->required();
  check->add_option("--depth", depth)->check(CLI::PositiveNumber);
  check->add_option("--algebra", algebra_file);
  check->add_flag("--ambient", ambient);
  check->add_option("--tol", dist_tol);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForVersion&) {
    out << kVersion << "\n";
    return 0;
  } catch (const CLI::ParseError& e) {
    err << io::serialize({{"error", "InvalidArgument"}, {"message", e.what()}, {"details", json::object()}});
    return 2;
  }

  try {
    const Limits limits = limits_from_environment();
    const io::SystemDocument doc = io::parse_system(io::read_json_file(file), limits);
    Outcome outcome{0, nullptr};
    if (validate->parsed()) outcome = cmd_validate(doc);
    else if (transitivity->parsed()) outcome = cmd_transitivity(doc, probe_depth, limits);
    else if (orbits->parsed()) outcome = cmd_orbits(doc, max_period, trivial_only, limits);
    else if (vanishing->parsed()) outcome = cmd_vanishing(doc, max_period, tol, limits);
    else if (solve->parsed())
      outcome = cmd_solve(doc, tol, witness_depth, out_path, provenance(args, std::nullopt), limits);
    else if (verify->parsed()) outcome = cmd_verify_solution(doc, solution_path, verify_tol);
    else if (generate->parsed()) outcome = cmd_generate(doc, gen, provenance(args, gen.seed), limits);
    else if (distortion->parsed())
      outcome = {0, distortion_json(distortion_report(doc, depth, algebra_file, ambient, dist_tol, limits))};
    else {
      const DistortionReport report = distortion_report(doc, depth, algebra_file, ambient, dist_tol, limits);
      const DistortionVerdict verdict = check_distortion_assumption(report, theta);
      outcome = {verdict == DistortionVerdict::Satisfied ? 0 : 1,
                 {{"theta", theta},
                  {"threshold", report.threshold},
                  {"verdict", to_string(verdict)},
                  {"report", distortion_json(report)}}};
    }
    out << io::serialize(outcome.payload);
    return outcome.code;
  } catch (const Error& e) {
    err << io::serialize(e.to_json());
    return 2;
  } catch (const std::exception& e) {
    err << io::serialize({{"error", "Internal"}, {"message", e.what()}, {"details", json::object()}});
    return 2;
  }
}

}  // namespace livsic::cli
