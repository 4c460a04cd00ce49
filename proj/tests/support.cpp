#include "support.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

#include "livsic/cli.hpp"
#include "livsic/io.hpp"
#include "livsic/oracle.hpp"

namespace livsic::testing {

std::shared_ptr<const Group> cyclic_group(int order) {
  return std::make_shared<const Group>(Group::build(CyclicSpec{order}));
}

std::shared_ptr<const Group> symmetric3() {
  return std::make_shared<const Group>(Group::build(PermutationSpec{3, {{2, 1, 3}, {2, 3, 1}}}));
}

std::shared_ptr<const Group> quaternion8() {
  const std::vector<std::string> names{"1", "-1", "i", "-i", "j", "-j", "k", "-k"};
  // Basis units 1, i, j, k with signs; product of units u*v = sign * w.
  const int unit_table[4][4] = {{0, 1, 2, 3}, {1, 0, 3, 2}, {2, 3, 0, 1}, {3, 2, 1, 0}};
  const int sign_table[4][4] = {{1, 1, 1, 1}, {1, -1, 1, -1}, {1, -1, -1, 1}, {1, 1, -1, -1}};
  TableSpec spec;
  spec.elements = names;
  for (int a = 0; a < 8; ++a) {
    std::vector<std::string> row;
    for (int b = 0; b < 8; ++b) {
      const int ua = a / 2, ub = b / 2;
      const int sign = (a % 2 ? -1 : 1) * (b % 2 ? -1 : 1) * sign_table[ua][ub];
      row.push_back(names[static_cast<std::size_t>(2 * unit_table[ua][ub] + (sign < 0 ? 1 : 0))]);
    }
    spec.table.push_back(row);
  }
  return std::make_shared<const Group>(Group::build(spec));
}

std::shared_ptr<const Group> free_abelian(int rank) {
  return std::make_shared<const Group>(Group::build(FreeAbelianSpec{rank}));
}

SftSpec random_irreducible_sft(Rng& rng, int k) {
  for (;;) {
    std::vector<std::vector<int>> a(static_cast<std::size_t>(k), std::vector<int>(static_cast<std::size_t>(k), 0));
    for (auto& row : a)
      for (auto& x : row) x = rng.uniform(0, 99) < 55 ? 1 : 0;
    SftSpec spec(k, a);
    if (validate_sft(spec).ok()) return spec;
  }
}

SkewSystem random_psi_system(Rng& rng, const SftSpec& sft, std::shared_ptr<const Group> group) {
  std::vector<GroupElement> psi;
  for (int s = 0; s < sft.alphabet_size(); ++s)
    psi.push_back(group->element(static_cast<std::size_t>(rng.uniform(0, static_cast<std::int64_t>(group->order()) - 1))));
  return SkewSystem(sft, std::move(group), std::move(psi));
}

SkewSystem random_full_lattice_system(Rng& rng, int k, int d) {
  auto group = free_abelian(d);
  for (;;) {
    const SftSpec sft = random_irreducible_sft(rng, k);
    // A shift whose cycle space has rank below d never generates Z^d.
    for (int attempt = 0; attempt < 50; ++attempt) {
      std::vector<GroupElement> psi;
      for (int s = 0; s < k; ++s) {
        std::vector<std::int64_t> v;
        for (int j = 0; j < d; ++j) v.push_back(rng.uniform(-2, 2));
        psi.push_back(GroupElement::lattice(v));
      }
      SkewSystem system(sft, group, psi);
      if (subgroup_rank_and_index(cycle_space_weights(system), d).full) return system;
    }
  }
}

std::vector<SkewSystem> finite_corpus() {
  std::vector<SkewSystem> out;
  const std::vector<std::shared_ptr<const Group>> groups{cyclic_group(1), cyclic_group(2), cyclic_group(3),
                                                         cyclic_group(4), symmetric3(), quaternion8()};
  Rng rng(20240611);
  for (const auto& g : groups) {
    out.push_back(random_psi_system(rng, SftSpec::full_shift(2), g));
    out.push_back(random_psi_system(rng, SftSpec::golden_mean(), g));
    for (int i = 0; i < 6; ++i) {
      const int k = static_cast<int>(rng.uniform(2, 4));
      if (static_cast<std::size_t>(k) * g->order() > 32) continue;
      out.push_back(random_psi_system(rng, random_irreducible_sft(rng, k), g));
    }
  }
  return out;
}

std::map<Word, Rational> table_of(const SftSpec& sft, int range,
                                  const std::vector<std::pair<std::string, Rational>>& v) {
  std::map<Word, Rational> out;
  for (const auto& [w, q] : v) {
    const Word word = parse_word(w, sft.alphabet_size());
    if (static_cast<int>(word.size()) != range + 1) throw std::invalid_argument("window length");
    out.emplace(word, q);
  }
  return out;
}

SkewSystem make_system(const SftSpec& sft, std::shared_ptr<const Group> group, const std::vector<std::string>& psi) {
  std::vector<GroupElement> values;
  for (const auto& name : psi) values.push_back(group->parse(name));
  return SkewSystem(sft, std::move(group), std::move(values));
}

// ---- golden cases ----

std::string data_path(const std::string& name) { return std::string(LIVSIC_TEST_DATA) + "/" + name; }
std::string golden_path(const std::string& name) { return std::string(LIVSIC_TEST_GOLDEN) + "/" + name + ".txt"; }

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

std::string GoldenRun::render() const {
  return "exit: " + std::to_string(code) + "\n--- stdout\n" + out + "--- stderr\n" + err;
}

std::vector<GoldenCase> golden_cases() {
  return {
      {"validate_full2_c2", {"validate", "@data/full2_c2_generated.json"}},
      {"validate_reducible", {"validate", "@data/reducible.json"}},
      {"validate_bad_psi", {"validate", "@data/bad_psi.json"}},
      {"transitivity_full2_c2", {"check-transitivity", "@data/full2_c2_generated.json"}},
      {"transitivity_split", {"check-transitivity", "@data/full2_c2_split.json"}},
      {"transitivity_z1", {"check-transitivity", "@data/z1_generated.json"}},
      {"transitivity_z1_drift", {"check-transitivity", "@data/z1_drift.json"}},
      {"orbits_full2_c2", {"orbits", "@data/full2_c2_generated.json", "--max-period", "4"}},
      {"orbits_s3_trivial", {"orbits", "@data/golden_s3.json", "--max-period", "6", "--trivial-only"}},
      {"vanishing_z1_ok", {"verify-vanishing", "@data/z1_generated.json", "--max-period", "6"}},
      {"vanishing_z1_perturbed", {"verify-vanishing", "@data/z1_perturbed.json", "--max-period", "4"}},
      {"vanishing_rot_quarter", {"verify-vanishing", "@data/so2_quarter.json", "--max-period", "4"}},
      {"solve_z1", {"solve", "@data/z1_generated.json", "--out", "@tmp/z1_solution.json"}},
      {"solve_full2_c2", {"solve", "@data/full2_c2_generated.json"}},
      {"solve_full2_c2_constant", {"solve", "@data/full2_c2_constant.json"}},
      {"solve_split", {"solve", "@data/full2_c2_split.json"}},
      {"solve_z1_perturbed", {"solve", "@data/z1_perturbed.json"}},
      {"solve_s3_random", {"solve", "@data/golden_s3.json"}},
      {"solve_rot_half", {"solve", "@data/so2_half.json"}},
      {"solve_rot_quarter", {"solve", "@data/so2_quarter.json"}},
      {"verify_solution_z1", {"verify-solution", "@data/z1_generated.json", "--solution", "@data/z1_solution.json"}},
      {"verify_solution_z1_bad", {"verify-solution", "@data/z1_generated.json", "--solution", "@data/z1_solution_bad.json"}},
      {"generate_z1", {"generate", "@data/z1_system.json", "--u", "@data/z1_u.json", "--alpha", "1/2"}},
      {"generate_random_s3", {"generate", "@data/golden_s3.json", "--random", "--seed", "7", "--block-length", "2"}},
      {"generate_torsion", {"generate", "@data/full2_c2_generated.json", "--random", "--seed", "1", "--alpha", "1"}},
      {"generate_matrix_so2", {"generate", "@data/full2_c2_generated.json", "--random", "--seed", "3", "--kind", "matrix",
                               "--family", "so2", "--alpha", "{\"g\": [[-1, 0], [0, -1]]}"}},
      {"distortion_diag", {"distortion", "@data/diag_sl2.json", "--depth", "6"}},
      {"distortion_diag_ambient", {"distortion", "@data/diag_sl2.json", "--depth", "4", "--ambient"}},
      {"distortion_unipotent", {"distortion", "@data/unipotent.json", "--depth", "8"}},
      {"check_distortion_3", {"check-distortion", "@data/diag_sl2.json", "--theta", "3"}},
      {"check_distortion_2", {"check-distortion", "@data/diag_sl2.json", "--theta", "2"}},
      {"bad_flag", {"orbits", "@data/full2_c2_generated.json"}},
  };
}

GoldenRun run_case(const GoldenCase& c) {
  const auto tmp = std::filesystem::temp_directory_path() / "livsic-golden";
  std::filesystem::create_directories(tmp);
  std::vector<std::string> args;
  for (const auto& a : c.args) {
    if (a.rfind("@data/", 0) == 0) args.push_back(data_path(a.substr(6)));
    else if (a.rfind("@tmp/", 0) == 0) args.push_back((tmp / a.substr(5)).string());
    else args.push_back(a);
  }
  std::ostringstream out, err;
  GoldenRun run;
  run.code = cli::run(args, out, err);
  run.out = out.str();
  run.err = err.str();
  return run;
}

namespace {

std::string file_argument(const GoldenCase& c, std::size_t index) {
  return data_path(c.args.at(index).substr(6));
}

}  // namespace

std::string revalidate_failure(const GoldenCase& c, const GoldenRun& run) {
  if (run.code != 1) return "";
  const auto payload = nlohmann::json::parse(run.out);
  const io::SystemDocument doc = io::parse_system(io::read_json_file(file_argument(c, 1)));
  const int k = doc.system.sft().alphabet_size();
  if (payload.contains("witness") && payload["witness"].contains("periodic_word")) {
    const Word word = parse_word(payload["witness"]["periodic_word"].get<std::string>(), k);
    if (doc.rational) {
      const auto check = oracle::check_witness(doc.system, *doc.rational, word);
      if (!check.valid()) return "witness does not re-validate";
      if (to_string(check.sum) != payload["witness"]["sum"].get<std::string>()) return "witness sum differs";
      return "";
    }
    const auto check = oracle::check_matrix_witness(doc.system, *doc.matrix, word, payload["witness"]["tolerance"].get<double>());
    return check.valid() ? "" : "matrix witness does not re-validate";
  }
  if (payload.value("status", "") == "not_transitive" || payload.value("verdict", "") == "not_transitive") {
    if (!doc.system.group().is_finite()) return payload.contains("certificate") ? "" : "missing certificate";
    return oracle::brute_transitivity(doc.system) ? "oracle finds the system transitive" : "";
  }
  if (payload.value("status", "") == "inconsistent") {
    std::map<Word, Rational> flow;
    for (const auto& [key, value] : payload["certificate"]["flow"].items())
      flow.emplace(parse_word(key, k), parse_rational(value.get<std::string>()));
    return oracle::check_flow_certificate(doc.system, *doc.rational, flow,
                                          parse_rational(payload["certificate"]["value"].get<std::string>()))
               ? ""
               : "flow certificate does not re-validate";
  }
  if (payload.value("status", "") == "residuals") {
    std::size_t at = 0;
    while (c.args.at(at) != "--solution") ++at;
    const io::SolutionDocument sol = io::solution_from_json(io::read_json_file(file_argument(c, at + 1)));
    if (doc.rational)
      return oracle::brute_solution_check(doc.system, *doc.rational, io::to_cohomology_solution(doc.system, sol))
                 ? "oracle accepts the solution"
                 : "";
    return oracle::brute_matrix_solution_check(doc.system, *doc.matrix, io::to_matrix_solution(doc.system, sol))
               ? "oracle accepts the solution"
               : "";
  }
  if (payload.contains("verdict") && payload.contains("theta")) {
    const double growth = oracle::brute_adjoint_growth(*doc.matrix, 4, payload["report"]["mode"] == "ambient");
    const double threshold = std::log(growth) / std::log(2.0);
    return payload["theta"].get<double>() <= threshold + payload["report"]["tolerance"].get<double>()
               ? ""
               : "oracle threshold is below theta";
  }
  if (payload.value("status", "") == "no_central_solution") return "";
  return "exit 1 without a recognised witness";
}

}  // namespace livsic::testing
