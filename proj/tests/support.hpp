#pragma once

#include <memory>
#include <string>
#include <vector>

#include "livsic/abelian.hpp"
#include "livsic/matrix.hpp"
#include "livsic/rng.hpp"
#include "livsic/skew.hpp"

namespace livsic::testing {

std::shared_ptr<const Group> cyclic_group(int order);
std::shared_ptr<const Group> symmetric3();
std::shared_ptr<const Group> quaternion8();
std::shared_ptr<const Group> free_abelian(int rank);

/// Random 0/1 matrix on k symbols, redrawn until irreducible without dead symbols.
SftSpec random_irreducible_sft(Rng& rng, int k);

SkewSystem random_psi_system(Rng& rng, const SftSpec& sft, std::shared_ptr<const Group> group);

/// Random irreducible shift on k symbols with psi into Z^d whose cycle
/// weights generate the whole lattice.
SkewSystem random_full_lattice_system(Rng& rng, int k, int d);

/// Finite-group corpus: k in 2..4, groups of order <= 8, one-block product
/// graphs of at most 32 states.
std::vector<SkewSystem> finite_corpus();

std::map<Word, Rational> table_of(const SftSpec& sft, int range, const std::vector<std::pair<std::string, Rational>>& v);
SkewSystem make_system(const SftSpec& sft, std::shared_ptr<const Group> group, const std::vector<std::string>& psi);

struct GoldenCase {
  std::string name;
  std::vector<std::string> args;  // "@data/" and "@tmp/" prefixes are expanded
};

struct GoldenRun {
  int code = 0;
  std::string out;
  std::string err;

  std::string render() const;
};

std::vector<GoldenCase> golden_cases();
GoldenRun run_case(const GoldenCase& c);
std::string golden_path(const std::string& name);
std::string data_path(const std::string& name);
std::string read_file(const std::string& path);

/// Re-checks the witness carried by an exit-1 payload with the brute-force
/// oracles. Returns an empty string when it holds, else the reason.
std::string revalidate_failure(const GoldenCase& c, const GoldenRun& run);

}  // namespace livsic::testing
