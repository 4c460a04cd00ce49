#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "livsic/limits.hpp"
#include "livsic/rational.hpp"

namespace livsic {

/// Cayley table by element names; table[i][j] names elements[i] * elements[j].
struct TableSpec {
  std::vector<std::string> elements;
  std::vector<std::vector<std::string>> table;
};

/// Permutations of 1..points given by their image lists.
struct PermutationSpec {
  int points = 0;
  std::vector<std::vector<int>> generators;
};

struct CyclicSpec {
  int order = 0;
};

struct FreeAbelianSpec {
  int rank = 0;
};

using GroupSpec = std::variant<TableSpec, PermutationSpec, CyclicSpec, FreeAbelianSpec>;

enum class GroupKind { FiniteTable, Permutation, Cyclic, FreeAbelian };

/// Parses cycle notation such as "(1 2)(3 4)" or "()" into an image list.
std::vector<int> parse_cycles(std::string_view text, int points);

/// Element handle: an index for finite groups, a coordinate vector for Z^d.
class GroupElement {
 public:
  static GroupElement finite(std::size_t index) { return GroupElement(Handle(std::in_place_index<0>, index)); }
  static GroupElement lattice(std::vector<std::int64_t> coords) {
    return GroupElement(Handle(std::in_place_index<1>, std::move(coords)));
  }

  bool is_finite() const { return handle_.index() == 0; }
  std::size_t index() const { return std::get<0>(handle_); }
  const std::vector<std::int64_t>& coords() const { return std::get<1>(handle_); }

  auto operator<=>(const GroupElement&) const = default;

 private:
  using Handle = std::variant<std::size_t, std::vector<std::int64_t>>;
  explicit GroupElement(Handle h) : handle_(std::move(h)) {}
  Handle handle_;
};

class Group {
 public:
  /// Throws NotAGroup (with a witness) or ClosureTooLarge.
  static Group build(const GroupSpec& spec, const Limits& limits = {});

  GroupKind kind() const { return kind_; }
  bool is_finite() const { return kind_ != GroupKind::FreeAbelian; }
  /// Finite groups only; InfiniteGroup otherwise.
  std::size_t order() const;
  /// Free abelian rank; 0 for finite groups.
  int rank() const { return rank_; }
  /// True when associativity was not verified exhaustively (order above the cap).
  bool trusted() const { return trusted_; }

  GroupElement identity() const;
  GroupElement multiply(const GroupElement& a, const GroupElement& b) const;
  GroupElement inverse(const GroupElement& a) const;
  GroupElement power(const GroupElement& a, std::int64_t n) const;
  bool is_identity(const GroupElement& a) const;
  /// Least m >= 1 with a^m = e (finite groups), 0 for non-identity lattice elements.
  std::size_t element_order(const GroupElement& a) const;

  /// Element i in the deterministic element order (finite groups).
  GroupElement element(std::size_t index) const;
  std::vector<GroupElement> elements() const;

  std::string name(const GroupElement& a) const;
  /// Inverse of name(); lattice elements also accept "+1"/"-1"/"0" when d = 1.
  GroupElement parse(std::string_view text) const;

  /// ForeignElement unless `a` belongs to this group.
  void check(const GroupElement& a) const;

 private:
  Group() = default;

  GroupKind kind_ = GroupKind::Cyclic;
  int rank_ = 0;
  bool trusted_ = false;
  std::size_t identity_ = 0;
  std::vector<std::string> names_;
  std::vector<std::size_t> table_;  // row-major order x order
  std::vector<std::size_t> inverse_;
};

struct ConjugacyClass {
  GroupElement representative;
  std::vector<GroupElement> members;  // sorted by element order
};

/// Classes ordered by representative; the representative is the least member.
std::vector<ConjugacyClass> conjugacy_classes(const Group& group);
ConjugacyClass conjugacy_class_of(const Group& group, const GroupElement& a);

std::vector<GroupElement> center(const Group& group);

struct LatticeReport {
  int rank = 0;
  bool full = false;
  /// Nonzero Smith normal form diagonal entries, d_1 | d_2 | ...
  std::vector<BigInt> divisors;
};

/// Smith normal form of the integer matrix whose rows are `vectors`.
/// DimensionMismatch when a vector has length other than d.
LatticeReport subgroup_rank_and_index(std::span<const std::vector<std::int64_t>> vectors, int d);

}  // namespace livsic
