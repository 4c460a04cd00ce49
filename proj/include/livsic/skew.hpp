#pragma once

#include <memory>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "livsic/graph.hpp"
#include "livsic/group.hpp"
#include "livsic/limits.hpp"
#include "livsic/rational.hpp"
#include "livsic/sft.hpp"

namespace livsic {

/// Shift extended by a one-symbol cocycle psi into Gamma:
/// T(x, g) = (sigma x, psi(x_0) g). Gamma acts on the right of the fiber.
class SkewSystem {
 public:
  SkewSystem(SftSpec sft, std::shared_ptr<const Group> group, std::vector<GroupElement> psi);

  const SftSpec& sft() const { return sft_; }
  const Group& group() const { return *group_; }
  std::shared_ptr<const Group> group_ptr() const { return group_; }
  const GroupElement& psi(int symbol) const { return psi_[static_cast<std::size_t>(symbol)]; }
  const std::vector<GroupElement>& psi_values() const { return psi_; }

 private:
  SftSpec sft_;
  std::shared_ptr<const Group> group_;
  std::vector<GroupElement> psi_;
};

/// psi(w_{n-1}) ... psi(w_1) psi(w_0). InadmissibleWord unless `word` is admissible.
GroupElement psi_n(const SkewSystem& system, std::span<const int> word);

struct FrobeniusClassTag {
  /// psi_n of the stored canonical word; other rotations give conjugates.
  GroupElement return_element;
  /// Conjugacy class for finite Gamma; empty for Z^d, where the class is the vector itself.
  std::optional<ConjugacyClass> conjugacy_class;
  bool trivial = false;
};

FrobeniusClassTag frobenius_class(const SkewSystem& system, const PeriodicOrbit& orbit);

/// Finite presentation of T_psi over r-blocks. Vertex (block b, element g)
/// has index b * |Gamma| + g; edge (B, g) -> (B', psi(B_0) g) for every base
/// edge B -> B', numbered base_edge * |Gamma| + g.
class ProductGraph {
 public:
  struct Edge {
    std::size_t tail;
    std::size_t head;
    std::size_t base_edge;
  };

  ProductGraph(const SkewSystem& system, BlockGraph base);

  const BlockGraph& base() const { return base_; }
  std::size_t fiber_size() const { return fiber_; }
  std::size_t vertex_count() const { return base_.blocks().size() * fiber_; }
  std::size_t vertex(std::size_t block, std::size_t element) const { return block * fiber_ + element; }
  std::size_t block_of(std::size_t vertex) const { return vertex / fiber_; }
  std::size_t element_of(std::size_t vertex) const { return vertex % fiber_; }
  const std::vector<Edge>& edges() const { return edges_; }
  const Digraph& digraph() const { return digraph_; }

  /// "(12,g)" style label for reports.
  std::string label(const SkewSystem& system, std::size_t vertex) const;

 private:
  BlockGraph base_;
  std::size_t fiber_;
  std::vector<Edge> edges_;
  Digraph digraph_;
};

/// InfiniteGroup for Z^d; RangeTooLarge beyond limits.max_states.
ProductGraph build_product_graph(const SkewSystem& system, int block_length, const Limits& limits = {});

struct Transitive {};

struct NotTransitive {
  /// Finite Gamma: product vertices (source, target) with target unreachable.
  std::optional<std::pair<std::string, std::string>> unreachable;
  /// Z^d: which certificate fired ("proper_subgroup" or "drift").
  std::string certificate;
  std::optional<std::vector<Rational>> drift_functional;
  std::optional<LatticeReport> cycle_lattice;
};

/// Evidence gathered for Z^d covers, where no verdict of transitivity is issued.
struct TransitivityUnknown {
  int probe_depth = 0;
  std::size_t probed_orbits = 0;
  LatticeReport probed_lattice;
  LatticeReport cycle_lattice;
  bool zero_in_interior = false;
};

using TransitivityVerdict = std::variant<Transitive, NotTransitive, TransitivityUnknown>;

struct TransitivityOptions {
  int probe_depth = 12;
  Limits limits{};
};

TransitivityVerdict check_transitivity(const SkewSystem& system, const TransitivityOptions& options = {});

/// psi-weights of a Z-basis of the cycle space of the r = 1 symbol graph
/// (fundamental cycles of an undirected spanning forest). Their span is the
/// subgroup generated by psi_n over all periodic words.
std::vector<std::vector<std::int64_t>> cycle_space_weights(const SkewSystem& system);

struct TaggedOrbit {
  PeriodicOrbit orbit;
  FrobeniusClassTag tag;
};

/// Primitive orbits of period <= max_period with psi_n = e, canonical order.
std::vector<TaggedOrbit> enumerate_trivial_class_orbits(const SkewSystem& system, int max_period,
                                                        const Limits& limits = {});

}  // namespace livsic
