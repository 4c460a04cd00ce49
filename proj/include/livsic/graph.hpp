#pragma once

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

namespace livsic {

/// Adjacency-list digraph over vertices 0..n-1. Edge ids index the caller's
/// own edge table, so paths can be reported in terms of the original edges.
class Digraph {
 public:
  struct Arc {
    std::size_t edge;
    std::size_t target;
  };

  explicit Digraph(std::size_t vertex_count) : out_(vertex_count), in_(vertex_count) {}

  void add_edge(std::size_t edge, std::size_t tail, std::size_t head) {
    out_[tail].push_back({edge, head});
    in_[head].push_back({edge, tail});
  }

  std::size_t vertex_count() const { return out_.size(); }
  const std::vector<Arc>& out(std::size_t v) const { return out_[v]; }
  const std::vector<Arc>& in(std::size_t v) const { return in_[v]; }

 private:
  std::vector<std::vector<Arc>> out_;
  std::vector<std::vector<Arc>> in_;
};

/// Tarjan's algorithm. Component ids are assigned in reverse topological
/// order of the condensation.
std::vector<std::size_t> strongly_connected_components(const Digraph& graph, std::size_t* component_count = nullptr);

bool is_strongly_connected(const Digraph& graph);

/// Lexicographically first (source, target) with target unreachable from
/// source by a walk of positive length. Empty when every vertex reaches
/// every vertex.
std::optional<std::pair<std::size_t, std::size_t>> first_unreachable_pair(const Digraph& graph);

/// Breadth-first arborescence. For the out-tree, parent_edge[v] is the edge
/// entering v on the tree path from the root; for the in-tree (reverse
/// search) it is the edge leaving v towards the root. The root and
/// unreached vertices hold std::nullopt.
struct SearchTree {
  std::size_t root = 0;
  std::vector<std::optional<std::size_t>> parent_edge;
  std::vector<std::optional<std::size_t>> parent;
  std::vector<std::size_t> order;
};

SearchTree breadth_first_out_tree(const Digraph& graph, std::size_t root);
SearchTree breadth_first_in_tree(const Digraph& graph, std::size_t root);

}  // namespace livsic
