#include "livsic/graph.hpp"

#include <algorithm>
#include <deque>
#include <limits>

namespace livsic {

std::vector<std::size_t> strongly_connected_components(const Digraph& graph, std::size_t* component_count) {
  constexpr std::size_t kUnvisited = std::numeric_limits<std::size_t>::max();
  const std::size_t n = graph.vertex_count();
  std::vector<std::size_t> index(n, kUnvisited), low(n, 0), component(n, kUnvisited);
  std::vector<bool> on_stack(n, false);
  std::vector<std::size_t> stack;
  std::size_t next_index = 0, next_component = 0;

  // Iterative Tarjan: frames hold (vertex, next arc position).
  std::vector<std::pair<std::size_t, std::size_t>> frames;
  for (std::size_t start = 0; start < n; ++start) {
    if (index[start] != kUnvisited) continue;
    frames.push_back({start, 0});
    index[start] = low[start] = next_index++;
    stack.push_back(start);
    on_stack[start] = true;
    while (!frames.empty()) {
      auto& [v, pos] = frames.back();
      const auto& arcs = graph.out(v);
      if (pos < arcs.size()) {
        const std::size_t w = arcs[pos++].target;
        if (index[w] == kUnvisited) {
          index[w] = low[w] = next_index++;
          stack.push_back(w);
          on_stack[w] = true;
          frames.push_back({w, 0});
        } else if (on_stack[w]) {
          low[v] = std::min(low[v], index[w]);
        }
        continue;
      }
      if (low[v] == index[v]) {
        for (;;) {
          const std::size_t w = stack.back();
          stack.pop_back();
          on_stack[w] = false;
          component[w] = next_component;
          if (w == v) break;
        }
        ++next_component;
      }
      const std::size_t finished = v;
      frames.pop_back();
      if (!frames.empty()) {
        const std::size_t parent = frames.back().first;
        low[parent] = std::min(low[parent], low[finished]);
      }
    }
  }
  if (component_count) *component_count = next_component;
  return component;
}

bool is_strongly_connected(const Digraph& graph) {
  if (graph.vertex_count() == 0) return false;
  std::size_t count = 0;
  strongly_connected_components(graph, &count);
  if (count != 1) return false;
  // A single vertex without a loop has no walk of positive length.
  if (graph.vertex_count() == 1) return !graph.out(0).empty();
  return true;
}

std::optional<std::pair<std::size_t, std::size_t>> first_unreachable_pair(const Digraph& graph) {
  const std::size_t n = graph.vertex_count();
  for (std::size_t s = 0; s < n; ++s) {
    std::vector<bool> seen(n, false);
    std::deque<std::size_t> queue;
    for (const auto& arc : graph.out(s))
      if (!seen[arc.target]) {
        seen[arc.target] = true;
        queue.push_back(arc.target);
      }
    while (!queue.empty()) {
      const std::size_t v = queue.front();
      queue.pop_front();
      for (const auto& arc : graph.out(v))
        if (!seen[arc.target]) {
          seen[arc.target] = true;
          queue.push_back(arc.target);
        }
    }
    for (std::size_t t = 0; t < n; ++t)
      if (!seen[t]) return std::make_pair(s, t);
  }
  return std::nullopt;
}

namespace {

SearchTree search(const Digraph& graph, std::size_t root, bool forward) {
  const std::size_t n = graph.vertex_count();
  SearchTree tree;
  tree.root = root;
  tree.parent_edge.assign(n, std::nullopt);
  tree.parent.assign(n, std::nullopt);
  std::vector<bool> seen(n, false);
  std::deque<std::size_t> queue{root};
  seen[root] = true;
  while (!queue.empty()) {
    const std::size_t v = queue.front();
    queue.pop_front();
    tree.order.push_back(v);
    for (const auto& arc : forward ? graph.out(v) : graph.in(v)) {
      if (seen[arc.target]) continue;
      seen[arc.target] = true;
      tree.parent_edge[arc.target] = arc.edge;
      tree.parent[arc.target] = v;
      queue.push_back(arc.target);
    }
  }
  return tree;
}

}  // namespace

SearchTree breadth_first_out_tree(const Digraph& graph, std::size_t root) { return search(graph, root, true); }
SearchTree breadth_first_in_tree(const Digraph& graph, std::size_t root) { return search(graph, root, false); }

}  // namespace livsic
