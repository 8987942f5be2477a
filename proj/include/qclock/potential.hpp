#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

namespace qclock {

/// Directed constraint edge: label(to) must equal label(from) + 1.
struct UnitEdge {
  std::size_t from = 0;
  std::size_t to = 0;
};

/// One step of a closed walk in the underlying undirected graph.
struct EdgeStep {
  std::size_t edge = 0;
  bool forward = true;

  bool operator==(const EdgeStep&) const = default;
};

struct PotentialResult {
  std::optional<std::vector<std::int64_t>> labels;
  /// When labels is empty: a simple closed walk whose forward and backward
  /// step counts differ. Starts and ends at the same node.
  std::vector<EdgeStep> witness;
};

/// Breadth-first labelling with label(to) = label(from) + 1 per edge. Each
/// connected component is rooted at its smallest node with label 0; edges are
/// scanned in index order, so the output is deterministic.
inline PotentialResult solve_unit_potential(std::size_t node_count,
                                            std::span<const UnitEdge> edges) {
  std::vector<std::vector<std::size_t>> incident(node_count);
  for (std::size_t e = 0; e < edges.size(); ++e) {
    incident[edges[e].from].push_back(e);
    if (edges[e].to != edges[e].from) incident[edges[e].to].push_back(e);
  }

  std::vector<std::int64_t> label(node_count, 0);
  std::vector<bool> seen(node_count, false);
  std::vector<std::size_t> depth(node_count, 0);
  // parent step: the tree edge used to reach the node, oriented parent -> node
  std::vector<std::optional<EdgeStep>> parent(node_count);

  auto other_end = [&](std::size_t e, std::size_t u) {
    return edges[e].from == u ? edges[e].to : edges[e].from;
  };
  auto parent_node = [&](std::size_t v) {
    const EdgeStep& s = *parent[v];
    return s.forward ? edges[s.edge].from : edges[s.edge].to;
  };

  for (std::size_t root = 0; root < node_count; ++root) {
    if (seen[root]) continue;
    seen[root] = true;
    std::vector<std::size_t> queue{root};
    for (std::size_t head = 0; head < queue.size(); ++head) {
      std::size_t u = queue[head];
      for (std::size_t e : incident[u]) {
        if (parent[u] && parent[u]->edge == e) continue;
        bool forward = edges[e].from == u;
        std::size_t v = other_end(e, u);
        std::int64_t want = label[u] + (forward ? 1 : -1);
        if (!seen[v]) {
          seen[v] = true;
          label[v] = want;
          depth[v] = depth[u] + 1;
          parent[v] = EdgeStep{e, forward};
          queue.push_back(v);
          continue;
        }
        if (label[v] == want) continue;

        // Conflict: close the cycle through the lowest common ancestor.
        PotentialResult result;
        std::vector<EdgeStep> down_to_u;  // lca -> u, collected in reverse
        std::vector<EdgeStep> up_from_v;  // v -> lca
        std::size_t a = u, b = v;
        while (depth[a] > depth[b]) {
          down_to_u.push_back(*parent[a]);
          a = parent_node(a);
        }
        while (depth[b] > depth[a]) {
          up_from_v.push_back({parent[b]->edge, !parent[b]->forward});
          b = parent_node(b);
        }
        while (a != b) {
          down_to_u.push_back(*parent[a]);
          a = parent_node(a);
          up_from_v.push_back({parent[b]->edge, !parent[b]->forward});
          b = parent_node(b);
        }
        result.witness.assign(down_to_u.rbegin(), down_to_u.rend());
        result.witness.push_back({e, forward});
        result.witness.insert(result.witness.end(), up_from_v.begin(),
                              up_from_v.end());
        return result;
      }
    }
  }
  return {std::move(label), {}};
}

}  // namespace qclock
