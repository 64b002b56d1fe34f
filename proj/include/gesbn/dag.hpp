#pragma once

#include <compare>
#include <span>
#include <vector>

#include "gesbn/node_set.hpp"

namespace gesbn {

struct Edge {
  int from = 0;
  int to = 0;
  friend auto operator<=>(const Edge&, const Edge&) = default;
};

/// Directed acyclic graph over nodes 0..n-1, stored as parent masks.
/// Every mutating operation keeps the graph acyclic or throws.
class Dag {
 public:
  Dag() = default;
  explicit Dag(int n);

  /// Throws StructureError on self-loops, duplicate/antiparallel edges, or cycles.
  static Dag from_edges(int n, std::span<const Edge> edges);
  static Dag from_edges(int n, std::initializer_list<Edge> edges) {
    return from_edges(n, std::span<const Edge>(edges.begin(), edges.size()));
  }
  /// Complete DAG following index order (i -> j for all i < j).
  static Dag complete(int n);

  int size() const { return n_; }
  NodeSet parents(int v) const { return parents_[v]; }
  NodeSet children(int v) const;
  NodeSet neighbors(int v) const { return parents(v) | children(v); }
  bool has_edge(int u, int v) const { return contains(parents_[v], u); }
  bool adjacent(int u, int v) const { return has_edge(u, v) || has_edge(v, u); }
  int edge_count() const;
  /// Edges sorted by (from, to).
  std::vector<Edge> edges() const;

  /// Nodes reachable from `v` by directed paths, including `v`.
  NodeSet descendants(int v) const;
  NodeSet ancestors(NodeSet of) const;
  /// True when adding u -> v would close a directed cycle.
  bool creates_cycle(int u, int v) const;

  void add_edge(int u, int v);
  void remove_edge(int u, int v);
  Dag with_edge(int u, int v) const;
  Dag without_edge(int u, int v) const;
  Dag reversed(int u, int v) const;

  const std::vector<NodeSet>& parent_masks() const { return parents_; }

  friend bool operator==(const Dag&, const Dag&) = default;
  friend auto operator<=>(const Dag&, const Dag&) = default;

 private:
  int n_ = 0;
  std::vector<NodeSet> parents_;
};

}  // namespace gesbn
