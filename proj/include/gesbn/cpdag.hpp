#pragma once

#include <compare>
#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "gesbn/dag.hpp"
#include "gesbn/node_set.hpp"

namespace gesbn {

/// Completed partially directed graph: the canonical representative of a
/// Markov equivalence class. Directed edges are stored as parent masks and
/// undirected edges as symmetric neighbour masks.
///
/// The value ordering (node count, then directed parent masks, then
/// undirected masks, lexicographically) is the canonical total order used
/// for deduplication and tie-breaking.
class Cpdag {
 public:
  Cpdag() = default;
  explicit Cpdag(int n);

  /// Builds a raw partially directed graph. Only structural sanity is
  /// checked here (no self loops, no pair listed twice); use
  /// is_completed() or consistent_extensions() to validate the class.
  static Cpdag from_edges(int n, std::span<const Edge> directed,
                          std::span<const Edge> undirected);

  int size() const { return n_; }
  NodeSet directed_parents(int v) const { return directed_[v]; }
  NodeSet directed_children(int v) const;
  NodeSet undirected_neighbors(int v) const { return undirected_[v]; }
  NodeSet adjacents(int v) const;
  bool has_directed(int u, int v) const { return contains(directed_[v], u); }
  bool has_undirected(int u, int v) const { return contains(undirected_[v], u); }
  bool adjacent(int u, int v) const;

  int edge_count() const;
  std::vector<Edge> directed_edges() const;
  /// Undirected edges as (low, high) pairs, sorted.
  std::vector<Edge> undirected_edges() const;

  void set_directed(int u, int v);
  void set_undirected(int u, int v);
  void remove_adjacency(int u, int v);

  std::size_t hash() const;

  friend bool operator==(const Cpdag&, const Cpdag&) = default;
  friend auto operator<=>(const Cpdag&, const Cpdag&) = default;

 private:
  int n_ = 0;
  std::vector<NodeSet> directed_;
  std::vector<NodeSet> undirected_;
};

struct CpdagHash {
  std::size_t operator()(const Cpdag& c) const { return c.hash(); }
};

}  // namespace gesbn
