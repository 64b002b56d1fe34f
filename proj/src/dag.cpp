#include "gesbn/dag.hpp"

#include <string>

#include "gesbn/errors.hpp"
#include "gesbn/graph.hpp"

namespace gesbn {

namespace {

void check_node(int n, int v) {
  if (v < 0 || v >= n) throw StructureError("node index " + std::to_string(v) + " out of range");
}

}  // namespace

Dag::Dag(int n) : n_(n), parents_(static_cast<std::size_t>(n), 0) {
  if (n < 0 || n > kMaxNodes) throw StructureError("unsupported node count");
}

Dag Dag::from_edges(int n, std::span<const Edge> edges) {
  Dag g(n);
  for (const Edge& e : edges) {
    check_node(n, e.from);
    check_node(n, e.to);
    if (e.from == e.to) throw StructureError("self loop");
    if (g.adjacent(e.from, e.to)) throw StructureError("duplicate or antiparallel edge");
    g.parents_[e.to] |= singleton(e.from);
  }
  topological_order(n, edges);  // throws on cycles
  return g;
}

Dag Dag::complete(int n) {
  Dag g(n);
  for (int v = 0; v < n; ++v) g.parents_[v] = all_nodes(v);
  return g;
}

NodeSet Dag::children(int v) const {
  NodeSet out = 0;
  for (int w = 0; w < n_; ++w) {
    if (contains(parents_[w], v)) out |= singleton(w);
  }
  return out;
}

int Dag::edge_count() const {
  int count = 0;
  for (NodeSet p : parents_) count += cardinality(p);
  return count;
}

std::vector<Edge> Dag::edges() const {
  std::vector<Edge> out;
  for (int u = 0; u < n_; ++u) {
    for (int v = 0; v < n_; ++v) {
      if (has_edge(u, v)) out.push_back({u, v});
    }
  }
  return out;
}

NodeSet Dag::descendants(int v) const {
  NodeSet seen = singleton(v);
  NodeSet frontier = seen;
  while (frontier != 0) {
    NodeSet next = 0;
    for (int w = 0; w < n_; ++w) {
      if (!contains(seen, w) && (parents_[w] & frontier) != 0) next |= singleton(w);
    }
    seen |= next;
    frontier = next;
  }
  return seen;
}

NodeSet Dag::ancestors(NodeSet of) const {
  NodeSet seen = of;
  NodeSet frontier = of;
  while (frontier != 0) {
    NodeSet next = 0;
    for (int w : members(frontier)) next |= parents_[w];
    next &= ~seen;
    seen |= next;
    frontier = next;
  }
  return seen;
}

bool Dag::creates_cycle(int u, int v) const { return u == v || contains(descendants(v), u); }

void Dag::add_edge(int u, int v) {
  check_node(n_, u);
  check_node(n_, v);
  if (adjacent(u, v)) throw StructureError("edge already present");
  if (creates_cycle(u, v)) throw StructureError("edge would create a cycle");
  parents_[v] |= singleton(u);
}

void Dag::remove_edge(int u, int v) {
  check_node(n_, u);
  check_node(n_, v);
  if (!has_edge(u, v)) throw StructureError("edge not present");
  parents_[v] &= ~singleton(u);
}

Dag Dag::with_edge(int u, int v) const {
  Dag out = *this;
  out.add_edge(u, v);
  return out;
}

Dag Dag::without_edge(int u, int v) const {
  Dag out = *this;
  out.remove_edge(u, v);
  return out;
}

Dag Dag::reversed(int u, int v) const {
  Dag out = without_edge(u, v);
  out.add_edge(v, u);
  return out;
}

}  // namespace gesbn
