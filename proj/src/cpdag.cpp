#include "gesbn/cpdag.hpp"

#include <functional>

#include "gesbn/errors.hpp"

namespace gesbn {

Cpdag::Cpdag(int n)
    : n_(n), directed_(static_cast<std::size_t>(n), 0), undirected_(static_cast<std::size_t>(n), 0) {
  if (n < 0 || n > kMaxNodes) throw StructureError("unsupported node count");
}

Cpdag Cpdag::from_edges(int n, std::span<const Edge> directed, std::span<const Edge> undirected) {
  Cpdag c(n);
  auto check = [&](const Edge& e) {
    if (e.from < 0 || e.from >= n || e.to < 0 || e.to >= n) throw StructureError("node out of range");
    if (e.from == e.to) throw StructureError("self loop");
    if (c.adjacent(e.from, e.to)) throw StructureError("pair listed twice");
  };
  for (const Edge& e : directed) {
    check(e);
    c.set_directed(e.from, e.to);
  }
  for (const Edge& e : undirected) {
    check(e);
    c.set_undirected(e.from, e.to);
  }
  return c;
}

NodeSet Cpdag::directed_children(int v) const {
  NodeSet out = 0;
  for (int w = 0; w < n_; ++w) {
    if (contains(directed_[w], v)) out |= singleton(w);
  }
  return out;
}

NodeSet Cpdag::adjacents(int v) const {
  return directed_[v] | directed_children(v) | undirected_[v];
}

bool Cpdag::adjacent(int u, int v) const {
  return has_directed(u, v) || has_directed(v, u) || has_undirected(u, v);
}

int Cpdag::edge_count() const {
  int directed = 0;
  int undirected_ends = 0;
  for (int v = 0; v < n_; ++v) {
    directed += cardinality(directed_[v]);
    undirected_ends += cardinality(undirected_[v]);
  }
  return directed + undirected_ends / 2;
}

std::vector<Edge> Cpdag::directed_edges() const {
  std::vector<Edge> out;
  for (int u = 0; u < n_; ++u) {
    for (int v = 0; v < n_; ++v) {
      if (has_directed(u, v)) out.push_back({u, v});
    }
  }
  return out;
}

std::vector<Edge> Cpdag::undirected_edges() const {
  std::vector<Edge> out;
  for (int u = 0; u < n_; ++u) {
    for (int v = u + 1; v < n_; ++v) {
      if (has_undirected(u, v)) out.push_back({u, v});
    }
  }
  return out;
}

void Cpdag::set_directed(int u, int v) {
  remove_adjacency(u, v);
  directed_[v] |= singleton(u);
}

void Cpdag::set_undirected(int u, int v) {
  remove_adjacency(u, v);
  undirected_[u] |= singleton(v);
  undirected_[v] |= singleton(u);
}

void Cpdag::remove_adjacency(int u, int v) {
  directed_[v] &= ~singleton(u);
  directed_[u] &= ~singleton(v);
  undirected_[u] &= ~singleton(v);
  undirected_[v] &= ~singleton(u);
}

std::size_t Cpdag::hash() const {
  std::size_t h = static_cast<std::size_t>(n_);
  auto mix = [&h](NodeSet x) { h ^= std::hash<NodeSet>{}(x) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2); };
  for (NodeSet x : directed_) mix(x);
  for (NodeSet x : undirected_) mix(x);
  return h;
}

}  // namespace gesbn
