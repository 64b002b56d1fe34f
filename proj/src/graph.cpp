#include "gesbn/graph.hpp"

#include <queue>
#include <string>

#include "gesbn/errors.hpp"

namespace gesbn {

namespace {

std::vector<int> kahn(int n, const std::vector<NodeSet>& parents) {
  std::vector<int> order;
  order.reserve(static_cast<std::size_t>(n));
  std::vector<int> indegree(static_cast<std::size_t>(n));
  for (int v = 0; v < n; ++v) indegree[v] = cardinality(parents[v]);
  std::priority_queue<int, std::vector<int>, std::greater<>> ready;
  for (int v = 0; v < n; ++v) {
    if (indegree[v] == 0) ready.push(v);
  }
  while (!ready.empty()) {
    int u = ready.top();
    ready.pop();
    order.push_back(u);
    for (int w = 0; w < n; ++w) {
      if (contains(parents[w], u) && --indegree[w] == 0) ready.push(w);
    }
  }
  if (static_cast<int>(order.size()) != n) throw StructureError("graph contains a directed cycle");
  return order;
}

void check_query(const Dag& g, int x, int y, NodeSet z) {
  const int n = g.size();
  if (x < 0 || x >= n || y < 0 || y >= n) throw StructureError("query node out of range");
  if ((z & ~all_nodes(n)) != 0) throw StructureError("conditioning node out of range");
  if (x == y || contains(z, x) || contains(z, y)) {
    throw StructureError("query requires distinct x, y outside the conditioning set");
  }
}

}  // namespace

std::vector<int> topological_order(const Dag& g) { return kahn(g.size(), g.parent_masks()); }

std::vector<int> topological_order(int n, std::span<const Edge> edges) {
  std::vector<NodeSet> parents(static_cast<std::size_t>(n), 0);
  for (const Edge& e : edges) {
    if (e.from < 0 || e.from >= n || e.to < 0 || e.to >= n) throw StructureError("node out of range");
    if (e.from == e.to) throw StructureError("graph contains a directed cycle");
    parents[e.to] |= singleton(e.from);
  }
  return kahn(n, parents);
}

bool d_separated(const Dag& g, const SepQuery& q) {
  check_query(g, q.x, q.y, q.z);
  return d_separated(g, singleton(q.x), singleton(q.y), q.z);
}

bool d_separated(const Dag& g, NodeSet x, NodeSet y, NodeSet z) {
  const int n = g.size();
  const NodeSet relevant = g.ancestors(x | y | z);

  // Moral graph restricted to the ancestral set.
  std::vector<NodeSet> adj(static_cast<std::size_t>(n), 0);
  for (int v : members(relevant)) {
    const NodeSet pa = g.parents(v);
    for (int p : members(pa)) {
      adj[v] |= singleton(p);
      adj[p] |= singleton(v) | (pa & ~singleton(p));
    }
  }

  NodeSet reached = x;
  NodeSet frontier = x;
  while (frontier != 0) {
    NodeSet next = 0;
    for (int v : members(frontier)) next |= adj[v];
    next &= ~reached & ~z;
    if ((next & y) != 0) return false;
    reached |= next;
    frontier = next;
  }
  return (x & y) == 0;
}

bool is_covered(const Dag& g, Edge e) {
  if (!g.has_edge(e.from, e.to)) throw StructureError("edge not present in graph");
  return g.parents(e.to) == (g.parents(e.from) | singleton(e.from));
}

Dag reverse_covered(const Dag& g, Edge e) {
  if (!is_covered(g, e)) throw StructureError("edge is not covered");
  return g.reversed(e.from, e.to);
}

std::vector<VStructure> v_structures(const Dag& g) {
  std::vector<VStructure> out;
  for (int c = 0; c < g.size(); ++c) {
    const auto pa = members(g.parents(c));
    for (std::size_t i = 0; i < pa.size(); ++i) {
      for (std::size_t j = i + 1; j < pa.size(); ++j) {
        if (!g.adjacent(pa[i], pa[j])) out.push_back({pa[i], c, pa[j]});
      }
    }
  }
  return out;
}

Cpdag dag_to_cpdag(const Dag& g) {
  const int n = g.size();
  Cpdag c(n);
  for (const Edge& e : g.edges()) c.set_undirected(e.from, e.to);
  for (const VStructure& vs : v_structures(g)) {
    c.set_directed(vs.a, vs.c);
    c.set_directed(vs.b, vs.c);
  }

  // Close under the orientation rules. Each candidate b -- t is oriented
  // b -> t when one of the rules forces it.
  bool changed = true;
  while (changed) {
    changed = false;
    for (int b = 0; b < n; ++b) {
      for (int t : members(c.undirected_neighbors(b))) {
        // Rule 1: a -> b -- t with a, t non-adjacent.
        bool orient = false;
        for (int a : members(c.directed_parents(b))) {
          if (!c.adjacent(a, t)) {
            orient = true;
            break;
          }
        }
        // Rule 2: b -> a -> t with b -- t.
        if (!orient && (c.directed_children(b) & c.directed_parents(t)) != 0) orient = true;
        // Rule 3: b -- a -> t and b -- d -> t with a, d non-adjacent.
        if (!orient) {
          const auto mids = members(c.undirected_neighbors(b) & c.directed_parents(t));
          for (std::size_t i = 0; i < mids.size() && !orient; ++i) {
            for (std::size_t j = i + 1; j < mids.size(); ++j) {
              if (!c.adjacent(mids[i], mids[j])) {
                orient = true;
                break;
              }
            }
          }
        }
        if (orient) {
          c.set_directed(b, t);
          changed = true;
        }
      }
    }
  }
  return c;
}

namespace {

// Backtracking over orientations of the undirected edges that keep the graph
// acyclic and introduce no new v-structure.
class ExtensionWalker {
 public:
  ExtensionWalker(const Cpdag& c, const std::function<bool(const Dag&)>& visit)
      : c_(c), visit_(visit), edges_(c.undirected_edges()), parents_(static_cast<std::size_t>(c.size())) {
    for (int v = 0; v < c.size(); ++v) parents_[v] = c.directed_parents(v);
  }

  // Returns the number of extensions visited.
  std::size_t run() {
    if (!kahn_ok()) return 0;
    recurse(0);
    return visited_;
  }

 private:
  bool kahn_ok() const {
    try {
      kahn(c_.size(), parents_);
      return true;
    } catch (const StructureError&) {
      return false;
    }
  }

  bool reaches(int from, int to) const {
    NodeSet seen = singleton(from);
    NodeSet frontier = seen;
    while (frontier != 0) {
      NodeSet next = 0;
      for (int w = 0; w < c_.size(); ++w) {
        if (!contains(seen, w) && (parents_[w] & frontier) != 0) next |= singleton(w);
      }
      if (contains(next, to)) return true;
      seen |= next;
      frontier = next;
    }
    return from == to;
  }

  bool can_orient(int u, int v) const {
    if (reaches(v, u)) return false;
    for (int w : members(parents_[v])) {
      if (!c_.adjacent(w, u)) return false;
    }
    return true;
  }

  bool recurse(std::size_t i) {
    if (i == edges_.size()) {
      Dag g(c_.size());
      for (int v = 0; v < c_.size(); ++v) {
        for (int p : members(parents_[v])) g.add_edge(p, v);
      }
      ++visited_;
      return visit_(g);
    }
    const Edge e = edges_[i];
    for (const Edge& dir : {e, Edge{e.to, e.from}}) {
      if (!can_orient(dir.from, dir.to)) continue;
      parents_[dir.to] |= singleton(dir.from);
      const bool keep_going = recurse(i + 1);
      parents_[dir.to] &= ~singleton(dir.from);
      if (!keep_going) return false;
    }
    return true;
  }

  const Cpdag& c_;
  const std::function<bool(const Dag&)>& visit_;
  std::vector<Edge> edges_;
  std::vector<NodeSet> parents_;
  std::size_t visited_ = 0;
};

}  // namespace

void for_each_extension(const Cpdag& c, const std::function<bool(const Dag&)>& visit) {
  // Directed edges already forming a v-structure with an unshielded pair are
  // part of the class; only new colliders are rejected during the walk.
  if (ExtensionWalker(c, visit).run() == 0) throw StructureError("graph has no consistent extension");
}

std::vector<Dag> consistent_extensions(const Cpdag& c) {
  std::vector<Dag> out;
  for_each_extension(c, [&out](const Dag& g) {
    out.push_back(g);
    return true;
  });
  if (dag_to_cpdag(out.front()) != c) throw StructureError("graph is not a completed PDAG");
  return out;
}

Dag canonical_extension(const Cpdag& c) {
  Dag first;
  for_each_extension(c, [&first](const Dag& g) {
    first = g;
    return false;
  });
  return first;
}

std::size_t count_extensions(const Cpdag& c, std::size_t limit) {
  std::size_t count = 0;
  for_each_extension(c, [&](const Dag&) { return ++count < limit; });
  return count;
}

bool is_completed(const Cpdag& c) {
  try {
    return dag_to_cpdag(canonical_extension(c)) == c;
  } catch (const StructureError&) {
    return false;
  }
}

bool equivalent(const Dag& g1, const Dag& g2) {
  if (g1.size() != g2.size()) throw StructureError("graphs differ in node count");
  for (int v = 0; v < g1.size(); ++v) {
    if (g1.neighbors(v) != g2.neighbors(v)) return false;
  }
  return v_structures(g1) == v_structures(g2);
}

std::vector<SepQuery> all_sep_queries(int n) {
  std::vector<SepQuery> out;
  for (int x = 0; x < n; ++x) {
    for (int y = x + 1; y < n; ++y) {
      const NodeSet rest = all_nodes(n) & ~singleton(x) & ~singleton(y);
      for_each_subset(rest, [&](NodeSet z) { out.push_back({x, y, z}); });
    }
  }
  return out;
}

std::vector<bool> separation_signature(const Dag& g) {
  const auto queries = all_sep_queries(g.size());
  std::vector<bool> sig(queries.size());
  for (std::size_t i = 0; i < queries.size(); ++i) {
    sig[i] = d_separated(g, singleton(queries[i].x), singleton(queries[i].y), queries[i].z);
  }
  return sig;
}

bool included_in(const Dag& g, const Dag& h) {
  if (g.size() != h.size()) throw StructureError("graphs differ in node count");
  for (const SepQuery& q : all_sep_queries(g.size())) {
    const NodeSet x = singleton(q.x);
    const NodeSet y = singleton(q.y);
    if (d_separated(h, x, y, q.z) && !d_separated(g, x, y, q.z)) return false;
  }
  return true;
}

bool strictly_included_in(const Dag& g, const Dag& h) { return included_in(g, h) && !equivalent(g, h); }

long long parameter_count(const Dag& g, const VariableSpec& spec) {
  if (spec.size() != g.size()) throw StructureError("spec does not match graph size");
  long long total = 0;
  for (int v = 0; v < g.size(); ++v) {
    long long rows = 1;
    for (int p : members(g.parents(v))) rows *= spec.card(p);
    total += rows * (spec.card(v) - 1);
  }
  return total;
}

}  // namespace gesbn
