#pragma once

#include <functional>
#include <span>
#include <vector>

#include "gesbn/cpdag.hpp"
#include "gesbn/dag.hpp"
#include "gesbn/node_set.hpp"
#include "gesbn/variable_spec.hpp"

namespace gesbn {

/// Conditional-independence query between two single nodes.
struct SepQuery {
  int x = 0;
  int y = 0;
  NodeSet z = 0;
};

/// Kahn's algorithm; ties resolved toward the smallest index.
std::vector<int> topological_order(const Dag& g);
/// Same, over a raw edge list. Throws StructureError if the edges contain a cycle.
std::vector<int> topological_order(int n, std::span<const Edge> edges);

/// d-separation via the moralized ancestral graph of x, y and z.
bool d_separated(const Dag& g, const SepQuery& q);
/// Set version: every node of `x` separated from every node of `y` given `z`.
bool d_separated(const Dag& g, NodeSet x, NodeSet y, NodeSet z);

/// Edge u -> v is covered when Pa(v) = Pa(u) + {u}. Throws if the edge is absent.
bool is_covered(const Dag& g, Edge e);
/// Reverses a covered edge; the result is in the same equivalence class.
Dag reverse_covered(const Dag& g, Edge e);

/// Colliders a -> c <- b with a, b non-adjacent, reported as (a, c, b) with a < b.
struct VStructure {
  int a, c, b;
  friend auto operator<=>(const VStructure&, const VStructure&) = default;
};
std::vector<VStructure> v_structures(const Dag& g);

Cpdag dag_to_cpdag(const Dag& g);

/// Visits every member DAG of the class. The callback returns false to stop.
/// Throws StructureError when `c` has no extension. Visiting order is
/// deterministic; members are not validated against the class here.
void for_each_extension(const Cpdag& c, const std::function<bool(const Dag&)>& visit);

/// All members of the class. Throws StructureError when `c` is not a
/// completed PDAG (no extension, or the extensions complete to a different graph).
std::vector<Dag> consistent_extensions(const Cpdag& c);
/// First member in enumeration order; the canonical DAG used for scoring.
Dag canonical_extension(const Cpdag& c);
/// Number of members, counting stops at `limit`.
std::size_t count_extensions(const Cpdag& c, std::size_t limit);
bool is_completed(const Cpdag& c);

/// Same skeleton and v-structures.
bool equivalent(const Dag& g1, const Dag& g2);
/// g <= h: every d-separation of h also holds in g.
bool included_in(const Dag& g, const Dag& h);
bool strictly_included_in(const Dag& g, const Dag& h);

/// Free parameters of the full-table network: sum (r_i - 1) * prod r_parents.
long long parameter_count(const Dag& g, const VariableSpec& spec);

/// All singleton d-separation statements, in the fixed order: pairs (x < y)
/// lexicographic, then conditioning sets ascending by mask over the other nodes.
std::vector<SepQuery> all_sep_queries(int n);
/// Bit i is set when all_sep_queries(n)[i] is a d-separation of g.
std::vector<bool> separation_signature(const Dag& g);

}  // namespace gesbn
