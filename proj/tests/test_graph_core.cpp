#include <doctest.h>

#include <algorithm>
#include <set>

#include "gesbn/errors.hpp"
#include "gesbn/graph.hpp"
#include "gesbn/oracle.hpp"
#include "test_oracles.hpp"

using namespace gesbn;

namespace {

// X1 -> X2 <- H -> X3 <- X4 with H = 4.
Dag w_structure() { return Dag::from_edges(5, {{0, 1}, {4, 1}, {4, 2}, {3, 2}}); }

}  // namespace

TEST_CASE("topological order") {
  CHECK(topological_order(Dag(3)) == std::vector<int>{0, 1, 2});
  CHECK(topological_order(Dag::from_edges(3, {{2, 0}, {0, 1}})) == std::vector<int>{2, 0, 1});
  const std::vector<Edge> two_cycle{{0, 1}, {1, 0}};
  CHECK_THROWS_AS(topological_order(2, two_cycle), StructureError);
  CHECK_THROWS_AS(Dag::from_edges(3, {{0, 1}, {1, 2}, {2, 0}}), StructureError);
  CHECK_THROWS_AS(Dag::from_edges(2, {{0, 0}}), StructureError);
}

TEST_CASE("dag edits keep acyclicity") {
  Dag g = Dag::from_edges(3, {{0, 1}, {1, 2}});
  CHECK(g.creates_cycle(2, 0));
  CHECK_THROWS_AS(g.add_edge(2, 0), StructureError);
  CHECK_THROWS_AS(g.remove_edge(2, 0), StructureError);
  g.add_edge(0, 2);
  CHECK(g.edge_count() == 3);
  CHECK(g == Dag::complete(3));
}

TEST_CASE("d-separation on the w-structure") {
  const Dag g = w_structure();
  CHECK(d_separated(g, {0, 3, 0}));
  CHECK_FALSE(d_separated(g, {0, 2, make_set({1})}));
  CHECK(d_separated(g, {0, 2, 0}));
  CHECK_FALSE(d_separated(g, {0, 3, make_set({1, 2})}));
  for (const SepQuery& q : all_sep_queries(4)) CHECK(d_separated(Dag(4), q));
  CHECK_THROWS_AS(d_separated(g, {0, 0, 0}), StructureError);
  CHECK_THROWS_AS(d_separated(g, {0, 1, make_set({1})}), StructureError);
  CHECK_THROWS_AS(d_separated(g, {0, 7, 0}), StructureError);
}

TEST_CASE("d-separation agrees with path enumeration on every 4-node DAG") {
  for (const Dag& g : enumerate_dags(4)) {
    CHECK(separation_signature(g) == testing::path_signature(g));
  }
}

TEST_CASE("covered edges") {
  CHECK(is_covered(Dag::from_edges(2, {{0, 1}}), {0, 1}));
  CHECK_FALSE(is_covered(Dag::from_edges(3, {{0, 1}, {2, 1}}), {0, 1}));
  // Z = 2: Z -> X, Z -> Y, X -> Y
  const Dag tri = Dag::from_edges(3, {{2, 0}, {2, 1}, {0, 1}});
  CHECK(is_covered(tri, {0, 1}));
  CHECK_THROWS_AS(is_covered(tri, {1, 0}), StructureError);

  CHECK(reverse_covered(Dag::from_edges(2, {{0, 1}}), {0, 1}) == Dag::from_edges(2, {{1, 0}}));
  CHECK(reverse_covered(tri, {0, 1}) == Dag::from_edges(3, {{2, 0}, {2, 1}, {1, 0}}));
  CHECK_THROWS_AS(reverse_covered(Dag::from_edges(3, {{0, 1}, {2, 1}}), {0, 1}), StructureError);
}

TEST_CASE("covered reversal preserves the class for every 4-node DAG") {
  for (const Dag& g : enumerate_dags(4)) {
    for (const Edge& e : g.edges()) {
      if (!is_covered(g, e)) continue;
      const Dag r = reverse_covered(g, e);
      CHECK(equivalent(g, r));
      CHECK(dag_to_cpdag(g) == dag_to_cpdag(r));
    }
  }
}

TEST_CASE("dag_to_cpdag examples") {
  const Cpdag chain = dag_to_cpdag(Dag::from_edges(3, {{0, 1}, {1, 2}}));
  CHECK(chain.directed_edges().empty());
  CHECK(chain.undirected_edges() == std::vector<Edge>{{0, 1}, {1, 2}});

  const Cpdag collider = dag_to_cpdag(Dag::from_edges(3, {{0, 2}, {1, 2}}));
  CHECK(collider.directed_edges() == std::vector<Edge>{{0, 2}, {1, 2}});
  CHECK(collider.undirected_edges().empty());

  const Cpdag single = dag_to_cpdag(Dag::from_edges(2, {{0, 1}}));
  CHECK(single.undirected_edges() == std::vector<Edge>{{0, 1}});
}

TEST_CASE("completed graphs match brute-force classes") {
  for (int n = 2; n <= 4; ++n) {
    for (const auto& [sig, group] : testing::brute_force_classes(n)) {
      const Cpdag c = dag_to_cpdag(group.front());
      const auto compelled = testing::compelled_edges(group);
      CHECK(c.directed_edges() == compelled);
      CHECK(c.edge_count() == group.front().edge_count());
      for (const Dag& member : group) CHECK(dag_to_cpdag(member) == c);

      auto ext = consistent_extensions(c);
      auto expected = group;
      std::sort(ext.begin(), ext.end());
      std::sort(expected.begin(), expected.end());
      CHECK(ext == expected);
      CHECK(count_extensions(c, 1000) == group.size());
      CHECK(is_completed(c));
    }
  }
}

TEST_CASE("consistent extensions") {
  const auto xy = consistent_extensions(dag_to_cpdag(Dag::from_edges(2, {{0, 1}})));
  CHECK(xy.size() == 2);
  CHECK(std::find(xy.begin(), xy.end(), Dag::from_edges(2, {{0, 1}})) != xy.end());
  CHECK(std::find(xy.begin(), xy.end(), Dag::from_edges(2, {{1, 0}})) != xy.end());

  const Dag v = Dag::from_edges(3, {{0, 2}, {1, 2}});
  CHECK(consistent_extensions(dag_to_cpdag(v)) == std::vector<Dag>{v});

  CHECK(consistent_extensions(dag_to_cpdag(Dag::complete(3))).size() == 6);
}

TEST_CASE("invalid completed graphs are rejected") {
  // X -> Y -- Z cannot be completed: Rule 1 would orient Y -> Z.
  const std::vector<Edge> dir{{0, 1}};
  const std::vector<Edge> und{{1, 2}};
  const Cpdag bad = Cpdag::from_edges(3, dir, und);
  CHECK_FALSE(is_completed(bad));
  CHECK_THROWS_AS(consistent_extensions(bad), StructureError);

  // Directed cycle: no extension at all.
  const std::vector<Edge> cyc{{0, 1}, {1, 2}, {2, 0}};
  const Cpdag cycle = Cpdag::from_edges(3, cyc, {});
  CHECK_THROWS_AS(consistent_extensions(cycle), StructureError);
}

TEST_CASE("equivalence") {
  const Dag chain = Dag::from_edges(3, {{0, 1}, {1, 2}});
  CHECK(equivalent(chain, Dag::from_edges(3, {{1, 0}, {2, 1}})));
  CHECK_FALSE(equivalent(chain, Dag::from_edges(3, {{0, 1}, {2, 1}})));
  CHECK(equivalent(chain, chain));
  CHECK_THROWS_AS(equivalent(chain, Dag(2)), StructureError);
}

TEST_CASE("equivalence agrees with separation statements on 4 nodes") {
  const auto dags = enumerate_dags(4);
  std::vector<std::vector<bool>> sigs;
  for (const Dag& g : dags) sigs.push_back(testing::path_signature(g));
  for (std::size_t i = 0; i < dags.size(); ++i) {
    for (std::size_t j = i; j < dags.size(); ++j) {
      const bool same = sigs[i] == sigs[j];
      CHECK(equivalent(dags[i], dags[j]) == same);
      CHECK((dag_to_cpdag(dags[i]) == dag_to_cpdag(dags[j])) == same);
    }
  }
}

TEST_CASE("inclusion") {
  const Dag collider = Dag::from_edges(3, {{0, 1}, {2, 1}});
  const Dag chain = Dag::from_edges(3, {{0, 1}, {1, 2}});
  CHECK_FALSE(included_in(collider, chain));
  CHECK_FALSE(included_in(chain, collider));
  CHECK(included_in(Dag(3), chain));
  CHECK(included_in(chain, Dag::complete(3)));
  CHECK(strictly_included_in(chain, Dag::complete(3)));
  CHECK_FALSE(strictly_included_in(chain, Dag::from_edges(3, {{1, 0}, {1, 2}})));
  CHECK_THROWS_AS(included_in(chain, Dag(4)), StructureError);
}

TEST_CASE("inclusion is a preorder whose symmetric part is equivalence") {
  const auto dags = enumerate_dags(3);
  for (const Dag& a : dags) {
    CHECK(included_in(a, a));
    CHECK(included_in(Dag(3), a));
    CHECK(included_in(a, Dag::complete(3)));
    for (const Dag& b : dags) {
      CHECK((included_in(a, b) && included_in(b, a)) == equivalent(a, b));
      if (!included_in(a, b)) continue;
      for (const Dag& c : dags) {
        if (included_in(b, c)) CHECK(included_in(a, c));
      }
    }
  }
}

TEST_CASE("parameter counts") {
  // X1 -> X2, X1 -> X3, X2 -> X3, X4 -> X3 with X2 ternary.
  const VariableSpec w_spec({"X1", "X2", "X3", "X4"}, {2, 3, 2, 2});
  CHECK(parameter_count(Dag::from_edges(4, {{0, 1}, {0, 2}, {1, 2}, {3, 2}}), w_spec) == 18);

  // Four-cycle with the X1 -- X3 chord, X1 four-valued.
  const VariableSpec c_spec({"X1", "X2", "X3", "X4"}, {4, 2, 2, 2});
  CHECK(parameter_count(Dag::from_edges(4, {{0, 1}, {0, 2}, {1, 2}, {0, 3}, {2, 3}}), c_spec) == 23);

  CHECK(parameter_count(Dag(4), numbered_spec({2, 2, 2, 2})) == 4);
  CHECK_THROWS_AS(parameter_count(Dag(3), numbered_spec({2, 2})), StructureError);
}

TEST_CASE("parameter count is constant within every 4-node class") {
  const VariableSpec spec = numbered_spec({2, 3, 4, 2});
  for (const Cpdag& c : enumerate_classes(4)) {
    const auto members_list = consistent_extensions(c);
    const long long d = parameter_count(members_list.front(), spec);
    for (const Dag& g : members_list) CHECK(parameter_count(g, spec) == d);
  }
}
