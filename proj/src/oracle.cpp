#include "gesbn/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <queue>
#include <set>
#include <stdexcept>

#include "gesbn/errors.hpp"
#include "gesbn/graph.hpp"

namespace gesbn {

JointTable joint_from_bn(const ParametricBn& bn) {
  bn.validate();
  if (!bn.has_parameters()) throw std::invalid_argument("joint_from_bn needs conditional tables");
  const Eigen::Index cells = state_count(bn.spec, all_nodes(bn.spec.size()));
  if (cells > 10'000'000) throw std::length_error("joint state space exceeds 1e7 cells");

  Eigen::VectorXd probs(cells);
  std::vector<int> states(static_cast<std::size_t>(bn.spec.size()));
  for (Eigen::Index i = 0; i < cells; ++i) {
    Eigen::Index rest = i;
    for (int v = bn.spec.size() - 1; v >= 0; --v) {
      states[v] = static_cast<int>(rest % bn.spec.card(v));
      rest /= bn.spec.card(v);
    }
    double prob = 1.0;
    for (int v = 0; v < bn.spec.size(); ++v) {
      prob *= bn.cpts[v](sub_index(bn.spec, states, bn.structure.parents(v)), states[v]);
    }
    probs[i] = prob;
  }
  probs /= probs.sum();
  return JointTable(bn.spec, std::move(probs));
}

JointTable condition_and_marginalize(const JointTable& p, const std::vector<Assignment>& fix, NodeSet drop) {
  const VariableSpec& spec = p.spec();
  const NodeSet keep = all_nodes(spec.size()) & ~drop;
  Eigen::VectorXd mass = Eigen::VectorXd::Zero(state_count(spec, keep));
  for (Eigen::Index i = 0; i < p.cells(); ++i) {
    const auto states = p.decode(i);
    bool match = true;
    for (const Assignment& a : fix) match = match && states.at(static_cast<std::size_t>(a.var)) == a.state;
    if (match) mass[sub_index(spec, states, keep)] += p.probs()[i];
  }
  const double total = mass.sum();
  if (!(total > 0.0)) throw std::domain_error("conditioning event has zero probability");
  return JointTable(spec.subset(members(keep)), mass / total);
}

JointTable observed_margin(const GoldStandard& gold) {
  gold.validate();
  std::vector<Assignment> fix;
  NodeSet drop = 0;
  for (int v = 0; v < gold.bn.structure.size(); ++v) {
    if (gold.roles[v] == VariableRole::selection) fix.push_back({v, gold.selection_values[v]});
    if (gold.roles[v] != VariableRole::observed) drop |= singleton(v);
  }
  return condition_and_marginalize(joint_from_bn(gold.bn), fix, drop);
}

bool ci_holds(const JointTable& p, NodeSet x, NodeSet y, NodeSet z, double tol) {
  if ((x & y) != 0 || (x & z) != 0 || (y & z) != 0) throw std::invalid_argument("ci_holds needs disjoint sets");
  const VariableSpec& spec = p.spec();
  const NodeSet u = x | y | z;
  const Eigen::VectorXd joint = marginal_mass(p, u);
  const Eigen::VectorXd p_xz = marginal_mass(p, x | z);
  const Eigen::VectorXd p_yz = marginal_mass(p, y | z);
  const Eigen::VectorXd p_z = marginal_mass(p, z);

  const auto vars = members(u);
  std::vector<int> states(static_cast<std::size_t>(spec.size()), 0);
  for (Eigen::Index cell = 0; cell < joint.size(); ++cell) {
    Eigen::Index rest = cell;
    for (auto it = vars.rbegin(); it != vars.rend(); ++it) {
      states[*it] = static_cast<int>(rest % spec.card(*it));
      rest /= spec.card(*it);
    }
    const double pz = p_z[sub_index(spec, states, z)];
    if (!(pz > 0.0)) continue;
    const double lhs = joint[cell] / pz;
    const double rhs = (p_xz[sub_index(spec, states, x | z)] / pz) * (p_yz[sub_index(spec, states, y | z)] / pz);
    if (std::abs(lhs - rhs) > tol) return false;
  }
  return true;
}

CompositionResult composition_holds(const JointTable& p, double tol) {
  const int n = p.size();
  const NodeSet all = all_nodes(n);
  for (int xv = 0; xv < n; ++xv) {
    const NodeSet x = singleton(xv);
    std::optional<CiStatement> found;
    for_each_subset(all & ~x, [&](NodeSet z) {
      if (found) return;
      for_each_subset(all & ~x & ~z, [&](NodeSet y) {
        if (found || cardinality(y) < 2) return;
        if (ci_holds(p, x, y, z, tol)) return;
        for (int yv : members(y)) {
          if (!ci_holds(p, x, singleton(yv), z, tol)) return;
        }
        found = CiStatement{x, y, z, false};
      });
    });
    if (found) return {false, found};
  }
  return {true, std::nullopt};
}

std::vector<Dag> enumerate_dags(int n) {
  if (n < 0 || n > 5) throw std::invalid_argument("enumeration supports n <= 5");
  std::vector<Edge> pairs;
  for (int u = 0; u < n; ++u) {
    for (int v = u + 1; v < n; ++v) pairs.push_back({u, v});
  }
  std::size_t total = 1;
  for (std::size_t i = 0; i < pairs.size(); ++i) total *= 3;

  std::vector<Dag> out;
  std::vector<Edge> edges;
  for (std::size_t code = 0; code < total; ++code) {
    edges.clear();
    std::size_t rest = code;
    for (const Edge& e : pairs) {
      const std::size_t digit = rest % 3;
      rest /= 3;
      if (digit == 1) edges.push_back(e);
      if (digit == 2) edges.push_back({e.to, e.from});
    }
    try {
      out.push_back(Dag::from_edges(n, edges));
    } catch (const StructureError&) {
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<Cpdag> enumerate_classes(int n) {
  std::set<Cpdag> classes;
  for (const Dag& g : enumerate_dags(n)) classes.insert(dag_to_cpdag(g));
  return {classes.begin(), classes.end()};
}

bool includes(const Dag& g, const JointTable& p, double tol) {
  if (g.size() != p.size()) throw std::invalid_argument("graph and distribution differ in size");
  for (const SepQuery& q : all_sep_queries(g.size())) {
    const NodeSet x = singleton(q.x);
    const NodeSet y = singleton(q.y);
    if (d_separated(g, x, y, q.z) && !ci_holds(p, x, y, q.z, tol)) return false;
  }
  return true;
}

namespace {

struct Candidate {
  Cpdag cls;
  std::vector<bool> signature;
};

bool subset_of(const std::vector<bool>& a, const std::vector<bool>& b) {
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] && !b[i]) return false;
  }
  return true;
}

std::vector<Candidate> including_classes(const JointTable& p, double tol) {
  const int n = p.size();
  const auto queries = all_sep_queries(n);
  std::vector<bool> independences(queries.size());
  for (std::size_t i = 0; i < queries.size(); ++i) {
    independences[i] = ci_holds(p, singleton(queries[i].x), singleton(queries[i].y), queries[i].z, tol);
  }
  std::vector<Candidate> out;
  for (const Cpdag& c : enumerate_classes(n)) {
    auto sig = separation_signature(canonical_extension(c));
    if (subset_of(sig, independences)) out.push_back({c, std::move(sig)});
  }
  return out;
}

}  // namespace

std::vector<Cpdag> inclusion_optimal_classes(const JointTable& p, double tol) {
  const auto including = including_classes(p, tol);
  std::vector<Cpdag> out;
  for (const Candidate& c : including) {
    // A strictly included class has a strictly larger set of separations.
    const bool dominated = std::any_of(including.begin(), including.end(), [&](const Candidate& other) {
      return other.signature != c.signature && subset_of(c.signature, other.signature);
    });
    if (!dominated) out.push_back(c.cls);
  }
  return out;
}

std::vector<Cpdag> parameter_optimal_classes(const JointTable& p, double tol) {
  const auto including = including_classes(p, tol);
  std::vector<Cpdag> out;
  long long best = -1;
  for (const Candidate& c : including) {
    const long long d = parameter_count(canonical_extension(c.cls), p.spec());
    if (best < 0 || d < best) {
      best = d;
      out.clear();
    }
    if (d == best) out.push_back(c.cls);
  }
  return out;
}

int transformation_bound(const Dag& g, const Dag& h) {
  int reversed = 0;
  int added = 0;
  for (const Edge& e : h.edges()) {
    if (g.has_edge(e.to, e.from)) {
      ++reversed;
    } else if (!g.has_edge(e.from, e.to)) {
      ++added;
    }
  }
  return reversed + 2 * added;
}

std::vector<Move> transformation_sequence(const Dag& g, const Dag& h) {
  if (g.size() != h.size() || !included_in(g, h)) {
    throw std::invalid_argument("transformation_sequence requires g <= h");
  }
  const int n = g.size();
  std::map<Dag, std::pair<Dag, Move>> came_from;
  std::queue<Dag> frontier;
  frontier.push(g);
  came_from.emplace(g, std::pair{g, Move{}});

  while (!frontier.empty()) {
    const Dag cur = frontier.front();
    frontier.pop();
    if (cur == h) {
      std::vector<Move> moves;
      for (Dag at = cur; at != g;) {
        const auto& [prev, move] = came_from.at(at);
        moves.push_back(move);
        at = prev;
      }
      std::reverse(moves.begin(), moves.end());
      return moves;
    }
    auto visit = [&](Dag next, Move move) {
      if (came_from.contains(next)) return;
      came_from.emplace(next, std::pair{cur, move});
      frontier.push(std::move(next));
    };
    for (const Edge& e : cur.edges()) {
      if (is_covered(cur, e)) visit(cur.reversed(e.from, e.to), {Move::Kind::reverse, e});
    }
    for (int u = 0; u < n; ++u) {
      for (int v = 0; v < n; ++v) {
        // Only edges of h's skeleton can ever be part of the path.
        if (u == v || cur.adjacent(u, v) || !h.adjacent(u, v) || cur.creates_cycle(u, v)) continue;
        Dag next = cur.with_edge(u, v);
        if (included_in(next, h)) visit(std::move(next), {Move::Kind::add, {u, v}});
      }
    }
  }
  throw std::logic_error("no transformation sequence found");
}

}  // namespace gesbn
