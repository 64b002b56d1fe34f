#pragma once

#include <optional>
#include <vector>

#include "gesbn/cpdag.hpp"
#include "gesbn/dag.hpp"
#include "gesbn/datagen.hpp"
#include "gesbn/joint_table.hpp"
#include "gesbn/node_set.hpp"

namespace gesbn {

inline constexpr double kCiTolerance = 1e-10;

/// Exact product-of-tables joint. Throws std::length_error above 1e7 cells.
JointTable joint_from_bn(const ParametricBn& bn);

struct Assignment {
  int var = 0;
  int state = 0;
};

/// p(. | fix) with the `drop` variables summed out; the remaining variables
/// keep their relative order. Fixed variables stay in the table unless
/// dropped. Throws std::domain_error when p(fix) = 0.
JointTable condition_and_marginalize(const JointTable& p, const std::vector<Assignment>& fix, NodeSet drop);

/// Margin of the gold standard over its observed variables, conditioned on
/// every selection value.
JointTable observed_margin(const GoldStandard& gold);

/// max |p(x,y|z) - p(x|z) p(y|z)| <= tol over configurations with p(z) > 0.
bool ci_holds(const JointTable& p, NodeSet x, NodeSet y, NodeSet z, double tol = kCiTolerance);

struct CiStatement {
  NodeSet x = 0;
  NodeSet y = 0;
  NodeSet z = 0;
  bool holds = false;
};

struct CompositionResult {
  bool holds = true;
  std::optional<CiStatement> counterexample;
};

/// Searches for a singleton x, set y (|y| >= 2) and z with x dependent on y
/// given z but independent of every single member of y given z. The sweep
/// visits x ascending, then z, then y, both by ascending mask.
CompositionResult composition_holds(const JointTable& p, double tol = kCiTolerance);

/// All DAGs on n <= 5 nodes, ordered by value.
std::vector<Dag> enumerate_dags(int n);
/// All equivalence classes on n <= 5 nodes, in canonical order.
std::vector<Cpdag> enumerate_classes(int n);

/// Every singleton d-separation of g is an independence of p.
bool includes(const Dag& g, const JointTable& p, double tol = kCiTolerance);

/// Including classes with no strictly included class that also includes p.
std::vector<Cpdag> inclusion_optimal_classes(const JointTable& p, double tol = kCiTolerance);
/// Including classes with the fewest parameters.
std::vector<Cpdag> parameter_optimal_classes(const JointTable& p, double tol = kCiTolerance);

struct Move {
  enum class Kind { reverse, add };
  Kind kind = Kind::add;
  Edge edge;
  friend bool operator==(const Move&, const Move&) = default;
};

/// Shortest sequence of covered-edge reversals and edge additions turning g
/// into h with every intermediate included in h. Throws std::invalid_argument
/// unless g <= h.
std::vector<Move> transformation_sequence(const Dag& g, const Dag& h);

/// r + 2a: r edges of h reversed in g, a edges of h absent from g.
int transformation_bound(const Dag& g, const Dag& h);

}  // namespace gesbn
