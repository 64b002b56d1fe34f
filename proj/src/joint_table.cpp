#include "gesbn/joint_table.hpp"

#include <cmath>
#include <stdexcept>

namespace gesbn {

JointTable::JointTable(VariableSpec spec, Eigen::VectorXd probs)
    : spec_(std::move(spec)), probs_(std::move(probs)) {
  if (probs_.size() != state_count(spec_, all_nodes(spec_.size()))) {
    throw std::invalid_argument("joint table size does not match the state space");
  }
  if ((probs_.array() < 0.0).any()) throw std::invalid_argument("joint table has negative entries");
  if (std::abs(probs_.sum() - 1.0) > 1e-12) throw std::invalid_argument("joint table does not sum to one");
}

Eigen::Index JointTable::index(std::span<const int> states) const {
  return sub_index(spec_, states, all_nodes(spec_.size()));
}

std::vector<int> JointTable::decode(Eigen::Index index) const {
  std::vector<int> states(static_cast<std::size_t>(spec_.size()));
  for (int v = spec_.size() - 1; v >= 0; --v) {
    states[v] = static_cast<int>(index % spec_.card(v));
    index /= spec_.card(v);
  }
  return states;
}

Eigen::Index state_count(const VariableSpec& spec, NodeSet vars) {
  Eigen::Index count = 1;
  for (int v : members(vars)) count *= spec.card(v);
  return count;
}

Eigen::Index sub_index(const VariableSpec& spec, std::span<const int> states, NodeSet vars) {
  Eigen::Index idx = 0;
  for (int v : members(vars)) idx = idx * spec.card(v) + states[v];
  return idx;
}

Eigen::VectorXd marginal_mass(const JointTable& p, NodeSet vars) {
  Eigen::VectorXd out = Eigen::VectorXd::Zero(state_count(p.spec(), vars));
  for (Eigen::Index i = 0; i < p.cells(); ++i) {
    const auto states = p.decode(i);
    out[sub_index(p.spec(), states, vars)] += p.probs()[i];
  }
  return out;
}

}  // namespace gesbn
