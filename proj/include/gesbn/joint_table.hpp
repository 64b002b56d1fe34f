#pragma once

#include <Eigen/Dense>
#include <span>
#include <vector>

#include "gesbn/node_set.hpp"
#include "gesbn/variable_spec.hpp"

namespace gesbn {

/// Dense joint distribution over all state combinations of a VariableSpec.
/// Cells are laid out mixed-radix with variable 0 most significant.
class JointTable {
 public:
  JointTable() = default;
  /// Throws std::invalid_argument on size mismatch, negative entries, or a
  /// total that is not 1 within 1e-12.
  JointTable(VariableSpec spec, Eigen::VectorXd probs);

  const VariableSpec& spec() const { return spec_; }
  int size() const { return spec_.size(); }
  const Eigen::VectorXd& probs() const { return probs_; }
  Eigen::Index cells() const { return probs_.size(); }

  double operator()(std::span<const int> states) const { return probs_[index(states)]; }
  Eigen::Index index(std::span<const int> states) const;
  /// States of every variable for cell `index`.
  std::vector<int> decode(Eigen::Index index) const;

 private:
  VariableSpec spec_;
  Eigen::VectorXd probs_;
};

/// Number of cells in the product state space of `vars` (ascending order).
Eigen::Index state_count(const VariableSpec& spec, NodeSet vars);

/// Mixed-radix index of `states` restricted to `vars`, lowest index most significant.
Eigen::Index sub_index(const VariableSpec& spec, std::span<const int> states, NodeSet vars);

/// Unnormalised marginal mass over `vars`, indexed by sub_index.
Eigen::VectorXd marginal_mass(const JointTable& p, NodeSet vars);

}  // namespace gesbn
