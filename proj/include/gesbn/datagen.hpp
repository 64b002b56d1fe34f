#pragma once

#include <Eigen/Dense>
#include <cstddef>
#include <vector>

#include "gesbn/dag.hpp"
#include "gesbn/dataset.hpp"
#include "gesbn/rng.hpp"
#include "gesbn/variable_spec.hpp"

namespace gesbn {

/// Structure, variables and one conditional table per node. Table i has one
/// row per parent configuration (ascending parents, lowest most significant)
/// and one column per state. An empty `cpts` means structure only.
struct ParametricBn {
  Dag structure;
  VariableSpec spec;
  std::vector<Eigen::MatrixXd> cpts;

  bool has_parameters() const { return !cpts.empty(); }
  /// Throws std::invalid_argument on shape mismatch or rows not summing to 1 (1e-12).
  void validate() const;
};

Eigen::VectorXd basis_mean(int k);
/// Cyclic right shift by (j mod k) places.
Eigen::VectorXd shifted_mean(const Eigen::VectorXd& mu, int j);

/// Row j (1-based parent configuration) ~ Dirichlet(ess * shifted_mean(basis_mean(r), j)).
ParametricBn sample_parameters(const Dag& structure, const VariableSpec& spec, double ess, RngSeed seed);

/// Ancestral sampling over all variables.
CategoricalDataset forward_sample(const ParametricBn& bn, std::size_t m, RngSeed seed);

enum class VariableRole { observed, hidden, selection };

/// Generative model with hidden and selection variables.
struct GoldStandard {
  ParametricBn bn;
  std::vector<VariableRole> roles;
  /// Required state per variable; -1 for non-selection variables.
  std::vector<int> selection_values;

  std::vector<int> observed() const;
  std::vector<int> of_role(VariableRole role) const;
  void validate() const;
};

/// Records over the observed variables only, drawn by rejection until m
/// records satisfy every selection value. Throws SamplingError when the
/// observed acceptance rate drops below 1e-6 after 2^20 draws.
CategoricalDataset observed_sample(const GoldStandard& gold, std::size_t m, RngSeed seed);

/// w-structure: X1 -> X2 <- H -> X3 <- X4, X2 ternary, H hidden.
GoldStandard gold_w();
/// Selection four-cycle: X1 -> X2 -> X3 -> X4, X1 -> S <- X4, X1 four-valued, S = 1 selected.
GoldStandard gold_four_cycle();

/// Copy of `gold` with parameters drawn by sample_parameters.
GoldStandard with_sampled_parameters(const GoldStandard& gold, double ess, RngSeed seed);

}  // namespace gesbn
