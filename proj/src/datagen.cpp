#include "gesbn/datagen.hpp"

#include <boost/random/gamma_distribution.hpp>
#include <cmath>
#include <stdexcept>
#include <string>

#include "gesbn/errors.hpp"
#include "gesbn/graph.hpp"

namespace gesbn {

namespace {

Eigen::Index config_count(const Dag& g, const VariableSpec& spec, int v) {
  Eigen::Index q = 1;
  for (int p : members(g.parents(v))) q *= spec.card(p);
  return q;
}

class RecordSampler {
 public:
  explicit RecordSampler(const ParametricBn& bn) : bn_(bn), order_(topological_order(bn.structure)) {
    bn_.validate();
    if (!bn_.has_parameters()) throw std::invalid_argument("sampling requires conditional tables");
    for (int v : order_) parents_.push_back(members(bn_.structure.parents(v)));
  }

  void draw(Engine& eng, Eigen::Ref<Eigen::Matrix<std::int32_t, 1, Eigen::Dynamic>> out) const {
    for (std::size_t i = 0; i < order_.size(); ++i) {
      const int v = order_[i];
      Eigen::Index j = 0;
      for (int p : parents_[i]) j = j * bn_.spec.card(p) + out[p];
      const auto row = bn_.cpts[v].row(j);
      const double u = uniform01(eng);
      double acc = 0.0;
      Eigen::Index k = 0;
      for (; k + 1 < row.size(); ++k) {
        acc += row[k];
        if (u < acc) break;
      }
      out[v] = static_cast<std::int32_t>(k);
    }
  }

 private:
  const ParametricBn& bn_;
  std::vector<int> order_;
  std::vector<std::vector<int>> parents_;
};

}  // namespace

void ParametricBn::validate() const {
  if (spec.size() != structure.size()) throw std::invalid_argument("spec does not match structure");
  if (!has_parameters()) return;
  if (static_cast<int>(cpts.size()) != structure.size()) throw std::invalid_argument("one table per node required");
  for (int v = 0; v < structure.size(); ++v) {
    const auto& t = cpts[v];
    if (t.rows() != config_count(structure, spec, v) || t.cols() != spec.card(v)) {
      throw std::invalid_argument("table shape mismatch for '" + spec.name(v) + "'");
    }
    if ((t.array() < 0.0).any()) throw std::invalid_argument("negative probability for '" + spec.name(v) + "'");
    for (Eigen::Index j = 0; j < t.rows(); ++j) {
      if (std::abs(t.row(j).sum() - 1.0) > 1e-12) {
        throw std::invalid_argument("row of '" + spec.name(v) + "' does not sum to one");
      }
    }
  }
}

Eigen::VectorXd basis_mean(int k) {
  if (k < 1) throw std::invalid_argument("basis_mean needs k >= 1");
  Eigen::VectorXd mu(k);
  for (int i = 0; i < k; ++i) mu[i] = 1.0 / (i + 1);
  return mu / mu.sum();
}

Eigen::VectorXd shifted_mean(const Eigen::VectorXd& mu, int j) {
  const Eigen::Index k = mu.size();
  if (k == 0) return mu;
  const Eigen::Index shift = ((j % k) + k) % k;
  Eigen::VectorXd out(k);
  for (Eigen::Index i = 0; i < k; ++i) out[(i + shift) % k] = mu[i];
  return out;
}

ParametricBn sample_parameters(const Dag& structure, const VariableSpec& spec, double ess, RngSeed seed) {
  if (!(ess > 0.0)) throw std::invalid_argument("equivalent sample size must be positive");
  if (spec.size() != structure.size()) throw std::invalid_argument("spec does not match structure");
  Engine eng = make_engine(seed);
  ParametricBn bn{structure, spec, {}};
  for (int v = 0; v < structure.size(); ++v) {
    const int r = spec.card(v);
    const Eigen::Index q = config_count(structure, spec, v);
    const Eigen::VectorXd mu = basis_mean(r);
    Eigen::MatrixXd table(q, r);
    for (Eigen::Index j = 0; j < q; ++j) {
      const Eigen::VectorXd alpha = ess * shifted_mean(mu, static_cast<int>(j + 1));
      for (int k = 0; k < r; ++k) {
        boost::random::gamma_distribution<double> gamma(alpha[k], 1.0);
        table(j, k) = gamma(eng);
      }
      const double total = table.row(j).sum();
      if (total > 0.0) {
        table.row(j) /= total;
      } else {
        table.row(j) = alpha.transpose() / alpha.sum();
      }
    }
    bn.cpts.push_back(std::move(table));
  }
  return bn;
}

CategoricalDataset forward_sample(const ParametricBn& bn, std::size_t m, RngSeed seed) {
  RecordSampler sampler(bn);
  Engine eng = make_engine(seed);
  Eigen::Matrix<std::int32_t, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor> rows(
      static_cast<Eigen::Index>(m), bn.structure.size());
  for (Eigen::Index i = 0; i < rows.rows(); ++i) sampler.draw(eng, rows.row(i));
  return CategoricalDataset(bn.spec, StateMatrix(rows));
}

std::vector<int> GoldStandard::of_role(VariableRole role) const {
  std::vector<int> out;
  for (std::size_t v = 0; v < roles.size(); ++v) {
    if (roles[v] == role) out.push_back(static_cast<int>(v));
  }
  return out;
}

std::vector<int> GoldStandard::observed() const { return of_role(VariableRole::observed); }

void GoldStandard::validate() const {
  bn.validate();
  const auto n = static_cast<std::size_t>(bn.structure.size());
  if (roles.size() != n || selection_values.size() != n) {
    throw std::invalid_argument("gold standard: roles/selection values must cover every variable");
  }
  for (std::size_t v = 0; v < n; ++v) {
    const bool selected = roles[v] == VariableRole::selection;
    const int s = selection_values[v];
    if (selected && (s < 0 || s >= bn.spec.card(static_cast<int>(v)))) {
      throw std::invalid_argument("gold standard: invalid selection value for '" + bn.spec.name(static_cast<int>(v)) + "'");
    }
    if (!selected && s != -1) throw std::invalid_argument("gold standard: selection value on a non-selection variable");
  }
}

CategoricalDataset observed_sample(const GoldStandard& gold, std::size_t m, RngSeed seed) {
  gold.validate();
  const auto observed = gold.observed();
  const auto selection = gold.of_role(VariableRole::selection);
  RecordSampler sampler(gold.bn);
  Engine eng = make_engine(seed);

  StateMatrix out(static_cast<Eigen::Index>(m), static_cast<Eigen::Index>(observed.size()));
  Eigen::Matrix<std::int32_t, 1, Eigen::Dynamic> record(gold.bn.structure.size());
  constexpr std::uint64_t kCheckEvery = std::uint64_t{1} << 20;
  std::uint64_t draws = 0;
  std::size_t accepted = 0;
  while (accepted < m) {
    sampler.draw(eng, record);
    ++draws;
    bool keep = true;
    for (int s : selection) keep = keep && record[s] == gold.selection_values[s];
    if (keep) {
      for (std::size_t j = 0; j < observed.size(); ++j) {
        out(static_cast<Eigen::Index>(accepted), static_cast<Eigen::Index>(j)) = record[observed[j]];
      }
      ++accepted;
    }
    if (draws % kCheckEvery == 0 && static_cast<double>(accepted) < 1e-6 * static_cast<double>(draws)) {
      throw SamplingError("selection acceptance rate below 1e-6 after " + std::to_string(draws) + " draws");
    }
  }
  return CategoricalDataset(gold.bn.spec.subset(observed), std::move(out));
}

GoldStandard gold_w() {
  // X1, X2, X3, X4, H
  const Dag g = Dag::from_edges(5, {{0, 1}, {4, 1}, {4, 2}, {3, 2}});
  GoldStandard gold;
  gold.bn = ParametricBn{g, VariableSpec({"X1", "X2", "X3", "X4", "H"}, {2, 3, 2, 2, 2}), {}};
  gold.roles = {VariableRole::observed, VariableRole::observed, VariableRole::observed, VariableRole::observed,
                VariableRole::hidden};
  gold.selection_values = {-1, -1, -1, -1, -1};
  return gold;
}

GoldStandard gold_four_cycle() {
  // X1, X2, X3, X4, S
  const Dag g = Dag::from_edges(5, {{0, 1}, {1, 2}, {2, 3}, {0, 4}, {3, 4}});
  GoldStandard gold;
  gold.bn = ParametricBn{g, VariableSpec({"X1", "X2", "X3", "X4", "S"}, {4, 2, 2, 2, 2}), {}};
  gold.roles = {VariableRole::observed, VariableRole::observed, VariableRole::observed, VariableRole::observed,
                VariableRole::selection};
  gold.selection_values = {-1, -1, -1, -1, 1};
  return gold;
}

GoldStandard with_sampled_parameters(const GoldStandard& gold, double ess, RngSeed seed) {
  GoldStandard out = gold;
  out.bn = sample_parameters(gold.bn.structure, gold.bn.spec, ess, seed);
  return out;
}

}  // namespace gesbn
