#include "gesbn/scoring.hpp"

#include <boost/math/special_functions/gamma.hpp>
#include <cmath>
#include <stdexcept>

#include "gesbn/errors.hpp"

namespace gesbn {

namespace {

double log_gamma(double x) { return boost::math::lgamma(x); }

double data_local(const CategoricalDataset& data, const ScoreConfig& cfg, LocalScoreCache& cache,
                  int child, NodeSet parents) {
  const Family key{child, parents};
  if (const double* hit = cache.find(key)) return *hit;
  const SufficientStats stats = tally(data, child, parents);
  double value = 0.0;
  switch (cfg.criterion) {
    case Criterion::bdeu:
      value = bdeu_local(stats, cfg.ess);
      break;
    case Criterion::bic:
      value = bic_local(stats, data.rows());
      break;
    case Criterion::oracle:
      throw std::invalid_argument("oracle criterion needs a joint table, not a dataset");
  }
  cache.insert(key, value);
  return value;
}

}  // namespace

SufficientStats tally(const CategoricalDataset& data, int child, NodeSet parents) {
  const int n = data.size();
  if (child < 0 || child >= n || (parents & ~all_nodes(n)) != 0) {
    throw std::out_of_range("tally: variable out of range");
  }
  if (contains(parents, child)) throw std::invalid_argument("tally: child listed among its parents");

  const auto pa = members(parents);
  Eigen::Index q = 1;
  for (int p : pa) q *= data.spec().card(p);
  SufficientStats stats{child, parents, CountMatrix::Zero(q, data.spec().card(child))};

  const StateMatrix& rec = data.records();
  const auto child_col = rec.col(child);
  for (Eigen::Index i = 0; i < rec.rows(); ++i) {
    Eigen::Index j = 0;
    for (int p : pa) j = j * data.spec().card(p) + rec(i, p);
    ++stats.counts(j, child_col[i]);
  }
  return stats;
}

double bdeu_local(const SufficientStats& stats, double ess) {
  if (!(ess > 0.0)) throw std::invalid_argument("equivalent sample size must be positive");
  const double q = static_cast<double>(stats.configs());
  const double r = static_cast<double>(stats.states());
  const double a_j = ess / q;
  const double a_jk = ess / (r * q);
  const double lg_a_j = log_gamma(a_j);
  const double lg_a_jk = log_gamma(a_jk);
  double total = 0.0;
  for (Eigen::Index j = 0; j < stats.configs(); ++j) {
    const auto row = stats.counts.row(j);
    const std::int64_t n_ij = row.sum();
    if (n_ij == 0) continue;
    total += lg_a_j - log_gamma(a_j + static_cast<double>(n_ij));
    for (Eigen::Index k = 0; k < stats.states(); ++k) {
      if (row[k] != 0) total += log_gamma(a_jk + static_cast<double>(row[k])) - lg_a_jk;
    }
  }
  return total;
}

double bic_local(const SufficientStats& stats, std::int64_t m) {
  if (m < 1) throw std::invalid_argument("BIC needs at least one record");
  double loglik = 0.0;
  for (Eigen::Index j = 0; j < stats.configs(); ++j) {
    const auto row = stats.counts.row(j);
    const double n_ij = static_cast<double>(row.sum());
    for (Eigen::Index k = 0; k < stats.states(); ++k) {
      if (row[k] > 0) loglik += static_cast<double>(row[k]) * std::log(static_cast<double>(row[k]) / n_ij);
    }
  }
  const double dim = static_cast<double>(stats.configs() * (stats.states() - 1));
  return loglik - 0.5 * dim * std::log(static_cast<double>(m));
}

const double* LocalScoreCache::find(const Family& f) const {
  auto it = map_.find(f);
  return it == map_.end() ? nullptr : &it->second;
}

DataScore::DataScore(const CategoricalDataset& data, ScoreConfig cfg) : data_(data), cfg_(cfg) {
  if (cfg_.criterion == Criterion::oracle) {
    throw std::invalid_argument("oracle criterion needs a joint table, not a dataset");
  }
  if (!(cfg_.ess > 0.0)) throw std::invalid_argument("equivalent sample size must be positive");
}

double DataScore::local(int child, NodeSet parents) { return data_local(data_, cfg_, cache_, child, parents); }

double oracle_local(const JointTable& p, int child, NodeSet parents, double pseudo_m) {
  if (!(pseudo_m > 0.0)) throw std::invalid_argument("oracle pseudo sample size must be positive");
  const VariableSpec& spec = p.spec();
  const Eigen::VectorXd family = marginal_mass(p, parents | singleton(child));
  const Eigen::Index r = spec.card(child);
  const Eigen::Index q = state_count(spec, parents);

  // The family marginal is laid out with ascending variable order; the child
  // digit sits among the parent digits, so rebuild (config, state) cells.
  Eigen::MatrixXd mass = Eigen::MatrixXd::Zero(q, r);
  const auto vars = members(parents | singleton(child));
  std::vector<int> states(static_cast<std::size_t>(spec.size()), 0);
  for (Eigen::Index cell = 0; cell < family.size(); ++cell) {
    Eigen::Index rest = cell;
    for (auto it = vars.rbegin(); it != vars.rend(); ++it) {
      states[*it] = static_cast<int>(rest % spec.card(*it));
      rest /= spec.card(*it);
    }
    mass(sub_index(spec, states, parents), states[child]) += family[cell];
  }

  // Rows with zero mass behave as uniform conditionals and carry no weight.
  double expected = 0.0;
  for (Eigen::Index j = 0; j < q; ++j) {
    const double row_mass = mass.row(j).sum();
    if (row_mass <= 0.0) continue;
    for (Eigen::Index k = 0; k < r; ++k) {
      const double cell = mass(j, k);
      if (cell > 0.0) expected += cell * std::log(cell / row_mass);
    }
  }
  const double dim = static_cast<double>(q * (r - 1));
  return pseudo_m * expected - 0.5 * dim * std::log(pseudo_m);
}

OracleScore::OracleScore(const JointTable& p, double pseudo_m) : p_(p), pseudo_m_(pseudo_m) {
  if (!(pseudo_m_ > 0.0)) throw std::invalid_argument("oracle pseudo sample size must be positive");
}

double OracleScore::local(int child, NodeSet parents) {
  const Family key{child, parents};
  if (const double* hit = cache_.find(key)) return *hit;
  const double value = oracle_local(p_, child, parents, pseudo_m_);
  cache_.insert(key, value);
  return value;
}

double score(const Dag& g, LocalScore& scorer) {
  if (g.size() != scorer.num_variables()) throw StructureError("graph does not match the scored variables");
  double total = scorer.structure_prior();
  for (int v = 0; v < g.size(); ++v) total += scorer.local(v, g.parents(v));
  return total;
}

double score(const Dag& g, const CategoricalDataset& data, const ScoreConfig& cfg, LocalScoreCache& cache) {
  if (g.size() != data.size()) throw StructureError("graph does not match the dataset");
  double total = cfg.structure_prior;
  for (int v = 0; v < g.size(); ++v) total += data_local(data, cfg, cache, v, g.parents(v));
  return total;
}

double oracle_score(const Dag& g, const JointTable& p, double pseudo_m) {
  OracleScore scorer(p, pseudo_m);
  return score(g, scorer);
}

}  // namespace gesbn
