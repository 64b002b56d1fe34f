#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <unordered_map>

#include "gesbn/dag.hpp"
#include "gesbn/dataset.hpp"
#include "gesbn/joint_table.hpp"
#include "gesbn/node_set.hpp"

namespace gesbn {

using CountMatrix = Eigen::Matrix<std::int64_t, Eigen::Dynamic, Eigen::Dynamic>;

/// Contingency counts N_ijk for one family. Rows are parent configurations
/// (ascending parent indices, lowest most significant), columns child states.
struct SufficientStats {
  int child = 0;
  NodeSet parents = 0;
  CountMatrix counts;

  std::int64_t total() const { return counts.sum(); }
  Eigen::Index configs() const { return counts.rows(); }
  Eigen::Index states() const { return counts.cols(); }
};

SufficientStats tally(const CategoricalDataset& data, int child, NodeSet parents);

/// BDeu local score, evaluated with log-Gamma.
double bdeu_local(const SufficientStats& stats, double ess);
/// Maximised log-likelihood minus (q (r - 1) / 2) log m. Requires m >= 1.
double bic_local(const SufficientStats& stats, std::int64_t m);

enum class Criterion { bdeu, bic, oracle };

struct ScoreConfig {
  Criterion criterion = Criterion::bdeu;
  double ess = 10.0;
  double structure_prior = 0.0;
  double oracle_pseudo_m = 1e6;
};

struct Family {
  int child = 0;
  NodeSet parents = 0;
  friend bool operator==(const Family&, const Family&) = default;
};

struct FamilyHash {
  std::size_t operator()(const Family& f) const {
    return std::hash<std::uint64_t>{}(f.parents * 0x9e3779b97f4a7c15ULL ^ static_cast<std::uint64_t>(f.child));
  }
};

/// Local scores keyed by family. Not synchronised: one cache per search run.
class LocalScoreCache {
 public:
  const double* find(const Family& f) const;
  void insert(const Family& f, double value) { map_.try_emplace(f, value); }
  std::size_t size() const { return map_.size(); }
  void clear() { map_.clear(); }

 private:
  std::unordered_map<Family, double, FamilyHash> map_;
};

/// A decomposable scoring criterion bound to its data source.
class LocalScore {
 public:
  virtual ~LocalScore() = default;
  virtual double local(int child, NodeSet parents) = 0;
  virtual int num_variables() const = 0;
  virtual double structure_prior() const { return 0.0; }
};

/// BDeu or BIC over a dataset, with family caching.
class DataScore final : public LocalScore {
 public:
  DataScore(const CategoricalDataset& data, ScoreConfig cfg);
  double local(int child, NodeSet parents) override;
  int num_variables() const override { return data_.size(); }
  double structure_prior() const override { return cfg_.structure_prior; }
  const LocalScoreCache& cache() const { return cache_; }

 private:
  const CategoricalDataset& data_;
  ScoreConfig cfg_;
  LocalScoreCache cache_;
};

/// Large-sample limit of BIC under an exact joint: pseudo_m times the
/// expected log-likelihood of the projection onto the family, minus the
/// dimension penalty.
class OracleScore final : public LocalScore {
 public:
  OracleScore(const JointTable& p, double pseudo_m);
  double local(int child, NodeSet parents) override;
  int num_variables() const override { return p_.size(); }

 private:
  const JointTable& p_;
  double pseudo_m_;
  LocalScoreCache cache_;
};

double oracle_local(const JointTable& p, int child, NodeSet parents, double pseudo_m);

/// Sum of local scores plus the structure prior.
double score(const Dag& g, LocalScore& scorer);
double score(const Dag& g, const CategoricalDataset& data, const ScoreConfig& cfg, LocalScoreCache& cache);
double oracle_score(const Dag& g, const JointTable& p, double pseudo_m);

}  // namespace gesbn
