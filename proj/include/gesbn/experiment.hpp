#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "gesbn/cpdag.hpp"
#include "gesbn/datagen.hpp"
#include "gesbn/scoring.hpp"
#include "gesbn/search.hpp"

namespace gesbn {

enum class GoldId { w_structure, four_cycle };

std::string to_string(GoldId g);
/// Accepts "w" / "w_structure" and "cycle4" / "four_cycle".
GoldId parse_gold(const std::string& s);
GoldStandard gold_template(GoldId g);

struct ExperimentPlan {
  GoldId gold = GoldId::w_structure;
  std::vector<std::size_t> sample_sizes;
  int replicates = 50;
  std::uint64_t base_seed = 1;
  ScoreConfig score;
  Algorithm algorithm = Algorithm::ges;
  double parameter_ess = 10.0;
  int workers = 1;
  /// Record wall time per replicate. Off keeps the results file reproducible.
  bool timing = false;
  /// When non-empty, every replicate's generative model is written here.
  std::string model_dir;
};

/// m = first, 2 first, ... up to and including last.
std::vector<std::size_t> doubling_sizes(std::size_t first, std::size_t last);
/// 50 replicates, m = 10 ... 163840.
ExperimentPlan desk_plan(GoldId g);
/// 100 replicates, m = 10 ... 655360.
ExperimentPlan paper_plan(GoldId g);
void validate(const ExperimentPlan& plan);

/// base_seed xor splitmix64(splitmix64(m) xor replicate). Parameters use
/// stream 0 of this seed and the dataset stream 1.
std::uint64_t replicate_seed(std::uint64_t base_seed, std::size_t m, int replicate);

enum class Outcome { parameter_optimal, inclusion_optimal_only, not_inclusion_optimal, error };
std::string to_string(Outcome o);

struct ExperimentRow {
  GoldId gold = GoldId::w_structure;
  std::size_t m = 0;
  int replicate = 0;
  Outcome outcome = Outcome::error;
  /// Compact class encoding, or the error message for failed replicates.
  std::string cls;
  long long millis = 0;
};

Outcome classify(const Cpdag& learned, const std::vector<Cpdag>& inclusion_optimal,
                 const std::vector<Cpdag>& parameter_optimal);

/// The generative model a replicate uses (parameters drawn from its seed).
GoldStandard replicate_model(const ExperimentPlan& plan, std::size_t m, int replicate);
ExperimentRow run_replicate(const ExperimentPlan& plan, std::size_t m, int replicate);
/// Rows ordered by (m, replicate) whatever the worker count.
std::vector<ExperimentRow> run_experiment(const ExperimentPlan& plan);

struct SizeSummary {
  std::size_t m = 0;
  int rows = 0;
  int errors = 0;
  int inclusion_optimal = 0;
  int parameter_optimal = 0;
  double inclusion_fraction() const { return rows == 0 ? 0.0 : static_cast<double>(inclusion_optimal) / rows; }
  double parameter_fraction() const { return rows == 0 ? 0.0 : static_cast<double>(parameter_optimal) / rows; }
};

std::vector<SizeSummary> summarize(const std::vector<ExperimentRow>& rows);

/// Header gold,m,replicate,outcome,class,millis; then one line per row; then
/// '#'-prefixed summary lines with per-size fractions.
void write_results_csv(std::ostream& out, const std::vector<ExperimentRow>& rows);

}  // namespace gesbn
