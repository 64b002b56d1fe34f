#include "gesbn/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "gesbn/graph.hpp"
#include "gesbn/io.hpp"
#include "gesbn/oracle.hpp"

namespace gesbn {

std::string to_string(GoldId g) { return g == GoldId::w_structure ? "w" : "cycle4"; }

GoldId parse_gold(const std::string& s) {
  if (s == "w" || s == "w_structure") return GoldId::w_structure;
  if (s == "cycle4" || s == "four_cycle") return GoldId::four_cycle;
  throw std::invalid_argument("unknown gold standard '" + s + "'");
}

GoldStandard gold_template(GoldId g) { return g == GoldId::w_structure ? gold_w() : gold_four_cycle(); }

std::vector<std::size_t> doubling_sizes(std::size_t first, std::size_t last) {
  if (first == 0) throw std::invalid_argument("sample sizes must be positive");
  std::vector<std::size_t> out;
  for (std::size_t m = first; m <= last; m *= 2) out.push_back(m);
  return out;
}

ExperimentPlan desk_plan(GoldId g) {
  ExperimentPlan plan;
  plan.gold = g;
  plan.sample_sizes = doubling_sizes(10, 163840);
  plan.replicates = 50;
  return plan;
}

ExperimentPlan paper_plan(GoldId g) {
  ExperimentPlan plan = desk_plan(g);
  plan.sample_sizes = doubling_sizes(10, 655360);
  plan.replicates = 100;
  return plan;
}

void validate(const ExperimentPlan& plan) {
  if (plan.sample_sizes.empty()) throw std::invalid_argument("plan has no sample sizes");
  for (std::size_t i = 0; i < plan.sample_sizes.size(); ++i) {
    if (plan.sample_sizes[i] == 0) throw std::invalid_argument("sample sizes must be positive");
    if (i > 0 && plan.sample_sizes[i] <= plan.sample_sizes[i - 1]) {
      throw std::invalid_argument("sample sizes must be strictly increasing");
    }
  }
  if (plan.replicates < 1) throw std::invalid_argument("replicates must be at least 1");
  if (plan.workers < 1) throw std::invalid_argument("workers must be at least 1");
  if (plan.score.criterion == Criterion::oracle) {
    throw std::invalid_argument("experiments learn from sampled data; use bdeu or bic");
  }
}

std::uint64_t replicate_seed(std::uint64_t base_seed, std::size_t m, int replicate) {
  return base_seed ^ splitmix64(splitmix64(static_cast<std::uint64_t>(m)) ^ static_cast<std::uint64_t>(replicate));
}

std::string to_string(Outcome o) {
  switch (o) {
    case Outcome::parameter_optimal:
      return "parameter_optimal";
    case Outcome::inclusion_optimal_only:
      return "inclusion_optimal_only";
    case Outcome::not_inclusion_optimal:
      return "not_inclusion_optimal";
    case Outcome::error:
      return "error";
  }
  return "error";
}

Outcome classify(const Cpdag& learned, const std::vector<Cpdag>& inclusion_optimal,
                 const std::vector<Cpdag>& parameter_optimal) {
  auto in = [&](const std::vector<Cpdag>& set) { return std::find(set.begin(), set.end(), learned) != set.end(); };
  if (!in(inclusion_optimal)) return Outcome::not_inclusion_optimal;
  return in(parameter_optimal) ? Outcome::parameter_optimal : Outcome::inclusion_optimal_only;
}

GoldStandard replicate_model(const ExperimentPlan& plan, std::size_t m, int replicate) {
  const std::uint64_t seed = replicate_seed(plan.base_seed, m, replicate);
  return with_sampled_parameters(gold_template(plan.gold), plan.parameter_ess, {seed, 0});
}

ExperimentRow run_replicate(const ExperimentPlan& plan, std::size_t m, int replicate) {
  const auto started = std::chrono::steady_clock::now();
  ExperimentRow row{plan.gold, m, replicate, Outcome::error, {}, 0};
  try {
    const std::uint64_t seed = replicate_seed(plan.base_seed, m, replicate);
    const GoldStandard model = replicate_model(plan, m, replicate);
    if (!plan.model_dir.empty()) {
      std::ostringstream buf;
      write_model(buf, model);
      const auto path = std::filesystem::path(plan.model_dir) /
                        (to_string(plan.gold) + "_m" + std::to_string(m) + "_r" + std::to_string(replicate) + ".json");
      write_file(path.string(), buf.str());
    }

    const JointTable margin = observed_margin(model);
    const auto inclusion = inclusion_optimal_classes(margin);
    const auto parameter = parameter_optimal_classes(margin);

    const CategoricalDataset data = observed_sample(model, m, {seed, 1});
    DataScore scorer(data, plan.score);
    SearchConfig cfg;
    cfg.algorithm = plan.algorithm;
    cfg.score = plan.score;
    const SearchResult result = run_search(scorer, cfg);

    row.outcome = classify(result.result, inclusion, parameter);
    row.cls = encode_class_compact(result.result, data.spec());
  } catch (const std::exception& e) {
    row.outcome = Outcome::error;
    row.cls = e.what();
  }
  if (plan.timing) {
    row.millis = std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - started)
                     .count();
  }
  return row;
}

std::vector<ExperimentRow> run_experiment(const ExperimentPlan& plan) {
  validate(plan);
  if (!plan.model_dir.empty()) std::filesystem::create_directories(plan.model_dir);

  struct Job {
    std::size_t m;
    int replicate;
  };
  std::vector<Job> jobs;
  for (std::size_t m : plan.sample_sizes) {
    for (int r = 0; r < plan.replicates; ++r) jobs.push_back({m, r});
  }
  std::vector<ExperimentRow> rows(jobs.size());
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t i = next++; i < jobs.size(); i = next++) rows[i] = run_replicate(plan, jobs[i].m, jobs[i].replicate);
  };
  const int workers = std::min<int>(plan.workers, static_cast<int>(jobs.size()));
  if (workers <= 1) {
    work();
  } else {
    std::vector<std::jthread> pool;
    for (int w = 0; w < workers; ++w) pool.emplace_back(work);
  }
  return rows;
}

std::vector<SizeSummary> summarize(const std::vector<ExperimentRow>& rows) {
  std::map<std::size_t, SizeSummary> by_size;
  for (const ExperimentRow& row : rows) {
    SizeSummary& s = by_size[row.m];
    s.m = row.m;
    ++s.rows;
    if (row.outcome == Outcome::error) ++s.errors;
    if (row.outcome == Outcome::parameter_optimal || row.outcome == Outcome::inclusion_optimal_only) {
      ++s.inclusion_optimal;
    }
    if (row.outcome == Outcome::parameter_optimal) ++s.parameter_optimal;
  }
  std::vector<SizeSummary> out;
  for (auto& [m, s] : by_size) out.push_back(s);
  return out;
}

void write_results_csv(std::ostream& out, const std::vector<ExperimentRow>& rows) {
  out << "gold,m,replicate,outcome,class,millis\n";
  for (const ExperimentRow& row : rows) {
    std::string cls = row.cls;
    std::replace(cls.begin(), cls.end(), ',', ' ');
    std::replace(cls.begin(), cls.end(), '\n', ' ');
    out << to_string(row.gold) << ',' << row.m << ',' << row.replicate << ',' << to_string(row.outcome) << ',' << cls
        << ',' << row.millis << '\n';
  }
  out << "#summary,m,rows,errors,inclusion_optimal_fraction,parameter_optimal_fraction\n";
  char buf[64];
  for (const SizeSummary& s : summarize(rows)) {
    std::snprintf(buf, sizeof buf, "%.6f,%.6f", s.inclusion_fraction(), s.parameter_fraction());
    out << "#summary," << s.m << ',' << s.rows << ',' << s.errors << ',' << buf << '\n';
  }
}

}  // namespace gesbn
