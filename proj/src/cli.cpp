#include "gesbn/cli.hpp"

#include <CLI11.hpp>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>

#include "gesbn/errors.hpp"
#include "gesbn/experiment.hpp"
#include "gesbn/graph.hpp"
#include "gesbn/io.hpp"
#include "gesbn/oracle.hpp"
#include "gesbn/scoring.hpp"
#include "gesbn/search.hpp"

namespace gesbn {

namespace {

const std::map<std::string, Criterion> kCriteria{
    {"bdeu", Criterion::bdeu}, {"bic", Criterion::bic}, {"oracle", Criterion::oracle}};
const std::map<std::string, Algorithm> kAlgorithms{
    {"ges", Algorithm::ges}, {"uges", Algorithm::uges}, {"fes", Algorithm::fes}, {"bes", Algorithm::bes}};

std::string format_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

GoldStandard load_model(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw FormatError("cannot open '" + path + "'");
  return read_model(in);
}

CategoricalDataset load_dataset(const std::string& path, const std::string& schema_path, bool infer) {
  std::optional<VariableSpec> spec;
  if (!schema_path.empty()) {
    std::ifstream s(schema_path);
    if (!s) throw FormatError("cannot open '" + schema_path + "'");
    spec = read_schema(s);
  } else if (!infer) {
    throw FormatError("pass --schema or --infer-cards to fix state counts");
  }
  std::ifstream in(path);
  if (!in) throw FormatError("cannot open '" + path + "'");
  return read_dataset_csv(in, spec);
}

// Parses "A,B;C|D,E" into (x, y, z) node sets.
CiStatement parse_ci_query(const std::string& text, const VariableSpec& spec) {
  auto parse_set = [&](const std::string& part) {
    NodeSet s = 0;
    std::stringstream ss(part);
    std::string name;
    while (std::getline(ss, name, ',')) {
      const auto first = name.find_first_not_of(' ');
      if (first == std::string::npos) continue;
      const auto last = name.find_last_not_of(' ');
      s |= singleton(spec.index_of(name.substr(first, last - first + 1)));
    }
    return s;
  };
  const auto semi = text.find(';');
  if (semi == std::string::npos) throw FormatError("CI query must look like 'X;Y|Z'");
  const auto bar = text.find('|', semi);
  CiStatement q;
  q.x = parse_set(text.substr(0, semi));
  q.y = parse_set(text.substr(semi + 1, bar == std::string::npos ? std::string::npos : bar - semi - 1));
  q.z = bar == std::string::npos ? 0 : parse_set(text.substr(bar + 1));
  if (q.x == 0 || q.y == 0) throw FormatError("CI query needs non-empty X and Y");
  return q;
}

std::string set_names(NodeSet s, const VariableSpec& spec) {
  std::string out = "{";
  bool first = true;
  for (int v : members(s)) {
    if (!first) out += ",";
    out += spec.name(v);
    first = false;
  }
  return out + "}";
}

struct GenerateArgs {
  std::string gold;
  std::string model;
  std::size_t samples = 0;
  std::uint64_t seed = 1;
  double ess = 10.0;
  std::string out;
};

int cmd_generate(const GenerateArgs& a, std::ostream& out) {
  GoldStandard model;
  if (!a.model.empty()) {
    model = load_model(a.model);
  } else {
    model = gold_template(parse_gold(a.gold.empty() ? "w" : a.gold));
  }
  if (!model.bn.has_parameters()) model = with_sampled_parameters(model, a.ess, {a.seed, 0});
  const CategoricalDataset data = observed_sample(model, a.samples, {a.seed, 1});

  std::ostringstream model_text;
  std::ostringstream data_text;
  std::ostringstream schema_text;
  write_model(model_text, model);
  write_dataset_csv(data_text, data);
  write_schema(schema_text, data.spec());
  write_file(a.out + ".model.json", model_text.str());
  write_file(a.out + ".csv", data_text.str());
  write_file(a.out + ".schema.json", schema_text.str());
  out << "wrote " << a.out << ".model.json, " << a.out << ".csv (" << data.rows() << " records), " << a.out
      << ".schema.json\n";
  return 0;
}

struct LearnArgs {
  std::string data;
  std::string schema;
  bool infer = false;
  std::string score = "bdeu";
  double ess = 10.0;
  double pseudo_m = 1e6;
  std::string joint;
  std::string algorithm = "ges";
  std::string start = "empty";
  std::string start_file;
  int max_steps = 0;
  std::string out;
};

int cmd_learn(const LearnArgs& a, std::ostream& out) {
  SearchConfig cfg;
  cfg.algorithm = kAlgorithms.at(a.algorithm);
  cfg.score.criterion = kCriteria.at(a.score);
  cfg.score.ess = a.ess;
  cfg.score.oracle_pseudo_m = a.pseudo_m;
  cfg.max_steps = a.max_steps;

  std::optional<CategoricalDataset> data;
  std::optional<JointTable> margin;
  std::unique_ptr<LocalScore> scorer;
  VariableSpec spec;
  if (cfg.score.criterion == Criterion::oracle) {
    if (a.joint.empty()) throw FormatError("--score oracle requires --joint <model file>");
    GoldStandard model = load_model(a.joint);
    if (!model.bn.has_parameters()) throw FormatError("oracle scoring needs a model with cpts");
    margin = observed_margin(model);
    spec = margin->spec();
    scorer = std::make_unique<OracleScore>(*margin, a.pseudo_m);
  } else {
    if (a.data.empty()) throw FormatError("--data is required unless --score oracle");
    data = load_dataset(a.data, a.schema, a.infer);
    spec = data->spec();
    scorer = std::make_unique<DataScore>(*data, cfg.score);
  }
  cfg.names = spec.names();

  if (a.start == "empty") {
    cfg.start = StartKind::empty;
  } else if (a.start == "complete") {
    cfg.start = StartKind::complete;
  } else {
    cfg.start = StartKind::explicit_class;
    cfg.start_class = parse_class(read_file(a.start_file), spec);
  }

  const SearchResult result = run_search(*scorer, cfg);
  const std::string encoded = encode_class(result.result, spec);
  if (!a.out.empty()) {
    write_file(a.out + ".class", encoded);
    write_file(a.out + ".trace", format_trace(result.trace));
  }
  out << encoded;
  out << "# score " << format_double(result.score) << (result.trace.truncated ? " (truncated)" : "") << '\n';
  return 0;
}

struct ScoreArgs {
  std::string data;
  std::string schema;
  bool infer = false;
  std::string graph;
  std::string score = "bdeu";
  double ess = 10.0;
  double pseudo_m = 1e6;
  std::string joint;
};

int cmd_score(const ScoreArgs& a, std::ostream& out) {
  ScoreConfig cfg;
  cfg.criterion = kCriteria.at(a.score);
  cfg.ess = a.ess;
  cfg.oracle_pseudo_m = a.pseudo_m;
  if (cfg.criterion == Criterion::oracle) {
    if (a.joint.empty()) throw FormatError("--score oracle requires --joint <model file>");
    const JointTable margin = observed_margin(load_model(a.joint));
    const Dag g = canonical_extension(parse_class(read_file(a.graph), margin.spec()));
    out << format_double(oracle_score(g, margin, a.pseudo_m)) << '\n';
    return 0;
  }
  const CategoricalDataset data = load_dataset(a.data, a.schema, a.infer);
  const Dag g = canonical_extension(parse_class(read_file(a.graph), data.spec()));
  LocalScoreCache cache;
  out << format_double(score(g, data, cfg, cache)) << '\n';
  return 0;
}

struct OracleArgs {
  std::string model;
  std::string gold;
  std::uint64_t seed = 1;
  double ess = 10.0;
  std::vector<std::string> ci;
  std::string dump_joint;
};

int cmd_oracle(const OracleArgs& a, std::ostream& out) {
  GoldStandard model;
  if (!a.model.empty()) {
    model = load_model(a.model);
  } else {
    model = gold_template(parse_gold(a.gold.empty() ? "w" : a.gold));
  }
  if (!model.bn.has_parameters()) model = with_sampled_parameters(model, a.ess, {a.seed, 0});
  const JointTable margin = observed_margin(model);
  const VariableSpec& spec = margin.spec();
  if (spec.size() > 4) throw FormatError("oracle reports support at most 4 observed variables");

  const auto inclusion = inclusion_optimal_classes(margin);
  const auto parameter = parameter_optimal_classes(margin);
  out << "observed: " << set_names(all_nodes(spec.size()), spec) << '\n';
  out << "inclusion-optimal classes: " << inclusion.size() << '\n';
  for (const Cpdag& c : inclusion) {
    const bool param_opt = std::find(parameter.begin(), parameter.end(), c) != parameter.end();
    out << "class parameters=" << parameter_count(canonical_extension(c), spec)
        << (param_opt ? " parameter-optimal" : "") << '\n';
    std::istringstream lines(encode_class(c, spec));
    for (std::string line; std::getline(lines, line);) out << "  " << line << '\n';
  }
  const CompositionResult comp = composition_holds(margin);
  out << "composition: " << (comp.holds ? "holds" : "fails");
  if (comp.counterexample) {
    out << " counterexample " << set_names(comp.counterexample->x, spec) << " ; "
        << set_names(comp.counterexample->y, spec) << " | " << set_names(comp.counterexample->z, spec);
  }
  out << '\n';
  for (const std::string& q : a.ci) {
    const CiStatement s = parse_ci_query(q, spec);
    out << "ci " << set_names(s.x, spec) << " ; " << set_names(s.y, spec) << " | " << set_names(s.z, spec) << " : "
        << (ci_holds(margin, s.x, s.y, s.z) ? "independent" : "dependent") << '\n';
  }
  if (!a.dump_joint.empty()) {
    std::ostringstream joint;
    write_joint_csv(joint, margin);
    write_file(a.dump_joint, joint.str());
  }
  return 0;
}

struct ExperimentArgs {
  std::string gold = "w";
  std::vector<std::size_t> sizes;
  int replicates = 0;
  bool paper_scale = false;
  std::uint64_t seed = 1;
  int workers = 1;
  std::string score = "bdeu";
  double ess = 10.0;
  std::string algorithm = "ges";
  bool timing = false;
  std::string save_models;
  std::string out;
};

int cmd_experiment(const ExperimentArgs& a, std::ostream& out) {
  const GoldId gold = parse_gold(a.gold);
  ExperimentPlan plan = a.paper_scale ? paper_plan(gold) : desk_plan(gold);
  if (!a.sizes.empty()) plan.sample_sizes = a.sizes;
  if (a.replicates > 0) plan.replicates = a.replicates;
  plan.base_seed = a.seed;
  plan.workers = a.workers;
  plan.score.criterion = kCriteria.at(a.score);
  plan.score.ess = a.ess;
  plan.algorithm = kAlgorithms.at(a.algorithm);
  plan.timing = a.timing;
  plan.model_dir = a.save_models;

  const auto rows = run_experiment(plan);
  std::ostringstream csv;
  write_results_csv(csv, rows);
  if (a.out.empty()) {
    out << csv.str();
  } else {
    write_file(a.out, csv.str());
    for (const SizeSummary& s : summarize(rows)) {
      out << "m=" << s.m << " inclusion_optimal=" << s.inclusion_fraction()
          << " parameter_optimal=" << s.parameter_fraction() << " errors=" << s.errors << '\n';
    }
  }
  return 0;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Greedy equivalence search for discrete Bayesian networks", "gesbn"};
  app.require_subcommand(1);

  GenerateArgs gen;
  auto* generate = app.add_subcommand("generate", "Sample a gold-standard model and a dataset over its observables");
  generate->add_option("--gold", gen.gold, "w or cycle4")->check(CLI::IsMember({"w", "w_structure", "cycle4", "four_cycle"}));
  generate->add_option("--model", gen.model, "Model JSON (parameters sampled when it has no cpts)");
  generate->add_option("-m,--samples", gen.samples, "Number of observed records")->required();
  generate->add_option("--seed", gen.seed, "Base seed");
  generate->add_option("--ess", gen.ess, "Equivalent sample size of the parameter sampler");
  generate->add_option("--out", gen.out, "Output prefix")->required();

  LearnArgs learn_args;
  auto* learn = app.add_subcommand("learn", "Run a greedy equivalence search");
  learn->add_option("--data", learn_args.data, "Dataset CSV");
  learn->add_option("--schema", learn_args.schema, "Schema sidecar JSON");
  learn->add_flag("--infer-cards", learn_args.infer, "Infer state counts as max + 1");
  learn->add_option("--score", learn_args.score)->check(CLI::IsMember({"bdeu", "bic", "oracle"}));
  learn->add_option("--ess", learn_args.ess, "BDeu equivalent sample size")->check(CLI::PositiveNumber);
  learn->add_option("--pseudo-m", learn_args.pseudo_m, "Sample size of the oracle score")->check(CLI::PositiveNumber);
  learn->add_option("--joint", learn_args.joint, "Model JSON whose exact margin the oracle score uses");
  learn->add_option("--algorithm", learn_args.algorithm)->check(CLI::IsMember({"ges", "uges", "fes", "bes"}));
  learn->add_option("--start", learn_args.start)->check(CLI::IsMember({"empty", "complete", "file"}));
  learn->add_option("--start-file", learn_args.start_file, "Start class when --start file");
  learn->add_option("--max-steps", learn_args.max_steps, "Moves per phase (0: n^2 + n)");
  learn->add_option("--out", learn_args.out, "Output prefix for .class and .trace");

  ScoreArgs score_args;
  auto* score_cmd = app.add_subcommand("score", "Score one structure");
  score_cmd->add_option("--data", score_args.data, "Dataset CSV");
  score_cmd->add_option("--schema", score_args.schema, "Schema sidecar JSON");
  score_cmd->add_flag("--infer-cards", score_args.infer, "Infer state counts as max + 1");
  score_cmd->add_option("--graph", score_args.graph, "DAG or class encoding")->required();
  score_cmd->add_option("--score", score_args.score)->check(CLI::IsMember({"bdeu", "bic", "oracle"}));
  score_cmd->add_option("--ess", score_args.ess)->check(CLI::PositiveNumber);
  score_cmd->add_option("--pseudo-m", score_args.pseudo_m)->check(CLI::PositiveNumber);
  score_cmd->add_option("--joint", score_args.joint, "Model JSON for the oracle score");

  OracleArgs oracle_args;
  auto* oracle = app.add_subcommand("oracle", "Exact optimal classes and independence facts of a model");
  oracle->add_option("--model", oracle_args.model, "Model JSON");
  oracle->add_option("--gold", oracle_args.gold, "w or cycle4 (when no --model)");
  oracle->add_option("--seed", oracle_args.seed, "Parameter seed for models without cpts");
  oracle->add_option("--ess", oracle_args.ess, "Equivalent sample size of the parameter sampler");
  oracle->add_option("--ci", oracle_args.ci, "Independence query 'X;Y|Z' (comma-separated sets)");
  oracle->add_option("--dump-joint", oracle_args.dump_joint, "Write the observed margin as CSV");

  ExperimentArgs exp_args;
  auto* experiment = app.add_subcommand("experiment", "Replicated GES runs against the oracle");
  experiment->add_option("--gold", exp_args.gold)->check(CLI::IsMember({"w", "w_structure", "cycle4", "four_cycle"}));
  experiment->add_option("--sizes", exp_args.sizes, "Sample sizes")->delimiter(',');
  experiment->add_option("--replicates", exp_args.replicates, "Replicates per size");
  experiment->add_flag("--paper-scale", exp_args.paper_scale, "100 replicates, m up to 655360");
  experiment->add_option("--seed", exp_args.seed, "Base seed");
  experiment->add_option("--workers", exp_args.workers, "Worker threads")->check(CLI::PositiveNumber);
  experiment->add_option("--score", exp_args.score)->check(CLI::IsMember({"bdeu", "bic"}));
  experiment->add_option("--ess", exp_args.ess)->check(CLI::PositiveNumber);
  experiment->add_option("--algorithm", exp_args.algorithm)->check(CLI::IsMember({"ges", "uges", "fes", "bes"}));
  experiment->add_flag("--timing", exp_args.timing, "Fill the millis column with wall time");
  experiment->add_option("--save-models", exp_args.save_models, "Directory for per-replicate model files");
  experiment->add_option("--out", exp_args.out, "Results CSV path (stdout when absent)");

  try {
    app.parse(std::vector<std::string>(args.rbegin(), args.rend()));
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err);
  }

  try {
    if (*generate) return cmd_generate(gen, out);
    if (*learn) return cmd_learn(learn_args, out);
    if (*score_cmd) return cmd_score(score_args, out);
    if (*oracle) return cmd_oracle(oracle_args, out);
    if (*experiment) return cmd_experiment(exp_args, out);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
  return 1;
}

}  // namespace gesbn
