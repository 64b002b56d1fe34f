#pragma once

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "gesbn/cpdag.hpp"
#include "gesbn/dag.hpp"
#include "gesbn/scoring.hpp"

namespace gesbn {

enum class Phase { start, forward, backward };
enum class Algorithm { fes, bes, ges, uges };
enum class StartKind { empty, complete, explicit_class };

/// Single-edge edit applied to a member DAG to reach a neighbouring class.
struct EdgeEdit {
  bool insert = true;
  Edge edge;
};

struct Neighbor {
  Cpdag cls;
  Phase direction = Phase::forward;
  EdgeEdit edit;
};

/// Classes reachable by adding one edge to some member DAG, sorted canonically.
std::vector<Neighbor> forward_neighbors(const Cpdag& c);
/// Classes reachable by deleting one edge from some member DAG, sorted canonically.
std::vector<Neighbor> backward_neighbors(const Cpdag& c);

struct SearchState {
  Cpdag cls;
  double score = 0.0;
  long long member_count_hint = 0;
};

struct TraceEntry {
  Phase phase = Phase::start;
  SearchState state;
  std::string move;
  double score_before = 0.0;
};

struct SearchTrace {
  std::vector<TraceEntry> entries;
  bool truncated = false;
};

/// Scores whole classes through their canonical extension and memoises by class.
class ClassScorer {
 public:
  explicit ClassScorer(LocalScore& local) : local_(local) {}
  double operator()(const Cpdag& c);
  int num_variables() const { return local_.num_variables(); }

 private:
  LocalScore& local_;
  std::map<Cpdag, double> memo_;
};

using NeighborFn = std::function<std::vector<Neighbor>(const Cpdag&)>;

struct PhaseResult {
  Cpdag result;
  SearchTrace trace;
};

/// Hill climbing over classes: move to the best neighbour while it strictly
/// improves on the current score. Equal-best neighbours resolve to the
/// smallest class in canonical order. Stops after `max_steps` moves with
/// the trace marked truncated.
PhaseResult greedy_phase(const Cpdag& start, const NeighborFn& neighbors, ClassScorer& scorer,
                         int max_steps, const std::function<std::string(const EdgeEdit&)>& describe = {});

struct SearchConfig {
  Algorithm algorithm = Algorithm::ges;
  StartKind start = StartKind::empty;
  std::optional<Cpdag> start_class;
  ScoreConfig score;
  /// Moves allowed per phase; 0 selects n^2 + n.
  int max_steps = 0;
  /// Names used in move descriptions; indices when empty.
  std::vector<std::string> names;
};

struct SearchResult {
  Cpdag result;
  double score = 0.0;
  SearchTrace trace;
};

SearchResult fes(const Cpdag& start, LocalScore& scorer, const SearchConfig& cfg);
SearchResult bes(const Cpdag& start, LocalScore& scorer, const SearchConfig& cfg);
/// Forward phase from the empty class, then backward from its maximum.
SearchResult ges(LocalScore& scorer, const SearchConfig& cfg);
SearchResult uges(const Cpdag& start, LocalScore& scorer, const SearchConfig& cfg);

/// Dispatches on cfg.algorithm and cfg.start.
SearchResult run_search(LocalScore& scorer, const SearchConfig& cfg);

Cpdag empty_class(int n);
Cpdag complete_class(int n);

std::string to_string(Phase p);
/// One line per move: phase, move, score before, score after (tab separated).
std::string format_trace(const SearchTrace& trace);

}  // namespace gesbn
