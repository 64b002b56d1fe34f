#include "gesbn/search.hpp"

#include <algorithm>
#include <cstdio>
#include <sstream>
#include <stdexcept>

#include "gesbn/graph.hpp"

namespace gesbn {

namespace {

std::vector<Neighbor> collect(std::map<Cpdag, Neighbor>&& found) {
  std::vector<Neighbor> out;
  out.reserve(found.size());
  for (auto& [cls, nb] : found) out.push_back(std::move(nb));
  return out;
}

std::string default_describe(const EdgeEdit& edit) {
  return std::string(edit.insert ? "insert " : "delete ") + std::to_string(edit.edge.from) + " -> " +
         std::to_string(edit.edge.to);
}

long long member_hint(const Cpdag& c) { return static_cast<long long>(count_extensions(c, 100000)); }

int steps_for(const SearchConfig& cfg, int n) { return cfg.max_steps > 0 ? cfg.max_steps : n * n + n; }

std::function<std::string(const EdgeEdit&)> describer(const SearchConfig& cfg) {
  if (cfg.names.empty()) return default_describe;
  return [names = cfg.names](const EdgeEdit& edit) {
    return std::string(edit.insert ? "insert " : "delete ") + names.at(edit.edge.from) + " -> " +
           names.at(edit.edge.to);
  };
}

}  // namespace

std::vector<Neighbor> forward_neighbors(const Cpdag& c) {
  const int n = c.size();
  std::map<Cpdag, Neighbor> found;
  for_each_extension(c, [&](const Dag& g) {
    for (int u = 0; u < n; ++u) {
      for (int v = 0; v < n; ++v) {
        if (u == v || g.adjacent(u, v) || g.creates_cycle(u, v)) continue;
        Cpdag next = dag_to_cpdag(g.with_edge(u, v));
        found.try_emplace(next, Neighbor{next, Phase::forward, {true, {u, v}}});
      }
    }
    return true;
  });
  return collect(std::move(found));
}

std::vector<Neighbor> backward_neighbors(const Cpdag& c) {
  std::map<Cpdag, Neighbor> found;
  for_each_extension(c, [&](const Dag& g) {
    for (const Edge& e : g.edges()) {
      Cpdag next = dag_to_cpdag(g.without_edge(e.from, e.to));
      found.try_emplace(next, Neighbor{next, Phase::backward, {false, e}});
    }
    return true;
  });
  return collect(std::move(found));
}

double ClassScorer::operator()(const Cpdag& c) {
  if (auto it = memo_.find(c); it != memo_.end()) return it->second;
  const double value = score(canonical_extension(c), local_);
  memo_.emplace(c, value);
  return value;
}

PhaseResult greedy_phase(const Cpdag& start, const NeighborFn& neighbors, ClassScorer& scorer, int max_steps,
                         const std::function<std::string(const EdgeEdit&)>& describe) {
  if (max_steps <= 0) throw std::invalid_argument("max_steps must be positive");
  const auto& name_move = describe ? describe : std::function<std::string(const EdgeEdit&)>(default_describe);

  PhaseResult out{start, {}};
  double current = scorer(start);
  out.trace.entries.push_back({Phase::start, {start, current, member_hint(start)}, "start", current});

  for (int step = 0;; ++step) {
    const std::vector<Neighbor> candidates = neighbors(out.result);
    const Neighbor* best = nullptr;
    double best_score = current;
    for (const Neighbor& nb : candidates) {
      const double s = scorer(nb.cls);
      if (s > best_score) {
        best_score = s;
        best = &nb;
      }
    }
    if (best == nullptr) break;
    if (step == max_steps) {
      out.trace.truncated = true;
      break;
    }
    out.trace.entries.push_back(
        {best->direction, {best->cls, best_score, member_hint(best->cls)}, name_move(best->edit), current});
    out.result = best->cls;
    current = best_score;
  }
  return out;
}

SearchResult fes(const Cpdag& start, LocalScore& scorer, const SearchConfig& cfg) {
  ClassScorer cs(scorer);
  auto phase = greedy_phase(start, forward_neighbors, cs, steps_for(cfg, start.size()), describer(cfg));
  return {phase.result, phase.trace.entries.back().state.score, std::move(phase.trace)};
}

SearchResult bes(const Cpdag& start, LocalScore& scorer, const SearchConfig& cfg) {
  ClassScorer cs(scorer);
  auto phase = greedy_phase(start, backward_neighbors, cs, steps_for(cfg, start.size()), describer(cfg));
  return {phase.result, phase.trace.entries.back().state.score, std::move(phase.trace)};
}

SearchResult ges(LocalScore& scorer, const SearchConfig& cfg) {
  const int n = scorer.num_variables();
  ClassScorer cs(scorer);
  auto forward = greedy_phase(empty_class(n), forward_neighbors, cs, steps_for(cfg, n), describer(cfg));
  auto backward = greedy_phase(forward.result, backward_neighbors, cs, steps_for(cfg, n), describer(cfg));

  SearchTrace trace = std::move(forward.trace);
  // The backward phase starts where the forward phase stopped.
  trace.entries.insert(trace.entries.end(), backward.trace.entries.begin() + 1, backward.trace.entries.end());
  trace.truncated = trace.truncated || backward.trace.truncated;
  return {backward.result, trace.entries.back().state.score, std::move(trace)};
}

SearchResult uges(const Cpdag& start, LocalScore& scorer, const SearchConfig& cfg) {
  ClassScorer cs(scorer);
  auto both = [](const Cpdag& c) {
    auto out = forward_neighbors(c);
    auto back = backward_neighbors(c);
    out.insert(out.end(), std::make_move_iterator(back.begin()), std::make_move_iterator(back.end()));
    std::sort(out.begin(), out.end(), [](const Neighbor& a, const Neighbor& b) { return a.cls < b.cls; });
    return out;
  };
  auto phase = greedy_phase(start, both, cs, steps_for(cfg, start.size()), describer(cfg));
  return {phase.result, phase.trace.entries.back().state.score, std::move(phase.trace)};
}

Cpdag empty_class(int n) { return Cpdag(n); }

Cpdag complete_class(int n) { return dag_to_cpdag(Dag::complete(n)); }

SearchResult run_search(LocalScore& scorer, const SearchConfig& cfg) {
  const int n = scorer.num_variables();
  Cpdag start;
  switch (cfg.start) {
    case StartKind::empty:
      start = empty_class(n);
      break;
    case StartKind::complete:
      start = complete_class(n);
      break;
    case StartKind::explicit_class:
      if (!cfg.start_class) throw std::invalid_argument("explicit start requested without a class");
      if (cfg.start_class->size() != n) throw std::invalid_argument("start class has the wrong node count");
      start = *cfg.start_class;
      break;
  }
  switch (cfg.algorithm) {
    case Algorithm::fes:
      return fes(start, scorer, cfg);
    case Algorithm::bes:
      return bes(start, scorer, cfg);
    case Algorithm::ges:
      if (cfg.start != StartKind::empty) {
        // GES with a non-empty start: forward from the start, then backward.
        auto forward = fes(start, scorer, cfg);
        auto backward = bes(forward.result, scorer, cfg);
        forward.trace.entries.insert(forward.trace.entries.end(), backward.trace.entries.begin() + 1,
                                     backward.trace.entries.end());
        forward.trace.truncated = forward.trace.truncated || backward.trace.truncated;
        return {backward.result, backward.score, std::move(forward.trace)};
      }
      return ges(scorer, cfg);
    case Algorithm::uges:
      return uges(start, scorer, cfg);
  }
  throw std::logic_error("unknown algorithm");
}

std::string to_string(Phase p) {
  switch (p) {
    case Phase::start:
      return "start";
    case Phase::forward:
      return "forward";
    case Phase::backward:
      return "backward";
  }
  return "?";
}

std::string format_trace(const SearchTrace& trace) {
  std::ostringstream out;
  char buf[64];
  for (const TraceEntry& e : trace.entries) {
    out << to_string(e.phase) << '\t' << e.move << '\t';
    std::snprintf(buf, sizeof buf, "%.17g", e.score_before);
    out << buf << '\t';
    std::snprintf(buf, sizeof buf, "%.17g", e.state.score);
    out << buf << '\n';
  }
  if (trace.truncated) out << "truncated\n";
  return out.str();
}

}  // namespace gesbn
