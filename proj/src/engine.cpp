#include "foldplan/engine.hpp"

#include <chrono>

namespace foldplan {

std::string_view to_string(Mode m) { return m == Mode::kIncremental ? "incremental" : "naive"; }

std::string_view to_string(Outcome o) {
  switch (o) {
    case Outcome::kSolved:
      return "solved";
    case Outcome::kExhausted:
      return "exhausted";
    case Outcome::kTimeOut:
      return "time_out";
    case Outcome::kDepthOut:
      return "depth_out";
  }
  return "unknown";
}

std::optional<Mode> parse_mode(std::string_view text) {
  if (text == "incremental") return Mode::kIncremental;
  if (text == "naive") return Mode::kNaive;
  return std::nullopt;
}

SearchSpec make_search_spec(Refinement refinement, std::vector<ControlRule> goodness_rules) {
  return SearchSpec{refinement, make_loop_rule(refinement), std::move(goodness_rules)};
}

bool goal_test(const SearchSpec& spec, StateSeq states, const Problem& problem, Tally* tally) {
  return spec.refinement == Refinement::kFss ? goal_satisfied(states, problem.goal, tally)
                                             : bss_goal_test(states, problem.init, tally);
}

namespace {

using Clock = std::chrono::steady_clock;

class Search {
 public:
  Search(const Problem& problem, const SearchSpec& spec, const EngineConfig& config)
      : problem_(problem),
        spec_(spec),
        config_(config),
        ctx_{problem.init, problem.goal},
        num_ops_(static_cast<int>(problem.domain->num_operators())) {}

  SearchResult run();

 private:
  struct Frame {
    int next_op = 1;
    std::vector<StateVector> seq;  // naive mode only
  };

  bool full_checks(StateSeq states);
  bool cross_checks(const StateVector& next);
  std::vector<StateVector> rebuild();
  bool out_of_time();

  const Problem& problem_;
  const SearchSpec& spec_;
  const EngineConfig& config_;
  RuleContext ctx_;
  int num_ops_;
  Tally tally_;
  Clock::time_point start_;

  std::vector<int> path_plan_;
  std::vector<StateVector> path_states_;  // incremental mode only
  std::vector<Frame> frames_;
};

bool Search::full_checks(StateSeq states) {
  if (!spec_.loop_rule.full_check(states, ctx_, &tally_)) return false;
  for (const ControlRule& rule : spec_.goodness_rules) {
    if (!rule.full_check(states, ctx_, &tally_)) return false;
  }
  return true;
}

bool Search::cross_checks(const StateVector& next) {
  const StateSeq single(&next, 1);
  if (!spec_.loop_rule.singleton_value ||
      !spec_.loop_rule.cross_check(path_states_, single, ctx_, &tally_)) {
    return false;
  }
  for (const ControlRule& rule : spec_.goodness_rules) {
    if (!rule.singleton_value || !rule.cross_check(path_states_, single, ctx_, &tally_)) {
      return false;
    }
  }
  return true;
}

std::vector<StateVector> Search::rebuild() {
  const Plan partial{path_plan_};
  auto seq = spec_.refinement == Refinement::kFss
                 ? visited_states(partial, problem_.init, *problem_.domain, &tally_)
                 : regressed_states(Plan{{path_plan_.rbegin(), path_plan_.rend()}}, problem_.goal,
                                    *problem_.domain, &tally_);
  // Every admitted child was generated from a defined sequence.
  if (!seq) throw StructuralError("search: path no longer reproduces its state sequence");
  return std::move(*seq);
}

bool Search::out_of_time() {
  const std::chrono::duration<double> elapsed = Clock::now() - start_;
  return elapsed.count() > config_.time_limit_s;
}

SearchResult Search::run() {
  start_ = Clock::now();
  SearchResult result;
  const bool naive = config_.mode == Mode::kNaive;
  const StateVector& start = spec_.refinement == Refinement::kFss ? problem_.init : problem_.goal;

  auto finish = [&](Outcome outcome) {
    result.stats.outcome = outcome;
    result.stats.var_comparisons = tally_.var_comparisons;
    result.stats.visited_states_calls = tally_.visited_states_calls;
    result.stats.wall_ms =
        std::chrono::duration<double, std::milli>(Clock::now() - start_).count();
    if (result.plan) result.stats.plan_len = result.plan->size();
    return result;
  };

  // Root guard.
  const StateVector root[] = {start};
  if (!full_checks(root)) return finish(Outcome::kExhausted);

  path_states_.push_back(start);
  frames_.emplace_back();
  bool entering = true;
  bool depth_cut = false;

  while (!frames_.empty()) {
    Frame& frame = frames_.back();
    if (entering) {
      entering = false;
      ++result.stats.nodes_expanded;
      if ((result.stats.nodes_expanded & 63) == 0 && out_of_time()) {
        return finish(Outcome::kTimeOut);
      }
      bool solved;
      if (naive) {
        frame.seq = rebuild();
        solved = goal_test(spec_, frame.seq, problem_, &tally_) && full_checks(frame.seq);
      } else {
        solved = goal_test(spec_, path_states_, problem_, &tally_);
      }
      if (solved) {
        Plan found{path_plan_};
        if (spec_.refinement == Refinement::kBss) {
          found.steps.assign(path_plan_.rbegin(), path_plan_.rend());
        }
        result.plan = std::move(found);
        return finish(Outcome::kSolved);
      }
      if (config_.depth_limit && path_plan_.size() >= *config_.depth_limit) {
        depth_cut = true;
        frame.next_op = num_ops_ + 1;
      }
    }

    const StateVector& last = naive ? frame.seq.back() : path_states_.back();
    bool descended = false;
    while (frame.next_op <= num_ops_) {
      const int index = frame.next_op++;
      auto next = successor(spec_.refinement, last, problem_.domain->op(index));
      if (!next) continue;
      bool admit;
      if (naive) {
        std::vector<StateVector> child = frame.seq;
        child.push_back(*next);
        admit = full_checks(child);
      } else {
        admit = cross_checks(*next);
      }
      if (!admit) continue;
      path_plan_.push_back(index);
      if (!naive) path_states_.push_back(std::move(*next));
      frames_.emplace_back();
      entering = true;
      descended = true;
      break;
    }
    if (descended) continue;

    frames_.pop_back();
    if (!path_plan_.empty()) path_plan_.pop_back();
    if (!naive) path_states_.pop_back();
  }
  return finish(depth_cut ? Outcome::kDepthOut : Outcome::kExhausted);
}

}  // namespace

SearchResult search(const Problem& problem, const SearchSpec& spec, const EngineConfig& config) {
  if (!(config.time_limit_s > 0.0)) throw StructuralError("time limit must be positive");
  if (config.depth_limit && *config.depth_limit == 0) {
    throw StructuralError("depth limit must be positive");
  }
  problem.domain->check_state(problem.init, "init");
  problem.domain->check_state(problem.goal, "goal");
  if (spec.refinement == Refinement::kFss && !problem.init.fully_assigned()) {
    throw StructuralError("forward search needs a fully assigned initial state");
  }
  Search engine(problem, spec, config);
  return engine.run();
}

ModeComparison compare_modes(const Problem& problem, const SearchSpec& spec,
                             const EngineConfig& config) {
  ModeComparison cmp;
  EngineConfig cfg = config;
  cfg.mode = Mode::kIncremental;
  cmp.incremental = search(problem, spec, cfg);
  cfg.mode = Mode::kNaive;
  cmp.naive = search(problem, spec, cfg);
  cmp.same_plan = cmp.incremental.plan == cmp.naive.plan;
  cmp.same_nodes = cmp.incremental.stats.nodes_expanded == cmp.naive.stats.nodes_expanded;
  cmp.same_outcome = cmp.incremental.stats.outcome == cmp.naive.stats.outcome;
  cmp.comparison_ratio =
      cmp.naive.stats.var_comparisons == 0
          ? 1.0
          : static_cast<double>(cmp.incremental.stats.var_comparisons) /
                static_cast<double>(cmp.naive.stats.var_comparisons);
  return cmp;
}

}  // namespace foldplan
