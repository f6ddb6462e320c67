// Depth-first global search over operator-index sequences.
//
// Incremental mode keeps the state sequence of the current path and admits a
// child when every rule's cross check accepts the new state against that
// sequence. Naive mode rebuilds the sequence from the plan at every node and
// re-runs each rule's full check on every candidate child. Both visit the
// same tree in the same order.

#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "foldplan/control.hpp"
#include "foldplan/refinements.hpp"
#include "foldplan/sv_core.hpp"

namespace foldplan {

enum class Mode { kIncremental, kNaive };
enum class Outcome { kSolved, kExhausted, kTimeOut, kDepthOut };

std::string_view to_string(Mode m);
std::string_view to_string(Outcome o);
std::optional<Mode> parse_mode(std::string_view text);

struct SearchSpec {
  Refinement refinement = Refinement::kFss;
  ControlRule loop_rule;
  std::vector<ControlRule> goodness_rules;
};

SearchSpec make_search_spec(Refinement refinement, std::vector<ControlRule> goodness_rules);

// FSS: the last state meets the goal. BSS: init meets the last condition.
bool goal_test(const SearchSpec& spec, StateSeq states, const Problem& problem,
               Tally* tally = nullptr);

struct EngineConfig {
  Mode mode = Mode::kIncremental;
  double time_limit_s = 1000.0;
  // Longest plan considered; nodes at this depth are goal-tested only.
  std::optional<std::size_t> depth_limit;
};

struct SearchStats {
  std::uint64_t nodes_expanded = 0;
  std::uint64_t var_comparisons = 0;
  std::uint64_t visited_states_calls = 0;
  double wall_ms = 0.0;
  Outcome outcome = Outcome::kExhausted;
  std::optional<std::size_t> plan_len;
};

struct SearchResult {
  std::optional<Plan> plan;  // execution order
  SearchStats stats;
};

// Throws StructuralError for a malformed problem, or if the config is invalid.
SearchResult search(const Problem& problem, const SearchSpec& spec, const EngineConfig& config);

struct ModeComparison {
  SearchResult incremental;
  SearchResult naive;
  bool same_plan = false;
  bool same_nodes = false;
  bool same_outcome = false;
  // var_comparisons(incremental) / var_comparisons(naive)
  double comparison_ratio = 0.0;

  bool equivalent() const { return same_plan && same_nodes && same_outcome; }
};

// `config.mode` is ignored; both modes run with its limits.
ModeComparison compare_modes(const Problem& problem, const SearchSpec& spec,
                             const EngineConfig& config);

}  // namespace foldplan
