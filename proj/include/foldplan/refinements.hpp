// Progression (FSS) and regression (BSS) state-space refinements.

#pragma once

#include <optional>
#include <string_view>
#include <utility>
#include <vector>

#include "foldplan/sv_core.hpp"

namespace foldplan {

enum class Refinement { kFss, kBss };

std::string_view to_string(Refinement r);
std::optional<Refinement> parse_refinement(std::string_view text);

// A partial plan together with its maintained state sequence. For FSS the
// sequence runs forward from init; for BSS it holds the regressed conditions
// starting at the goal, and `plan` lists operators in the order they were
// regressed (last-executed first).
struct SearchNode {
  Plan plan;
  std::vector<StateVector> states;
  StateVector last_state;
};

SearchNode root_node(const Problem& problem, Refinement refinement);

// The plan in execution order.
Plan emitted_plan(const SearchNode& node, Refinement refinement);

// Loop check: no later state is weaker than an earlier one. False on the
// empty sequence, true on a singleton.
bool fss_no_moves_back(StateSeq states, Tally* tally = nullptr);
bool fss_cross_no_moves_back(StateSeq prefix, StateSeq suffix, Tally* tally = nullptr);

std::vector<std::pair<int, StateVector>> fss_children(const SearchNode& node,
                                                      const Problem& problem);

// Weakest condition that, once op executes, guarantees cond. Empty when op
// achieves nothing cond asks for, or would clobber part of it.
std::optional<StateVector> regress(const StateVector& cond, const Operator& op);

// Regressed conditions [goal, regress(goal, op_k), ...] for a plan given in
// execution order; empty if some step is irrelevant or inconsistent.
std::optional<std::vector<StateVector>> regressed_states(const Plan& plan, const StateVector& goal,
                                                         const Domain& domain,
                                                         Tally* tally = nullptr);

bool bss_goal_test(StateSeq states, const StateVector& init, Tally* tally = nullptr);

// Regression loop check: a later condition that demands at least everything
// an earlier one demands closes a loop.
bool bss_no_moves_back(StateSeq states, Tally* tally = nullptr);
bool bss_cross_no_moves_back(StateSeq prefix, StateSeq suffix, Tally* tally = nullptr);

std::vector<std::pair<int, StateVector>> bss_children(const SearchNode& node,
                                                      const Problem& problem);

// Child state for operator `index` (1-based) under the given refinement.
std::optional<StateVector> successor(Refinement refinement, const StateVector& last,
                                     const Operator& op);

}  // namespace foldplan
