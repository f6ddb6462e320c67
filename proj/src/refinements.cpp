#include "foldplan/refinements.hpp"

#include <algorithm>

namespace foldplan {

std::string_view to_string(Refinement r) { return r == Refinement::kFss ? "fss" : "bss"; }

std::optional<Refinement> parse_refinement(std::string_view text) {
  if (text == "fss") return Refinement::kFss;
  if (text == "bss") return Refinement::kBss;
  return std::nullopt;
}

SearchNode root_node(const Problem& problem, Refinement refinement) {
  const StateVector& start = refinement == Refinement::kFss ? problem.init : problem.goal;
  return SearchNode{Plan{}, {start}, start};
}

Plan emitted_plan(const SearchNode& node, Refinement refinement) {
  Plan plan = node.plan;
  if (refinement == Refinement::kBss) std::reverse(plan.steps.begin(), plan.steps.end());
  return plan;
}

bool fss_no_moves_back(StateSeq states, Tally* tally) {
  if (states.empty()) return false;
  for (std::size_t j = 1; j < states.size(); ++j) {
    for (std::size_t i = 0; i < j; ++i) {
      if (weaker_than(states[j], states[i], tally)) return false;
    }
  }
  return true;
}

bool fss_cross_no_moves_back(StateSeq prefix, StateSeq suffix, Tally* tally) {
  for (const StateVector& later : suffix) {
    for (const StateVector& earlier : prefix) {
      if (weaker_than(later, earlier, tally)) return false;
    }
  }
  return true;
}

std::vector<std::pair<int, StateVector>> fss_children(const SearchNode& node,
                                                      const Problem& problem) {
  std::vector<std::pair<int, StateVector>> children;
  const auto& ops = problem.domain->operators();
  for (std::size_t i = 0; i < ops.size(); ++i) {
    if (auto next = apply(node.last_state, ops[i])) {
      children.emplace_back(static_cast<int>(i + 1), std::move(*next));
    }
  }
  return children;
}

std::optional<StateVector> regress(const StateVector& cond, const Operator& op) {
  if (cond.size() != op.pre.size() || cond.size() != op.post.size()) {
    throw StructuralError("regress: length mismatch");
  }
  const std::size_t n = cond.size();
  bool relevant = false;
  for (std::size_t i = 0; i < n; ++i) {
    const Value post = op.post[i];
    const Value pre = op.pre[i];
    if (post != 0) {
      if (cond[i] == post) {
        relevant = true;
      } else if (cond[i] != 0) {
        return std::nullopt;
      }
    } else if (pre != 0 && cond[i] != 0 && cond[i] != pre) {
      // The variable is left untouched at `pre`, so cond[i] can never hold.
      return std::nullopt;
    }
  }
  if (!relevant) return std::nullopt;
  StateVector r = cond;
  for (std::size_t i = 0; i < n; ++i) {
    if (op.pre[i] != 0) {
      r[i] = op.pre[i];
    } else if (op.post[i] != 0) {
      r[i] = 0;
    }
  }
  return r;
}

std::optional<std::vector<StateVector>> regressed_states(const Plan& plan, const StateVector& goal,
                                                         const Domain& domain, Tally* tally) {
  if (tally != nullptr) ++tally->visited_states_calls;
  if (!in_range(plan, domain)) throw StructuralError("plan index out of range");
  std::vector<StateVector> states;
  states.reserve(plan.size() + 1);
  states.push_back(goal);
  for (auto it = plan.steps.rbegin(); it != plan.steps.rend(); ++it) {
    auto prev = regress(states.back(), domain.op(*it));
    if (!prev) return std::nullopt;
    states.push_back(std::move(*prev));
  }
  return states;
}

bool bss_goal_test(StateSeq states, const StateVector& init, Tally* tally) {
  if (states.empty()) throw StructuralError("bss_goal_test: empty condition sequence");
  return weaker_than(init, states.back(), tally);
}

// A later condition J that is weaker than (demands at least) an earlier
// condition I regresses back to a superset of I's requirements; the operators
// between them accomplish nothing.
bool bss_no_moves_back(StateSeq states, Tally* tally) { return fss_no_moves_back(states, tally); }

bool bss_cross_no_moves_back(StateSeq prefix, StateSeq suffix, Tally* tally) {
  return fss_cross_no_moves_back(prefix, suffix, tally);
}

std::vector<std::pair<int, StateVector>> bss_children(const SearchNode& node,
                                                      const Problem& problem) {
  std::vector<std::pair<int, StateVector>> children;
  const auto& ops = problem.domain->operators();
  for (std::size_t i = 0; i < ops.size(); ++i) {
    if (auto prev = regress(node.last_state, ops[i])) {
      children.emplace_back(static_cast<int>(i + 1), std::move(*prev));
    }
  }
  return children;
}

std::optional<StateVector> successor(Refinement refinement, const StateVector& last,
                                     const Operator& op) {
  return refinement == Refinement::kFss ? apply(last, op) : regress(last, op);
}

}  // namespace foldplan
