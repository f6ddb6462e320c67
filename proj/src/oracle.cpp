#include "foldplan/oracle.hpp"

#include <deque>
#include <unordered_map>

namespace foldplan {

OracleResult oracle(const Problem& problem, std::size_t budget) {
  const Domain& domain = *problem.domain;
  domain.check_state(problem.init, "init");
  domain.check_state(problem.goal, "goal");
  if (!problem.init.fully_assigned()) {
    throw StructuralError("oracle needs a fully assigned initial state");
  }
  auto is_goal = [&](const StateVector& s) {
    for (std::size_t i = 0; i < s.size(); ++i) {
      if (problem.goal[i] != 0 && problem.goal[i] != s[i]) return false;
    }
    return true;
  };

  OracleResult result;
  std::unordered_map<StateVector, std::size_t, StateVectorHash> depth{{problem.init, 0}};
  std::deque<StateVector> frontier{problem.init};
  while (!frontier.empty()) {
    const StateVector s = std::move(frontier.front());
    frontier.pop_front();
    const std::size_t d = depth.at(s);
    if (is_goal(s)) {
      result.kind = OracleResult::Kind::kSolvable;
      result.optimal_len = d;
      result.states_seen = depth.size();
      return result;
    }
    for (const Operator& op : domain.operators()) {
      auto next = apply(s, op);
      if (!next || depth.contains(*next)) continue;
      if (depth.size() >= budget) {
        result.kind = OracleResult::Kind::kBudgetExceeded;
        result.states_seen = depth.size();
        return result;
      }
      depth.emplace(*next, d + 1);
      frontier.push_back(std::move(*next));
    }
  }
  result.kind = OracleResult::Kind::kUnsolvable;
  result.states_seen = depth.size();
  return result;
}

}  // namespace foldplan
