// Breadth-first brute force over fully assigned states, for cross-checking
// the planner on small instances.

#pragma once

#include <cstddef>
#include <optional>

#include "foldplan/sv_core.hpp"

namespace foldplan {

struct OracleResult {
  enum class Kind { kSolvable, kUnsolvable, kBudgetExceeded };

  Kind kind = Kind::kUnsolvable;
  std::optional<std::size_t> optimal_len;  // set iff solvable
  std::size_t states_seen = 0;
};

// `budget` bounds the number of distinct states discovered. Init must be fully
// assigned.
OracleResult oracle(const Problem& problem, std::size_t budget = 1'000'000);

}  // namespace foldplan
