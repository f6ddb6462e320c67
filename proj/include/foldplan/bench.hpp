// Benchmark orchestration: problem suites crossed with planner
// configurations, one CSV row per run.

#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "foldplan/engine.hpp"
#include "foldplan/refinements.hpp"

namespace foldplan {

struct RunRecord {
  std::string problem_id;
  std::string refinement;
  std::string control;
  std::string mode;
  std::string outcome;  // an engine outcome, or "skipped" once the class budget is spent
  std::optional<std::size_t> plan_len;
  std::uint64_t nodes_expanded = 0;
  std::uint64_t var_comparisons = 0;
  double wall_ms = 0.0;
  std::optional<std::uint64_t> seed;
};

std::string csv_header();
std::string csv_row(const RunRecord& record);

struct Configuration {
  Refinement refinement = Refinement::kFss;
  std::string control;  // rules joined by '+', or "none"
  Mode mode = Mode::kIncremental;
};

// "fss,bss×h1,none×incremental" (ASCII '/' also separates the axes).
// Commas list alternatives; '+' combines rules within one configuration.
// Throws std::invalid_argument on a malformed grid.
std::vector<Configuration> parse_grid(std::string_view text);

enum class Suite { kInversion, kStacking, kRandom, kLogistics, kTyre };
std::optional<Suite> parse_suite(std::string_view text);

// "a..b" or a single seed. Throws std::invalid_argument.
std::pair<std::uint64_t, std::uint64_t> parse_seed_range(std::string_view text);

struct BenchOptions {
  Suite suite = Suite::kInversion;
  std::size_t min_size = 2;
  std::size_t max_size = 6;
  std::uint64_t seed_lo = 0;
  std::uint64_t seed_hi = 9;
  std::vector<Configuration> grid;
  // Wall-clock budget shared by one configuration across one size class.
  double class_budget_s = 60.0;
  std::optional<std::size_t> depth_limit;
  unsigned threads = 0;  // 0 = hardware concurrency
};

// Rows ordered by size class, then configuration, then problem. Throws
// RuleError before any search if a control does not fit the suite's domain.
std::vector<RunRecord> run_bench(const BenchOptions& options);

}  // namespace foldplan
