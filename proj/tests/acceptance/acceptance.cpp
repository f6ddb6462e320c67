// Acceptance suite: one PASS/FAIL line per criterion. Exit status is nonzero
// if any criterion fails.

#include <cstdio>
#include <filesystem>
#include <functional>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "foldplan/bench.hpp"
#include "foldplan/control.hpp"
#include "foldplan/domains.hpp"
#include "foldplan/engine.hpp"
#include "foldplan/io.hpp"
#include "foldplan/oracle.hpp"
#include "helpers.hpp"

using namespace foldplan;

namespace {

struct Verdict {
  bool pass = true;
  std::ostringstream detail;

  void fail(const std::string& why) {
    if (!pass) detail << "; ";
    else detail.str("");
    pass = false;
    detail << why;
  }
};

SearchResult solve(const Problem& p, Refinement r, const std::string& rules, double limit_s,
                   Mode mode = Mode::kIncremental) {
  const SearchSpec spec = make_search_spec(r, make_rules(rules, *p.domain, r));
  return search(p, spec, EngineConfig{mode, limit_s, std::nullopt});
}

std::string ms(double v) {
  std::ostringstream os;
  os.precision(1);
  os << std::fixed << v << " ms";
  return os.str();
}

// 1: H1 inverts 14 blocks within a minute and 22 within half an hour.
void stack_inversion_scale(Verdict& v) {
  const std::pair<std::size_t, double> cases[] = {{14, 60.0}, {22, 1800.0}};
  for (const auto& [n, limit] : cases) {
    const Problem p = gen_stack_inversion(n);
    const SearchResult r = solve(p, Refinement::kFss, "h1", limit);
    if (!r.plan) {
      v.fail("n=" + std::to_string(n) + " " + std::string(to_string(r.stats.outcome)));
      continue;
    }
    if (!validate_plan(p, *r.plan)) v.fail("n=" + std::to_string(n) + " plan invalid");
    if (v.pass) {
      v.detail << "n=" << n << " len " << r.plan->size() << " in " << ms(r.stats.wall_ms) << "  ";
    }
  }
}

// 2: logistics with four planes.
void logistics_scale(Verdict& v) {
  const Problem p = gen_logistics(4);
  const SearchResult r = solve(p, Refinement::kFss, "logistics", 60.0);
  if (!r.plan) return v.fail(std::string(to_string(r.stats.outcome)));
  if (!validate_plan(p, *r.plan)) return v.fail("plan invalid");
  v.detail << "len " << r.plan->size() << " in " << ms(r.stats.wall_ms);
}

// 3: tyre fixit.
void tyre_fixit(Verdict& v) {
  const Problem p = gen_fixit();
  const SearchResult r = solve(p, Refinement::kFss, "tyre", 60.0);
  if (!r.plan) return v.fail(std::string(to_string(r.stats.outcome)));
  if (!validate_plan(p, *r.plan)) return v.fail("plan invalid");
  if (r.plan->size() > 40) v.fail("plan length " + std::to_string(r.plan->size()) + " > 40");
  if (v.pass) v.detail << "len " << r.plan->size() << " in " << ms(r.stats.wall_ms);
}

// 4: H1 expands fewer nodes than no control; no control gives up first.
// Once no control times out, larger sizes would only repeat the time-out,
// so it is not rerun.
void control_helps(Verdict& v) {
  bool none_alive = true;
  std::optional<std::size_t> none_failed_at;
  for (std::size_t n = 4; n <= 10; ++n) {
    const Problem p = gen_stack_inversion(n);
    const SearchResult h1 = solve(p, Refinement::kFss, "h1", 60.0);
    v.detail << "n=" << n << " h1 " << h1.stats.nodes_expanded;
    if (none_alive) {
      const SearchResult none = solve(p, Refinement::kFss, "none", 60.0);
      v.detail << "/none " << none.stats.nodes_expanded << ' ' << to_string(none.stats.outcome);
      if (none.plan && h1.plan && !(h1.stats.nodes_expanded < none.stats.nodes_expanded)) {
        v.fail("n=" + std::to_string(n) + ": h1 does not expand fewer nodes");
      }
      if (none.stats.outcome == Outcome::kTimeOut) {
        none_alive = false;
        if (h1.plan) none_failed_at = n;
      }
    }
    v.detail << "  ";
  }
  if (!none_failed_at) v.fail("control=none never timed out where h1 succeeded");
}

// 5: incremental and naive engines agree; the incremental one does far
// less comparison work as size grows.
void folding_beats_reevaluation(Verdict& v) {
  double previous = 2.0;
  for (std::size_t n = 6; n <= 12; ++n) {
    const Problem p = gen_stack_inversion(n);
    const SearchSpec spec =
        make_search_spec(Refinement::kFss, make_rules("h2", *p.domain, Refinement::kFss));
    const ModeComparison cmp = compare_modes(p, spec, EngineConfig{Mode::kIncremental, 600.0, {}});
    v.detail << "n=" << n << " ratio " << cmp.comparison_ratio << "  ";
    const std::string at = "n=" + std::to_string(n) + ": ";
    if (!cmp.incremental.plan) v.fail(at + "unsolved");
    if (!cmp.same_plan || !cmp.same_nodes || !cmp.same_outcome) v.fail(at + "modes disagree");
    if (n >= 8 && cmp.comparison_ratio > 0.5) v.fail(at + "ratio above 0.5");
    if (cmp.comparison_ratio > previous) v.fail(at + "ratio increased");
    previous = cmp.comparison_ratio;
  }
}

// 6: every shipped rule obeys the concatenation and window laws.
void law_suite(Verdict& v) {
  auto blocks = std::make_shared<const Problem>(gen_blocks_random(5, 0));
  auto logistics = std::make_shared<const Problem>(gen_logistics(2));
  auto tyre = std::make_shared<const Problem>(gen_fixit());
  struct Case {
    std::string label;
    ControlRule rule;
    std::shared_ptr<const Problem> problem;
    bool zeros;
  };
  std::vector<Case> cases{
      {"loop/fss", make_loop_rule(Refinement::kFss), blocks, false},
      {"loop/bss", make_loop_rule(Refinement::kBss), blocks, true},
      {"trivial", make_trivial_rule(), blocks, false},
  };
  for (Refinement r : {Refinement::kFss, Refinement::kBss}) {
    const bool zeros = r == Refinement::kBss;
    const std::string tag = "/" + std::string(to_string(r));
    cases.push_back({"h1" + tag, make_rule("h1", *blocks->domain, r), blocks, zeros});
    cases.push_back({"h2" + tag, make_rule("h2", *blocks->domain, r), blocks, zeros});
    cases.push_back(
        {"logistics" + tag, make_rule("logistics", *logistics->domain, r), logistics, zeros});
    cases.push_back({"tyre" + tag, make_rule("tyre", *tyre->domain, r), tyre, zeros});
  }
  std::size_t total = 0;
  for (const Case& c : cases) {
    const SequenceSource source(c.problem, c.zeros);
    for (std::uint64_t seed : {0, 1, 2}) {
      const LawReport report = check_laws(c.rule, source, 1000, seed);
      total += report.trials;
      if (!report.passed()) {
        v.fail(c.label + " seed " + std::to_string(seed) + ": " +
               report.counterexamples.front().law);
      }
    }
  }
  if (v.pass) v.detail << cases.size() << " rules, " << total << " trials, 0 counterexamples";
}

// 7: the engine agrees with breadth-first search on every small blocks
// problem, and H2 inverts stacks in exactly 2(n-1) moves.
void oracle_equivalence(Verdict& v) {
  std::vector<Problem> corpus;
  for (std::size_t n = 2; n <= 3; ++n) corpus.push_back(gen_stack_inversion(n));
  for (std::uint64_t seed = 0; seed <= 9; ++seed) {
    corpus.push_back(gen_stack_building(2, seed));
    for (std::size_t n = 2; n <= 3; ++n) corpus.push_back(gen_blocks_random(n, seed));
  }
  std::size_t solved = 0;
  for (const Problem& p : corpus) {
    const OracleResult o = oracle(p);
    const SearchResult r = solve(p, Refinement::kFss, "none", 60.0);
    if (r.plan.has_value() != (o.kind == OracleResult::Kind::kSolvable)) {
      v.fail(p.name + ": solvability differs from the oracle");
    }
    if (r.plan) {
      ++solved;
      if (!validate_plan(p, *r.plan)) v.fail(p.name + ": plan invalid");
    }
  }
  for (std::size_t n = 2; n <= 6; ++n) {
    const Problem p = gen_stack_inversion(n);
    const SearchResult r = solve(p, Refinement::kFss, "h2", 60.0);
    const OracleResult o = oracle(p);
    const std::string at = "h2 n=" + std::to_string(n) + ": ";
    if (!r.plan) {
      v.fail(at + "unsolved");
      continue;
    }
    if (r.plan->size() != 2 * (n - 1)) v.fail(at + "length " + std::to_string(r.plan->size()));
    if (!o.optimal_len || *o.optimal_len > r.plan->size()) v.fail(at + "oracle bound violated");
  }
  if (v.pass) v.detail << corpus.size() << " problems, " << solved << " solved";
}

// 8: two bench runs over the same grid produce the same CSV apart from
// wall time.
void determinism(Verdict& v) {
  namespace fs = std::filesystem;
  const fs::path dir = fs::temp_directory_path() / "foldplan-acceptance";
  fs::create_directories(dir);
  const std::string args =
      "bench --suite random --min-size 2 --max-size 5 --seeds 0..4 --budget 30 "
      "--grid 'fss×none,h1,h2×incremental,naive' --out ";
  std::vector<std::vector<std::string>> runs;
  for (int i = 0; i < 2; ++i) {
    const fs::path out = dir / ("run" + std::to_string(i) + ".csv");
    if (testing::run_cli(args + out.string()) != 0) return v.fail("bench exited nonzero");
    std::istringstream in(read_file(out));
    std::vector<std::string> rows;
    for (std::string line; std::getline(in, line);) {
      // Drop the wall_ms column, the ninth.
      std::vector<std::string> cells;
      std::istringstream cs(line);
      for (std::string cell; std::getline(cs, cell, ',');) cells.push_back(cell);
      if (line.back() == ',') cells.emplace_back();
      if (cells.size() != 10) return v.fail("malformed row: " + line);
      cells.erase(cells.begin() + 8);
      std::string joined;
      for (const auto& c : cells) joined += c + ',';
      rows.push_back(joined);
    }
    runs.push_back(std::move(rows));
  }
  if (runs[0] != runs[1]) return v.fail("CSVs differ");
  if (runs[0].size() < 2) return v.fail("no rows");
  v.detail << runs[0].size() - 1 << " rows identical";
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<void(Verdict&)>>> criteria{
      {"stack inversion scale", stack_inversion_scale},
      {"logistics scale", logistics_scale},
      {"tyre fixit", tyre_fixit},
      {"control knowledge helps", control_helps},
      {"folding beats re-evaluation", folding_beats_reevaluation},
      {"law suite", law_suite},
      {"oracle equivalence", oracle_equivalence},
      {"determinism", determinism},
  };
  int failures = 0;
  int index = 0;
  for (const auto& [name, check] : criteria) {
    ++index;
    Verdict v;
    try {
      check(v);
    } catch (const std::exception& e) {
      v.fail(std::string("exception: ") + e.what());
    }
    if (!v.pass) ++failures;
    std::cout << "criterion " << index << " (" << name << "): " << (v.pass ? "PASS" : "FAIL")
              << " - " << v.detail.str() << std::endl;
  }
  return failures == 0 ? 0 : 1;
}
