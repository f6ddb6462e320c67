// foldplan: plan, generate, validate, check rule laws and run benchmarks.
//
// Exit status: 0 success, 1 unsolved or invalid, 2 usage error, 3 malformed
// input.

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>

#include "foldplan/bench.hpp"
#include "foldplan/control.hpp"
#include "foldplan/domains.hpp"
#include "foldplan/engine.hpp"
#include "foldplan/io.hpp"

namespace fs = std::filesystem;
using namespace foldplan;

namespace {

constexpr int kOk = 0;
constexpr int kFailed = 1;
constexpr int kUsage = 2;
constexpr int kMalformed = 3;

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Loaded {
  std::shared_ptr<const Domain> domain;
  std::shared_ptr<const Problem> problem;
};

Loaded load(const std::string& domain_file, const std::string& problem_file) {
  Loaded out;
  out.domain = parse_domain(read_file(domain_file));
  out.problem = std::make_shared<const Problem>(parse_problem(read_file(problem_file), out.domain));
  return out;
}

Refinement refinement_arg(const std::string& text) {
  auto r = parse_refinement(text);
  if (!r) throw UsageError("unknown refinement '" + text + "' (fss|bss)");
  return *r;
}

// --- plan -------------------------------------------------------------------

struct PlanArgs {
  std::string domain, problem, refinement = "fss", control = "none", mode = "incremental";
  double time_limit = 1000.0;
  std::optional<std::size_t> depth_limit;
  std::string out, stats;
};

int run_plan(const PlanArgs& a) {
  const Refinement refinement = refinement_arg(a.refinement);
  const auto mode = parse_mode(a.mode);
  if (!mode) throw UsageError("unknown mode '" + a.mode + "' (incremental|naive)");
  const Loaded in = load(a.domain, a.problem);
  const SearchSpec spec =
      make_search_spec(refinement, make_rules(a.control, *in.domain, refinement));
  const SearchResult result = search(*in.problem, spec, {*mode, a.time_limit, a.depth_limit});

  if (!a.stats.empty()) {
    RunRecord row{in.problem->name,
                  std::string(to_string(refinement)),
                  a.control,
                  a.mode,
                  std::string(to_string(result.stats.outcome)),
                  result.stats.plan_len,
                  result.stats.nodes_expanded,
                  result.stats.var_comparisons,
                  result.stats.wall_ms,
                  std::nullopt};
    write_file(a.stats, csv_header() + "\n" + csv_row(row) + "\n");
  }
  std::cerr << to_string(result.stats.outcome) << ": " << result.stats.nodes_expanded
            << " nodes, " << result.stats.var_comparisons << " comparisons, "
            << result.stats.wall_ms << " ms\n";
  if (!result.plan) return kFailed;
  const std::string text = format_plan(*result.plan, in.domain.get());
  if (a.out.empty()) {
    std::cout << text;
  } else {
    write_file(a.out, text);
  }
  return kOk;
}

// --- gen --------------------------------------------------------------------

struct GenArgs {
  std::size_t size = 0;
  std::uint64_t seed = 0;
  std::string out_dir = ".";
};

int write_problem_files(const Problem& problem, const std::string& out_dir) {
  fs::create_directories(out_dir);
  const fs::path dir(out_dir);
  const fs::path domain_path = dir / (problem.name + ".domain");
  const fs::path problem_path = dir / (problem.name + ".problem");
  write_file(domain_path, format_domain(*problem.domain));
  write_file(problem_path, format_problem(problem));
  std::cout << domain_path.string() << '\n' << problem_path.string() << '\n';
  return kOk;
}

// --- validate ---------------------------------------------------------------

int run_validate(const std::string& domain, const std::string& problem, const std::string& plan) {
  const Loaded in = load(domain, problem);
  const Plan p = parse_plan(read_file(plan));
  if (validate_plan(*in.problem, p)) {
    std::cout << "valid (" << p.size() << " steps)\n";
    return kOk;
  }
  std::cout << "invalid\n";
  return kFailed;
}

// --- laws -------------------------------------------------------------------

struct LawsArgs {
  std::string control;
  std::size_t trials = 1000;
  std::uint64_t seed = 0;
  std::string refinement = "fss";
  std::string domain, problem;
};

// Default problem a rule is exercised on.
std::shared_ptr<const Problem> law_problem(const std::string& control) {
  if (control == "logistics") return std::make_shared<const Problem>(gen_logistics(2));
  if (control == "tyre") return std::make_shared<const Problem>(gen_fixit());
  return std::make_shared<const Problem>(gen_blocks_random(5, 0));
}

int run_laws(const LawsArgs& a) {
  const Refinement refinement = refinement_arg(a.refinement);
  std::shared_ptr<const Problem> problem;
  if (a.domain.empty() != a.problem.empty()) {
    throw UsageError("--domain and --problem go together");
  }
  problem = a.domain.empty() ? law_problem(a.control) : load(a.domain, a.problem).problem;
  const ControlRule rule = a.control == "no-moves-back"
                               ? make_loop_rule(refinement)
                               : make_rule(a.control, *problem->domain, refinement);
  const SequenceSource source(problem, refinement == Refinement::kBss);
  const LawReport report = check_laws(rule, source, a.trials, a.seed);
  std::cout << report.rule << ": " << report.trials << " trials, "
            << report.counterexamples.size() << " counterexamples\n";
  if (!report.passed()) {
    const LawViolation& v = report.counterexamples.front();
    std::cout << "first failure (" << v.law << "):\n  S1 =";
    for (const auto& s : v.first) std::cout << ' ' << s;
    std::cout << "\n  S2 =";
    for (const auto& s : v.second) std::cout << ' ' << s;
    std::cout << '\n';
    return kFailed;
  }
  return kOk;
}

// --- bench ------------------------------------------------------------------

struct BenchArgs {
  std::string suite, seeds = "0..9", grid = "fss×none×incremental", out;
  std::size_t min_size = 0, max_size = 6;
  double budget = 60.0;
  std::optional<std::size_t> depth_limit;
  unsigned threads = 0;
};

int run_bench_cmd(const BenchArgs& a) {
  BenchOptions o;
  const auto suite = parse_suite(a.suite);
  if (!suite) throw UsageError("unknown suite '" + a.suite + "'");
  o.suite = *suite;
  if (a.min_size != 0) o.min_size = a.min_size;
  o.max_size = a.max_size;
  try {
    std::tie(o.seed_lo, o.seed_hi) = parse_seed_range(a.seeds);
    o.grid = parse_grid(a.grid);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  o.class_budget_s = a.budget;
  o.depth_limit = a.depth_limit;
  o.threads = a.threads;

  const auto rows = run_bench(o);
  std::ostringstream csv;
  csv << csv_header() << '\n';
  for (const RunRecord& row : rows) csv << csv_row(row) << '\n';
  if (a.out.empty()) {
    std::cout << csv.str();
  } else {
    write_file(a.out, csv.str());
  }
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"State-variable planner with folded-in control rules"};
  app.require_subcommand(1);

  PlanArgs plan;
  auto* plan_cmd = app.add_subcommand("plan", "Search for a plan");
  plan_cmd->add_option("--domain", plan.domain)->required();
  plan_cmd->add_option("--problem", plan.problem)->required();
  plan_cmd->add_option("--refinement", plan.refinement, "fss|bss");
  plan_cmd->add_option("--control", plan.control, "none|h1|h2|logistics|tyre[,...]");
  plan_cmd->add_option("--mode", plan.mode, "incremental|naive");
  plan_cmd->add_option("--time-limit", plan.time_limit, "seconds")->check(CLI::PositiveNumber);
  plan_cmd->add_option("--depth-limit", plan.depth_limit)->check(CLI::PositiveNumber);
  plan_cmd->add_option("--out", plan.out, "plan file (default stdout)");
  plan_cmd->add_option("--stats", plan.stats, "CSV stats file");

  GenArgs gen;
  auto* gen_cmd = app.add_subcommand("gen", "Write benchmark domain and problem files");
  gen_cmd->require_subcommand(1);
  gen_cmd->add_option("--out-dir", gen.out_dir)->capture_default_str();
  auto* gen_inv = gen_cmd->add_subcommand("blocks-inversion", "A-on-top to N-on-top");
  gen_inv->add_option("N", gen.size)->required()->check(CLI::Range(2, 1000));
  auto* gen_stack = gen_cmd->add_subcommand("blocks-stack", "Towers of height two to one tower");
  gen_stack->add_option("N", gen.size)->required()->check(CLI::Range(2, 1000));
  gen_stack->add_option("--seed", gen.seed);
  auto* gen_rand = gen_cmd->add_subcommand("blocks-random", "Random blocks problem");
  gen_rand->add_option("N", gen.size)->required()->check(CLI::Range(2, 1000));
  gen_rand->add_option("--seed", gen.seed);
  auto* gen_log = gen_cmd->add_subcommand("logistics", "k planes, 2k places, 3k packages");
  gen_log->add_option("K", gen.size)->required()->check(CLI::Range(1, 100));
  auto* gen_tyre = gen_cmd->add_subcommand("tyre-fixit", "The flat tyre problem");

  std::string v_domain, v_problem, v_plan;
  auto* validate_cmd = app.add_subcommand("validate", "Check a plan against a problem");
  validate_cmd->add_option("--domain", v_domain)->required();
  validate_cmd->add_option("--problem", v_problem)->required();
  validate_cmd->add_option("--plan", v_plan)->required();

  LawsArgs laws;
  auto* laws_cmd = app.add_subcommand("laws", "Property-check a rule's incremental form");
  laws_cmd->add_option("--control", laws.control, "none|no-moves-back|h1|h2|logistics|tyre")
      ->required();
  laws_cmd->add_option("--trials", laws.trials)->check(CLI::PositiveNumber);
  laws_cmd->add_option("--seed", laws.seed);
  laws_cmd->add_option("--refinement", laws.refinement, "fss|bss");
  laws_cmd->add_option("--domain", laws.domain, "draw sequences from this domain");
  laws_cmd->add_option("--problem", laws.problem);

  BenchArgs bench;
  auto* bench_cmd = app.add_subcommand("bench", "Run a benchmark grid, write CSV");
  bench_cmd->add_option("--suite", bench.suite, "inversion|stacking|random|logistics|tyre")
      ->required();
  bench_cmd->add_option("--min-size", bench.min_size);
  bench_cmd->add_option("--max-size", bench.max_size)->check(CLI::Range(1, 1000));
  bench_cmd->add_option("--seeds", bench.seeds, "a..b")->capture_default_str();
  bench_cmd->add_option("--grid", bench.grid, "refinements×controls×modes")->capture_default_str();
  bench_cmd->add_option("--budget", bench.budget, "seconds per size class")
      ->check(CLI::PositiveNumber);
  bench_cmd->add_option("--depth-limit", bench.depth_limit)->check(CLI::PositiveNumber);
  bench_cmd->add_option("--threads", bench.threads);
  bench_cmd->add_option("--out", bench.out, "CSV file (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*plan_cmd) return run_plan(plan);
    if (*gen_cmd) {
      if (*gen_inv) return write_problem_files(gen_stack_inversion(gen.size), gen.out_dir);
      if (*gen_stack) {
        if (gen.size % 2 != 0) throw UsageError("blocks-stack needs an even N");
        return write_problem_files(gen_stack_building(gen.size, gen.seed), gen.out_dir);
      }
      if (*gen_rand) return write_problem_files(gen_blocks_random(gen.size, gen.seed), gen.out_dir);
      if (*gen_log) return write_problem_files(gen_logistics(gen.size), gen.out_dir);
      if (*gen_tyre) return write_problem_files(gen_fixit(), gen.out_dir);
    }
    if (*validate_cmd) return run_validate(v_domain, v_problem, v_plan);
    if (*laws_cmd) return run_laws(laws);
    if (*bench_cmd) return run_bench_cmd(bench);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const RuleError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const StructuralError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kMalformed;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kMalformed;
  }
  return kUsage;
}
