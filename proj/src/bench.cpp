#include "foldplan/bench.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <exception>
#include <iomanip>
#include <mutex>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "foldplan/control.hpp"
#include "foldplan/domains.hpp"

namespace foldplan {

std::string csv_header() {
  return "problem_id,refinement,control,mode,outcome,plan_len,nodes_expanded,var_comparisons,"
         "wall_ms,seed";
}

std::string csv_row(const RunRecord& r) {
  std::ostringstream os;
  os << r.problem_id << ',' << r.refinement << ',' << r.control << ',' << r.mode << ','
     << r.outcome << ',';
  if (r.plan_len) os << *r.plan_len;
  os << ',' << r.nodes_expanded << ',' << r.var_comparisons << ',' << std::fixed
     << std::setprecision(3) << r.wall_ms << ',';
  if (r.seed) os << *r.seed;
  return os.str();
}

namespace {

std::vector<std::string_view> split(std::string_view text, char sep) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  while (true) {
    const std::size_t at = text.find(sep, start);
    parts.push_back(text.substr(start, at == std::string_view::npos ? text.npos : at - start));
    if (at == std::string_view::npos) break;
    start = at + 1;
  }
  return parts;
}

std::string rule_list(std::string_view control) {
  std::string out(control);
  std::replace(out.begin(), out.end(), '+', ',');
  return out;
}

struct Instance {
  std::shared_ptr<const Problem> problem;
  std::optional<std::uint64_t> seed;
};

struct SizeClass {
  std::vector<Instance> instances;
};

std::vector<SizeClass> build_classes(const BenchOptions& o) {
  std::vector<SizeClass> classes;
  auto seeded = [&](auto generate, std::size_t n) {
    SizeClass c;
    for (std::uint64_t seed = o.seed_lo; seed <= o.seed_hi; ++seed) {
      c.instances.push_back({std::make_shared<const Problem>(generate(n, seed)), seed});
      if (seed == o.seed_hi) break;
    }
    return c;
  };
  switch (o.suite) {
    case Suite::kInversion:
      for (std::size_t n = std::max<std::size_t>(o.min_size, 2); n <= o.max_size; ++n) {
        classes.push_back({{{std::make_shared<const Problem>(gen_stack_inversion(n)), {}}}});
      }
      break;
    case Suite::kStacking:
      for (std::size_t n = std::max<std::size_t>(o.min_size, 2); n <= o.max_size; ++n) {
        if (n % 2 == 0) classes.push_back(seeded(gen_stack_building, n));
      }
      break;
    case Suite::kRandom:
      for (std::size_t n = std::max<std::size_t>(o.min_size, 2); n <= o.max_size; ++n) {
        classes.push_back(seeded(gen_blocks_random, n));
      }
      break;
    case Suite::kLogistics:
      for (std::size_t k = std::max<std::size_t>(o.min_size, 1); k <= o.max_size; ++k) {
        classes.push_back({{{std::make_shared<const Problem>(gen_logistics(k)), {}}}});
      }
      break;
    case Suite::kTyre:
      classes.push_back({{{std::make_shared<const Problem>(gen_fixit()), {}}}});
      break;
  }
  return classes;
}

// One configuration over one size class; later problems inherit whatever
// budget the earlier ones left.
std::vector<RunRecord> run_job(const SizeClass& size_class, const Configuration& config,
                               const BenchOptions& options) {
  std::vector<RunRecord> rows;
  double remaining_s = options.class_budget_s;
  bool failed = false;
  for (const Instance& inst : size_class.instances) {
    RunRecord row;
    row.problem_id = inst.problem->name;
    row.refinement = std::string(to_string(config.refinement));
    row.control = config.control;
    row.mode = std::string(to_string(config.mode));
    row.seed = inst.seed;
    if (failed || remaining_s <= 0.0) {
      failed = true;
      row.outcome = "skipped";
      rows.push_back(std::move(row));
      continue;
    }
    const auto spec = make_search_spec(
        config.refinement,
        make_rules(rule_list(config.control), *inst.problem->domain, config.refinement));
    EngineConfig engine{config.mode, remaining_s, options.depth_limit};
    const SearchResult result = search(*inst.problem, spec, engine);
    row.outcome = std::string(to_string(result.stats.outcome));
    row.plan_len = result.stats.plan_len;
    row.nodes_expanded = result.stats.nodes_expanded;
    row.var_comparisons = result.stats.var_comparisons;
    row.wall_ms = result.stats.wall_ms;
    remaining_s -= result.stats.wall_ms / 1000.0;
    if (result.stats.outcome == Outcome::kTimeOut) failed = true;
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace

std::vector<Configuration> parse_grid(std::string_view text) {
  std::string normalized(text);
  for (std::size_t at; (at = normalized.find("×")) != std::string::npos;) {
    normalized.replace(at, std::string_view("×").size(), "/");
  }
  const auto axes = split(normalized, '/');
  if (axes.size() != 3) {
    throw std::invalid_argument("grid must be 'refinements×controls×modes'");
  }
  std::vector<Configuration> grid;
  for (std::string_view r : split(axes[0], ',')) {
    const auto refinement = parse_refinement(r);
    if (!refinement) throw std::invalid_argument("unknown refinement '" + std::string(r) + "'");
    for (std::string_view c : split(axes[1], ',')) {
      if (c.empty()) throw std::invalid_argument("empty control in grid");
      for (std::string_view m : split(axes[2], ',')) {
        const auto mode = parse_mode(m);
        if (!mode) throw std::invalid_argument("unknown mode '" + std::string(m) + "'");
        grid.push_back({*refinement, std::string(c), *mode});
      }
    }
  }
  return grid;
}

std::optional<Suite> parse_suite(std::string_view text) {
  if (text == "inversion") return Suite::kInversion;
  if (text == "stacking") return Suite::kStacking;
  if (text == "random") return Suite::kRandom;
  if (text == "logistics") return Suite::kLogistics;
  if (text == "tyre") return Suite::kTyre;
  return std::nullopt;
}

std::pair<std::uint64_t, std::uint64_t> parse_seed_range(std::string_view text) {
  auto number = [&](std::string_view s) {
    std::uint64_t v = 0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (s.empty() || ec != std::errc() || ptr != s.data() + s.size()) {
      throw std::invalid_argument("bad seed range '" + std::string(text) + "'");
    }
    return v;
  };
  const std::size_t dots = text.find("..");
  if (dots == std::string_view::npos) {
    const auto v = number(text);
    return {v, v};
  }
  const auto lo = number(text.substr(0, dots));
  const auto hi = number(text.substr(dots + 2));
  if (lo > hi) throw std::invalid_argument("empty seed range '" + std::string(text) + "'");
  return {lo, hi};
}

std::vector<RunRecord> run_bench(const BenchOptions& options) {
  if (!(options.class_budget_s > 0.0)) throw std::invalid_argument("class budget must be positive");
  if (options.grid.empty()) throw std::invalid_argument("empty configuration grid");
  const auto classes = build_classes(options);
  if (classes.empty()) return {};

  // Reject rule/domain mismatches up front.
  for (const Configuration& config : options.grid) {
    make_rules(rule_list(config.control), *classes.front().instances.front().problem->domain,
               config.refinement);
  }

  const std::size_t jobs = classes.size() * options.grid.size();
  std::vector<std::vector<RunRecord>> results(jobs);
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto worker = [&] {
    for (std::size_t j; (j = next.fetch_add(1)) < jobs;) {
      try {
        results[j] = run_job(classes[j / options.grid.size()],
                             options.grid[j % options.grid.size()], options);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
      }
    }
  };
  unsigned threads = options.threads != 0 ? options.threads : std::thread::hardware_concurrency();
  threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(jobs)));
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
  for (std::thread& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);

  std::vector<RunRecord> rows;
  for (auto& job : results) {
    for (RunRecord& row : job) rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace foldplan
