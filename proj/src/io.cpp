#include "foldplan/io.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <optional>
#include <sstream>
#include <vector>

namespace foldplan {

ParseError::ParseError(std::size_t line, const std::string& what)
    : StructuralError("line " + std::to_string(line) + ": " + what), line_(line) {}

namespace {

struct Line {
  std::size_t number;
  std::vector<std::string_view> words;
};

// Non-blank lines with comments stripped, split on whitespace.
std::vector<Line> tokenize(std::string_view text) {
  std::vector<Line> out;
  std::size_t number = 0;
  while (!text.empty()) {
    ++number;
    const std::size_t eol = text.find('\n');
    std::string_view line = text.substr(0, eol);
    text = eol == std::string_view::npos ? std::string_view{} : text.substr(eol + 1);
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);

    Line parsed{number, {}};
    std::size_t i = 0;
    while (i < line.size()) {
      while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
      const std::size_t start = i;
      while (i < line.size() && !std::isspace(static_cast<unsigned char>(line[i]))) ++i;
      if (i > start) parsed.words.push_back(line.substr(start, i - start));
    }
    if (!parsed.words.empty()) out.push_back(std::move(parsed));
  }
  return out;
}

long long to_int(const Line& line, std::string_view word) {
  long long v = 0;
  const auto [ptr, ec] = std::from_chars(word.data(), word.data() + word.size(), v);
  if (ec != std::errc() || ptr != word.data() + word.size()) {
    throw ParseError(line.number, "expected an integer, got '" + std::string(word) + "'");
  }
  return v;
}

Value to_value(const Line& line, std::string_view word) {
  const long long v = to_int(line, word);
  if (v < 0 || v > 1'000'000'000) {
    throw ParseError(line.number, "value out of range: " + std::string(word));
  }
  return static_cast<Value>(v);
}

StateVector to_vector(const Line& line, std::size_t first, std::size_t count) {
  if (line.words.size() < first + count) {
    throw ParseError(line.number, "expected " + std::to_string(count) + " values");
  }
  std::vector<Value> values;
  values.reserve(count);
  for (std::size_t i = 0; i < count; ++i) values.push_back(to_value(line, line.words[first + i]));
  return StateVector(std::move(values));
}

void expect_arity(const Line& line, std::size_t n) {
  if (line.words.size() != n) {
    throw ParseError(line.number, "'" + std::string(line.words[0]) + "' takes " +
                                      std::to_string(n - 1) + " argument(s)");
  }
}

void put_vector(std::ostream& os, const StateVector& s) {
  for (Value v : s.values()) os << ' ' << v;
}

}  // namespace

std::string format_domain(const Domain& domain) {
  std::ostringstream os;
  os << "domain " << domain.name() << '\n' << "vars " << domain.num_vars() << '\n';
  for (std::size_t i = 0; i < domain.num_vars(); ++i) {
    os << "varmax " << i + 1 << ' ' << domain.var_max(i) << '\n';
  }
  for (const auto& [key, values] : domain.annotations()) {
    os << "annot " << key;
    for (Value v : values) os << ' ' << v;
    os << '\n';
  }
  for (const Operator& op : domain.operators()) {
    os << "op " << op.name << " pre";
    put_vector(os, op.pre);
    os << " post";
    put_vector(os, op.post);
    os << '\n';
  }
  return os.str();
}

std::string format_problem(const Problem& problem) {
  std::ostringstream os;
  os << "problem " << problem.name << '\n' << "domainref " << problem.domain->name() << '\n';
  os << "init";
  put_vector(os, problem.init);
  os << "\ngoal";
  put_vector(os, problem.goal);
  os << '\n';
  return os.str();
}

std::string format_plan(const Plan& plan, const Domain* domain) {
  std::ostringstream os;
  for (int step : plan.steps) {
    os << step;
    if (domain != nullptr && step >= 1 && static_cast<std::size_t>(step) <= domain->num_operators()) {
      os << " # " << domain->op(step).name;
    }
    os << '\n';
  }
  return os.str();
}

std::shared_ptr<const Domain> parse_domain(std::string_view text) {
  const auto lines = tokenize(text);
  std::optional<std::string> name;
  std::optional<std::size_t> vars;
  std::vector<std::optional<Value>> var_max;
  Annotations annotations;
  std::vector<Operator> ops;

  for (const Line& line : lines) {
    const std::string_view head = line.words[0];
    if (head == "domain") {
      expect_arity(line, 2);
      if (name) throw ParseError(line.number, "duplicate 'domain' line");
      name = std::string(line.words[1]);
    } else if (head == "vars") {
      expect_arity(line, 2);
      if (vars) throw ParseError(line.number, "duplicate 'vars' line");
      const long long n = to_int(line, line.words[1]);
      if (n < 1 || n > 1'000'000) throw ParseError(line.number, "vars must be positive");
      vars = static_cast<std::size_t>(n);
      var_max.assign(*vars, std::nullopt);
    } else if (head == "varmax") {
      expect_arity(line, 3);
      if (!vars) throw ParseError(line.number, "'varmax' before 'vars'");
      const long long i = to_int(line, line.words[1]);
      if (i < 1 || static_cast<std::size_t>(i) > *vars) {
        throw ParseError(line.number, "varmax index out of range");
      }
      const Value m = to_value(line, line.words[2]);
      if (m < 1) throw ParseError(line.number, "varmax must be at least 1");
      var_max[static_cast<std::size_t>(i - 1)] = m;
    } else if (head == "annot") {
      if (line.words.size() < 2) throw ParseError(line.number, "'annot' needs a key");
      std::vector<Value> values;
      for (std::size_t i = 2; i < line.words.size(); ++i) {
        values.push_back(to_value(line, line.words[i]));
      }
      annotations[std::string(line.words[1])] = std::move(values);
    } else if (head == "op") {
      if (!vars) throw ParseError(line.number, "'op' before 'vars'");
      const std::size_t n = *vars;
      if (line.words.size() != 2 * n + 4 || line.words[2] != "pre" || line.words[3 + n] != "post") {
        throw ParseError(line.number, "expected 'op <name> pre <" + std::to_string(n) +
                                          " values> post <" + std::to_string(n) + " values>'");
      }
      ops.push_back(Operator{std::string(line.words[1]), to_vector(line, 3, n),
                             to_vector(line, 4 + n, n)});
    } else {
      throw ParseError(line.number, "unknown keyword '" + std::string(head) + "'");
    }
  }
  if (!name) throw ParseError(0, "missing 'domain' line");
  if (!vars) throw ParseError(0, "missing 'vars' line");

  // Without a varmax line a variable may take any value its operators use,
  // and at least the boolean range.
  std::vector<Value> maxima(*vars);
  for (std::size_t i = 0; i < *vars; ++i) {
    if (var_max[i]) {
      maxima[i] = *var_max[i];
      continue;
    }
    Value m = kFalse;
    for (const Operator& op : ops) m = std::max({m, op.pre[i], op.post[i]});
    maxima[i] = m;
  }
  return std::make_shared<const Domain>(*name, *vars, std::move(maxima), std::move(ops),
                                        std::move(annotations));
}

Problem parse_problem(std::string_view text, std::shared_ptr<const Domain> domain) {
  const auto lines = tokenize(text);
  std::optional<std::string> name;
  std::optional<std::string> ref;
  std::optional<StateVector> init;
  std::optional<StateVector> goal;
  const std::size_t n = domain->num_vars();

  for (const Line& line : lines) {
    const std::string_view head = line.words[0];
    if (head == "problem") {
      expect_arity(line, 2);
      name = std::string(line.words[1]);
    } else if (head == "domainref") {
      expect_arity(line, 2);
      ref = std::string(line.words[1]);
    } else if (head == "init" || head == "goal") {
      if (line.words.size() != n + 1) {
        throw ParseError(line.number, "'" + std::string(head) + "' needs " + std::to_string(n) +
                                          " values");
      }
      (head == "init" ? init : goal) = to_vector(line, 1, n);
    } else {
      throw ParseError(line.number, "unknown keyword '" + std::string(head) + "'");
    }
  }
  if (!name) throw ParseError(0, "missing 'problem' line");
  if (!init) throw ParseError(0, "missing 'init' line");
  if (!goal) throw ParseError(0, "missing 'goal' line");
  if (ref && *ref != domain->name()) {
    throw ParseError(0, "problem refers to domain '" + *ref + "', not '" + domain->name() + "'");
  }
  return Problem(*name, std::move(domain), std::move(*init), std::move(*goal));
}

Plan parse_plan(std::string_view text) {
  Plan plan;
  for (const Line& line : tokenize(text)) {
    if (line.words.size() != 1) throw ParseError(line.number, "expected one operator index");
    const long long step = to_int(line, line.words[0]);
    if (step < 1 || step > 1'000'000'000) {
      throw ParseError(line.number, "operator index must be positive");
    }
    plan.steps.push_back(static_cast<int>(step));
  }
  return plan;
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw StructuralError("cannot read " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::filesystem::path& path, std::string_view contents) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw StructuralError("cannot write " + path.string());
  out << contents;
  if (!out) throw StructuralError("write failed for " + path.string());
}

}  // namespace foldplan
