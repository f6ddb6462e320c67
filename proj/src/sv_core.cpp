#include "foldplan/sv_core.hpp"

#include <algorithm>
#include <ostream>
#include <sstream>
#include <unordered_map>

namespace foldplan {

bool StateVector::fully_assigned() const {
  return std::none_of(values_.begin(), values_.end(), [](Value v) { return v == 0; });
}

bool StateVector::all_zero() const {
  return std::all_of(values_.begin(), values_.end(), [](Value v) { return v == 0; });
}

std::ostream& operator<<(std::ostream& os, const StateVector& s) {
  os << '[';
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (i != 0) os << ',';
    os << s[i];
  }
  return os << ']';
}

std::size_t StateVectorHash::operator()(const StateVector& s) const noexcept {
  std::size_t h = 0xcbf29ce484222325ULL;
  for (Value v : s.values()) {
    h ^= static_cast<std::size_t>(v);
    h *= 0x100000001b3ULL;
  }
  return h;
}

namespace {

std::string describe(const Operator& op) { return "operator '" + op.name + "'"; }

void check_lengths(const StateVector& a, const StateVector& b, const char* what) {
  if (a.size() != b.size()) {
    std::ostringstream msg;
    msg << what << ": length mismatch (" << a.size() << " vs " << b.size() << ")";
    throw StructuralError(msg.str());
  }
}

}  // namespace

Domain::Domain(std::string name, std::size_t num_vars, std::vector<Value> var_max,
               std::vector<Operator> operators, Annotations annotations)
    : name_(std::move(name)),
      num_vars_(num_vars),
      var_max_(std::move(var_max)),
      operators_(std::move(operators)),
      annotations_(std::move(annotations)) {
  if (num_vars_ == 0) throw StructuralError("domain '" + name_ + "': no state variables");
  if (var_max_.size() != num_vars_) {
    throw StructuralError("domain '" + name_ + "': var_max has wrong length");
  }
  for (Value m : var_max_) {
    if (m < 1) throw StructuralError("domain '" + name_ + "': variable maximum below 1");
  }
  for (const Operator& op : operators_) {
    if (op.pre.size() != num_vars_ || op.post.size() != num_vars_) {
      throw StructuralError(describe(op) + ": pre/post length differs from vars");
    }
    if (op.pre.all_zero() && op.post.all_zero()) {
      throw StructuralError(describe(op) + ": carries no precondition and no effect");
    }
    for (std::size_t i = 0; i < num_vars_; ++i) {
      if (op.pre[i] < 0 || op.pre[i] > var_max_[i] || op.post[i] < 0 || op.post[i] > var_max_[i]) {
        throw StructuralError(describe(op) + ": value out of range at variable " +
                              std::to_string(i + 1));
      }
    }
  }
  for (const auto& [key, values] : annotations_) {
    if (key.empty()) throw StructuralError("domain '" + name_ + "': empty annotation key");
  }
}

const Operator& Domain::op(int index) const {
  if (index < 1 || static_cast<std::size_t>(index) > operators_.size()) {
    throw StructuralError("operator index " + std::to_string(index) + " outside [1, " +
                          std::to_string(operators_.size()) + "]");
  }
  return operators_[static_cast<std::size_t>(index - 1)];
}

const std::vector<Value>* Domain::annotation(const std::string& key) const {
  auto it = annotations_.find(key);
  return it == annotations_.end() ? nullptr : &it->second;
}

void Domain::check_state(const StateVector& s, const char* what) const {
  if (s.size() != num_vars_) {
    throw StructuralError(std::string(what) + ": expected " + std::to_string(num_vars_) +
                          " values, got " + std::to_string(s.size()));
  }
  for (std::size_t i = 0; i < num_vars_; ++i) {
    if (s[i] < 0 || s[i] > var_max_[i]) {
      throw StructuralError(std::string(what) + ": value " + std::to_string(s[i]) +
                            " out of range at variable " + std::to_string(i + 1));
    }
  }
}

Problem::Problem(std::string name_in, std::shared_ptr<const Domain> domain_in,
                 StateVector init_in, StateVector goal_in)
    : name(std::move(name_in)),
      domain(std::move(domain_in)),
      init(std::move(init_in)),
      goal(std::move(goal_in)) {
  if (!domain) throw StructuralError("problem '" + name + "': no domain");
  domain->check_state(init, "init");
  domain->check_state(goal, "goal");
}

bool in_range(const Plan& plan, const Domain& domain) {
  const auto n = static_cast<int>(domain.num_operators());
  return std::all_of(plan.steps.begin(), plan.steps.end(),
                     [n](int i) { return i >= 1 && i <= n; });
}

std::optional<StateVector> apply(const StateVector& state, const Operator& op) {
  check_lengths(state, op.pre, "apply");
  check_lengths(state, op.post, "apply");
  const std::size_t n = state.size();
  for (std::size_t i = 0; i < n; ++i) {
    if (op.pre[i] != 0 && op.pre[i] != state[i]) return std::nullopt;
  }
  StateVector next = state;
  for (std::size_t i = 0; i < n; ++i) {
    if (op.post[i] != 0) next[i] = op.post[i];
  }
  return next;
}

bool weaker_than(const StateVector& s_j, const StateVector& s_i, Tally* tally) {
  check_lengths(s_j, s_i, "weaker_than");
  const std::size_t n = s_i.size();
  for (std::size_t k = 0; k < n; ++k) {
    count(tally);
    if (s_i[k] != 0 && s_j[k] != s_i[k]) return false;
  }
  return true;
}

std::optional<std::vector<StateVector>> visited_states(const Plan& plan, const StateVector& init,
                                                       const Domain& domain, Tally* tally) {
  if (tally != nullptr) ++tally->visited_states_calls;
  if (!in_range(plan, domain)) throw StructuralError("plan index out of range");
  std::vector<StateVector> states;
  states.reserve(plan.size() + 1);
  states.push_back(init);
  for (int index : plan.steps) {
    auto next = apply(states.back(), domain.op(index));
    if (!next) return std::nullopt;
    states.push_back(std::move(*next));
  }
  return states;
}

bool goal_satisfied(StateSeq states, const StateVector& goal, Tally* tally) {
  if (states.empty()) throw StructuralError("goal_satisfied: empty state sequence");
  return weaker_than(states.back(), goal, tally);
}

bool validate_plan(const Problem& problem, const Plan& plan) {
  if (!in_range(plan, *problem.domain)) return false;
  auto states = visited_states(plan, problem.init, *problem.domain);
  return states.has_value() && goal_satisfied(*states, problem.goal);
}

Domain strips_to_sv(const std::vector<StripsAction>& actions,
                    const std::vector<std::string>& atoms, std::string name) {
  std::unordered_map<std::string, std::size_t> index;
  for (std::size_t i = 0; i < atoms.size(); ++i) {
    if (!index.emplace(atoms[i], i).second) {
      throw StructuralError("strips_to_sv: duplicate atom '" + atoms[i] + "'");
    }
  }
  auto lookup = [&](const std::string& atom, const StripsAction& a) {
    auto it = index.find(atom);
    if (it == index.end()) {
      throw StructuralError("strips_to_sv: action '" + a.name + "' uses atom '" + atom +
                            "' outside the universe");
    }
    return it->second;
  };

  std::vector<Operator> ops;
  ops.reserve(actions.size());
  for (const StripsAction& a : actions) {
    Operator op{a.name, StateVector::zeros(atoms.size()), StateVector::zeros(atoms.size())};
    for (const auto& p : a.pre) op.pre[lookup(p, a)] = kTrue;
    for (const auto& p : a.neg_pre) {
      auto i = lookup(p, a);
      if (op.pre[i] == kTrue) {
        throw StructuralError("strips_to_sv: action '" + a.name + "' requires '" + p +
                              "' both true and false");
      }
      op.pre[i] = kFalse;
    }
    for (const auto& p : a.add) op.post[lookup(p, a)] = kTrue;
    for (const auto& p : a.del) {
      auto i = lookup(p, a);
      if (op.post[i] == kTrue) {
        throw StructuralError("strips_to_sv: action '" + a.name + "' adds and deletes '" + p + "'");
      }
      op.post[i] = kFalse;
    }
    ops.push_back(std::move(op));
  }
  return Domain(std::move(name), atoms.size(), std::vector<Value>(atoms.size(), kFalse),
                std::move(ops));
}

}  // namespace foldplan
