// State-variable world model: states, operators, domains, problems and plans.
//
// A state is a fixed-length vector of small non-negative integers. Value 0 is
// "don't care" inside conditions and "unchanged" inside effects; concrete
// values start at 1. Boolean variables use True = 1, False = 2.

#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <iosfwd>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace foldplan {

using Value = std::int32_t;

inline constexpr Value kTrue = 1;
inline constexpr Value kFalse = 2;

// Malformed input: wrong lengths, out-of-range values or indices. Distinct
// from an operator simply not being applicable, which is reported as an
// empty optional.
class StructuralError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Instrumentation shared by every predicate. One Tally belongs to one search.
struct Tally {
  // Incremented once per elementary "value = value (or value = 0)" test.
  std::uint64_t var_comparisons = 0;
  std::uint64_t visited_states_calls = 0;
};

inline void count(Tally* tally, std::uint64_t n = 1) {
  if (tally != nullptr) tally->var_comparisons += n;
}

class StateVector {
 public:
  StateVector() = default;
  explicit StateVector(std::vector<Value> values) : values_(std::move(values)) {}
  StateVector(std::initializer_list<Value> values) : values_(values) {}

  static StateVector zeros(std::size_t n) { return StateVector(std::vector<Value>(n, 0)); }

  std::size_t size() const { return values_.size(); }
  bool empty() const { return values_.empty(); }
  Value operator[](std::size_t i) const { return values_[i]; }
  Value& operator[](std::size_t i) { return values_[i]; }
  std::span<const Value> values() const { return values_; }

  bool fully_assigned() const;
  bool all_zero() const;

  friend bool operator==(const StateVector&, const StateVector&) = default;
  friend auto operator<=>(const StateVector&, const StateVector&) = default;

 private:
  std::vector<Value> values_;
};

std::ostream& operator<<(std::ostream& os, const StateVector& s);

struct StateVectorHash {
  std::size_t operator()(const StateVector& s) const noexcept;
};

using StateSeq = std::span<const StateVector>;

struct Operator {
  std::string name;
  StateVector pre;
  StateVector post;
};

// Rule metadata attached to a domain, keyed by name ("positions", "planes",
// ...). Index-valued entries are 1-based, like every index in the file format.
using Annotations = std::map<std::string, std::vector<Value>>;

class Domain {
 public:
  // Throws StructuralError if any operator violates the length or value-range
  // invariants, or carries no information at all.
  Domain(std::string name, std::size_t num_vars, std::vector<Value> var_max,
         std::vector<Operator> operators, Annotations annotations = {});

  const std::string& name() const { return name_; }
  std::size_t num_vars() const { return num_vars_; }
  // Largest legal value of variable i (0-based).
  Value var_max(std::size_t i) const { return var_max_[i]; }
  const std::vector<Value>& var_maxima() const { return var_max_; }
  std::size_t num_operators() const { return operators_.size(); }
  const std::vector<Operator>& operators() const { return operators_; }
  // 1-based lookup, matching plan indices.
  const Operator& op(int index) const;
  const Annotations& annotations() const { return annotations_; }
  const std::vector<Value>* annotation(const std::string& key) const;

  // Throws StructuralError unless s has num_vars entries, each within range.
  void check_state(const StateVector& s, const char* what) const;

 private:
  std::string name_;
  std::size_t num_vars_;
  std::vector<Value> var_max_;
  std::vector<Operator> operators_;
  Annotations annotations_;
};

struct Problem {
  Problem(std::string name, std::shared_ptr<const Domain> domain, StateVector init,
          StateVector goal);

  std::string name;
  std::shared_ptr<const Domain> domain;
  StateVector init;
  StateVector goal;
};

// Operator indices, 1-based.
struct Plan {
  std::vector<int> steps;

  std::size_t size() const { return steps.size(); }
  bool empty() const { return steps.empty(); }
  friend bool operator==(const Plan&, const Plan&) = default;
};

bool in_range(const Plan& plan, const Domain& domain);

// Progression through one operator. Empty when a precondition fails.
std::optional<StateVector> apply(const StateVector& state, const Operator& op);

// True iff s_j agrees with s_i on every variable s_i assigns.
bool weaker_than(const StateVector& s_j, const StateVector& s_i, Tally* tally = nullptr);

// [init, apply(init, op_1), ...]; empty if some step is inapplicable.
std::optional<std::vector<StateVector>> visited_states(const Plan& plan, const StateVector& init,
                                                       const Domain& domain,
                                                       Tally* tally = nullptr);

bool goal_satisfied(StateSeq states, const StateVector& goal, Tally* tally = nullptr);

bool validate_plan(const Problem& problem, const Plan& plan);

struct StripsAction {
  std::string name;
  std::vector<std::string> pre;
  std::vector<std::string> neg_pre;
  std::vector<std::string> add;
  std::vector<std::string> del;
};

// One boolean variable per atom of the universe, in universe order.
Domain strips_to_sv(const std::vector<StripsAction>& actions, const std::vector<std::string>& atoms,
                    std::string name = "strips");

}  // namespace foldplan
