// Domain-dependent pruning rules and the law bundle that lets the engine
// evaluate them incrementally.
//
// Every rule is a predicate over a state sequence. Its cross check is the
// boundary residue of that predicate under concatenation:
//
//   full(S1 ++ S2) == full(S1) && full(S2) && cross(S1, S2)
//
// for non-empty S1 and S2. When `window` is finite, cross(S1, [A]) may only
// look at the last `window` states of S1.

#pragma once

#include <cstddef>
#include <functional>
#include <limits>
#include <string>
#include <string_view>
#include <vector>

#include "foldplan/random.hpp"
#include "foldplan/refinements.hpp"
#include "foldplan/sv_core.hpp"

namespace foldplan {

struct RuleContext {
  const StateVector& init;
  const StateVector& goal;
};

using FullCheck = std::function<bool(StateSeq, const RuleContext&, Tally*)>;
using CrossCheck = std::function<bool(StateSeq, StateSeq, const RuleContext&, Tally*)>;

inline constexpr std::size_t kUnboundedWindow = std::numeric_limits<std::size_t>::max();

struct ControlRule {
  std::string name;
  FullCheck full_check;
  CrossCheck cross_check;
  std::size_t window = kUnboundedWindow;
  bool empty_value = true;
  bool singleton_value = true;
};

// Raised for unknown rule names and for rules applied to a domain that lacks
// the annotations they read.
class RuleError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Position variables (0-based) and the table code of a blocks encoding.
struct BlocksLayout {
  std::vector<std::size_t> positions;
  Value table = 0;

  // Odd 1-based indices, table = 1 + round(width / 2).
  static BlocksLayout for_width(std::size_t width);
  static BlocksLayout from_domain(const Domain& domain);
};

struct LogisticsLayout {
  std::vector<std::size_t> plane_vars;
  std::vector<Value> plane_codes;
  std::vector<std::size_t> package_vars;

  static LogisticsLayout from_domain(const Domain& domain);
  bool is_plane_code(Value v) const;
};

struct TyreLayout {
  std::vector<std::size_t> boot;       // rule 2: changes only once everything else is done
  std::vector<std::size_t> tools;      // rule 5: pump and wrench whereabouts
  std::vector<std::size_t> wheel_hub;  // rule 5 guard set
  std::vector<std::size_t> wheels;     // rule 6
  std::size_t hub_free = 0;
  std::vector<std::size_t> hub_fix;    // rule 3
  std::size_t hub_ground = 0;          // rule 4

  static TyreLayout from_domain(const Domain& domain);
};

// Blocks: Limit Useless Moves. A block that moves between states i and i+1
// stays put between i+1 and i+2.
bool h1_full(StateSeq states, const BlocksLayout& layout, Tally* tally = nullptr);
bool h1_full(StateSeq states, const StateVector& init, const StateVector& goal);
bool h1_cross(StateSeq prefix, StateSeq suffix, const BlocksLayout& layout,
              Tally* tally = nullptr);

// Blocks: Move Via Table. Every move goes from the initial position to the
// table, or from the table to the goal position.
bool h2_full(StateSeq states, const RuleContext& ctx, const BlocksLayout& layout,
             Tally* tally = nullptr);
bool h2_full(StateSeq states, const StateVector& init, const StateVector& goal);
bool h2_cross(StateSeq prefix, StateSeq suffix, const RuleContext& ctx, const BlocksLayout& layout,
              Tally* tally = nullptr);

// Logistics: Limit Inefficiency.
bool logistics_full(StateSeq states, const RuleContext& ctx, const LogisticsLayout& layout,
                    Tally* tally = nullptr);
bool logistics_cross(StateSeq prefix, StateSeq suffix, const RuleContext& ctx,
                     const LogisticsLayout& layout, Tally* tally = nullptr);

// Tyre world: the six fixit constraints.
bool tyre_full(StateSeq states, const RuleContext& ctx, const TyreLayout& layout,
               Tally* tally = nullptr);
bool tyre_cross(StateSeq prefix, StateSeq suffix, const RuleContext& ctx, const TyreLayout& layout,
                Tally* tally = nullptr);

ControlRule make_loop_rule(Refinement refinement);
ControlRule make_trivial_rule();
ControlRule make_h1_rule(const BlocksLayout& layout);
ControlRule make_h2_rule(const BlocksLayout& layout);
ControlRule make_logistics_rule(const LogisticsLayout& layout);
ControlRule make_tyre_rule(const TyreLayout& layout);

// Regression form of a forward rule: the regressed-condition sequence is
// reversed into execution order before the forward rule sees it.
ControlRule reversed_rule(ControlRule forward);

// "none" | "h1" | "h2" | "logistics" | "tyre", bound to the domain's
// annotations and adapted to the refinement.
ControlRule make_rule(std::string_view name, const Domain& domain, Refinement refinement);

// Comma-separated list. "none" contributes the trivial rule.
std::vector<ControlRule> make_rules(std::string_view names, const Domain& domain,
                                    Refinement refinement);

// Random state sequences shaped like a domain's: walks that mix operator
// applications, small random mutations and repeated states.
class SequenceSource {
 public:
  // allow_zeros sprinkles don't-care values, as regressed conditions have.
  SequenceSource(std::shared_ptr<const Problem> problem, bool allow_zeros = false);

  std::vector<StateVector> draw(Rng& rng, std::size_t length) const;
  // `length` states, each one step on from the previous; `from` not included.
  std::vector<StateVector> continue_from(Rng& rng, const StateVector& from,
                                         std::size_t length) const;
  StateVector draw_state(Rng& rng) const;
  RuleContext context() const { return {problem_->init, problem_->goal}; }

 private:
  StateVector step(Rng& rng, const StateVector& from) const;

  std::shared_ptr<const Problem> problem_;
  bool allow_zeros_;
};

struct LawViolation {
  std::string law;  // "concatenation", "window", "empty", "singleton"
  std::vector<StateVector> first;
  std::vector<StateVector> second;
};

struct LawReport {
  std::string rule;
  std::size_t trials = 0;
  std::vector<LawViolation> counterexamples;

  bool passed() const { return counterexamples.empty(); }
};

LawReport check_laws(const ControlRule& rule, const SequenceSource& source, std::size_t trials,
                     std::uint64_t seed);

}  // namespace foldplan
