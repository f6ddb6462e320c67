#include "foldplan/control.hpp"

#include <algorithm>
#include <cmath>

namespace foldplan {
namespace {

// A variable "moves" between two conditions only when both assign it. In
// forward search every state is fully assigned, so this is plain inequality;
// for regressed conditions it skips comparisons against don't-care values.
inline bool moved(Value a, Value b) { return a != 0 && b != 0 && a != b; }

// Read-only view of prefix ++ suffix without copying.
class Joined {
 public:
  Joined(StateSeq a, StateSeq b) : a_(a), b_(b) {}
  std::size_t size() const { return a_.size() + b_.size(); }
  const StateVector& operator[](std::size_t k) const {
    return k < a_.size() ? a_[k] : b_[k - a_.size()];
  }

 private:
  StateSeq a_;
  StateSeq b_;
};

std::vector<std::size_t> indices(const Domain& domain, const std::string& key,
                                 const std::string& rule) {
  const auto* values = domain.annotation(key);
  if (values == nullptr) {
    throw RuleError("rule '" + rule + "' needs annotation '" + key + "', which domain '" +
                    domain.name() + "' lacks");
  }
  std::vector<std::size_t> out;
  out.reserve(values->size());
  for (Value v : *values) {
    if (v < 1 || static_cast<std::size_t>(v) > domain.num_vars()) {
      throw RuleError("annotation '" + key + "' names variable " + std::to_string(v) +
                      " outside the domain");
    }
    out.push_back(static_cast<std::size_t>(v - 1));
  }
  return out;
}

std::size_t single_index(const Domain& domain, const std::string& key, const std::string& rule) {
  auto v = indices(domain, key, rule);
  if (v.size() != 1) throw RuleError("annotation '" + key + "' must name exactly one variable");
  return v.front();
}

// Cross check for a predicate over adjacent pairs: the boundary pair plus the
// pairs inside the suffix.
template <typename PairOk>
bool pairwise_cross(StateSeq prefix, StateSeq suffix, bool include_suffix, PairOk&& ok) {
  if (prefix.empty() || suffix.empty()) return true;
  if (!ok(prefix.back(), suffix.front())) return false;
  if (include_suffix) {
    for (std::size_t t = 0; t + 1 < suffix.size(); ++t) {
      if (!ok(suffix[t], suffix[t + 1])) return false;
    }
  }
  return true;
}

template <typename PairOk>
bool pairwise_full(StateSeq states, PairOk&& ok) {
  for (std::size_t t = 0; t + 1 < states.size(); ++t) {
    if (!ok(states[t], states[t + 1])) return false;
  }
  return true;
}

template <typename TripleOk>
bool triple_full(StateSeq states, TripleOk&& ok) {
  for (std::size_t t = 0; t + 2 < states.size(); ++t) {
    if (!ok(states[t], states[t + 1], states[t + 2])) return false;
  }
  return true;
}

// Triples with at least one state on each side of the boundary.
template <typename TripleOk>
bool triple_cross(StateSeq prefix, StateSeq suffix, TripleOk&& ok) {
  if (prefix.empty() || suffix.empty()) return true;
  Joined all(prefix, suffix);
  const std::size_t first = prefix.size() >= 2 ? prefix.size() - 2 : 0;
  for (std::size_t t = first; t < prefix.size() && t + 2 < all.size(); ++t) {
    if (!ok(all[t], all[t + 1], all[t + 2])) return false;
  }
  return true;
}

// --- H1 -------------------------------------------------------------------

bool h1_triple(const StateVector& a, const StateVector& b, const StateVector& c,
               const BlocksLayout& layout, Tally* tally) {
  for (std::size_t p : layout.positions) {
    count(tally);
    if (moved(a[p], b[p])) {
      count(tally);
      if (c[p] != 0 && c[p] != b[p]) return false;
    }
  }
  return true;
}

// --- H2 -------------------------------------------------------------------

bool h2_pair(const StateVector& a, const StateVector& b, const RuleContext& ctx,
             const BlocksLayout& layout, Tally* tally) {
  for (std::size_t p : layout.positions) {
    count(tally);
    if (!moved(a[p], b[p])) continue;
    count(tally, 2);
    const bool init_to_table = a[p] == ctx.init[p] && b[p] == layout.table;
    const bool table_to_goal = a[p] == layout.table && b[p] == ctx.goal[p];
    if (!init_to_table && !table_to_goal) return false;
  }
  return true;
}

// --- Logistics ------------------------------------------------------------

bool plane_flew(const StateVector& a, const StateVector& b, std::size_t var, Tally* tally) {
  count(tally);
  return moved(a[var], b[var]);
}

// A package moved into or out of the plane.
bool plane_touched(const StateVector& a, const StateVector& b, Value code,
                   const LogisticsLayout& layout, Tally* tally) {
  for (std::size_t g : layout.package_vars) {
    count(tally);
    if (moved(a[g], b[g]) && (a[g] == code || b[g] == code)) return true;
  }
  return false;
}

// Replays the flight bookkeeping of one plane over transitions [from, to) of
// `all`, starting with `pending` (a flight not yet followed by a load or
// unload). Returns false on a second flight with no cargo handled since.
bool replay_flights(const Joined& all, std::size_t from, std::size_t to, std::size_t var,
                    Value code, bool pending, const LogisticsLayout& layout, Tally* tally) {
  for (std::size_t t = from; t < to; ++t) {
    const bool flew = plane_flew(all[t], all[t + 1], var, tally);
    const bool touched = plane_touched(all[t], all[t + 1], code, layout, tally);
    if (flew && pending && !touched) return false;
    pending = flew || (pending && !touched);
  }
  return true;
}

bool package_pair(const StateVector& a, const StateVector& b, const RuleContext& ctx,
                  const LogisticsLayout& layout, Tally* tally) {
  for (std::size_t g : layout.package_vars) {
    count(tally);
    if (!moved(a[g], b[g])) continue;
    count(tally, 3);
    // Trajectory is a prefix of [init place, some plane, goal place]; a
    // package sitting at its goal never leaves.
    const bool loaded_from_init =
        a[g] == ctx.init[g] && a[g] != ctx.goal[g] && layout.is_plane_code(b[g]);
    const bool unloaded_at_goal = layout.is_plane_code(a[g]) && b[g] == ctx.goal[g];
    if (!loaded_from_init && !unloaded_at_goal) return false;
  }
  return true;
}

// --- Tyre -----------------------------------------------------------------

bool tyre_triple(const StateVector& a, const StateVector& b, const StateVector& c, Tally* tally) {
  std::size_t changed = 0;
  std::size_t var = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    count(tally);
    if (moved(a[i], b[i])) {
      ++changed;
      var = i;
    }
  }
  if (changed != 1) return true;
  count(tally);
  return !moved(b[var], c[var]);
}

bool at_goal(const StateVector& s, const StateVector& goal, std::size_t i, Tally* tally) {
  count(tally);
  return goal[i] == 0 || s[i] == goal[i];
}

bool tyre_pair(const StateVector& a, const StateVector& b, const RuleContext& ctx,
               const TyreLayout& layout, Tally* tally) {
  const StateVector& goal = ctx.goal;

  // Rule 2: the boot changes only when every other goal variable is done.
  bool boot_moves = false;
  for (std::size_t v : layout.boot) {
    count(tally);
    if (moved(a[v], b[v])) boot_moves = true;
  }
  if (boot_moves) {
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (std::find(layout.boot.begin(), layout.boot.end(), i) != layout.boot.end()) continue;
      if (!at_goal(a, goal, i, tally)) return false;
    }
  }

  count(tally);
  const bool hub_free = a[layout.hub_free] == kTrue;
  if (hub_free) {
    // Rule 3: no fixing up a free hub.
    for (std::size_t v : layout.hub_fix) {
      count(tally);
      if (moved(a[v], b[v])) return false;
    }
    // Rule 4: no jacking down a hub without its wheel.
    count(tally, 2);
    if (a[layout.hub_ground] == kFalse && b[layout.hub_ground] == kTrue) return false;
  }

  // Rule 5: pump and wrench are stowed only after wheels and hub are final.
  for (std::size_t v : layout.tools) {
    count(tally);
    if (goal[v] == 0 || !moved(a[v], b[v]) || b[v] != goal[v]) continue;
    for (std::size_t i : layout.wheel_hub) {
      if (!at_goal(a, goal, i, tally)) return false;
    }
  }

  // Rule 6: a wheel variable at its goal value stays there.
  for (std::size_t v : layout.wheels) {
    count(tally);
    if (goal[v] != 0 && a[v] == goal[v] && moved(a[v], b[v])) return false;
  }
  return true;
}

}  // namespace

// --- Layouts --------------------------------------------------------------

BlocksLayout BlocksLayout::for_width(std::size_t width) {
  BlocksLayout layout;
  for (std::size_t i = 0; i < width; i += 2) layout.positions.push_back(i);
  layout.table = static_cast<Value>(1 + std::lround(static_cast<double>(width) / 2.0));
  return layout;
}

BlocksLayout BlocksLayout::from_domain(const Domain& domain) {
  BlocksLayout layout;
  layout.positions = indices(domain, "positions", "blocks");
  const auto* table = domain.annotation("table");
  if (table == nullptr || table->size() != 1) {
    throw RuleError("blocks rules need a single-valued 'table' annotation, which domain '" +
                    domain.name() + "' lacks");
  }
  layout.table = table->front();
  return layout;
}

LogisticsLayout LogisticsLayout::from_domain(const Domain& domain) {
  LogisticsLayout layout;
  layout.plane_vars = indices(domain, "planes", "logistics");
  layout.package_vars = indices(domain, "packages", "logistics");
  const auto* codes = domain.annotation("plane_codes");
  if (codes == nullptr || codes->size() != layout.plane_vars.size()) {
    throw RuleError("logistics rule needs one 'plane_codes' entry per plane in domain '" +
                    domain.name() + "'");
  }
  layout.plane_codes = *codes;
  return layout;
}

bool LogisticsLayout::is_plane_code(Value v) const {
  return std::find(plane_codes.begin(), plane_codes.end(), v) != plane_codes.end();
}

TyreLayout TyreLayout::from_domain(const Domain& domain) {
  TyreLayout layout;
  layout.boot = indices(domain, "boot", "tyre");
  layout.tools = indices(domain, "tools", "tyre");
  layout.wheel_hub = indices(domain, "wheel_hub", "tyre");
  layout.wheels = indices(domain, "wheels", "tyre");
  layout.hub_free = single_index(domain, "hub_free", "tyre");
  layout.hub_fix = indices(domain, "hub_fix", "tyre");
  layout.hub_ground = single_index(domain, "hub_ground", "tyre");
  return layout;
}

// --- Predicates -----------------------------------------------------------

bool h1_full(StateSeq states, const BlocksLayout& layout, Tally* tally) {
  return triple_full(states, [&](const auto& a, const auto& b, const auto& c) {
    return h1_triple(a, b, c, layout, tally);
  });
}

bool h1_full(StateSeq states, const StateVector&, const StateVector&) {
  if (states.empty()) return true;
  return h1_full(states, BlocksLayout::for_width(states.front().size()));
}

bool h1_cross(StateSeq prefix, StateSeq suffix, const BlocksLayout& layout, Tally* tally) {
  return triple_cross(prefix, suffix, [&](const auto& a, const auto& b, const auto& c) {
    return h1_triple(a, b, c, layout, tally);
  });
}

bool h2_full(StateSeq states, const RuleContext& ctx, const BlocksLayout& layout, Tally* tally) {
  return pairwise_full(states,
                       [&](const auto& a, const auto& b) { return h2_pair(a, b, ctx, layout, tally); });
}

bool h2_full(StateSeq states, const StateVector& init, const StateVector& goal) {
  if (states.empty()) return true;
  return h2_full(states, RuleContext{init, goal}, BlocksLayout::for_width(states.front().size()));
}

bool h2_cross(StateSeq prefix, StateSeq suffix, const RuleContext& ctx, const BlocksLayout& layout,
              Tally* tally) {
  return pairwise_cross(prefix, suffix, true, [&](const auto& a, const auto& b) {
    return h2_pair(a, b, ctx, layout, tally);
  });
}

bool logistics_full(StateSeq states, const RuleContext& ctx, const LogisticsLayout& layout,
                    Tally* tally) {
  if (states.size() < 2) return true;
  Joined all(states, {});
  for (std::size_t k = 0; k < layout.plane_vars.size(); ++k) {
    if (!replay_flights(all, 0, states.size() - 1, layout.plane_vars[k], layout.plane_codes[k],
                        false, layout, tally)) {
      return false;
    }
  }
  return pairwise_full(states, [&](const auto& a, const auto& b) {
    return package_pair(a, b, ctx, layout, tally);
  });
}

bool logistics_cross(StateSeq prefix, StateSeq suffix, const RuleContext& ctx,
                     const LogisticsLayout& layout, Tally* tally) {
  if (prefix.empty() || suffix.empty()) return true;
  Joined all(prefix, suffix);
  for (std::size_t k = 0; k < layout.plane_vars.size(); ++k) {
    const std::size_t var = layout.plane_vars[k];
    const Value code = layout.plane_codes[k];
    // Most recent flight or cargo event of this plane inside the prefix.
    bool pending = false;
    for (std::size_t t = prefix.size() - 1; t-- > 0;) {
      const bool flew = plane_flew(prefix[t], prefix[t + 1], var, tally);
      const bool touched = plane_touched(prefix[t], prefix[t + 1], code, layout, tally);
      if (flew || touched) {
        pending = flew;
        break;
      }
    }
    if (!replay_flights(all, prefix.size() - 1, all.size() - 1, var, code, pending, layout,
                        tally)) {
      return false;
    }
  }
  return pairwise_cross(prefix, suffix, false, [&](const auto& a, const auto& b) {
    return package_pair(a, b, ctx, layout, tally);
  });
}

bool tyre_full(StateSeq states, const RuleContext& ctx, const TyreLayout& layout, Tally* tally) {
  return triple_full(states,
                     [&](const auto& a, const auto& b, const auto& c) {
                       return tyre_triple(a, b, c, tally);
                     }) &&
         pairwise_full(states, [&](const auto& a, const auto& b) {
           return tyre_pair(a, b, ctx, layout, tally);
         });
}

bool tyre_cross(StateSeq prefix, StateSeq suffix, const RuleContext& ctx, const TyreLayout& layout,
                Tally* tally) {
  return triple_cross(prefix, suffix,
                      [&](const auto& a, const auto& b, const auto& c) {
                        return tyre_triple(a, b, c, tally);
                      }) &&
         pairwise_cross(prefix, suffix, false, [&](const auto& a, const auto& b) {
           return tyre_pair(a, b, ctx, layout, tally);
         });
}

// --- Rule bundles -----------------------------------------------------------

ControlRule make_loop_rule(Refinement refinement) {
  ControlRule rule;
  rule.name = "no-moves-back";
  if (refinement == Refinement::kFss) {
    rule.full_check = [](StateSeq s, const RuleContext&, Tally* t) {
      return fss_no_moves_back(s, t);
    };
    rule.cross_check = [](StateSeq p, StateSeq s, const RuleContext&, Tally* t) {
      return fss_cross_no_moves_back(p, s, t);
    };
  } else {
    rule.full_check = [](StateSeq s, const RuleContext&, Tally* t) {
      return bss_no_moves_back(s, t);
    };
    rule.cross_check = [](StateSeq p, StateSeq s, const RuleContext&, Tally* t) {
      return bss_cross_no_moves_back(p, s, t);
    };
  }
  rule.window = kUnboundedWindow;
  rule.empty_value = false;
  rule.singleton_value = true;
  return rule;
}

ControlRule make_trivial_rule() {
  ControlRule rule;
  rule.name = "none";
  rule.full_check = [](StateSeq, const RuleContext&, Tally*) { return true; };
  rule.cross_check = [](StateSeq, StateSeq, const RuleContext&, Tally*) { return true; };
  rule.window = 0;
  return rule;
}

ControlRule make_h1_rule(const BlocksLayout& layout) {
  ControlRule rule;
  rule.name = "h1";
  rule.full_check = [layout](StateSeq s, const RuleContext&, Tally* t) {
    return h1_full(s, layout, t);
  };
  rule.cross_check = [layout](StateSeq p, StateSeq s, const RuleContext&, Tally* t) {
    return h1_cross(p, s, layout, t);
  };
  rule.window = 2;
  return rule;
}

ControlRule make_h2_rule(const BlocksLayout& layout) {
  ControlRule rule;
  rule.name = "h2";
  rule.full_check = [layout](StateSeq s, const RuleContext& c, Tally* t) {
    return h2_full(s, c, layout, t);
  };
  rule.cross_check = [layout](StateSeq p, StateSeq s, const RuleContext& c, Tally* t) {
    return h2_cross(p, s, c, layout, t);
  };
  rule.window = 1;
  return rule;
}

ControlRule make_logistics_rule(const LogisticsLayout& layout) {
  ControlRule rule;
  rule.name = "logistics";
  rule.full_check = [layout](StateSeq s, const RuleContext& c, Tally* t) {
    return logistics_full(s, c, layout, t);
  };
  rule.cross_check = [layout](StateSeq p, StateSeq s, const RuleContext& c, Tally* t) {
    return logistics_cross(p, s, c, layout, t);
  };
  // A plane's previous flight can lie arbitrarily far back.
  rule.window = kUnboundedWindow;
  return rule;
}

ControlRule make_tyre_rule(const TyreLayout& layout) {
  ControlRule rule;
  rule.name = "tyre";
  rule.full_check = [layout](StateSeq s, const RuleContext& c, Tally* t) {
    return tyre_full(s, c, layout, t);
  };
  rule.cross_check = [layout](StateSeq p, StateSeq s, const RuleContext& c, Tally* t) {
    return tyre_cross(p, s, c, layout, t);
  };
  rule.window = 2;
  return rule;
}

ControlRule reversed_rule(ControlRule forward) {
  ControlRule rule;
  rule.name = forward.name;
  rule.window = forward.window;
  rule.empty_value = forward.empty_value;
  rule.singleton_value = forward.singleton_value;
  // Reversed copy of the last `keep` states; a windowed check sees no more.
  auto reversed = [](StateSeq s, std::size_t keep) {
    if (keep < s.size()) s = s.subspan(s.size() - keep);
    return std::vector<StateVector>(s.rbegin(), s.rend());
  };
  FullCheck full = forward.full_check;
  CrossCheck cross = forward.cross_check;
  const std::size_t window = forward.window;
  rule.full_check = [full, reversed](StateSeq s, const RuleContext& c, Tally* t) {
    return full(reversed(s, kUnboundedWindow), c, t);
  };
  // S1 ++ S2 in regression order is rev(S2) ++ rev(S1) in execution order.
  rule.cross_check = [cross, reversed, window](StateSeq p, StateSeq s, const RuleContext& c,
                                               Tally* t) {
    return cross(reversed(s, kUnboundedWindow), reversed(p, window), c, t);
  };
  return rule;
}

ControlRule make_rule(std::string_view name, const Domain& domain, Refinement refinement) {
  ControlRule rule;
  if (name == "none") {
    return make_trivial_rule();
  } else if (name == "h1") {
    rule = make_h1_rule(BlocksLayout::from_domain(domain));
  } else if (name == "h2") {
    rule = make_h2_rule(BlocksLayout::from_domain(domain));
  } else if (name == "logistics") {
    rule = make_logistics_rule(LogisticsLayout::from_domain(domain));
  } else if (name == "tyre") {
    rule = make_tyre_rule(TyreLayout::from_domain(domain));
  } else {
    throw RuleError("unknown control rule '" + std::string(name) + "'");
  }
  return refinement == Refinement::kFss ? rule : reversed_rule(std::move(rule));
}

std::vector<ControlRule> make_rules(std::string_view names, const Domain& domain,
                                    Refinement refinement) {
  std::vector<ControlRule> rules;
  std::size_t start = 0;
  while (start <= names.size()) {
    const std::size_t comma = names.find(',', start);
    const std::size_t end = comma == std::string_view::npos ? names.size() : comma;
    const std::string_view name = names.substr(start, end - start);
    if (name.empty()) throw RuleError("empty control rule name in '" + std::string(names) + "'");
    rules.push_back(make_rule(name, domain, refinement));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return rules;
}

// --- Law checking -----------------------------------------------------------

SequenceSource::SequenceSource(std::shared_ptr<const Problem> problem, bool allow_zeros)
    : problem_(std::move(problem)), allow_zeros_(allow_zeros) {}

StateVector SequenceSource::step(Rng& rng, const StateVector& from) const {
  const Domain& domain = *problem_->domain;
  switch (draw_below(rng, 8)) {
    case 0:
      return from;
    case 1:
    case 2: {
      StateVector s = from;
      const std::size_t flips = 1 + draw_below(rng, 2);
      for (std::size_t k = 0; k < flips; ++k) {
        const std::size_t i = draw_below(rng, s.size());
        const Value lo = allow_zeros_ ? 0 : 1;
        s[i] = lo + static_cast<Value>(draw_below(rng, static_cast<std::uint64_t>(
                                                           domain.var_max(i) - lo + 1)));
      }
      return s;
    }
    default: {
      const std::size_t n = domain.num_operators();
      for (std::size_t attempt = 0; attempt < 4 * n; ++attempt) {
        const auto& op = domain.operators()[draw_below(rng, n)];
        if (auto next = apply(from, op)) return *next;
      }
      return from;
    }
  }
}

StateVector SequenceSource::draw_state(Rng& rng) const {
  StateVector s = problem_->init;
  const std::size_t walk = draw_below(rng, 6);
  for (std::size_t k = 0; k < walk; ++k) s = step(rng, s);
  if (allow_zeros_ && coin(rng)) {
    for (std::size_t i = 0; i < s.size(); ++i) {
      if (draw_below(rng, 3) == 0) s[i] = 0;
    }
  }
  return s;
}

std::vector<StateVector> SequenceSource::draw(Rng& rng, std::size_t length) const {
  if (length == 0) return {};
  auto out = continue_from(rng, draw_state(rng), length - 1);
  out.insert(out.begin(), draw_state(rng));
  return out;
}

std::vector<StateVector> SequenceSource::continue_from(Rng& rng, const StateVector& from,
                                                       std::size_t length) const {
  std::vector<StateVector> out;
  out.reserve(length);
  const StateVector* prev = &from;
  for (std::size_t k = 0; k < length; ++k) {
    out.push_back(step(rng, *prev));
    prev = &out.back();
  }
  return out;
}

LawReport check_laws(const ControlRule& rule, const SequenceSource& source, std::size_t trials,
                     std::uint64_t seed) {
  LawReport report;
  report.rule = rule.name;
  report.trials = trials;
  Rng rng(seed);
  const RuleContext ctx = source.context();

  if (rule.full_check({}, ctx, nullptr) != rule.empty_value) {
    report.counterexamples.push_back({"empty", {}, {}});
  }

  for (std::size_t trial = 0; trial < trials; ++trial) {
    auto s1 = source.draw(rng, 1 + draw_below(rng, 6));
    // Continue from where s1 left off half of the time, so the boundary sees
    // realistic transitions as well as arbitrary jumps.
    auto s2 = coin(rng) ? source.draw(rng, 1 + draw_below(rng, 5))
                        : source.continue_from(rng, s1.back(), 1 + draw_below(rng, 5));

    std::vector<StateVector> joined = s1;
    joined.insert(joined.end(), s2.begin(), s2.end());
    const bool whole = rule.full_check(joined, ctx, nullptr);
    const bool parts = rule.full_check(s1, ctx, nullptr) && rule.full_check(s2, ctx, nullptr) &&
                       rule.cross_check(s1, s2, ctx, nullptr);
    if (whole != parts) report.counterexamples.push_back({"concatenation", s1, s2});

    const StateVector single[] = {s1.front()};
    if (rule.full_check(single, ctx, nullptr) != rule.singleton_value) {
      report.counterexamples.push_back({"singleton", {s1.front()}, {}});
    }

    if (rule.window != kUnboundedWindow && s1.size() > rule.window) {
      const StateVector next[] = {s2.front()};
      const StateSeq tail = StateSeq(s1).subspan(s1.size() - rule.window);
      if (rule.cross_check(s1, next, ctx, nullptr) != rule.cross_check(tail, next, ctx, nullptr)) {
        report.counterexamples.push_back({"window", s1, {s2.front()}});
      }
    }
  }
  return report;
}

}  // namespace foldplan
