#include "foldplan/domains.hpp"

#include <algorithm>
#include <numeric>

#include "foldplan/random.hpp"

namespace foldplan {
namespace {

std::string block_name(std::size_t b, std::size_t n) {
  if (b == n + 1) return "table";
  if (n <= 26) return std::string(1, static_cast<char>('A' + b - 1));
  return "b" + std::to_string(b);
}

std::size_t pos_var(std::size_t b) { return 2 * (b - 1); }
std::size_t clear_var(std::size_t b) { return 2 * (b - 1) + 1; }

std::vector<Value> annotation_range(std::size_t first, std::size_t last, std::size_t stride = 1) {
  std::vector<Value> out;
  for (std::size_t i = first; i <= last; i += stride) out.push_back(static_cast<Value>(i));
  return out;
}

// Random placement of blocks in `order`: each lands on the table or on a
// block that is still clear, uniformly.
std::vector<Value> random_configuration(std::size_t n, Rng& rng) {
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 1);
  for (std::size_t i = n; i > 1; --i) std::swap(order[i - 1], order[draw_below(rng, i)]);

  const auto table = static_cast<Value>(n + 1);
  std::vector<Value> positions(n, table);
  std::vector<std::size_t> clear;
  for (std::size_t b : order) {
    const std::size_t pick = draw_below(rng, clear.size() + 1);
    if (pick < clear.size()) {
      positions[b - 1] = static_cast<Value>(clear[pick]);
      clear.erase(clear.begin() + static_cast<std::ptrdiff_t>(pick));
    }
    clear.push_back(b);
  }
  return positions;
}

StateVector blocks_goal(const std::vector<Value>& positions) {
  StateVector goal = StateVector::zeros(2 * positions.size());
  for (std::size_t b = 1; b <= positions.size(); ++b) goal[pos_var(b)] = positions[b - 1];
  return goal;
}

}  // namespace

std::shared_ptr<const Domain> blocks_domain(std::size_t n) {
  if (n < 1) throw StructuralError("blocks domain needs at least one block");
  const std::size_t width = 2 * n;
  const auto table = static_cast<Value>(n + 1);
  std::vector<Operator> ops;
  for (std::size_t b = 1; b <= n; ++b) {
    for (std::size_t from = 1; from <= n + 1; ++from) {
      for (std::size_t to = 1; to <= n + 1; ++to) {
        if (from == to || from == b || to == b) continue;
        Operator op{"move(" + block_name(b, n) + "," + block_name(from, n) + "," +
                        block_name(to, n) + ")",
                    StateVector::zeros(width), StateVector::zeros(width)};
        op.pre[pos_var(b)] = static_cast<Value>(from);
        op.pre[clear_var(b)] = kTrue;
        op.post[pos_var(b)] = static_cast<Value>(to);
        op.post[clear_var(b)] = kTrue;
        if (from != n + 1) {
          op.pre[clear_var(from)] = kFalse;
          op.post[clear_var(from)] = kTrue;
        }
        if (to != n + 1) {
          op.pre[clear_var(to)] = kTrue;
          op.post[clear_var(to)] = kFalse;
        }
        ops.push_back(std::move(op));
      }
    }
  }
  std::vector<Value> var_max(width);
  for (std::size_t b = 1; b <= n; ++b) {
    var_max[pos_var(b)] = table;
    var_max[clear_var(b)] = kFalse;
  }
  Annotations annot{{"blocks", {static_cast<Value>(n)}},
                    {"positions", annotation_range(1, width - 1, 2)},
                    {"table", {table}}};
  return std::make_shared<const Domain>("blocks-" + std::to_string(n), width, std::move(var_max),
                                        std::move(ops), std::move(annot));
}

StateVector blocks_state(const std::vector<Value>& positions) {
  const std::size_t n = positions.size();
  StateVector s = StateVector::zeros(2 * n);
  for (std::size_t b = 1; b <= n; ++b) {
    s[pos_var(b)] = positions[b - 1];
    s[clear_var(b)] = kTrue;
  }
  for (std::size_t b = 1; b <= n; ++b) {
    const Value under = positions[b - 1];
    if (under >= 1 && static_cast<std::size_t>(under) <= n) {
      s[clear_var(static_cast<std::size_t>(under))] = kFalse;
    }
  }
  return s;
}

bool blocks_consistent(const StateVector& state, std::size_t n) {
  if (state.size() != 2 * n) return false;
  const auto table = static_cast<Value>(n + 1);
  std::vector<int> load(n + 1, 0);
  for (std::size_t b = 1; b <= n; ++b) {
    const Value p = state[pos_var(b)];
    if (p < 1 || p > table || static_cast<std::size_t>(p) == b) return false;
    if (p != table && ++load[static_cast<std::size_t>(p)] > 1) return false;
  }
  for (std::size_t b = 1; b <= n; ++b) {
    const Value expected = load[b] == 0 ? kTrue : kFalse;
    if (state[clear_var(b)] != expected) return false;
    // Walk down; more than n hops means a cycle.
    std::size_t cur = b;
    for (std::size_t hops = 0;; ++hops) {
      const Value p = state[pos_var(cur)];
      if (p == table) break;
      if (hops >= n) return false;
      cur = static_cast<std::size_t>(p);
    }
  }
  return true;
}

std::vector<Value> a_on_top_positions(std::size_t n) {
  std::vector<Value> pos(n);
  for (std::size_t b = 1; b <= n; ++b) pos[b - 1] = static_cast<Value>(b + 1);
  return pos;
}

std::vector<Value> n_on_top_positions(std::size_t n) {
  std::vector<Value> pos(n);
  pos[0] = static_cast<Value>(n + 1);
  for (std::size_t b = 2; b <= n; ++b) pos[b - 1] = static_cast<Value>(b - 1);
  return pos;
}

Problem gen_stack_inversion(std::size_t n) {
  if (n < 2) throw StructuralError("stack inversion needs at least two blocks");
  return Problem("blocks-inversion-" + std::to_string(n), blocks_domain(n),
                 blocks_state(a_on_top_positions(n)), blocks_goal(n_on_top_positions(n)));
}

Problem gen_stack_building(std::size_t n, std::uint64_t seed) {
  if (n < 2 || n % 2 != 0) throw StructuralError("stack building needs an even n >= 2");
  Rng rng(seed);
  const std::size_t half = n / 2;
  const auto table = static_cast<Value>(n + 1);
  std::vector<Value> positions(n, table);
  std::vector<std::size_t> bases(half);
  std::iota(bases.begin(), bases.end(), 1);
  for (std::size_t b = half + 1; b <= n; ++b) {
    const std::size_t pick = draw_below(rng, bases.size() + 1);
    if (pick < bases.size()) {
      positions[b - 1] = static_cast<Value>(bases[pick]);
      bases.erase(bases.begin() + static_cast<std::ptrdiff_t>(pick));
    }
  }
  const auto goal = seed % 2 == 0 ? a_on_top_positions(n) : n_on_top_positions(n);
  return Problem("blocks-stack-" + std::to_string(n) + "-s" + std::to_string(seed),
                 blocks_domain(n), blocks_state(positions), blocks_goal(goal));
}

Problem gen_blocks_random(std::size_t n, std::uint64_t seed) {
  if (n < 2) throw StructuralError("random blocks problems need at least two blocks");
  Rng rng(seed);
  const auto init = random_configuration(n, rng);
  const auto target = random_configuration(n, rng);

  std::vector<std::size_t> blocks(n);
  std::iota(blocks.begin(), blocks.end(), 1);
  const std::size_t constrained = (n + 1) / 2;
  for (std::size_t i = 0; i < constrained; ++i) {
    std::swap(blocks[i], blocks[i + draw_below(rng, n - i)]);
  }
  StateVector goal = StateVector::zeros(2 * n);
  for (std::size_t i = 0; i < constrained; ++i) {
    const std::size_t b = blocks[i];
    goal[pos_var(b)] = target[b - 1];
  }
  return Problem("blocks-random-" + std::to_string(n) + "-s" + std::to_string(seed),
                 blocks_domain(n), blocks_state(init), std::move(goal));
}

std::shared_ptr<const Domain> logistics_domain(std::size_t k) {
  if (k < 1) throw StructuralError("logistics needs at least one plane");
  const std::size_t places = 2 * k;
  const std::size_t packages = 3 * k;
  const std::size_t width = k + packages;
  auto plane_code = [&](std::size_t p) { return static_cast<Value>(places + p); };
  auto plane_var = [](std::size_t p) { return p - 1; };
  auto package_var = [&](std::size_t g) { return k + g - 1; };

  std::vector<Operator> ops;
  auto blank = [&](std::string name) {
    return Operator{std::move(name), StateVector::zeros(width), StateVector::zeros(width)};
  };
  for (std::size_t p = 1; p <= k; ++p) {
    for (std::size_t from = 1; from <= places; ++from) {
      for (std::size_t to = 1; to <= places; ++to) {
        if (from == to) continue;
        Operator op = blank("fly(P" + std::to_string(p) + ",L" + std::to_string(from) + ",L" +
                            std::to_string(to) + ")");
        op.pre[plane_var(p)] = static_cast<Value>(from);
        op.post[plane_var(p)] = static_cast<Value>(to);
        ops.push_back(std::move(op));
      }
    }
  }
  for (const bool loading : {true, false}) {
    for (std::size_t g = 1; g <= packages; ++g) {
      for (std::size_t p = 1; p <= k; ++p) {
        for (std::size_t at = 1; at <= places; ++at) {
          Operator op = blank(std::string(loading ? "load" : "unload") + "(G" + std::to_string(g) +
                              ",P" + std::to_string(p) + ",L" + std::to_string(at) + ")");
          op.pre[plane_var(p)] = static_cast<Value>(at);
          op.pre[package_var(g)] = loading ? static_cast<Value>(at) : plane_code(p);
          op.post[package_var(g)] = loading ? plane_code(p) : static_cast<Value>(at);
          ops.push_back(std::move(op));
        }
      }
    }
  }

  std::vector<Value> var_max(width, static_cast<Value>(places + k));
  for (std::size_t p = 1; p <= k; ++p) var_max[plane_var(p)] = static_cast<Value>(places);
  Annotations annot{{"planes", annotation_range(1, k)},
                    {"plane_codes", annotation_range(places + 1, places + k)},
                    {"packages", annotation_range(k + 1, width)},
                    {"places", {static_cast<Value>(places)}}};
  return std::make_shared<const Domain>("logistics-" + std::to_string(k), width,
                                        std::move(var_max), std::move(ops), std::move(annot));
}

Problem gen_logistics(std::size_t k) {
  auto domain = logistics_domain(k);
  StateVector init = StateVector::zeros(domain->num_vars());
  // Places 1..k hold plane p and package p; places k+1..2k hold two
  // packages each.
  for (std::size_t p = 1; p <= k; ++p) {
    init[p - 1] = static_cast<Value>(p);
    init[k + p - 1] = static_cast<Value>(p);
  }
  for (std::size_t j = 0; j < k; ++j) {
    const auto place = static_cast<Value>(k + 1 + j);
    init[k + (k + 2 * j)] = place;
    init[k + (k + 2 * j + 1)] = place;
  }
  StateVector goal(std::vector<Value>(domain->num_vars(), 1));
  return Problem("logistics-" + std::to_string(k), std::move(domain), std::move(init),
                 std::move(goal));
}

// Tyre world variables (1-based), all boolean.
namespace tyre {
enum Var : std::size_t {
  kBootOpen = 1,
  kBootClosed,
  kBootLocked,
  kInJack,
  kInPump,
  kInWrench,
  kInWheel1,
  kInWheel2,
  kHaveJack,
  kHavePump,
  kHaveWrench,
  kHaveWheel1,
  kHaveWheel2,
  kHaveNuts,
  kNutsTight,
  kNutsLoose,
  kHubOnGround,
  kHubFastened,
  kHubUnfastened,
  kHubFree,
  kWheel1OnHub,
  kWheel2OnHub,
  kWheel1Inflated,
  kWheel2Inflated,
  kWheel1Intact,
  kWheel2Intact,
  kAnnoyed,
  kCount = kAnnoyed
};
}  // namespace tyre

std::shared_ptr<const Domain> tyre_domain() {
  using namespace tyre;
  const std::size_t width = kCount;
  struct Cond {
    Var var;
    Value value;
  };
  std::vector<Operator> ops;
  auto add = [&](std::string name, std::initializer_list<Cond> pre,
                 std::initializer_list<Cond> post) {
    Operator op{std::move(name), StateVector::zeros(width), StateVector::zeros(width)};
    for (const Cond& c : pre) op.pre[c.var - 1] = c.value;
    for (const Cond& c : post) op.post[c.var - 1] = c.value;
    ops.push_back(std::move(op));
  };
  const Value T = kTrue;
  const Value F = kFalse;

  add("open(boot)", {{kBootLocked, F}, {kBootClosed, T}}, {{kBootOpen, T}, {kBootClosed, F}});
  add("close(boot)", {{kBootOpen, T}}, {{kBootClosed, T}, {kBootOpen, F}});

  struct Stowable {
    const char* name;
    Var in;
    Var have;
  };
  const Stowable stowables[] = {{"jack", kInJack, kHaveJack},
                                {"pump", kInPump, kHavePump},
                                {"wrench", kInWrench, kHaveWrench},
                                {"wheel1", kInWheel1, kHaveWheel1},
                                {"wheel2", kInWheel2, kHaveWheel2}};
  for (const Stowable& s : stowables) {
    add(std::string("fetch(") + s.name + ",boot)", {{s.in, T}, {kBootOpen, T}},
        {{s.have, T}, {s.in, F}});
  }
  for (const Stowable& s : stowables) {
    add(std::string("put-away(") + s.name + ",boot)", {{s.have, T}, {kBootOpen, T}},
        {{s.in, T}, {s.have, F}});
  }

  add("loosen(nuts,hub)", {{kHaveWrench, T}, {kNutsTight, T}, {kHubOnGround, T}},
      {{kNutsLoose, T}, {kNutsTight, F}});
  add("tighten(nuts,hub)", {{kHaveWrench, T}, {kNutsLoose, T}, {kHubOnGround, T}},
      {{kNutsTight, T}, {kNutsLoose, F}});
  add("jack-up(hub)", {{kHubOnGround, T}, {kHaveJack, T}}, {{kHubOnGround, F}, {kHaveJack, F}});
  add("jack-down(hub)", {{kHubOnGround, F}}, {{kHubOnGround, T}, {kHaveJack, T}});
  add("undo(nuts,hub)",
      {{kHubOnGround, F}, {kHubFastened, T}, {kHaveWrench, T}, {kNutsLoose, T}},
      {{kHaveNuts, T}, {kHubUnfastened, T}, {kHubFastened, F}, {kNutsLoose, F}});
  add("do-up(nuts,hub)",
      {{kHaveWrench, T}, {kHubUnfastened, T}, {kHubOnGround, F}, {kHaveNuts, T}},
      {{kNutsLoose, T}, {kHubUnfastened, F}, {kHubFastened, T}, {kHaveNuts, F}});

  struct Wheel {
    const char* name;
    Var on;
    Var have;
    Var inflated;
    Var intact;
  };
  const Wheel wheels[] = {{"wheel1", kWheel1OnHub, kHaveWheel1, kWheel1Inflated, kWheel1Intact},
                          {"wheel2", kWheel2OnHub, kHaveWheel2, kWheel2Inflated, kWheel2Intact}};
  for (const Wheel& w : wheels) {
    add(std::string("remove-wheel(") + w.name + ",hub)",
        {{kHubOnGround, F}, {w.on, T}, {kHubUnfastened, T}},
        {{w.have, T}, {kHubFree, T}, {w.on, F}});
  }
  for (const Wheel& w : wheels) {
    add(std::string("put-on-wheel(") + w.name + ",hub)",
        {{w.have, T}, {kHubFree, T}, {kHubUnfastened, T}, {kHubOnGround, F}},
        {{w.on, T}, {kHubFree, F}, {w.have, F}});
  }
  for (const Wheel& w : wheels) {
    add(std::string("inflate(") + w.name + ")", {{kHavePump, T}, {w.inflated, F}, {w.intact, T}},
        {{w.inflated, T}});
  }
  add("cuss", {}, {{kAnnoyed, F}});

  auto idx = [](std::initializer_list<Var> vars) {
    std::vector<Value> out;
    for (Var v : vars) out.push_back(static_cast<Value>(v));
    return out;
  };
  Annotations annot{
      {"boot", idx({kBootOpen, kBootClosed})},
      {"tools", idx({kInPump, kInWrench, kHavePump, kHaveWrench})},
      {"wheel_hub", idx({kInWheel1, kInWheel2, kHaveWheel1, kHaveWheel2, kHaveNuts, kNutsTight,
                         kNutsLoose, kHubOnGround, kHubFastened, kHubUnfastened, kHubFree,
                         kWheel1OnHub, kWheel2OnHub, kWheel1Inflated, kWheel2Inflated})},
      {"wheels", idx({kInWheel1, kInWheel2, kHaveWheel1, kHaveWheel2, kWheel1OnHub, kWheel2OnHub,
                      kWheel1Inflated, kWheel2Inflated})},
      {"hub_free", idx({kHubFree})},
      {"hub_fix", idx({kNutsTight, kHubUnfastened})},
      {"hub_ground", idx({kHubOnGround})},
  };
  return std::make_shared<const Domain>("tyre", width, std::vector<Value>(width, kFalse),
                                        std::move(ops), std::move(annot));
}

Problem gen_fixit() {
  using namespace tyre;
  auto domain = tyre_domain();
  StateVector init(std::vector<Value>(kCount, kFalse));
  // The boot starts open: boot status is the last thing to work on.
  for (Var v : {kBootOpen, kInJack, kInPump, kInWrench, kInWheel2, kNutsTight, kHubOnGround,
                kHubFastened, kWheel1OnHub, kWheel2Intact}) {
    init[v - 1] = kTrue;
  }
  StateVector goal = StateVector::zeros(kCount);
  for (Var v : {kBootClosed, kInJack, kInPump, kInWrench, kInWheel1, kNutsTight, kWheel2OnHub,
                kWheel2Inflated}) {
    goal[v - 1] = kTrue;
  }
  goal[kBootOpen - 1] = kFalse;
  return Problem("fixit", std::move(domain), std::move(init), std::move(goal));
}

}  // namespace foldplan
