#include <doctest.h>

#include <algorithm>

#include "foldplan/domains.hpp"
#include "foldplan/random.hpp"
#include "foldplan/refinements.hpp"
#include "helpers.hpp"

using namespace foldplan;

namespace {

StateVector random_state(Rng& rng, std::size_t n, Value max, bool zeros) {
  StateVector s = StateVector::zeros(n);
  for (std::size_t i = 0; i < n; ++i) {
    s[i] = zeros ? static_cast<Value>(draw_below(rng, static_cast<std::uint64_t>(max) + 1))
                 : static_cast<Value>(1 + draw_below(rng, static_cast<std::uint64_t>(max)));
  }
  return s;
}

std::vector<StateVector> random_seq(Rng& rng, std::size_t len, std::size_t n, bool zeros) {
  std::vector<StateVector> out;
  for (std::size_t k = 0; k < len; ++k) out.push_back(random_state(rng, n, 2, zeros));
  return out;
}

const Operator kMoveABC{"move(A,B,C)", {2, 1, 0, 2, 0, 1}, {3, 1, 0, 1, 0, 2}};

}  // namespace

TEST_SUITE("refinements") {
  TEST_CASE("refinement names") {
    CHECK(parse_refinement("fss") == Refinement::kFss);
    CHECK(parse_refinement("bss") == Refinement::kBss);
    CHECK_FALSE(parse_refinement("pss"));
    CHECK(to_string(Refinement::kBss) == "bss");
  }

  TEST_CASE("fss_no_moves_back examples") {
    const StateVector s{1, 2};
    const StateVector t{2, 2};
    CHECK(fss_no_moves_back(std::vector<StateVector>{s}));
    CHECK_FALSE(fss_no_moves_back({}));
    CHECK_FALSE(fss_no_moves_back(std::vector<StateVector>{s, t, s}));
    CHECK(fss_no_moves_back(std::vector<StateVector>{s, t}));
  }

  TEST_CASE("fss_cross_no_moves_back examples") {
    const StateVector s{1, 2};
    CHECK(fss_cross_no_moves_back({}, std::vector<StateVector>{s}));
    CHECK_FALSE(fss_cross_no_moves_back(std::vector<StateVector>{s}, std::vector<StateVector>{s}));
    // t is weaker than s1 (agrees on index 0) but not than s2.
    const StateVector s1{1, 0};
    const StateVector s2{0, 2};
    const StateVector t{1, 1};
    CHECK(weaker_than(t, s1));
    CHECK_FALSE(weaker_than(t, s2));
    CHECK_FALSE(fss_cross_no_moves_back(std::vector<StateVector>{s1, s2}, std::vector<StateVector>{t}));
  }

  TEST_CASE("loop check matches the reference and obeys the concatenation law") {
    Rng rng(21);
    for (int trial = 0; trial < 3000; ++trial) {
      const bool zeros = trial % 3 == 0;
      const std::size_t n = 1 + draw_below(rng, 3);
      auto s1 = random_seq(rng, 1 + draw_below(rng, 4), n, zeros);
      auto s2 = random_seq(rng, 1 + draw_below(rng, 4), n, zeros);
      auto joined = s1;
      joined.insert(joined.end(), s2.begin(), s2.end());
      CHECK(fss_no_moves_back(joined) == ref::no_moves_back(testing::seq(joined)));
      CHECK(fss_no_moves_back(joined) ==
            (fss_no_moves_back(s1) && fss_no_moves_back(s2) && fss_cross_no_moves_back(s1, s2)));
      // Appending one state.
      auto appended = s1;
      appended.push_back(s2.front());
      CHECK(fss_no_moves_back(appended) ==
            (fss_no_moves_back(s1) && fss_cross_no_moves_back(s1, std::vector<StateVector>{s2.front()})));
      CHECK(bss_no_moves_back(joined) ==
            (bss_no_moves_back(s1) && bss_no_moves_back(s2) && bss_cross_no_moves_back(s1, s2)));
    }
  }

  TEST_CASE("fss_children in the two-block world") {
    const Problem p("two", blocks_domain(2), blocks_state({3, 3}), StateVector::zeros(4));
    REQUIRE(p.init == StateVector{3, 1, 3, 1});
    const SearchNode root = root_node(p, Refinement::kFss);
    CHECK(root.last_state == root.states.back());
    const auto children = fss_children(root, p);
    auto has = [&](const std::string& name, const StateVector& next) {
      return std::any_of(children.begin(), children.end(), [&](const auto& c) {
        return p.domain->op(c.first).name == name && c.second == next;
      });
    };
    CHECK(children.size() == 2);
    CHECK(has("move(A,table,B)", StateVector{2, 1, 3, 2}));
    CHECK(has("move(B,table,A)", StateVector{3, 2, 1, 1}));
    CHECK(std::is_sorted(children.begin(), children.end(),
                         [](const auto& a, const auto& b) { return a.first < b.first; }));
  }

  TEST_CASE("fss_children edge cases") {
    const std::vector<Operator> ops{{"stuck", {2}, {1}}, {"same", {1}, {1}}};
    auto d = std::make_shared<const Domain>("d", 1, std::vector<Value>{2}, ops);
    SUBCASE("nothing applicable") {
      const Problem q("q", std::make_shared<const Domain>(
                               "e", 1, std::vector<Value>{2}, std::vector<Operator>{ops[0]}),
                      StateVector{1}, StateVector::zeros(1));
      CHECK(fss_children(root_node(q, Refinement::kFss), q).empty());
    }
    SUBCASE("identity child survives generation but fails the loop check") {
      const Problem p("p", d, StateVector{1}, StateVector::zeros(1));
      const SearchNode root = root_node(p, Refinement::kFss);
      const auto children = fss_children(root, p);
      REQUIRE(children.size() == 1);
      CHECK(children[0].first == 2);
      CHECK(children[0].second == root.last_state);
      CHECK_FALSE(fss_cross_no_moves_back(root.states, std::vector<StateVector>{children[0].second}));
    }
  }

  TEST_CASE("regress examples") {
    auto r = regress(StateVector{3, 0, 0, 0, 0, 0}, kMoveABC);
    REQUIRE(r);
    CHECK(*r == StateVector{2, 1, 0, 2, 0, 1});
    CHECK_FALSE(regress(StateVector{0, 0, 4, 0, 0, 0}, kMoveABC));  // irrelevant
    CHECK_FALSE(regress(StateVector{3, 0, 0, 0, 0, 1}, kMoveABC));  // clobbers clr-C
    CHECK_FALSE(regress(StateVector{1, 0, 0, 0, 0, 0},
                        Operator{"b", {0, 0, 0, 0, 0, 0}, {2, 0, 0, 0, 0, 0}}));
    CHECK_THROWS_AS(regress(StateVector{3}, kMoveABC), StructuralError);
  }

  TEST_CASE("regress rejects a condition the operator's untouched precondition contradicts") {
    // fly-like operator: needs var 1 = 1, leaves it alone, sets var 2.
    const Operator op{"load", {1, 0}, {0, 3}};
    CHECK_FALSE(regress(StateVector{2, 3}, op));
    auto r = regress(StateVector{1, 3}, op);
    REQUIRE(r);
    CHECK(*r == StateVector{1, 0});
  }

  TEST_CASE("regression is sound: any state meeting the regressed condition reaches cond") {
    Rng rng(31);
    std::size_t checked = 0;
    for (int trial = 0; trial < 20000; ++trial) {
      const std::size_t n = 1 + draw_below(rng, 3);
      const StateVector cond = random_state(rng, n, 3, true);
      const Operator op{"op", random_state(rng, n, 3, true), random_state(rng, n, 3, true)};
      const StateVector s = random_state(rng, n, 3, false);
      auto r = regress(cond, op);
      if (!r || !weaker_than(s, *r)) continue;
      auto next = apply(s, op);
      REQUIRE(next);
      CHECK(weaker_than(*next, cond));
      ++checked;
    }
    CHECK(checked > 100);
  }

  TEST_CASE("regressed_states runs the plan backwards from the goal") {
    auto d = blocks_domain(2);
    // Goal A on B; the last operator must be move(A,table,B).
    const StateVector goal{2, 0, 0, 0};
    int put_a_on_b = 0;
    for (int i = 1; i <= static_cast<int>(d->num_operators()); ++i) {
      if (d->op(i).name == "move(A,table,B)") put_a_on_b = i;
    }
    REQUIRE(put_a_on_b != 0);
    auto seq = regressed_states(Plan{{put_a_on_b}}, goal, *d);
    REQUIRE(seq);
    REQUIRE(seq->size() == 2);
    CHECK(seq->front() == goal);
    CHECK(seq->back() == d->op(put_a_on_b).pre);
    Tally tally;
    regressed_states(Plan{}, goal, *d, &tally);
    CHECK(tally.visited_states_calls == 1);
  }

  TEST_CASE("bss_goal_test") {
    const StateVector init{1, 2, 1};
    CHECK(bss_goal_test(std::vector<StateVector>{StateVector::zeros(3)}, init));
    CHECK(bss_goal_test(std::vector<StateVector>{init}, init));
    CHECK_FALSE(bss_goal_test(std::vector<StateVector>{StateVector{0, 1, 0}}, init));
    CHECK_THROWS_AS(bss_goal_test({}, init), StructuralError);
  }

  TEST_CASE("bss_no_moves_back examples") {
    const StateVector g{1, 0, 0};
    const StateVector g_more{1, 2, 0};
    CHECK(bss_no_moves_back(std::vector<StateVector>{g}));
    CHECK_FALSE(bss_no_moves_back(std::vector<StateVector>{g, g}));
    CHECK_FALSE(bss_no_moves_back(std::vector<StateVector>{g, g_more}));
    // Dropping a requirement is progress, not a loop.
    CHECK(bss_no_moves_back(std::vector<StateVector>{g_more, g}));
  }

  TEST_CASE("emitted plan order") {
    SearchNode node{Plan{{3, 1, 2}}, {}, {}};
    CHECK(emitted_plan(node, Refinement::kFss).steps == std::vector<int>{3, 1, 2});
    CHECK(emitted_plan(node, Refinement::kBss).steps == std::vector<int>{2, 1, 3});
  }

  TEST_CASE("successor dispatches on the refinement") {
    const StateVector s{2, 1, 4, 2, 4, 1};
    CHECK(successor(Refinement::kFss, s, kMoveABC) == apply(s, kMoveABC));
    const StateVector cond{3, 0, 0, 0, 0, 0};
    CHECK(successor(Refinement::kBss, cond, kMoveABC) == regress(cond, kMoveABC));
  }
}
