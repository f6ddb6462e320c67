#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <filesystem>

#include "foldplan/domains.hpp"
#include "foldplan/io.hpp"
#include "foldplan/oracle.hpp"

using namespace foldplan;

namespace {

int find_op(const Domain& d, const std::string& name) {
  for (int i = 1; i <= static_cast<int>(d.num_operators()); ++i) {
    if (d.op(i).name == name) return i;
  }
  return 0;
}

std::size_t height(const StateVector& s, std::size_t n, std::size_t b) {
  std::size_t h = 1;
  while (s[2 * (b - 1)] != static_cast<Value>(n + 1)) {
    b = static_cast<std::size_t>(s[2 * (b - 1)]);
    ++h;
  }
  return h;
}

std::string golden(const std::string& name) {
  return read_file(std::filesystem::path(GOLDEN_DIR) / name);
}

}  // namespace

TEST_SUITE("domains") {
  TEST_CASE("blocks operator counts") {
    CHECK(blocks_domain(3)->num_operators() == 18);
    CHECK(blocks_domain(2)->num_operators() == 4);
    CHECK(blocks_domain(1)->num_operators() == 0);
    CHECK(blocks_domain(3)->num_vars() == 6);
    CHECK_THROWS_AS(blocks_domain(0), StructuralError);
  }

  TEST_CASE("move(A,B,table) encoding") {
    auto d = blocks_domain(3);
    const int i = find_op(*d, "move(A,B,table)");
    REQUIRE(i != 0);
    CHECK(d->op(i).pre == StateVector{2, 1, 0, 2, 0, 0});
    CHECK(d->op(i).post == StateVector{4, 1, 0, 1, 0, 0});
    // Operators enumerate block first, then source, then destination.
    CHECK(d->op(1).name == "move(A,B,C)");
    CHECK(d->op(2).name == "move(A,B,table)");
    CHECK(d->op(3).name == "move(A,C,B)");
  }

  TEST_CASE("two-block inversion") {
    const Problem p = gen_stack_inversion(2);
    CHECK(p.init == StateVector{2, 1, 3, 2});
    CHECK(p.goal == StateVector{3, 0, 1, 0});
    const int down = find_op(*p.domain, "move(A,B,table)");
    const int up = find_op(*p.domain, "move(B,table,A)");
    CHECK(validate_plan(p, Plan{{down, up}}));
    CHECK_FALSE(validate_plan(p, Plan{{up, down}}));
    CHECK_THROWS_AS(gen_stack_inversion(1), StructuralError);
  }

  TEST_CASE("generated problems match the golden files") {
    const Problem stack = gen_stack_building(4, 0);
    CHECK(format_domain(*stack.domain) == golden("blocks-4.domain"));
    CHECK(format_problem(stack) == golden("blocks-stack-4-s0.problem"));
    CHECK(format_problem(gen_blocks_random(4, 0)) == golden("blocks-random-4-s0.problem"));
  }

  TEST_CASE("blocks_consistent") {
    CHECK(blocks_consistent(blocks_state({3, 3}), 2));
    CHECK(blocks_consistent(StateVector{2, 1, 3, 2}, 2));
    CHECK_FALSE(blocks_consistent(StateVector{2, 1, 3, 1}, 2));  // B covered but clear
    CHECK_FALSE(blocks_consistent(StateVector{2, 2, 1, 2}, 2));  // cycle
    CHECK_FALSE(blocks_consistent(StateVector{1, 1, 3, 1}, 2));  // on itself
    CHECK_FALSE(blocks_consistent(StateVector{3, 1, 3, 1, 4, 2}, 3));  // two on C
    CHECK_FALSE(blocks_consistent(StateVector{3, 1, 3, 1}, 3));
  }

  TEST_CASE("generators produce consistent states") {
    for (std::uint64_t seed = 0; seed < 30; ++seed) {
      for (std::size_t n = 2; n <= 8; n += 2) {
        const Problem s = gen_stack_building(n, seed);
        CAPTURE(s.name);
        CHECK(blocks_consistent(s.init, n));
        for (std::size_t b = 1; b <= n; ++b) CHECK(height(s.init, n, b) <= 2);
      }
      for (std::size_t n = 2; n <= 8; ++n) {
        const Problem r = gen_blocks_random(n, seed);
        CAPTURE(r.name);
        CHECK(blocks_consistent(r.init, n));
        std::size_t fixed = 0;
        for (std::size_t b = 1; b <= n; ++b) {
          CHECK(r.goal[2 * b - 1] == 0);
          if (r.goal[2 * (b - 1)] != 0) ++fixed;
        }
        CHECK(fixed == (n + 1) / 2);
      }
    }
    CHECK_THROWS_AS(gen_stack_building(3, 0), StructuralError);
  }

  TEST_CASE("generators are deterministic per seed") {
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
      CHECK(gen_blocks_random(6, seed).init == gen_blocks_random(6, seed).init);
      CHECK(gen_blocks_random(6, seed).goal == gen_blocks_random(6, seed).goal);
      CHECK(gen_stack_building(6, seed).init == gen_stack_building(6, seed).init);
    }
    CHECK(gen_blocks_random(6, 0).name == "blocks-random-6-s0");
    CHECK(gen_stack_inversion(5).name == "blocks-inversion-5");
  }

  TEST_CASE("logistics") {
    const Problem p = gen_logistics(1);
    CHECK(p.domain->num_vars() == 4);
    CHECK(p.domain->num_operators() == 14);
    CHECK(p.init == StateVector{1, 1, 2, 2});
    CHECK(p.goal == StateVector{1, 1, 1, 1});
    const OracleResult o = oracle(p);
    CHECK(o.kind == OracleResult::Kind::kSolvable);
    // fly out, load twice, fly back, unload twice.
    CHECK(*o.optimal_len == 6);
  }

  TEST_CASE("fixit") {
    const Problem p = gen_fixit();
    CHECK(p.domain->num_vars() == 27);
    CHECK(p.domain->num_operators() == 25);
    CHECK(p.init.fully_assigned());
    const OracleResult o = oracle(p);
    CHECK(o.kind == OracleResult::Kind::kSolvable);
  }
}
