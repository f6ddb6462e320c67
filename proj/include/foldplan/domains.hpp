// Benchmark domains (blocks world, logistics, tyre world) and their problem
// generators.
//
// Blocks with n blocks: variable 2b-1 (1-based) holds the position of block b
// (1..n = on that block, n+1 = table) and variable 2b its clear flag
// (1 = clear, 2 = covered). The table has no clear flag.
//
// Logistics of scale k: k planes, 2k places, 3k packages. Variables 1..k are
// plane locations (place codes 1..2k); variables k+1..4k are package
// locations (a place code, or plane code 2k+p while inside plane p).
//
// Tyre world: 27 boolean variables and 25 ground operators, listed in
// domains.cpp.

#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "foldplan/sv_core.hpp"

namespace foldplan {

std::shared_ptr<const Domain> blocks_domain(std::size_t n);

// Full blocks state from per-block positions (1-based codes, n+1 = table);
// clear flags are derived.
StateVector blocks_state(const std::vector<Value>& positions);

// Positions all in range, no block on itself, at most one block on any block,
// every tower grounded on the table, clear flags matching.
bool blocks_consistent(const StateVector& state, std::size_t n);

// Block 1 on 2 on ... on n (on table).
std::vector<Value> a_on_top_positions(std::size_t n);
// Block 1 on table, 2 on 1, ..., n on n-1.
std::vector<Value> n_on_top_positions(std::size_t n);

Problem gen_stack_inversion(std::size_t n);
// n even. Goal A-ON-TOP for even seeds, N-ON-TOP for odd ones.
Problem gen_stack_building(std::size_t n, std::uint64_t seed);
Problem gen_blocks_random(std::size_t n, std::uint64_t seed);

std::shared_ptr<const Domain> logistics_domain(std::size_t k);
Problem gen_logistics(std::size_t k);

std::shared_ptr<const Domain> tyre_domain();
Problem gen_fixit();

}  // namespace foldplan
