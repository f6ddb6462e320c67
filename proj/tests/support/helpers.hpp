#pragma once

#include <string>
#include <vector>

#include "foldplan/sv_core.hpp"
#include "reference.hpp"

namespace testing {

inline ref::Vec vec(const foldplan::StateVector& s) { return {s.values().begin(), s.values().end()}; }

inline ref::Seq seq(foldplan::StateSeq states) {
  ref::Seq out;
  for (const auto& s : states) out.push_back(vec(s));
  return out;
}

inline std::vector<ref::Op> ops(const foldplan::Domain& d) {
  std::vector<ref::Op> out;
  for (const auto& op : d.operators()) out.push_back({vec(op.pre), vec(op.post)});
  return out;
}

inline std::vector<foldplan::StateVector> states(std::initializer_list<foldplan::StateVector> s) {
  return s;
}

// Runs the command line tool; returns its exit status.
int run_cli(const std::string& args);

}  // namespace testing
