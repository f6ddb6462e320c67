// Line-oriented text formats for domains, problems and plans.
//
//   domain <name>
//   vars <n>
//   varmax <i> <m>            optional, 1-based i
//   annot <key> <ints...>
//   op <name> pre v1..vn post v1..vn
//
//   problem <name>
//   domainref <name>
//   init v1..vn
//   goal v1..vn
//
// Plans hold one 1-based operator index per line, optionally followed by
// "# name". '#' starts a comment everywhere.

#pragma once

#include <filesystem>
#include <memory>
#include <string>
#include <string_view>

#include "foldplan/sv_core.hpp"

namespace foldplan {

// Malformed text. The message names the offending line.
class ParseError : public StructuralError {
 public:
  ParseError(std::size_t line, const std::string& what);
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

std::string format_domain(const Domain& domain);
std::string format_problem(const Problem& problem);
// Names come from `domain` when given.
std::string format_plan(const Plan& plan, const Domain* domain = nullptr);

std::shared_ptr<const Domain> parse_domain(std::string_view text);
// The domainref line must name `domain`.
Problem parse_problem(std::string_view text, std::shared_ptr<const Domain> domain);
Plan parse_plan(std::string_view text);

// Throws StructuralError when the file cannot be read or written.
std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, std::string_view contents);

}  // namespace foldplan
