#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "pfis/errors.hpp"
#include "pfis/rules.hpp"

namespace pfis {

/// Syntax error with 1-based position and the token set that would have been
/// accepted there.
class ParseError : public Error {
 public:
  ParseError(int line, int column, const std::string& got, std::vector<std::string> expected);

  int line() const noexcept { return line_; }
  int column() const noexcept { return column_; }
  const std::vector<std::string>& expected() const noexcept { return expected_; }

 private:
  int line_;
  int column_;
  std::vector<std::string> expected_;
};

/// Parses one statement:
///   IF <var> IS [NOT] <cat> ((AND|OR) <var> IS [NOT] <cat>)* THEN <outvar> IS <cat>
/// Keywords are case-insensitive, identifiers [A-Za-z_][A-Za-z0-9_]*.
/// Mixing AND and OR in one rule is rejected. The returned rule has an empty
/// id; ruleset parsing assigns them.
Rule parse_rule(std::string_view text, int base_line = 1);

/// Parses a rule block: one rule per line, '#' starts a comment, blank lines
/// ignored. Ids are assigned "r1", "r2", ... in file order.
RuleSet parse_ruleset(std::string_view text, std::string output_variable);

}  // namespace pfis
