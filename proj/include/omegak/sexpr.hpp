#pragma once
// S-expression reader with source positions.

#include <string>
#include <string_view>
#include <vector>

#include "omegak/errors.hpp"

namespace omk {

struct SExpr {
  bool atom = true;
  std::string text;           // atoms
  std::vector<SExpr> items;   // lists
  int line = 1, col = 1;

  bool is_list() const { return !atom; }
  bool is_atom(std::string_view s) const { return atom && text == s; }
  // Head atom of a list, or empty.
  std::string head() const { return !atom && !items.empty() && items[0].atom ? items[0].text : std::string(); }
};

// All top-level expressions; ';' starts a comment to end of line.
std::vector<SExpr> read_sexprs(std::string_view src);
// Exactly one top-level expression.
SExpr read_sexpr(std::string_view src);
std::string write_sexpr(const SExpr& e);

[[noreturn]] void fail_at(const SExpr& e, ParseErrorKind k, const std::string& msg, std::vector<std::string> expected = {});
// Throws an arity error unless the list has exactly n items after the head.
void expect_arity(const SExpr& e, std::size_t n);

}  // namespace omk
