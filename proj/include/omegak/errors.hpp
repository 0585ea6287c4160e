#pragma once
#include <stdexcept>
#include <string>
#include <vector>

namespace omk {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct MagnitudeError : Error { using Error::Error; };
struct BindingError : Error { using Error::Error; };
struct DecodeError : Error { using Error::Error; };
struct ClassError : Error { using Error::Error; };
struct SchemaError : Error { using Error::Error; };
struct UnsupportedError : Error { using Error::Error; };
struct PreconditionError : Error { using Error::Error; };
struct CapExceeded : Error { using Error::Error; };
struct UsageError : Error { using Error::Error; };

struct CoverageError : Error {
  std::vector<std::string> missing;  // printed codes of absent formulas
  CoverageError(const std::string& what, std::vector<std::string> m)
      : Error(what), missing(std::move(m)) {}
};

enum class ParseErrorKind { Lexical, Grammar, Arity, UnboundName };

struct ParseError : Error {
  ParseErrorKind kind;
  int line, col;
  std::vector<std::string> expected;
  ParseError(ParseErrorKind k, int l, int c, const std::string& msg, std::vector<std::string> exp = {});
};

const char* parse_error_kind_name(ParseErrorKind k);

}  // namespace omk
