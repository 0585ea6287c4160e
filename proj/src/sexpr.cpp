#include "omegak/sexpr.hpp"

#include <cctype>

namespace omk {

const char* parse_error_kind_name(ParseErrorKind k) {
  switch (k) {
    case ParseErrorKind::Lexical: return "lexical error";
    case ParseErrorKind::Grammar: return "grammar error";
    case ParseErrorKind::Arity: return "arity error";
    case ParseErrorKind::UnboundName: return "unbound name";
  }
  return "error";
}

namespace {

std::string render(ParseErrorKind k, int l, int c, const std::string& msg, const std::vector<std::string>& exp) {
  std::string s = std::to_string(l) + ":" + std::to_string(c) + ": " + parse_error_kind_name(k) + ": " + msg;
  if (!exp.empty()) {
    s += " (expected";
    for (const auto& e : exp) s += " " + e;
    s += ")";
  }
  return s;
}

bool atom_char(char ch) {
  unsigned char u = static_cast<unsigned char>(ch);
  if (std::isalnum(u)) return true;
  switch (ch) {
    case '+': case '*': case '^': case '<': case '>': case '=': case '-': case '_': case '\'': case '.': case '#':
    case ':':
      return true;
    default:
      return false;
  }
}

class Reader {
 public:
  explicit Reader(std::string_view s) : src_(s) {}

  std::vector<SExpr> all() {
    std::vector<SExpr> out;
    skip();
    while (pos_ < src_.size()) {
      out.push_back(expr());
      skip();
    }
    return out;
  }

 private:
  std::string_view src_;
  std::size_t pos_ = 0;
  int line_ = 1, col_ = 1;

  void advance() {
    if (src_[pos_] == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    ++pos_;
  }

  void skip() {
    while (pos_ < src_.size()) {
      char ch = src_[pos_];
      if (ch == ';') {
        while (pos_ < src_.size() && src_[pos_] != '\n') advance();
      } else if (std::isspace(static_cast<unsigned char>(ch))) {
        advance();
      } else {
        break;
      }
    }
  }

  SExpr expr() {
    SExpr e;
    e.line = line_;
    e.col = col_;
    char ch = src_[pos_];
    if (ch == '(') {
      e.atom = false;
      advance();
      for (;;) {
        skip();
        if (pos_ >= src_.size()) throw ParseError(ParseErrorKind::Grammar, line_, col_, "unexpected end of input", {")"});
        if (src_[pos_] == ')') {
          advance();
          return e;
        }
        e.items.push_back(expr());
      }
    }
    if (ch == ')') throw ParseError(ParseErrorKind::Grammar, line_, col_, "unbalanced ')'", {"(", "atom"});
    if (!atom_char(ch))
      throw ParseError(ParseErrorKind::Lexical, line_, col_, std::string("unexpected character '") + ch + "'");
    while (pos_ < src_.size() && atom_char(src_[pos_])) {
      e.text += src_[pos_];
      advance();
    }
    return e;
  }
};

}  // namespace

ParseError::ParseError(ParseErrorKind k, int l, int c, const std::string& msg, std::vector<std::string> exp)
    : Error(render(k, l, c, msg, exp)), kind(k), line(l), col(c), expected(std::move(exp)) {}

std::vector<SExpr> read_sexprs(std::string_view src) { return Reader(src).all(); }

SExpr read_sexpr(std::string_view src) {
  auto all = read_sexprs(src);
  if (all.empty()) throw ParseError(ParseErrorKind::Grammar, 1, 1, "empty input", {"("});
  if (all.size() > 1)
    throw ParseError(ParseErrorKind::Grammar, all[1].line, all[1].col, "trailing input after the expression", {"end of input"});
  return all[0];
}

std::string write_sexpr(const SExpr& e) {
  if (e.atom) return e.text;
  std::string s = "(";
  for (std::size_t i = 0; i < e.items.size(); ++i) {
    if (i) s += ' ';
    s += write_sexpr(e.items[i]);
  }
  return s + ")";
}

void fail_at(const SExpr& e, ParseErrorKind k, const std::string& msg, std::vector<std::string> expected) {
  throw ParseError(k, e.line, e.col, msg, std::move(expected));
}

void expect_arity(const SExpr& e, std::size_t n) {
  if (e.items.size() != n + 1)
    fail_at(e, ParseErrorKind::Arity,
            "'" + e.head() + "' takes " + std::to_string(n) + " argument" + (n == 1 ? "" : "s") + ", got " +
                std::to_string(e.items.size() - 1));
}

}  // namespace omk
