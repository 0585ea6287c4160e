#include "omegak/godel.hpp"

#include <algorithm>

#include "omegak/errors.hpp"

namespace omk {

const char* tok_text(Tok t) {
  static const char* names[] = {"=",   "<",    "O",    "in",  "not",  "and",     "or",  "->",   "<->", "all",
                                "ex",  "all<", "ex<",  "0",   "1",    "v",       "'",   "V",    "+",   "*",
                                "^",   "pair", "p0",   "p1",  "c",    "C",       "fin", "omega", "line", "ax",
                                "lax", "mp",   "gen",  "uniform", "tab", "tail", "end", "#"};
  return names[static_cast<unsigned>(t)];
}

void push_ticks(std::vector<Tok>& out, Nat k) { out.insert(out.end(), k, Tok::Tick); }

void tokens_of(const Term& t, std::vector<Tok>& out) {
  switch (t->kind) {
    case TermKind::Zero: out.push_back(Tok::Zero); return;
    case TermKind::One: out.push_back(Tok::One); return;
    case TermKind::Numeral:
      // + (n-1) 1, unrolled
      out.insert(out.end(), t->value - 1, Tok::Add);
      out.push_back(Tok::One);
      out.insert(out.end(), t->value - 1, Tok::One);
      return;
    case TermKind::Var: out.push_back(Tok::Var); push_ticks(out, t->value); return;
    case TermKind::Const: out.push_back(Tok::Const); push_ticks(out, t->value); return;
    case TermKind::Add: out.push_back(Tok::Add); break;
    case TermKind::Mul: out.push_back(Tok::Mul); break;
    case TermKind::Exp: out.push_back(Tok::Exp); break;
    case TermKind::Pair: out.push_back(Tok::Pair); break;
    case TermKind::Proj0: out.push_back(Tok::P0); break;
    case TermKind::Proj1: out.push_back(Tok::P1); break;
  }
  if (t->a) tokens_of(t->a, out);
  if (t->b) tokens_of(t->b, out);
}

void tokens_of(const Formula& f, std::vector<Tok>& out) {
  switch (f->kind) {
    case FormulaKind::Eq: out.push_back(Tok::Eq); tokens_of(f->t, out); tokens_of(f->s, out); return;
    case FormulaKind::Lt: out.push_back(Tok::Lt); tokens_of(f->t, out); tokens_of(f->s, out); return;
    case FormulaKind::Oracle: out.push_back(Tok::Oracle); tokens_of(f->t, out); return;
    case FormulaKind::In:
      out.push_back(Tok::In);
      tokens_of(f->t, out);
      out.push_back(f->set.is_const ? Tok::SetConst : Tok::SetVar);
      push_ticks(out, f->set.index);
      return;
    case FormulaKind::Not: out.push_back(Tok::Not); tokens_of(f->a, out); return;
    case FormulaKind::And: out.push_back(Tok::And); break;
    case FormulaKind::Or: out.push_back(Tok::Or); break;
    case FormulaKind::Imp: out.push_back(Tok::Imp); break;
    case FormulaKind::Iff: out.push_back(Tok::Iff); break;
    case FormulaKind::All:
    case FormulaKind::Ex:
      out.push_back(f->kind == FormulaKind::All ? Tok::All : Tok::Ex);
      out.push_back(f->second_order ? Tok::SetVar : Tok::Var);
      push_ticks(out, f->var);
      tokens_of(f->a, out);
      return;
    case FormulaKind::BAll:
    case FormulaKind::BEx:
      out.push_back(f->kind == FormulaKind::BAll ? Tok::BAll : Tok::BEx);
      out.push_back(Tok::Var);
      push_ticks(out, f->var);
      tokens_of(f->t, out);
      tokens_of(f->a, out);
      return;
  }
  tokens_of(f->a, out);
  tokens_of(f->b, out);
}

Code code_of_tokens(const std::vector<Tok>& toks) {
  Code c = 0;
  for (Tok t : toks) c = c * kAlphabet + (static_cast<unsigned>(t) + 1);
  return c;
}

std::vector<Tok> tokens_of_code(const Code& code) {
  std::vector<Tok> out;
  Code c = code;
  while (c > 0) {
    Code q = (c - 1) / kAlphabet;
    unsigned digit = static_cast<unsigned>(c - q * kAlphabet);  // 1..38
    out.push_back(static_cast<Tok>(digit - 1));
    c = q;
  }
  std::reverse(out.begin(), out.end());
  return out;
}

Code godel_encode(const Formula& f) {
  std::vector<Tok> toks;
  toks.reserve(f->len);
  tokens_of(f, toks);
  return code_of_tokens(toks);
}

Code godel_encode(const Term& t) {
  std::vector<Tok> toks;
  toks.reserve(t->len);
  tokens_of(t, toks);
  return code_of_tokens(toks);
}

namespace {

struct TokReader {
  const std::vector<Tok>& toks;
  std::size_t pos = 0;

  [[noreturn]] void fail(const char* what) {
    throw DecodeError(std::string("code does not denote a well-formed ") + what);
  }
  Tok next(const char* what) {
    if (pos >= toks.size()) fail(what);
    return toks[pos++];
  }
  Nat ticks() {
    Nat k = 0;
    while (pos < toks.size() && toks[pos] == Tok::Tick) ++pos, ++k;
    return k;
  }

  Term term() {
    Tok t = next("term");
    switch (t) {
      case Tok::Zero: return t_zero();
      case Tok::One: return t_one();
      case Tok::Var: return t_var(ticks());
      case Tok::Const: return t_const(ticks());
      case Tok::Add: {
        Term a = term();
        return t_add(a, term());
      }
      case Tok::Mul: {
        Term a = term();
        return t_mul(a, term());
      }
      case Tok::Exp: {
        Term a = term();
        return t_exp(a, term());
      }
      case Tok::Pair: {
        Term a = term();
        return t_pair(a, term());
      }
      case Tok::P0: return t_proj(0, term());
      case Tok::P1: return t_proj(1, term());
      default: fail("term");
    }
  }

  Formula formula() {
    Tok t = next("formula");
    switch (t) {
      case Tok::Eq: {
        Term a = term();
        return f_eq(a, term());
      }
      case Tok::Lt: {
        Term a = term();
        return f_lt(a, term());
      }
      case Tok::Oracle: return f_oracle(term());
      case Tok::In: {
        Term a = term();
        Tok s = next("set reference");
        if (s != Tok::SetVar && s != Tok::SetConst) fail("set reference");
        return f_in(a, SetRef{s == Tok::SetConst, ticks()});
      }
      case Tok::Not: return f_not(formula());
      case Tok::And:
      case Tok::Or:
      case Tok::Imp:
      case Tok::Iff: {
        Formula a = formula();
        Formula b = formula();
        if (t == Tok::And) return f_and(a, b);
        if (t == Tok::Or) return f_or(a, b);
        if (t == Tok::Imp) return f_imp(a, b);
        return f_iff(a, b);
      }
      case Tok::All:
      case Tok::Ex: {
        Tok v = next("quantified variable");
        if (v != Tok::Var && v != Tok::SetVar) fail("quantified variable");
        Nat idx = ticks();
        Formula body = formula();
        if (v == Tok::SetVar) return t == Tok::All ? f_all_set(idx, body) : f_ex_set(idx, body);
        return t == Tok::All ? f_all(idx, body) : f_ex(idx, body);
      }
      case Tok::BAll:
      case Tok::BEx: {
        if (next("bounded variable") != Tok::Var) fail("bounded variable");
        Nat idx = ticks();
        Term bound = term();
        Formula body = formula();
        return t == Tok::BAll ? f_ball(idx, bound, body) : f_bex(idx, bound, body);
      }
      default: fail("formula");
    }
  }
};

}  // namespace

Formula godel_decode_formula(const Code& c) {
  if (c <= 0) throw DecodeError("code 0 denotes the empty string");
  auto toks = tokens_of_code(c);
  TokReader r{toks};
  Formula f = r.formula();
  if (r.pos != toks.size()) throw DecodeError("trailing tokens after formula");
  return f;
}

Term godel_decode_term(const Code& c) {
  if (c <= 0) throw DecodeError("code 0 denotes the empty string");
  auto toks = tokens_of_code(c);
  TokReader r{toks};
  Term t = r.term();
  if (r.pos != toks.size()) throw DecodeError("trailing tokens after term");
  return t;
}

Formula try_decode_formula(const Code& c) {
  try {
    return godel_decode_formula(c);
  } catch (const DecodeError&) {
    return nullptr;
  }
}

std::string code_str(const Code& c) { return c.str(); }

}  // namespace omk
