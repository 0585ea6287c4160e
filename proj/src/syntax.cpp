#include "omegak/syntax.hpp"

#include <algorithm>
#include <cctype>
#include <limits>
#include <map>

namespace omk {

// ------------------------------------------------------------ printing

std::string print_term(const Term& t) {
  auto bin = [&](const char* op) { return std::string("(") + op + " " + print_term(t->a) + " " + print_term(t->b) + ")"; };
  switch (t->kind) {
    case TermKind::Zero: return "0";
    case TermKind::One: return "1";
    case TermKind::Numeral: return std::to_string(t->value);
    case TermKind::Var: return var_name(t->value);
    case TermKind::Const: return "(c " + std::to_string(t->value) + ")";
    case TermKind::Add: return bin("+");
    case TermKind::Mul: return bin("*");
    case TermKind::Exp: return bin("^");
    case TermKind::Pair: return bin("pair");
    case TermKind::Proj0: return "(p0 " + print_term(t->a) + ")";
    case TermKind::Proj1: return "(p1 " + print_term(t->a) + ")";
  }
  return "?";
}

namespace {

std::string set_ref(const SetRef& s) {
  return s.is_const ? "(C " + std::to_string(s.index) + ")" : set_var_name(s.index);
}

}  // namespace

std::string print_formula(const Formula& f) {
  auto bin = [&](const char* op) {
    return std::string("(") + op + " " + print_formula(f->a) + " " + print_formula(f->b) + ")";
  };
  switch (f->kind) {
    case FormulaKind::Eq: return "(= " + print_term(f->t) + " " + print_term(f->s) + ")";
    case FormulaKind::Lt: return "(< " + print_term(f->t) + " " + print_term(f->s) + ")";
    case FormulaKind::In: return "(in " + print_term(f->t) + " " + set_ref(f->set) + ")";
    case FormulaKind::Oracle: return "(O " + print_term(f->t) + ")";
    case FormulaKind::Not: return "(not " + print_formula(f->a) + ")";
    case FormulaKind::And: return bin("and");
    case FormulaKind::Or: return bin("or");
    case FormulaKind::Imp: return bin("->");
    case FormulaKind::Iff: return bin("<->");
    case FormulaKind::All:
    case FormulaKind::Ex:
      return std::string(f->kind == FormulaKind::All ? "(all " : "(ex ") +
             (f->second_order ? set_var_name(f->var) : var_name(f->var)) + " " + print_formula(f->a) + ")";
    case FormulaKind::BAll:
    case FormulaKind::BEx:
      return std::string(f->kind == FormulaKind::BAll ? "(all< " : "(ex< ") + var_name(f->var) + " " +
             print_term(f->t) + " " + print_formula(f->a) + ")";
  }
  return "?";
}

std::string print_cnf(const Cnf& a) {
  if (auto n = cnf_finite_value(a)) return std::to_string(*n);
  std::vector<std::string> parts;
  for (const auto& t : a.terms) {
    std::string base;
    if (t.exponent.is_zero()) {
      parts.push_back(std::to_string(t.coeff));
      continue;
    }
    base = t.exponent == cnf_nat(1) ? "w" : "(w^ " + print_cnf(t.exponent) + ")";
    parts.push_back(t.coeff == 1 ? base : "(* " + base + " " + std::to_string(t.coeff) + ")");
  }
  if (parts.size() == 1) return parts[0];
  std::string s = "(+";
  for (const auto& p : parts) s += " " + p;
  return s + ")";
}

std::string print_order(const WellOrder& o) {
  if (const auto* c = o.cnf()) return "(cnf-order " + print_cnf(c->bound) + ")";
  const auto& f = *o.finite();
  std::string s = "(finite-order (carrier";
  for (Nat x : f.carrier) s += " " + std::to_string(x);
  s += ") (rel";
  for (const auto& [a, b] : f.relation) s += " (" + std::to_string(a) + " " + std::to_string(b) + ")";
  s += ")";
  if (f.addition) {
    s += " (add";
    for (const auto& [ab, c] : *f.addition)
      s += " (" + std::to_string(ab.first) + " " + std::to_string(ab.second) + " " + std::to_string(c) + ")";
    s += ")";
  }
  return s + ")";
}

std::string print_descriptor(const SetDescriptor& d) {
  std::string s = "(set (prefix";
  for (bool b : d.prefix()) s += b ? " 1" : " 0";
  s += ") (period";
  for (bool b : d.period()) s += b ? " 1" : " 0";
  return s + "))";
}

std::string print_set(const DecidableSet& s) {
  if (const auto* d = s.descriptor()) return print_descriptor(*d);
  if (const auto* t = s.family()) {
    std::string out = "(tuple";
    for (const auto& p : t->parts) out += " " + print_descriptor(p);
    return out + ")";
  }
  return "(predicate " + s.describe() + ")";
}

namespace {

std::string just_str(const Justification& j) {
  switch (j.kind) {
    case JustKind::Axiom: return "(ax)";
    case JustKind::Logical: return "(lax " + j.id + ")";
    case JustKind::MP: return "(mp " + std::to_string(j.i) + " " + std::to_string(j.j) + ")";
    case JustKind::Gen: return "(gen " + var_name(j.var) + " " + std::to_string(j.i) + ")";
    case JustKind::Gen2: return "(gen2 " + set_var_name(j.var) + " " + std::to_string(j.i) + ")";
  }
  return "?";
}

std::string lines_str(const FinitaryProof& p) {
  std::string s;
  for (const auto& l : p.lines) s += " (line " + print_formula(l.formula) + " " + just_str(l.just) + ")";
  return s;
}

}  // namespace

std::string print_proof(const FinitaryProof& p) { return "(proof" + lines_str(p) + ")"; }

std::string print_cert(const Certificate& c) {
  if (c.kind == Certificate::Kind::Fin) return "(fin" + lines_str(c.proof) + ")";
  std::string s = "(omega " + print_cnf(c.xi) + " " + var_name(c.var) + " " + print_formula(c.psi) + " ";
  const auto& t = c.premises;
  auto uni = [&](const char* head, const UniformPremise& u) {
    return std::string("(") + head + " " + var_name(u.hole) + " " + print_cert(*u.skeleton) + ")";
  };
  if (t.tabulated()) {
    s += "(tab";
    for (const auto& [n, e] : t.table) s += " (" + std::to_string(n) + " " + print_cert(*e) + ")";
    if (t.uniform) s += " " + uni("tail", *t.uniform);
    s += ")";
  } else if (t.uniform) {
    s += uni("uniform", *t.uniform);
  } else {
    s += "(tab)";
  }
  return s + " (d" + lines_str(c.d) + "))";
}

// ------------------------------------------------------------ parsing

namespace {

bool all_digits(const std::string& s) {
  return !s.empty() && std::all_of(s.begin(), s.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); });
}

const SExpr& need_list(const SExpr& e, const std::vector<std::string>& expected) {
  if (e.atom || e.items.empty() || !e.items[0].atom)
    fail_at(e, ParseErrorKind::Grammar, e.atom ? "unexpected atom '" + e.text + "'" : "expected a keyword list",
            expected);
  return e;
}

Nat first_var(const SExpr& e) {
  if (!e.atom) fail_at(e, ParseErrorKind::Grammar, "expected a variable name", {"variable"});
  auto v = parse_var_name(e.text);
  if (!v) fail_at(e, ParseErrorKind::UnboundName, "unknown first-order variable '" + e.text + "'");
  return *v;
}

Nat second_var(const SExpr& e) {
  if (!e.atom) fail_at(e, ParseErrorKind::Grammar, "expected a set variable name", {"set variable"});
  auto v = parse_set_var_name(e.text);
  if (!v) fail_at(e, ParseErrorKind::UnboundName, "unknown set variable '" + e.text + "'");
  return *v;
}

SetRef set_ref_of(const SExpr& e) {
  if (e.atom) return SetRef{false, second_var(e)};
  if (e.head() != "C") fail_at(e, ParseErrorKind::Grammar, "expected a set reference", {"set variable", "(C n)"});
  expect_arity(e, 1);
  return SetRef{true, nat_of(e.items[1])};
}

}  // namespace

Nat nat_of(const SExpr& e) {
  if (!e.atom || !all_digits(e.text)) fail_at(e, ParseErrorKind::Grammar, "expected a natural number", {"number"});
  if (e.text.size() > 20) fail_at(e, ParseErrorKind::Lexical, "number too large");
  unsigned long long v = 0;
  for (char c : e.text) {
    unsigned d = static_cast<unsigned>(c - '0');
    if (v > (std::numeric_limits<unsigned long long>::max() - d) / 10)
      fail_at(e, ParseErrorKind::Lexical, "number too large");
    v = v * 10 + d;
  }
  return v;
}

Term term_of(const SExpr& e) {
  static const std::vector<std::string> expected = {"0", "1", "number", "variable", "+", "*", "^", "pair", "p0", "p1", "c"};
  if (e.atom) {
    if (all_digits(e.text)) return t_num(nat_of(e));
    if (auto v = parse_var_name(e.text)) return t_var(*v);
    fail_at(e, ParseErrorKind::UnboundName, "unknown name '" + e.text + "'");
  }
  need_list(e, expected);
  std::string h = e.head();
  if (h == "+" || h == "*" || h == "^" || h == "pair") {
    expect_arity(e, 2);
    Term a = term_of(e.items[1]), b = term_of(e.items[2]);
    if (h == "+") return t_add(a, b);
    if (h == "*") return t_mul(a, b);
    if (h == "^") return t_exp(a, b);
    return t_pair(a, b);
  }
  if (h == "p0" || h == "p1") {
    expect_arity(e, 1);
    return t_proj(h == "p0" ? 0 : 1, term_of(e.items[1]));
  }
  if (h == "c") {
    expect_arity(e, 1);
    return t_const(nat_of(e.items[1]));
  }
  fail_at(e.items[0], ParseErrorKind::Grammar, "unknown term operator '" + h + "'", expected);
}

Formula formula_of(const SExpr& e) {
  static const std::vector<std::string> expected = {"=", "<", "in", "O", "not", "and", "or", "->", "<->", "all", "ex", "all<", "ex<"};
  need_list(e, expected);
  std::string h = e.head();
  if (h == "=" || h == "<") {
    expect_arity(e, 2);
    Term a = term_of(e.items[1]), b = term_of(e.items[2]);
    return h == "=" ? f_eq(a, b) : f_lt(a, b);
  }
  if (h == "in") {
    expect_arity(e, 2);
    return f_in(term_of(e.items[1]), set_ref_of(e.items[2]));
  }
  if (h == "O") {
    expect_arity(e, 1);
    return f_oracle(term_of(e.items[1]));
  }
  if (h == "not") {
    expect_arity(e, 1);
    return f_not(formula_of(e.items[1]));
  }
  if (h == "and" || h == "or" || h == "->" || h == "<->") {
    expect_arity(e, 2);
    Formula a = formula_of(e.items[1]), b = formula_of(e.items[2]);
    if (h == "and") return f_and(a, b);
    if (h == "or") return f_or(a, b);
    if (h == "->") return f_imp(a, b);
    return f_iff(a, b);
  }
  if (h == "all" || h == "ex") {
    expect_arity(e, 2);
    const SExpr& v = e.items[1];
    bool all = h == "all";
    if (v.atom && parse_set_var_name(v.text)) {
      Nat X = second_var(v);
      Formula body = formula_of(e.items[2]);
      return all ? f_all_set(X, body) : f_ex_set(X, body);
    }
    Nat x = first_var(v);
    Formula body = formula_of(e.items[2]);
    return all ? f_all(x, body) : f_ex(x, body);
  }
  if (h == "all<" || h == "ex<") {
    expect_arity(e, 3);
    Nat x = first_var(e.items[1]);
    Term bound = term_of(e.items[2]);
    Formula body = formula_of(e.items[3]);
    return h == "all<" ? f_ball(x, bound, body) : f_bex(x, bound, body);
  }
  fail_at(e.items[0], ParseErrorKind::Grammar, "unknown connective '" + h + "'", expected);
}

Cnf cnf_of(const SExpr& e) {
  static const std::vector<std::string> expected = {"number", "w", "w^", "+", "*"};
  if (e.atom) {
    if (all_digits(e.text)) return cnf_nat(nat_of(e));
    if (e.text == "w") return cnf_omega();
    fail_at(e, ParseErrorKind::UnboundName, "unknown ordinal name '" + e.text + "'");
  }
  need_list(e, expected);
  std::string h = e.head();
  if (h == "w^") {
    expect_arity(e, 1);
    return omega_power(cnf_of(e.items[1]));
  }
  if (h == "+") {
    if (e.items.size() < 3) fail_at(e, ParseErrorKind::Arity, "'+' takes at least 2 arguments");
    Cnf acc = cnf_of(e.items[1]);
    for (std::size_t i = 2; i < e.items.size(); ++i) acc = cnf_add(acc, cnf_of(e.items[i]));
    return acc;
  }
  if (h == "*") {
    expect_arity(e, 2);
    return cnf_mul_nat(cnf_of(e.items[1]), nat_of(e.items[2]));
  }
  fail_at(e.items[0], ParseErrorKind::Grammar, "unknown ordinal operator '" + h + "'", expected);
}

namespace {

std::vector<Nat> nats_after_head(const SExpr& e) {
  std::vector<Nat> out;
  for (std::size_t i = 1; i < e.items.size(); ++i) out.push_back(nat_of(e.items[i]));
  return out;
}

const SExpr& section(const SExpr& e, std::size_t i, const std::string& name) {
  if (i >= e.items.size()) fail_at(e, ParseErrorKind::Arity, "missing (" + name + " ...)", {"(" + name});
  const SExpr& s = e.items[i];
  if (s.head() != name) fail_at(s, ParseErrorKind::Grammar, "expected (" + name + " ...)", {"(" + name});
  return s;
}

}  // namespace

WellOrder order_of(const SExpr& e) {
  std::string h = e.head();
  if (h == "cnf-order") {
    expect_arity(e, 1);
    return WellOrder(CnfOrder{cnf_of(e.items[1])});
  }
  if (h == "finite-order") {
    if (e.items.size() != 3 && e.items.size() != 4)
      fail_at(e, ParseErrorKind::Arity, "'finite-order' takes 2 or 3 arguments");
    FiniteWellOrder f;
    f.carrier = nats_after_head(section(e, 1, "carrier"));
    std::sort(f.carrier.begin(), f.carrier.end());
    f.carrier.erase(std::unique(f.carrier.begin(), f.carrier.end()), f.carrier.end());
    const SExpr& rel = section(e, 2, "rel");
    for (std::size_t i = 1; i < rel.items.size(); ++i) {
      const SExpr& p = rel.items[i];
      if (p.atom || p.items.size() != 2) fail_at(p, ParseErrorKind::Arity, "a relation pair has 2 entries");
      f.relation.insert({nat_of(p.items[0]), nat_of(p.items[1])});
    }
    if (e.items.size() == 4) {
      const SExpr& add = section(e, 3, "add");
      f.addition.emplace();
      for (std::size_t i = 1; i < add.items.size(); ++i) {
        const SExpr& p = add.items[i];
        if (p.atom || p.items.size() != 3) fail_at(p, ParseErrorKind::Arity, "an addition entry has 3 numbers");
        (*f.addition)[{nat_of(p.items[0]), nat_of(p.items[1])}] = nat_of(p.items[2]);
      }
    }
    return WellOrder(std::move(f));
  }
  // A bare notation: finite n is the order 0 < ... < n-1, anything else the
  // notations up to it.
  Cnf a = cnf_of(e);
  if (auto n = cnf_finite_value(a)) return WellOrder(FiniteWellOrder::natural(*n));
  return WellOrder(CnfOrder{a});
}

SetDescriptor descriptor_of(const SExpr& e) {
  static const std::vector<std::string> expected = {"empty", "all", "evens", "odds", "(finite", "(set"};
  if (e.atom) {
    if (e.text == "empty") return SetDescriptor::empty();
    if (e.text == "all") return SetDescriptor::all();
    if (e.text == "evens") return SetDescriptor::evens();
    if (e.text == "odds") return SetDescriptor::odds();
    fail_at(e, ParseErrorKind::UnboundName, "unknown set name '" + e.text + "'", expected);
  }
  std::string h = e.head();
  if (h == "finite") return SetDescriptor::finite(nats_after_head(e));
  if (h == "set") {
    expect_arity(e, 2);
    auto bits = [&](const SExpr& s) {
      std::vector<bool> out;
      for (Nat b : nats_after_head(s)) {
        if (b > 1) fail_at(s, ParseErrorKind::Grammar, "bits are 0 or 1", {"0", "1"});
        out.push_back(b == 1);
      }
      return out;
    };
    auto prefix = bits(section(e, 1, "prefix"));
    auto period = bits(section(e, 2, "period"));
    if (period.empty()) fail_at(e.items[2], ParseErrorKind::Arity, "the period needs at least one bit");
    return SetDescriptor(prefix, period);
  }
  fail_at(e, ParseErrorKind::Grammar, "expected a set descriptor", expected);
}

DecidableSet set_of(const SExpr& e) {
  if (e.head() == "tuple") {
    TupleFamily t;
    for (std::size_t i = 1; i < e.items.size(); ++i) t.parts.push_back(descriptor_of(e.items[i]));
    return DecidableSet(std::move(t));
  }
  if (e.head() == "predicate") fail_at(e, ParseErrorKind::Grammar, "predicate sets have no surface form");
  return DecidableSet(descriptor_of(e));
}

namespace {

Justification just_of(const SExpr& e) {
  static const std::vector<std::string> expected = {"(ax)", "(lax", "(mp", "(gen", "(gen2"};
  need_list(e, expected);
  std::string h = e.head();
  Justification j;
  if (h == "ax") {
    expect_arity(e, 0);
    j.kind = JustKind::Axiom;
  } else if (h == "lax") {
    expect_arity(e, 1);
    if (!e.items[1].atom) fail_at(e.items[1], ParseErrorKind::Grammar, "expected an axiom id");
    const auto& ids = logical_axiom_ids();
    if (std::find(ids.begin(), ids.end(), e.items[1].text) == ids.end())
      fail_at(e.items[1], ParseErrorKind::UnboundName, "unknown logical axiom '" + e.items[1].text + "'");
    j.kind = JustKind::Logical;
    j.id = e.items[1].text;
  } else if (h == "mp") {
    expect_arity(e, 2);
    j.kind = JustKind::MP;
    j.i = nat_of(e.items[1]);
    j.j = nat_of(e.items[2]);
  } else if (h == "gen" || h == "gen2") {
    expect_arity(e, 2);
    j.kind = h == "gen" ? JustKind::Gen : JustKind::Gen2;
    j.var = h == "gen" ? first_var(e.items[1]) : second_var(e.items[1]);
    j.i = nat_of(e.items[2]);
  } else {
    fail_at(e.items[0], ParseErrorKind::Grammar, "unknown justification '" + h + "'", expected);
  }
  return j;
}

FinitaryProof lines_of(const SExpr& e, std::size_t from) {
  FinitaryProof p;
  for (std::size_t i = from; i < e.items.size(); ++i) {
    const SExpr& l = e.items[i];
    if (l.head() != "line") fail_at(l, ParseErrorKind::Grammar, "expected a proof line", {"(line"});
    expect_arity(l, 2);
    p.lines.push_back({formula_of(l.items[1]), just_of(l.items[2])});
  }
  return p;
}

}  // namespace

FinitaryProof proof_of(const SExpr& e) {
  if (e.head() != "proof") fail_at(e, ParseErrorKind::Grammar, "expected a proof", {"(proof"});
  return lines_of(e, 1);
}

CertPtr cert_of(const SExpr& e) {
  std::string h = e.head();
  if (h == "fin") return make_fin(lines_of(e, 1));
  if (h != "omega") fail_at(e, ParseErrorKind::Grammar, "expected a certificate", {"(fin", "(omega"});
  expect_arity(e, 5);
  Cnf xi = cnf_of(e.items[1]);
  Nat var = first_var(e.items[2]);
  Formula psi = formula_of(e.items[3]);
  const SExpr& te = e.items[4];
  PremiseTemplate t;
  auto uni = [&](const SExpr& u) {
    expect_arity(u, 2);
    return UniformPremise{first_var(u.items[1]), cert_of(u.items[2])};
  };
  if (te.head() == "uniform") {
    t.uniform = uni(te);
  } else if (te.head() == "tab") {
    for (std::size_t i = 1; i < te.items.size(); ++i) {
      const SExpr& row = te.items[i];
      if (row.head() == "tail" && i + 1 == te.items.size()) {
        t.uniform = uni(row);
        continue;
      }
      if (row.atom || row.items.size() != 2) fail_at(row, ParseErrorKind::Arity, "a table row is (n certificate)");
      Nat n = nat_of(row.items[0]);
      if (t.table.count(n)) fail_at(row, ParseErrorKind::Grammar, "duplicate table row " + std::to_string(n));
      t.table[n] = cert_of(row.items[1]);
    }
  } else {
    fail_at(te, ParseErrorKind::Grammar, "expected a premise template", {"(uniform", "(tab"});
  }
  const SExpr& d = e.items[5];
  if (d.head() != "d") fail_at(d, ParseErrorKind::Grammar, "expected the implication proof", {"(d"});
  return make_omega(std::move(xi), var, std::move(psi), std::move(t), lines_of(d, 1));
}

Term parse_term(std::string_view s) { return term_of(read_sexpr(s)); }
Formula parse_formula(std::string_view s) { return formula_of(read_sexpr(s)); }
Cnf parse_cnf(std::string_view s) { return cnf_of(read_sexpr(s)); }
WellOrder parse_order(std::string_view s) { return order_of(read_sexpr(s)); }
DecidableSet parse_set(std::string_view s) { return set_of(read_sexpr(s)); }
FinitaryProof parse_proof(std::string_view s) { return proof_of(read_sexpr(s)); }
CertPtr parse_cert(std::string_view s) { return cert_of(read_sexpr(s)); }

std::vector<std::string> batch_lines(std::string_view text) {
  std::vector<std::string> out;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t nl = text.find('\n', pos);
    if (nl == std::string_view::npos) nl = text.size();
    std::string_view line = text.substr(pos, nl - pos);
    std::size_t a = line.find_first_not_of(" \t\r");
    if (a != std::string_view::npos && line[a] != ';') {
      std::size_t b = line.find_last_not_of(" \t\r");
      out.emplace_back(line.substr(a, b - a + 1));
    }
    pos = nl + 1;
  }
  return out;
}

}  // namespace omk
