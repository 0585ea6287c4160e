#include "omegak/formula.hpp"

#include <algorithm>

#include "omegak/errors.hpp"

namespace omk {

namespace {

std::size_t mix(std::size_t h, std::size_t v) {
  h ^= v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  return h;
}

Term make_term(TermKind k, Nat value, Term a, Term b) {
  auto n = std::make_shared<TermNode>();
  n->kind = k;
  n->value = value;
  n->a = std::move(a);
  n->b = std::move(b);
  std::size_t h = mix(static_cast<std::size_t>(k) + 17, value);
  std::size_t len = 1;
  bool closed = k != TermKind::Var;
  if (n->a) {
    h = mix(h, n->a->hash);
    len += n->a->len;
    closed = closed && n->a->closed;
  }
  if (n->b) {
    h = mix(h, n->b->hash);
    len += n->b->len;
    closed = closed && n->b->closed;
  }
  if (k == TermKind::Var || k == TermKind::Const) len += value;
  if (k == TermKind::Numeral) len = 2 * value - 1;
  n->hash = h;
  n->len = len;
  n->closed = closed;
  return n;
}

const Term& zero_node() {
  static const Term z = make_term(TermKind::Zero, 0, nullptr, nullptr);
  return z;
}
const Term& one_node() {
  static const Term o = make_term(TermKind::One, 0, nullptr, nullptr);
  return o;
}

}  // namespace

Term t_zero() { return zero_node(); }
Term t_one() { return one_node(); }
Term t_var(Nat index) { return make_term(TermKind::Var, index, nullptr, nullptr); }

Term t_add(Term a, Term b) {
  if (b->kind == TermKind::One && is_numeral(a))
    return t_num(*numeral_value(a) + 1);
  return make_term(TermKind::Add, 0, std::move(a), std::move(b));
}
Term t_mul(Term a, Term b) { return make_term(TermKind::Mul, 0, std::move(a), std::move(b)); }
Term t_exp(Term a, Term b) { return make_term(TermKind::Exp, 0, std::move(a), std::move(b)); }
Term t_pair(Term a, Term b) { return make_term(TermKind::Pair, 0, std::move(a), std::move(b)); }
Term t_proj(int side, Term t) {
  return make_term(side == 0 ? TermKind::Proj0 : TermKind::Proj1, 0, std::move(t), nullptr);
}
Term t_num(Nat n) {
  if (n == 0) return zero_node();
  if (n == 1) return one_node();
  return make_term(TermKind::Numeral, n, nullptr, nullptr);
}
Term t_const(Nat n) { return make_term(TermKind::Const, n, nullptr, nullptr); }

bool is_numeral(const Term& t) {
  return t->kind == TermKind::Zero || t->kind == TermKind::One || t->kind == TermKind::Numeral;
}

std::optional<Nat> numeral_value(const Term& t) {
  switch (t->kind) {
    case TermKind::Zero: return 0;
    case TermKind::One: return 1;
    case TermKind::Numeral: return t->value;
    default: return std::nullopt;
  }
}

bool term_eq(const Term& a, const Term& b) {
  if (a.get() == b.get()) return true;
  if (a->hash != b->hash || a->kind != b->kind || a->value != b->value || a->len != b->len) return false;
  if (static_cast<bool>(a->a) != static_cast<bool>(b->a)) return false;
  if (a->a && !term_eq(a->a, b->a)) return false;
  if (static_cast<bool>(a->b) != static_cast<bool>(b->b)) return false;
  if (a->b && !term_eq(a->b, b->b)) return false;
  return true;
}

namespace {

std::shared_ptr<FormulaNode> base_node(FormulaKind k) {
  auto n = std::make_shared<FormulaNode>();
  n->kind = k;
  return n;
}

// Least Σ level reachable by an existential block over a body with levels (s, p).
int ex_level(int s, int p) { return std::min(std::max(s, 1), p + 1); }

Formula finish(std::shared_ptr<FormulaNode> n) {
  std::size_t h = mix(static_cast<std::size_t>(n->kind) * 131 + 7, n->var);
  h = mix(h, n->second_order ? 1 : 2);
  std::size_t len = 1;
  auto addt = [&](const Term& t) {
    if (!t) return;
    h = mix(h, t->hash);
    len += t->len;
    n->has_const = n->has_const || [&] {
      std::function<bool(const Term&)> rec = [&](const Term& u) -> bool {
        if (!u) return false;
        if (u->kind == TermKind::Const) return true;
        return rec(u->a) || rec(u->b);
      };
      return rec(t);
    }();
  };
  auto addf = [&](const Formula& f) {
    if (!f) return;
    h = mix(h, f->hash);
    len += f->len;
    n->has_oracle = n->has_oracle || f->has_oracle;
    n->has_unbounded = n->has_unbounded || f->has_unbounded;
    n->has_so_quant = n->has_so_quant || f->has_so_quant;
    n->has_set_atom = n->has_set_atom || f->has_set_atom;
    n->has_const = n->has_const || f->has_const;
  };
  addt(n->t);
  addt(n->s);
  addf(n->a);
  addf(n->b);
  const auto& A = n->a;
  const auto& B = n->b;
  switch (n->kind) {
    case FormulaKind::Eq:
    case FormulaKind::Lt:
      break;
    case FormulaKind::In:
      h = mix(h, n->set.index * 2 + (n->set.is_const ? 1 : 0));
      len += 1 + n->set.index;
      n->has_set_atom = true;
      n->has_const = n->has_const || n->set.is_const;
      break;
    case FormulaKind::Oracle:
      n->has_oracle = true;
      break;
    case FormulaKind::Not:
      n->sig0 = A->pi0; n->pi0 = A->sig0;
      n->sig1 = A->pi1; n->pi1 = A->sig1;
      break;
    case FormulaKind::And:
    case FormulaKind::Or:
      n->sig0 = std::max(A->sig0, B->sig0); n->pi0 = std::max(A->pi0, B->pi0);
      n->sig1 = std::max(A->sig1, B->sig1); n->pi1 = std::max(A->pi1, B->pi1);
      break;
    case FormulaKind::Imp:
      n->sig0 = std::max(A->pi0, B->sig0); n->pi0 = std::max(A->sig0, B->pi0);
      n->sig1 = std::max(A->pi1, B->sig1); n->pi1 = std::max(A->sig1, B->pi1);
      break;
    case FormulaKind::Iff: {
      int m0 = std::max({A->sig0, A->pi0, B->sig0, B->pi0});
      int m1 = std::max({A->sig1, A->pi1, B->sig1, B->pi1});
      n->sig0 = n->pi0 = m0;
      n->sig1 = n->pi1 = m1;
      break;
    }
    case FormulaKind::All:
    case FormulaKind::Ex:
    case FormulaKind::BAll:
    case FormulaKind::BEx: {
      len += 1 + n->var;
      bool bounded = n->kind == FormulaKind::BAll || n->kind == FormulaKind::BEx;
      bool existential = n->kind == FormulaKind::Ex || n->kind == FormulaKind::BEx;
      if (n->second_order) {
        n->has_so_quant = true;
        int S = existential ? ex_level(A->sig1, A->pi1) : 0;
        int P = existential ? 0 : ex_level(A->pi1, A->sig1);
        if (existential) P = S + 1; else S = P + 1;
        n->sig1 = S; n->pi1 = P;
        n->sig0 = n->pi0 = 0;
        break;
      }
      if (!bounded) n->has_unbounded = true;
      if (A->has_so_quant) {
        n->sig1 = n->pi1 = std::max(A->sig1, A->pi1) + 1;
        break;
      }
      if (bounded && !A->has_unbounded) {
        n->sig0 = n->pi0 = 0;
        break;
      }
      if (existential) {
        n->sig0 = ex_level(A->sig0, A->pi0);
        n->pi0 = n->sig0 + 1;
      } else {
        n->pi0 = ex_level(A->pi0, A->sig0);
        n->sig0 = n->pi0 + 1;
      }
      break;
    }
  }
  n->hash = h;
  n->len = len;
  return n;
}

Formula atom2(FormulaKind k, Term a, Term b) {
  auto n = base_node(k);
  n->t = std::move(a);
  n->s = std::move(b);
  return finish(std::move(n));
}

Formula bin(FormulaKind k, Formula a, Formula b) {
  auto n = base_node(k);
  n->a = std::move(a);
  n->b = std::move(b);
  return finish(std::move(n));
}

Formula quant(FormulaKind k, bool so, Nat var, Term bound, Formula body) {
  auto n = base_node(k);
  n->second_order = so;
  n->var = var;
  n->t = std::move(bound);
  n->a = std::move(body);
  return finish(std::move(n));
}

}  // namespace

Formula f_eq(Term a, Term b) { return atom2(FormulaKind::Eq, std::move(a), std::move(b)); }
Formula f_lt(Term a, Term b) { return atom2(FormulaKind::Lt, std::move(a), std::move(b)); }
Formula f_in(Term t, SetRef s) {
  auto n = base_node(FormulaKind::In);
  n->t = std::move(t);
  n->set = s;
  return finish(std::move(n));
}
Formula f_in_var(Term t, Nat set_var) { return f_in(std::move(t), SetRef{false, set_var}); }
Formula f_oracle(Term t) {
  auto n = base_node(FormulaKind::Oracle);
  n->t = std::move(t);
  return finish(std::move(n));
}
Formula f_not(Formula a) {
  auto n = base_node(FormulaKind::Not);
  n->a = std::move(a);
  return finish(std::move(n));
}
Formula f_and(Formula a, Formula b) { return bin(FormulaKind::And, std::move(a), std::move(b)); }
Formula f_or(Formula a, Formula b) { return bin(FormulaKind::Or, std::move(a), std::move(b)); }
Formula f_imp(Formula a, Formula b) { return bin(FormulaKind::Imp, std::move(a), std::move(b)); }
Formula f_iff(Formula a, Formula b) { return bin(FormulaKind::Iff, std::move(a), std::move(b)); }
Formula f_all(Nat var, Formula body) { return quant(FormulaKind::All, false, var, nullptr, std::move(body)); }
Formula f_ex(Nat var, Formula body) { return quant(FormulaKind::Ex, false, var, nullptr, std::move(body)); }
Formula f_all_set(Nat v, Formula body) { return quant(FormulaKind::All, true, v, nullptr, std::move(body)); }
Formula f_ex_set(Nat v, Formula body) { return quant(FormulaKind::Ex, true, v, nullptr, std::move(body)); }
Formula f_ball(Nat var, Term bound, Formula body) {
  return quant(FormulaKind::BAll, false, var, std::move(bound), std::move(body));
}
Formula f_bex(Nat var, Term bound, Formula body) {
  return quant(FormulaKind::BEx, false, var, std::move(bound), std::move(body));
}
Formula f_bottom() {
  static const Formula b = f_eq(t_zero(), t_one());
  return b;
}
Formula f_top() {
  static const Formula t = f_eq(t_zero(), t_zero());
  return t;
}
Formula f_and_all(const std::vector<Formula>& parts) {
  if (parts.empty()) return f_top();
  Formula acc = parts.back();
  for (std::size_t i = parts.size() - 1; i-- > 0;) acc = f_and(parts[i], acc);
  return acc;
}
Formula f_or_all(const std::vector<Formula>& parts) {
  if (parts.empty()) return f_bottom();
  Formula acc = parts.back();
  for (std::size_t i = parts.size() - 1; i-- > 0;) acc = f_or(parts[i], acc);
  return acc;
}

bool formula_eq(const Formula& a, const Formula& b) {
  if (a.get() == b.get()) return true;
  if (!a || !b) return false;
  if (a->hash != b->hash || a->kind != b->kind || a->len != b->len) return false;
  if (a->var != b->var || a->second_order != b->second_order || !(a->set == b->set)) return false;
  auto teq = [](const Term& x, const Term& y) {
    if (static_cast<bool>(x) != static_cast<bool>(y)) return false;
    return !x || term_eq(x, y);
  };
  auto feq = [](const Formula& x, const Formula& y) {
    if (static_cast<bool>(x) != static_cast<bool>(y)) return false;
    return !x || formula_eq(x, y);
  };
  return teq(a->t, b->t) && teq(a->s, b->s) && feq(a->a, b->a) && feq(a->b, b->b);
}

bool is_atomic(const Formula& f) {
  return f->kind == FormulaKind::Eq || f->kind == FormulaKind::Lt || f->kind == FormulaKind::In ||
         f->kind == FormulaKind::Oracle;
}
bool is_boolean(const Formula& f) {
  switch (f->kind) {
    case FormulaKind::Not:
    case FormulaKind::And:
    case FormulaKind::Or:
    case FormulaKind::Imp:
    case FormulaKind::Iff:
      return true;
    default:
      return false;
  }
}
bool is_quantifier(const Formula& f) { return !is_atomic(f) && !is_boolean(f); }

// ---------------------------------------------------------------- variables

static void collect_term_vars(const Term& t, std::set<Nat>& out) {
  if (!t) return;
  if (t->kind == TermKind::Var) out.insert(t->value);
  collect_term_vars(t->a, out);
  collect_term_vars(t->b, out);
}

std::set<Nat> term_vars(const Term& t) {
  std::set<Nat> out;
  collect_term_vars(t, out);
  return out;
}

static void collect_free(const Formula& f, std::set<Nat>& bound, std::set<Nat>& out) {
  auto tv = [&](const Term& t) {
    if (!t) return;
    for (Nat v : term_vars(t))
      if (!bound.count(v)) out.insert(v);
  };
  tv(f->t);
  tv(f->s);
  if (is_quantifier(f) && !f->second_order) {
    bool fresh = bound.insert(f->var).second;
    collect_free(f->a, bound, out);
    if (fresh) bound.erase(f->var);
    return;
  }
  if (f->a) collect_free(f->a, bound, out);
  if (f->b) collect_free(f->b, bound, out);
}

std::set<Nat> free_vars(const Formula& f) {
  std::set<Nat> bound, out;
  collect_free(f, bound, out);
  return out;
}

static void collect_free_sets(const Formula& f, std::set<Nat>& bound, std::set<Nat>& out) {
  if (f->kind == FormulaKind::In && !f->set.is_const && !bound.count(f->set.index)) out.insert(f->set.index);
  if (is_quantifier(f) && f->second_order) {
    bool fresh = bound.insert(f->var).second;
    collect_free_sets(f->a, bound, out);
    if (fresh) bound.erase(f->var);
    return;
  }
  if (f->a) collect_free_sets(f->a, bound, out);
  if (f->b) collect_free_sets(f->b, bound, out);
}

std::set<Nat> free_set_vars(const Formula& f) {
  if (!f->has_set_atom) return {};
  std::set<Nat> bound, out;
  collect_free_sets(f, bound, out);
  return out;
}

bool occurs_free(const Formula& f, Nat var) { return free_vars(f).count(var) > 0; }
bool set_occurs_free(const Formula& f, Nat v) { return free_set_vars(f).count(v) > 0; }

static Nat max_term_var(const Term& t) {
  if (!t) return 0;
  Nat m = t->kind == TermKind::Var ? t->value : 0;
  return std::max({m, max_term_var(t->a), max_term_var(t->b)});
}

Nat max_var_index(const Formula& f) {
  Nat m = std::max(max_term_var(f->t), max_term_var(f->s));
  if (is_quantifier(f) && !f->second_order) m = std::max(m, f->var);
  if (f->a) m = std::max(m, max_var_index(f->a));
  if (f->b) m = std::max(m, max_var_index(f->b));
  return m;
}

Nat max_set_var_index(const Formula& f) {
  Nat m = 0;
  if (f->kind == FormulaKind::In && !f->set.is_const) m = f->set.index;
  if (is_quantifier(f) && f->second_order) m = std::max(m, f->var);
  if (f->a) m = std::max(m, max_set_var_index(f->a));
  if (f->b) m = std::max(m, max_set_var_index(f->b));
  return m;
}

bool is_sentence(const Formula& f) { return free_vars(f).empty() && free_set_vars(f).empty(); }

// ------------------------------------------------------------- substitution

Term subst_term(const Term& t, Nat var, const Term& by) {
  if (t->closed) return t;
  switch (t->kind) {
    case TermKind::Var:
      return t->value == var ? by : t;
    case TermKind::Add: return t_add(subst_term(t->a, var, by), subst_term(t->b, var, by));
    case TermKind::Mul: return t_mul(subst_term(t->a, var, by), subst_term(t->b, var, by));
    case TermKind::Exp: return t_exp(subst_term(t->a, var, by), subst_term(t->b, var, by));
    case TermKind::Pair: return t_pair(subst_term(t->a, var, by), subst_term(t->b, var, by));
    case TermKind::Proj0: return t_proj(0, subst_term(t->a, var, by));
    case TermKind::Proj1: return t_proj(1, subst_term(t->a, var, by));
    default: return t;
  }
}

namespace {

Formula rebuild(const Formula& f, Term t, Term s, Formula a, Formula b) {
  switch (f->kind) {
    case FormulaKind::Eq: return f_eq(t, s);
    case FormulaKind::Lt: return f_lt(t, s);
    case FormulaKind::In: return f_in(t, f->set);
    case FormulaKind::Oracle: return f_oracle(t);
    case FormulaKind::Not: return f_not(a);
    case FormulaKind::And: return f_and(a, b);
    case FormulaKind::Or: return f_or(a, b);
    case FormulaKind::Imp: return f_imp(a, b);
    case FormulaKind::Iff: return f_iff(a, b);
    case FormulaKind::All: return f->second_order ? f_all_set(f->var, a) : f_all(f->var, a);
    case FormulaKind::Ex: return f->second_order ? f_ex_set(f->var, a) : f_ex(f->var, a);
    case FormulaKind::BAll: return f_ball(f->var, t, a);
    case FormulaKind::BEx: return f_bex(f->var, t, a);
  }
  return f;
}

Formula subst_rec(const Formula& f, Nat var, const Term& by, const std::set<Nat>& by_vars) {
  Term t = f->t ? subst_term(f->t, var, by) : nullptr;
  Term s = f->s ? subst_term(f->s, var, by) : nullptr;
  if (is_quantifier(f) && !f->second_order) {
    if (f->var == var) {
      if (f->kind == FormulaKind::BAll || f->kind == FormulaKind::BEx) return rebuild(f, t, s, f->a, nullptr);
      return f;
    }
    if (by_vars.count(f->var) && occurs_free(f->a, var))
      throw PreconditionError("substitution captures variable " + var_name(f->var));
  }
  Formula a = f->a ? subst_rec(f->a, var, by, by_vars) : nullptr;
  Formula b = f->b ? subst_rec(f->b, var, by, by_vars) : nullptr;
  return rebuild(f, t, s, a, b);
}

}  // namespace

Formula subst(const Formula& f, Nat var, const Term& by) {
  if (!occurs_free(f, var)) return f;
  return subst_rec(f, var, by, term_vars(by));
}

Formula substitute_numeral(const Formula& f, Nat var, Nat n) { return subst(f, var, t_num(n)); }

namespace {
Formula subst_set_rec(const Formula& f, Nat X, SetRef by) {
  if (f->kind == FormulaKind::In) {
    if (!f->set.is_const && f->set.index == X) return f_in(f->t, by);
    return f;
  }
  if (is_atomic(f)) return f;
  if (is_quantifier(f) && f->second_order) {
    if (f->var == X) return f;
    if (!by.is_const && f->var == by.index && set_occurs_free(f->a, X))
      throw PreconditionError("set substitution captures " + set_var_name(by.index));
  }
  Formula a = f->a ? subst_set_rec(f->a, X, by) : nullptr;
  Formula b = f->b ? subst_set_rec(f->b, X, by) : nullptr;
  return rebuild(f, f->t, f->s, a, b);
}

Formula subst_atoms_rec(const Formula& f, const std::function<std::optional<Formula>(const Formula&)>& repl,
                        const std::set<Nat>& body_fv, const std::set<Nat>& body_sets, std::optional<SetRef> target) {
  if (is_atomic(f)) {
    auto r = repl(f);
    return r ? *r : f;
  }
  if (is_quantifier(f)) {
    if (f->second_order) {
      if (target && !target->is_const && target->index == f->var) return f;
      if (body_sets.count(f->var)) throw PreconditionError("atom substitution captures a set variable");
    } else if (body_fv.count(f->var)) {
      throw PreconditionError("atom substitution captures " + var_name(f->var));
    }
  }
  Formula a = f->a ? subst_atoms_rec(f->a, repl, body_fv, body_sets, target) : nullptr;
  Formula b = f->b ? subst_atoms_rec(f->b, repl, body_fv, body_sets, target) : nullptr;
  return rebuild(f, f->t, f->s, a, b);
}

}  // namespace

Formula subst_set(const Formula& f, Nat X, SetRef by) {
  if (!f->has_set_atom) return f;
  return subst_set_rec(f, X, by);
}

Formula subst_set_atoms(const Formula& f, SetRef target, Nat v, const Formula& body) {
  auto fv = free_vars(body);
  fv.erase(v);
  auto sets = free_set_vars(body);
  // The atom argument is placed into body; its variables become free at the
  // replacement site, so bound variables of `body` must avoid them.
  auto repl = [&](const Formula& atom) -> std::optional<Formula> {
    if (atom->kind != FormulaKind::In || !(atom->set == target)) return std::nullopt;
    return subst(body, v, atom->t);
  };
  return subst_atoms_rec(f, repl, fv, sets, target);
}

Formula subst_oracle_atoms(const Formula& f, Nat v, const Formula& body) {
  if (!f->has_oracle) return f;
  auto fv = free_vars(body);
  fv.erase(v);
  auto sets = free_set_vars(body);
  auto repl = [&](const Formula& atom) -> std::optional<Formula> {
    if (atom->kind != FormulaKind::Oracle) return std::nullopt;
    return subst(body, v, atom->t);
  };
  return subst_atoms_rec(f, repl, fv, sets, std::nullopt);
}

// ------------------------------------------------------------------- names

std::string var_name(Nat i) {
  static const char* names[] = {"x", "y", "z", "u", "v", "w"};
  if (i < 6) return names[i];
  return "x" + std::to_string(i);
}

std::string set_var_name(Nat i) {
  static const char* names[] = {"X", "Y", "Z", "W", "L", "M"};
  if (i < 6) return names[i];
  return "X" + std::to_string(i);
}

static std::optional<Nat> parse_name(const std::string& s, const char* base, char stem) {
  if (s.size() == 1) {
    for (int i = 0; i < 6; ++i)
      if (base[i] == s[0]) return static_cast<Nat>(i);
    return std::nullopt;
  }
  if (s[0] != stem || s.size() > 12) return std::nullopt;
  for (std::size_t i = 1; i < s.size(); ++i)
    if (s[i] < '0' || s[i] > '9') return std::nullopt;
  return static_cast<Nat>(std::stoull(s.substr(1)));
}

std::optional<Nat> parse_var_name(const std::string& s) { return parse_name(s, "xyzuvw", 'x'); }
std::optional<Nat> parse_set_var_name(const std::string& s) { return parse_name(s, "XYZWLM", 'X'); }

}  // namespace omk
