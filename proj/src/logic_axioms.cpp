// Logical axiom schemas of the Hilbert calculus. Besides the textbook
// quantifier and equality schemas, a few derived schemas (closed true Δ⁰₀
// sentences, bounded-quantifier expansion, substitution of equivalent set
// definitions, decidable order facts) stand in for long but routine
// derivations.

#include <algorithm>
#include <map>
#include <unordered_map>

#include "omegak/errors.hpp"
#include "omegak/eval.hpp"
#include "omegak/theory.hpp"

namespace omk {

namespace {

constexpr Nat kExpandLimit = 4096;

bool is_fo(const Formula& f, FormulaKind k) { return f->kind == k && !f->second_order; }
bool is_so(const Formula& f, FormulaKind k) { return f->kind == k && f->second_order; }

// ---------------------------------------------------------------- matching

struct InstMatcher {
  Nat var;
  std::optional<Term> found;

  bool terms(const Term& a, const Term& b, bool free_here) {
    if (free_here && a->kind == TermKind::Var && a->value == var) {
      if (found) return term_eq(*found, b);
      found = b;
      return true;
    }
    if (a->kind == TermKind::Add && a->b->kind == TermKind::One && is_numeral(b)) {
      Nat n = *numeral_value(b);
      if (n == 0) return false;
      return terms(a->a, t_num(n - 1), free_here);
    }
    if (a->kind != b->kind || a->value != b->value) return false;
    if (static_cast<bool>(a->a) != static_cast<bool>(b->a)) return false;
    if (a->a && !terms(a->a, b->a, free_here)) return false;
    if (a->b && !terms(a->b, b->b, free_here)) return false;
    return true;
  }

  bool formulas(const Formula& a, const Formula& b, bool free_here) {
    if (a->kind != b->kind || a->second_order != b->second_order) return false;
    if (a->kind == FormulaKind::In && !(a->set == b->set)) return false;
    if (is_quantifier(a) && a->var != b->var) return false;
    if (a->t && !terms(a->t, b->t, free_here)) return false;
    if (a->s && !terms(a->s, b->s, free_here)) return false;
    bool inner = free_here && !(is_quantifier(a) && !a->second_order && a->var == var);
    if (a->a && !formulas(a->a, b->a, inner)) return false;
    if (a->b && !formulas(a->b, b->b, inner)) return false;
    return true;
  }
};

// B = A[v := t] for some substitutable t?
std::string check_instance(const Formula& A, Nat v, const Formula& B) {
  if (!occurs_free(A, v)) return formula_eq(A, B) ? "" : "instance differs from body";
  InstMatcher m{v, std::nullopt};
  if (!m.formulas(A, B, true) || !m.found) return "no term makes the instance match";
  try {
    if (!formula_eq(subst(A, v, *m.found), B)) return "instance mismatch";
  } catch (const PreconditionError&) {
    return "term not substitutable";
  }
  return "";
}

struct SetInstMatcher {
  Nat var;
  std::optional<SetRef> found;
  bool formulas(const Formula& a, const Formula& b, bool free_here) {
    if (a->kind != b->kind || a->second_order != b->second_order) return false;
    if (is_quantifier(a) && a->var != b->var) return false;
    if (a->t && !term_eq(a->t, b->t)) return false;
    if (a->s && !term_eq(a->s, b->s)) return false;
    if (a->kind == FormulaKind::In) {
      if (free_here && !a->set.is_const && a->set.index == var) {
        if (found) return *found == b->set;
        found = b->set;
        return true;
      }
      return a->set == b->set;
    }
    bool inner = free_here && !(is_quantifier(a) && a->second_order && a->var == var);
    if (a->a && !formulas(a->a, b->a, inner)) return false;
    if (a->b && !formulas(a->b, b->b, inner)) return false;
    return true;
  }
};

std::string check_set_instance(const Formula& A, Nat X, const Formula& B) {
  if (!set_occurs_free(A, X)) return formula_eq(A, B) ? "" : "instance differs from body";
  SetInstMatcher m{X, std::nullopt};
  if (!m.formulas(A, B, true) || !m.found) return "no set makes the instance match";
  try {
    if (!formula_eq(subst_set(A, X, *m.found), B)) return "instance mismatch";
  } catch (const PreconditionError&) {
    return "set not substitutable";
  }
  return "";
}

// Is B obtained from A by replacing some free occurrences of t by s?
struct Replacer {
  Term t, s;
  std::set<Nat> risky;  // variables of t and s

  bool terms(const Term& a, const Term& b, const std::set<Nat>& bound) {
    if (term_eq(a, b)) return true;
    if (term_eq(a, t) && term_eq(b, s)) {
      for (Nat v : risky)
        if (bound.count(v)) return false;
      return true;
    }
    if (a->kind == TermKind::Add && a->b->kind == TermKind::One && is_numeral(b)) {
      Nat n = *numeral_value(b);
      return n > 0 && terms(a->a, t_num(n - 1), bound);
    }
    if (a->kind != b->kind || a->value != b->value) return false;
    if (static_cast<bool>(a->a) != static_cast<bool>(b->a)) return false;
    if (a->a && !terms(a->a, b->a, bound)) return false;
    if (a->b && !terms(a->b, b->b, bound)) return false;
    return true;
  }

  bool formulas(const Formula& a, const Formula& b, std::set<Nat>& bound) {
    if (formula_eq(a, b)) return true;
    if (a->kind != b->kind || a->second_order != b->second_order) return false;
    if (a->kind == FormulaKind::In && !(a->set == b->set)) return false;
    if (is_quantifier(a) && a->var != b->var) return false;
    if (a->t && !terms(a->t, b->t, bound)) return false;
    if (a->s && !terms(a->s, b->s, bound)) return false;
    bool pushed = false;
    if (is_quantifier(a) && !a->second_order) pushed = bound.insert(a->var).second;
    bool ok = (!a->a || formulas(a->a, b->a, bound)) && (!a->b || formulas(a->b, b->b, bound));
    if (pushed) bound.erase(a->var);
    return ok;
  }
};

// ------------------------------------------------------------ order facts

Term normalize_projections(const Term& t) {
  if (!t->a) return t;
  Term a = normalize_projections(t->a);
  Term b = t->b ? normalize_projections(t->b) : nullptr;
  if ((t->kind == TermKind::Proj0 || t->kind == TermKind::Proj1) && a->kind == TermKind::Pair)
    return t->kind == TermKind::Proj0 ? a->a : a->b;
  switch (t->kind) {
    case TermKind::Add: return t_add(a, b);
    case TermKind::Mul: return t_mul(a, b);
    case TermKind::Exp: return t_exp(a, b);
    case TermKind::Pair: return t_pair(a, b);
    case TermKind::Proj0: return t_proj(0, a);
    case TermKind::Proj1: return t_proj(1, a);
    default: return t;
  }
}

struct OrderFacts {
  std::vector<Term> unknowns;
  Nat max_const = 0;
  Nat max_offset = 0;
  std::string error;

  // A leaf is a constant, or an unknown plus a constant offset (t + 2).
  struct Leaf {
    bool constant;
    Nat index;  // value for constants
    Nat offset = 0;
  };

  Leaf leaf(const Term& raw) {
    Term t = normalize_projections(raw);
    if (t->closed) {
      try {
        Nat v = eval_term(t, Env{});
        max_const = std::max(max_const, v);
        return {true, v};
      } catch (const Error&) {
        error = "closed term too large";
        return {true, 0};
      }
    }
    Nat offset = 0;
    while (t->kind == TermKind::Add && t->b->closed) {
      try {
        offset += eval_term(t->b, Env{});
      } catch (const Error&) {
        error = "closed term too large";
        return {true, 0};
      }
      t = t->a;
    }
    if (offset > (Nat{1} << 20)) {
      error = "offset too large";
      return {true, 0};
    }
    max_offset = std::max(max_offset, offset);
    for (std::size_t i = 0; i < unknowns.size(); ++i)
      if (term_eq(unknowns[i], t)) return {false, i, offset};
    unknowns.push_back(t);
    return {false, unknowns.size() - 1, offset};
  }

  struct Atom {
    bool lt;
    Leaf l, r;
  };
  std::vector<Atom> atoms;
  std::vector<Formula> atom_formulas;

  bool collect(const Formula& f) {
    switch (f->kind) {
      case FormulaKind::Eq:
      case FormulaKind::Lt:
        atom_formulas.push_back(f);
        atoms.push_back({f->kind == FormulaKind::Lt, leaf(f->t), leaf(f->s)});
        return true;
      case FormulaKind::Not: return collect(f->a);
      case FormulaKind::And:
      case FormulaKind::Or:
      case FormulaKind::Imp:
      case FormulaKind::Iff: return collect(f->a) && collect(f->b);
      default: error = "order facts are quantifier-free equalities and inequalities"; return false;
    }
  }

  std::vector<Nat> values;
  std::size_t cursor = 0;

  Nat val(const Leaf& l) const { return l.constant ? l.index : values[l.index] + l.offset; }

  bool eval(const Formula& f) {
    switch (f->kind) {
      case FormulaKind::Eq:
      case FormulaKind::Lt: {
        const Atom& a = atoms[cursor++];
        return a.lt ? val(a.l) < val(a.r) : val(a.l) == val(a.r);
      }
      case FormulaKind::Not: return !eval(f->a);
      case FormulaKind::And: {
        bool x = eval(f->a);
        bool y = eval(f->b);
        return x && y;
      }
      case FormulaKind::Or: {
        bool x = eval(f->a);
        bool y = eval(f->b);
        return x || y;
      }
      case FormulaKind::Imp: {
        bool x = eval(f->a);
        bool y = eval(f->b);
        return !x || y;
      }
      case FormulaKind::Iff: {
        bool x = eval(f->a);
        bool y = eval(f->b);
        return x == y;
      }
      default: return false;
    }
  }
};

std::string check_order_fact(const Formula& f) {
  OrderFacts of;
  if (!of.collect(f)) return of.error;
  if (!of.error.empty()) return of.error;
  std::size_t u = of.unknowns.size();
  if (u > 6) return "too many unknown terms";
  // Shrinking gaps wider than the largest offset preserves every atom, so
  // small values decide validity.
  Nat range = of.max_const + (u + 1) * (of.max_offset + 1) + 1;
  double cases = 1;
  for (std::size_t i = 0; i < u; ++i) cases *= static_cast<double>(range);
  if (cases > 4e6) return "order fact too large to decide";
  of.values.assign(u, 0);
  while (true) {
    of.cursor = 0;
    if (!of.eval(f)) return "not valid over the naturals";
    std::size_t i = 0;
    while (i < u && ++of.values[i] == range) of.values[i++] = 0;
    if (i == u) break;
  }
  return "";
}

// ------------------------------------------------------------ schemas

std::string chk_taut(const Formula& f, const OracleTheory&) {
  return is_tautology(f) ? "" : "not a propositional tautology";
}

std::string chk_all_inst(const Formula& f, const OracleTheory&) {
  if (f->kind != FormulaKind::Imp || !is_fo(f->a, FormulaKind::All)) return "shape ∀v A → A[t]";
  return check_instance(f->a->a, f->a->var, f->b);
}

std::string chk_ex_intro(const Formula& f, const OracleTheory&) {
  if (f->kind != FormulaKind::Imp || !is_fo(f->b, FormulaKind::Ex)) return "shape A[t] → ∃v A";
  return check_instance(f->b->a, f->b->var, f->a);
}

// ∀v(A→B) → (A → ∀v B), v not free in A   (first- or second-order)
std::string chk_all_dist(const Formula& f, bool so) {
  if (f->kind != FormulaKind::Imp) return "shape";
  const Formula& h = f->a;
  if (h->kind != FormulaKind::All || h->second_order != so || h->a->kind != FormulaKind::Imp) return "shape";
  const Formula& c = f->b;
  if (c->kind != FormulaKind::Imp || !formula_eq(c->a, h->a->a)) return "shape";
  if (c->b->kind != FormulaKind::All || c->b->second_order != so || c->b->var != h->var ||
      !formula_eq(c->b->a, h->a->b))
    return "shape";
  bool free = so ? set_occurs_free(h->a->a, h->var) : occurs_free(h->a->a, h->var);
  return free ? "quantified variable free in antecedent" : "";
}

// ∀v(A→B) → (∃v A → B), v not free in B
std::string chk_ex_elim(const Formula& f, bool so) {
  if (f->kind != FormulaKind::Imp) return "shape";
  const Formula& h = f->a;
  if (h->kind != FormulaKind::All || h->second_order != so || h->a->kind != FormulaKind::Imp) return "shape";
  const Formula& c = f->b;
  if (c->kind != FormulaKind::Imp || !formula_eq(c->b, h->a->b)) return "shape";
  if (c->a->kind != FormulaKind::Ex || c->a->second_order != so || c->a->var != h->var ||
      !formula_eq(c->a->a, h->a->a))
    return "shape";
  bool free = so ? set_occurs_free(h->a->b, h->var) : occurs_free(h->a->b, h->var);
  return free ? "quantified variable free in consequent" : "";
}

std::string chk_eq_refl(const Formula& f, const OracleTheory&) {
  return f->kind == FormulaKind::Eq && term_eq(f->t, f->s) ? "" : "shape t = t";
}

std::string chk_eq_subst(const Formula& f, const OracleTheory&) {
  if (f->kind != FormulaKind::Imp || f->a->kind != FormulaKind::Eq || f->b->kind != FormulaKind::Imp)
    return "shape t = s → (A → A')";
  Replacer r{f->a->t, f->a->s, {}};
  for (Nat v : term_vars(r.t)) r.risky.insert(v);
  for (Nat v : term_vars(r.s)) r.risky.insert(v);
  std::set<Nat> bound;
  return r.formulas(f->b->a, f->b->b, bound) ? "" : "consequent is not a replacement instance";
}

std::string chk_bnd(const Formula& f, bool universal) {
  if (f->kind != FormulaKind::Iff) return "shape";
  const Formula& b = f->a;
  if (b->kind != (universal ? FormulaKind::BAll : FormulaKind::BEx)) return "shape";
  if (term_vars(b->t).count(b->var)) return "bound mentions its own variable";
  Formula guard = f_lt(t_var(b->var), b->t);
  Formula want = universal ? f_all(b->var, f_imp(guard, b->a)) : f_ex(b->var, f_and(guard, b->a));
  return formula_eq(f->b, want) ? "" : "right side is not the definitional unfolding";
}

std::string chk_bnd_expand(const Formula& f, const OracleTheory&) {
  if (f->kind != FormulaKind::Iff) return "shape";
  const Formula& b = f->a;
  if (b->kind != FormulaKind::BAll && b->kind != FormulaKind::BEx) return "shape";
  if (!b->t->closed) return "bound is not closed";
  Nat k;
  try {
    k = eval_term(b->t, Env{});
  } catch (const Error&) {
    return "bound too large";
  }
  if (k > kExpandLimit) return "bound too large";
  std::vector<Formula> parts;
  parts.reserve(k);
  for (Nat i = 0; i < k; ++i) parts.push_back(substitute_numeral(b->a, b->var, i));
  Formula want = b->kind == FormulaKind::BAll ? f_and_all(parts) : f_or_all(parts);
  return formula_eq(f->b, want) ? "" : "right side is not the expansion";
}

std::string chk_delta0(const Formula& f, const OracleTheory&) {
  if (!is_sentence(f)) return "not a sentence";
  if (f->has_oracle || f->has_set_atom || f->has_const) return "mentions the oracle, a set, or a constant";
  if (!is_delta00(f)) return "not Delta0_0";
  Caps caps;
  Tri t = evaluate(f, Env{}, caps);
  if (t == Tri::True) return "";
  return t == Tri::False ? "false sentence" : "evaluation too large";
}

std::string chk_all2_inst(const Formula& f, const OracleTheory&) {
  if (f->kind != FormulaKind::Imp || !is_so(f->a, FormulaKind::All)) return "shape ∀X A → A[S]";
  return check_set_instance(f->a->a, f->a->var, f->b);
}

std::string chk_ex2_intro(const Formula& f, const OracleTheory&) {
  if (f->kind != FormulaKind::Imp || !is_so(f->b, FormulaKind::Ex)) return "shape A[S] → ∃X A";
  return check_set_instance(f->b->a, f->b->var, f->a);
}

std::string chk_set_subst(const Formula& f, const OracleTheory&) {
  if (f->kind != FormulaKind::Imp || f->b->kind != FormulaKind::Iff) return "shape";
  const Formula& h = f->a;
  if (!is_fo(h, FormulaKind::All) || h->a->kind != FormulaKind::Iff) return "shape";
  const Formula& in = h->a->a;
  if (in->kind != FormulaKind::In || in->set.is_const || in->t->kind != TermKind::Var || in->t->value != h->var)
    return "shape";
  try {
    Formula want = subst_set_atoms(f->b->a, in->set, h->var, h->a->b);
    return formula_eq(want, f->b->b) ? "" : "right side is not the set substitution";
  } catch (const PreconditionError&) {
    return "definition not substitutable";
  }
}

std::string chk_order(const Formula& f, const OracleTheory& T) {
  if (!T.base.order_facts()) return "order facts need induction";
  return check_order_fact(f);
}

using Checker = std::string (*)(const Formula&, const OracleTheory&);

const std::map<std::string, Checker>& table() {
  static const std::map<std::string, Checker> t = {
      {"taut", chk_taut},
      {"all-inst", chk_all_inst},
      {"ex-intro", chk_ex_intro},
      {"all-dist", [](const Formula& f, const OracleTheory&) { return chk_all_dist(f, false); }},
      {"ex-elim", [](const Formula& f, const OracleTheory&) { return chk_ex_elim(f, false); }},
      {"eq-refl", chk_eq_refl},
      {"eq-subst", chk_eq_subst},
      {"bnd-all", [](const Formula& f, const OracleTheory&) { return chk_bnd(f, true); }},
      {"bnd-ex", [](const Formula& f, const OracleTheory&) { return chk_bnd(f, false); }},
      {"bnd-expand", chk_bnd_expand},
      {"delta0", chk_delta0},
      {"all2-inst", chk_all2_inst},
      {"ex2-intro", chk_ex2_intro},
      {"all2-dist", [](const Formula& f, const OracleTheory&) { return chk_all_dist(f, true); }},
      {"ex2-elim", [](const Formula& f, const OracleTheory&) { return chk_ex_elim(f, true); }},
      {"set-subst", chk_set_subst},
      {"order", chk_order},
  };
  return t;
}

}  // namespace

const std::vector<std::string>& logical_axiom_ids() {
  static const std::vector<std::string> ids = [] {
    std::vector<std::string> v;
    for (const auto& kv : table()) v.push_back(kv.first);
    return v;
  }();
  return ids;
}

std::string check_logical_axiom(const std::string& id, const Formula& f, const OracleTheory& T) {
  auto it = table().find(id);
  if (it == table().end()) return "unknown logical axiom id";
  return it->second(f, T);
}

std::string find_logical_axiom(const Formula& f, const OracleTheory& T) {
  // Cheap structural schemas first; the tautology tableau last.
  static const char* order[] = {"eq-refl",   "all-inst",  "ex-intro", "all-dist",  "ex-elim",   "eq-subst",
                                "bnd-all",   "bnd-ex",    "bnd-expand", "all2-inst", "ex2-intro", "all2-dist",
                                "ex2-elim",  "set-subst", "delta0",   "order",     "taut"};
  for (const char* id : order)
    if (check_logical_axiom(id, f, T).empty()) return id;
  return "";
}

// ------------------------------------------------------------ tautologies

namespace {

struct Tableau {
  std::size_t steps = 0;
  std::size_t limit;
  bool exhausted = false;

  using Branch = std::unordered_map<Formula, int, FormulaHash, FormulaEq>;  // bit0 = true, bit1 = false

  struct Item {
    bool sign;
    Formula f;
  };

  // True when every branch closes.
  bool closes(Branch br, std::vector<Item> alpha, std::vector<Item> betas) {
    while (true) {
      if (++steps > limit) {
        exhausted = true;
        return false;
      }
      if (alpha.empty()) {
        if (betas.empty()) return false;
        Item b = betas.back();
        betas.pop_back();
        std::vector<std::vector<Item>> alts;
        const Formula& f = b.f;
        switch (f->kind) {
          case FormulaKind::And: alts = {{{false, f->a}}, {{false, f->b}}}; break;
          case FormulaKind::Or: alts = {{{true, f->a}}, {{true, f->b}}}; break;
          case FormulaKind::Imp: alts = {{{false, f->a}}, {{true, f->b}}}; break;
          case FormulaKind::Iff:
            if (b.sign) alts = {{{true, f->a}, {true, f->b}}, {{false, f->a}, {false, f->b}}};
            else alts = {{{true, f->a}, {false, f->b}}, {{false, f->a}, {true, f->b}}};
            break;
          default: break;
        }
        for (auto& alt : alts) {
          if (!closes(br, alt, betas)) return false;
        }
        return true;
      }
      Item it = alpha.back();
      alpha.pop_back();
      int bit = it.sign ? 1 : 2;
      int opp = it.sign ? 2 : 1;
      auto found = br.find(it.f);
      if (found != br.end()) {
        if (found->second & opp) return true;
        if (found->second & bit) continue;
        found->second |= bit;
      } else {
        br.emplace(it.f, bit);
      }
      const Formula& f = it.f;
      switch (f->kind) {
        case FormulaKind::Not: alpha.push_back({!it.sign, f->a}); break;
        case FormulaKind::And:
          if (it.sign) {
            alpha.push_back({true, f->b});
            alpha.push_back({true, f->a});
          } else {
            betas.push_back(it);
          }
          break;
        case FormulaKind::Or:
          if (!it.sign) {
            alpha.push_back({false, f->b});
            alpha.push_back({false, f->a});
          } else {
            betas.push_back(it);
          }
          break;
        case FormulaKind::Imp:
          if (!it.sign) {
            alpha.push_back({false, f->b});
            alpha.push_back({true, f->a});
          } else {
            betas.push_back(it);
          }
          break;
        case FormulaKind::Iff: betas.push_back(it); break;
        default: break;
      }
    }
  }
};

}  // namespace

bool is_tautology(const Formula& f, std::size_t step_limit) {
  Tableau t;
  t.limit = step_limit;
  return t.closes({}, {{false, f}}, {});
}

}  // namespace omk
