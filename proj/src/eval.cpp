#include "omegak/eval.hpp"

#include "omegak/errors.hpp"

namespace omk {

Tri tri_and(Tri a, Tri b) {
  if (a == Tri::False || b == Tri::False) return Tri::False;
  if (a == Tri::True && b == Tri::True) return Tri::True;
  return Tri::Unknown;
}

Tri tri_or(Tri a, Tri b) {
  if (a == Tri::True || b == Tri::True) return Tri::True;
  if (a == Tri::False && b == Tri::False) return Tri::False;
  return Tri::Unknown;
}

const char* tri_name(Tri t) {
  switch (t) {
    case Tri::True: return "true";
    case Tri::False: return "false";
    default: return "unknown";
  }
}

Env& Env::bind(Nat var, Nat value) {
  if (vars.size() <= var) vars.resize(var + 1);
  vars[var] = value;
  return *this;
}

Env& Env::bind_set(Nat var, DecidableSet s) {
  if (sets.size() <= var) sets.resize(var + 1);
  sets[var] = std::move(s);
  return *this;
}

namespace {

Nat add_checked(Nat a, Nat b) {
  Nat r;
  if (__builtin_add_overflow(a, b, &r)) throw MagnitudeError("sum exceeds 64 bits");
  return r;
}
Nat mul_checked(Nat a, Nat b) {
  Nat r;
  if (__builtin_mul_overflow(a, b, &r)) throw MagnitudeError("product exceeds 64 bits");
  return r;
}
Nat pow_checked(Nat base, Nat e) {
  if (e == 0) return 1;
  if (base <= 1) return base;
  Nat r = 1;
  while (e) {
    if (e & 1) r = mul_checked(r, base);
    e >>= 1;
    if (e) base = mul_checked(base, base);
  }
  return r;
}

}  // namespace

Nat eval_term(const Term& t, const Env& env) {
  switch (t->kind) {
    case TermKind::Zero: return 0;
    case TermKind::One: return 1;
    case TermKind::Numeral: return t->value;
    case TermKind::Const: return t->value;
    case TermKind::Var: {
      auto v = env.lookup(t->value);
      if (!v) throw BindingError("unbound variable " + var_name(t->value));
      return *v;
    }
    case TermKind::Add: return add_checked(eval_term(t->a, env), eval_term(t->b, env));
    case TermKind::Mul: return mul_checked(eval_term(t->a, env), eval_term(t->b, env));
    case TermKind::Exp: return pow_checked(eval_term(t->a, env), eval_term(t->b, env));
    case TermKind::Pair: return pair_code(eval_term(t->a, env), eval_term(t->b, env));
    case TermKind::Proj0: return unpair_code(eval_term(t->a, env)).first;
    case TermKind::Proj1: return unpair_code(eval_term(t->a, env)).second;
  }
  return 0;
}

namespace {

struct Evaluator {
  Env& env;
  const Caps& caps;

  const DecidableSet& set_of(const SetRef& r) {
    if (r.is_const) {
      if (r.index >= env.consts.size()) throw BindingError("no listed set C" + std::to_string(r.index));
      return env.consts[r.index];
    }
    if (r.index >= env.sets.size() || !env.sets[r.index])
      throw BindingError("unbound set variable " + set_var_name(r.index));
    return *env.sets[r.index];
  }

  // Runs body with var bound to each value in [0, n) until `stop` is hit.
  Tri scan(const Formula& f, Nat n, Tri stop, Tri exhausted) {
    Nat var = f->var;
    if (env.vars.size() <= var) env.vars.resize(var + 1);
    auto saved = env.vars[var];
    bool unknown = false;
    Tri result = exhausted;
    for (Nat k = 0; k < n; ++k) {
      env.vars[var] = k;
      Tri r = eval(f->a);
      if (r == stop) {
        result = stop;
        unknown = false;
        break;
      }
      if (r == Tri::Unknown) unknown = true;
    }
    env.vars[var] = saved;
    if (result != stop && unknown) return Tri::Unknown;
    return result;
  }

  Tri eval_atom(const Formula& f) {
    try {
      switch (f->kind) {
        case FormulaKind::Eq: return tri_of(eval_term(f->t, env) == eval_term(f->s, env));
        case FormulaKind::Lt: return tri_of(eval_term(f->t, env) < eval_term(f->s, env));
        case FormulaKind::In: return tri_of(set_of(f->set).contains(eval_term(f->t, env)));
        case FormulaKind::Oracle:
          if (!env.oracle) throw BindingError("oracle not bound");
          return tri_of(env.oracle->contains(eval_term(f->t, env)));
        default: break;
      }
    } catch (const MagnitudeError&) {
      return Tri::Unknown;
    }
    return Tri::Unknown;
  }

  Tri eval(const Formula& f) {
    switch (f->kind) {
      case FormulaKind::Eq:
      case FormulaKind::Lt:
      case FormulaKind::In:
      case FormulaKind::Oracle:
        return eval_atom(f);
      case FormulaKind::Not: return tri_not(eval(f->a));
      case FormulaKind::And: {
        Tri a = eval(f->a);
        if (a == Tri::False) return a;
        return tri_and(a, eval(f->b));
      }
      case FormulaKind::Or: {
        Tri a = eval(f->a);
        if (a == Tri::True) return a;
        return tri_or(a, eval(f->b));
      }
      case FormulaKind::Imp: {
        Tri a = eval(f->a);
        if (a == Tri::False) return Tri::True;
        return tri_or(tri_not(a), eval(f->b));
      }
      case FormulaKind::Iff: {
        Tri a = eval(f->a);
        if (a == Tri::Unknown) return a;
        Tri b = eval(f->b);
        if (b == Tri::Unknown) return b;
        return tri_of(a == b);
      }
      case FormulaKind::BAll:
      case FormulaKind::BEx: {
        Nat bound;
        try {
          bound = eval_term(f->t, env);
        } catch (const MagnitudeError&) {
          return Tri::Unknown;
        }
        if (bound > caps.bound_limit) return Tri::Unknown;
        if (f->kind == FormulaKind::BAll) return scan(f, bound, Tri::False, Tri::True);
        return scan(f, bound, Tri::True, Tri::False);
      }
      case FormulaKind::All:
      case FormulaKind::Ex: {
        if (f->second_order) return eval_second_order(f);
        bool all = f->kind == FormulaKind::All;
        Tri stop = all ? Tri::False : Tri::True;
        Tri none = caps.truncate ? tri_not(stop) : Tri::Unknown;
        return scan(f, caps.quant, stop, none);
      }
    }
    return Tri::Unknown;
  }

  Tri eval_second_order(const Formula& f) {
    if (!env.family) throw UnsupportedError("second-order quantifier without a listed family");
    Nat v = f->var;
    if (env.sets.size() <= v) env.sets.resize(v + 1);
    auto saved = env.sets[v];
    bool all = f->kind == FormulaKind::All;
    Tri acc = all ? Tri::True : Tri::False;
    for (const auto& s : *env.family) {
      env.sets[v] = s;
      Tri r = eval(f->a);
      acc = all ? tri_and(acc, r) : tri_or(acc, r);
      if (acc == (all ? Tri::False : Tri::True)) break;
    }
    env.sets[v] = saved;
    return acc;
  }
};

}  // namespace

Tri evaluate(const Formula& f, const Env& env, const Caps& caps) {
  Env local = env;
  Evaluator ev{local, caps};
  return ev.eval(f);
}

}  // namespace omk
