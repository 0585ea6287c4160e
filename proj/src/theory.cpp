#include "omegak/theory.hpp"

#include <algorithm>

#include "omegak/errors.hpp"

namespace omk {

namespace {
const Nat X = 0, Y = 1, Z = 2;
Term v(Nat i) { return t_var(i); }
Term succ(const Term& t) { return t_add(t, t_one()); }
}  // namespace

Formula q_axiom(int k) {
  switch (k) {
    case 1: return f_all(X, f_not(f_eq(succ(v(X)), t_zero())));
    case 2: return f_all(X, f_all(Y, f_imp(f_eq(succ(v(X)), succ(v(Y))), f_eq(v(X), v(Y)))));
    case 3: return f_all(X, f_or(f_eq(v(X), t_zero()), f_ex(Y, f_eq(v(X), succ(v(Y))))));
    case 4: return f_all(X, f_eq(t_add(v(X), t_zero()), v(X)));
    case 5: return f_all(X, f_all(Y, f_eq(t_add(v(X), succ(v(Y))), succ(t_add(v(X), v(Y))))));
    case 6: return f_all(X, f_eq(t_mul(v(X), t_zero()), t_zero()));
    case 7: return f_all(X, f_all(Y, f_eq(t_mul(v(X), succ(v(Y))), t_add(t_mul(v(X), v(Y)), v(X)))));
    case 8:
      return f_all(X, f_all(Y, f_iff(f_lt(v(X), v(Y)), f_ex(Z, f_eq(t_add(v(X), succ(v(Z))), v(Y))))));
  }
  throw PreconditionError("no such Q axiom");
}

Formula exp_axiom(int k) {
  if (k == 1) return f_all(X, f_eq(t_exp(v(X), t_zero()), t_one()));
  if (k == 2) return f_all(X, f_all(Y, f_eq(t_exp(v(X), succ(v(Y))), t_mul(t_exp(v(X), v(Y)), v(X)))));
  throw PreconditionError("no such exponentiation axiom");
}

Formula pair_axiom(int k) {
  if (k == 1) return f_all(X, f_all(Y, f_eq(t_proj(0, t_pair(v(X), v(Y))), v(X))));
  if (k == 2) return f_all(X, f_all(Y, f_eq(t_proj(1, t_pair(v(X), v(Y))), v(Y))));
  if (k == 3) return f_all(X, f_eq(t_pair(t_proj(0, v(X)), t_proj(1, v(X))), v(X)));
  throw PreconditionError("no such pairing axiom");
}

Formula set_induction_axiom() {
  Formula base = f_in_var(t_zero(), 0);
  Formula step = f_all(X, f_imp(f_in_var(v(X), 0), f_in_var(succ(v(X)), 0)));
  return f_all_set(0, f_imp(f_and(base, step), f_all(X, f_in_var(v(X), 0))));
}

Formula set_existence_axiom() { return f_ex_set(0, f_all(X, f_iff(f_in_var(v(X), 0), f_oracle(v(X))))); }

namespace {
std::vector<Formula> q_list() {
  std::vector<Formula> out;
  for (int k = 1; k <= 8; ++k) out.push_back(q_axiom(k));
  for (int k = 1; k <= 2; ++k) out.push_back(exp_axiom(k));
  for (int k = 1; k <= 3; ++k) out.push_back(pair_axiom(k));
  return out;
}
TheorySpec make(std::string name, CAKind ca, IndKind ind) {
  TheorySpec t;
  t.name = std::move(name);
  t.base_axioms = q_list();
  if (ind != IndKind::None) t.base_axioms.push_back(set_induction_axiom());
  t.ca = ca;
  t.ind = ind;
  return t;
}
}  // namespace

TheorySpec theory_q() { return make("q", CAKind::None, IndKind::None); }
TheorySpec theory_eca0() { return make("eca0", CAKind::Delta00, IndKind::SetInd); }
TheorySpec theory_rca0star() { return make("rca0star", CAKind::Delta01, IndKind::SetInd); }
TheorySpec theory_rca0() { return make("rca0", CAKind::Delta01, IndKind::ISigma01); }
TheorySpec theory_aca0() { return make("aca0", CAKind::PiOmega, IndKind::SetInd); }

std::vector<std::string> theory_names() { return {"q", "eca0", "rca0star", "rca0", "aca0"}; }

std::optional<TheorySpec> theory_by_name(const std::string& name) {
  if (name == "q") return theory_q();
  if (name == "eca0") return theory_eca0();
  if (name == "rca0star") return theory_rca0star();
  if (name == "rca0") return theory_rca0();
  if (name == "aca0") return theory_aca0();
  return std::nullopt;
}

OracleTheory make_oracle_theory(TheorySpec base, DecidableSet oracle) {
  OracleTheory T;
  T.base = std::move(base);
  T.oracle = std::move(oracle);
  return T;
}

// ------------------------------------------------------------ recognizers

namespace {

bool is_set_existence(const Formula& f) {
  if (f->kind != FormulaKind::Ex || !f->second_order) return false;
  const Formula& b = f->a;
  if (b->kind != FormulaKind::All || b->second_order) return false;
  const Formula& iff = b->a;
  if (iff->kind != FormulaKind::Iff) return false;
  const Formula& in = iff->a;
  const Formula& o = iff->b;
  if (in->kind != FormulaKind::In || in->set.is_const || in->set.index != f->var) return false;
  if (in->t->kind != TermKind::Var || in->t->value != b->var) return false;
  return o->kind == FormulaKind::Oracle && o->t->kind == TermKind::Var && o->t->value == b->var;
}

// ∃X∀v(v∈X ↔ payload) with X not free in payload.
std::optional<std::pair<Nat, Formula>> ca_payload(const Formula& f) {
  if (f->kind != FormulaKind::Ex || !f->second_order) return std::nullopt;
  const Formula& b = f->a;
  if (b->kind != FormulaKind::All || b->second_order) return std::nullopt;
  const Formula& iff = b->a;
  if (iff->kind != FormulaKind::Iff) return std::nullopt;
  const Formula& in = iff->a;
  if (in->kind != FormulaKind::In || in->set.is_const || in->set.index != f->var) return std::nullopt;
  if (in->t->kind != TermKind::Var || in->t->value != b->var) return std::nullopt;
  if (set_occurs_free(iff->b, f->var)) return std::nullopt;
  return std::make_pair(b->var, iff->b);
}

bool payload_admitted(const OracleTheory& T, const Formula& payload, Nat var) {
  if (payload->has_oracle || payload->has_so_quant) return false;
  switch (T.base.ca) {
    case CAKind::None: return false;
    case CAKind::Delta00: return is_delta00(payload);
    case CAKind::Delta01:
      if (is_delta00(payload)) return true;
      for (const auto& p : T.delta01)
        if (p.var == var && formula_eq(p.sigma, payload)) return true;
      return false;
    case CAKind::PiOmega: return true;
  }
  return false;
}

// (φ(0) ∧ ∀v(φ(v) → φ(v+1))) → ∀v φ(v); returns φ and v.
std::optional<std::pair<Formula, Nat>> ind_payload(const Formula& f) {
  if (f->kind != FormulaKind::Imp || f->a->kind != FormulaKind::And) return std::nullopt;
  const Formula& concl = f->b;
  if (concl->kind != FormulaKind::All || concl->second_order) return std::nullopt;
  Nat var = concl->var;
  const Formula& phi = concl->a;
  const Formula& step = f->a->b;
  if (step->kind != FormulaKind::All || step->second_order || step->var != var) return std::nullopt;
  if (step->a->kind != FormulaKind::Imp || !formula_eq(step->a->a, phi)) return std::nullopt;
  try {
    if (!formula_eq(step->a->b, subst(phi, var, succ(t_var(var))))) return std::nullopt;
    if (!formula_eq(f->a->a, subst(phi, var, t_zero()))) return std::nullopt;
  } catch (const PreconditionError&) {
    return std::nullopt;
  }
  return std::make_pair(phi, var);
}

}  // namespace

std::string axiom_clause(const OracleTheory& T, const Formula& f) {
  for (const auto& a : T.base.base_axioms)
    if (formula_eq(a, f)) return "base";
  for (const auto& a : T.extra_axioms)
    if (formula_eq(a, f)) return "extra";
  if (f->kind == FormulaKind::Oracle && is_numeral(f->t) && T.oracle.contains(*numeral_value(f->t))) return "oracle+";
  if (f->kind == FormulaKind::Not && f->a->kind == FormulaKind::Oracle && is_numeral(f->a->t) &&
      !T.oracle.contains(*numeral_value(f->a->t)))
    return "oracle-";
  if (is_set_existence(f)) return "set-existence";
  Formula core = f;
  while (true) {
    if (auto ca = ca_payload(core); ca && payload_admitted(T, ca->second, ca->first)) return "ca";
    if (auto ind = ind_payload(core)) {
      const Formula& phi = ind->first;
      bool set_atom = phi->kind == FormulaKind::In && phi->t->kind == TermKind::Var && phi->t->value == ind->second;
      if (T.base.ind == IndKind::SetInd && set_atom) return "ind";
      if (T.base.ind == IndKind::ISigma01 && !phi->has_oracle && is_arithmetic(phi) && phi->sig0 <= 1) return "ind";
    }
    if (core->kind != FormulaKind::All) break;
    core = core->a;
  }
  return "";
}

bool is_axiom(const OracleTheory& T, const Formula& f) { return !axiom_clause(T, f).empty(); }

// ------------------------------------------------------------ proof check

CheckResult check_proof_lines(const OracleTheory& T, const FinitaryProof& p) {
  if (p.lines.empty()) return CheckResult::fail(0, "empty proof");
  for (std::size_t k = 0; k < p.lines.size(); ++k) {
    const auto& line = p.lines[k];
    const auto& j = line.just;
    const Formula& f = line.formula;
    auto at = [&](const std::string& m) { return CheckResult::fail(k, "line " + std::to_string(k) + ": " + m); };
    switch (j.kind) {
      case JustKind::Axiom:
        if (!is_axiom(T, f)) return at("not an axiom of the theory");
        break;
      case JustKind::Logical: {
        std::string why = check_logical_axiom(j.id, f, T);
        if (!why.empty()) return at("logical axiom " + j.id + ": " + why);
        break;
      }
      case JustKind::MP: {
        if (j.i >= k || j.j >= k) return at("dangling reference");
        const Formula& imp = p.lines[j.j].formula;
        if (imp->kind != FormulaKind::Imp || !formula_eq(imp->a, p.lines[j.i].formula) || !formula_eq(imp->b, f))
          return at("modus ponens mismatch");
        break;
      }
      case JustKind::Gen:
      case JustKind::Gen2: {
        if (j.i >= k) return at("dangling reference");
        bool so = j.kind == JustKind::Gen2;
        if (f->kind != FormulaKind::All || f->second_order != so || f->var != j.var ||
            !formula_eq(f->a, p.lines[j.i].formula))
          return at("generalization mismatch");
        break;
      }
    }
  }
  return {};
}

CheckResult check_proof(const OracleTheory& T, const FinitaryProof& p, const Formula& goal) {
  auto r = check_proof_lines(T, p);
  if (!r.ok) return r;
  if (!formula_eq(p.conclusion(), goal))
    return CheckResult::fail(p.lines.size() - 1, "last line is not the stated conclusion");
  return r;
}

void register_delta01(OracleTheory& T, Delta01Pair pair) {
  if (T.base.ca != CAKind::Delta01) throw SchemaError("theory has no Delta0_1 comprehension");
  auto bad = [](const Formula& f, bool sigma) {
    if (f->has_oracle || !is_arithmetic(f)) return true;
    return sigma ? f->sig0 > 1 : f->pi0 > 1;
  };
  if (bad(pair.sigma, true) || bad(pair.pi, false)) throw SchemaError("Delta0_1 pair outside Sigma0_1/Pi0_1");
  Formula goal = f_all(pair.var, f_iff(pair.sigma, pair.pi));
  // Close over remaining parameters the same way the proof would.
  auto r = check_proof(T, pair.proof, goal);
  if (!r.ok) throw SchemaError("Delta0_1 equivalence proof rejected: " + r.message);
  T.delta01.push_back(std::move(pair));
}

// ------------------------------------------------------------ schemata

Formula pair_order_lt(const Term& a, const Term& b) {
  Term a0 = t_proj(0, a), a1 = t_proj(1, a), b0 = t_proj(0, b), b1 = t_proj(1, b);
  return f_or(f_lt(a0, b0), f_and(f_eq(a0, b0), f_lt(a1, b1)));
}

Formula pair_order_le(const Term& a, const Term& b) { return f_not(pair_order_lt(b, a)); }

Nat notation_code(const Cnf& a) {
  if (a.is_zero()) return pair_code(0, 0);
  Nat nu = 0, k = 0;
  for (const auto& t : a.terms) {
    auto e = cnf_finite_value(t.exponent);
    if (!e || *e > 1) throw UnsupportedError("notation not below omega^2");
    if (*e == 1) nu = t.coeff; else k = t.coeff;
  }
  return pair_code(nu, k);
}

namespace {

Formula close_universally(Formula f) {
  auto sv = free_set_vars(f);
  auto fv = free_vars(f);
  for (auto it = fv.rbegin(); it != fv.rend(); ++it) f = f_all(*it, f);
  for (auto it = sv.rbegin(); it != sv.rend(); ++it) f = f_all_set(*it, f);
  return f;
}

Nat fresh_var(const Formula& f, Nat avoid) {
  Nat m = std::max(max_var_index(f), avoid);
  return m + 1;
}

}  // namespace

Formula schema_instance(const TheorySpec& T, SchemaKind kind, const Formula& payload, Nat var,
                        const std::optional<Cnf>& top) {
  switch (kind) {
    case SchemaKind::CA: {
      if (payload->has_oracle) throw SchemaError("comprehension payload mentions the oracle");
      if (!is_arithmetic(payload)) throw SchemaError("comprehension payload is not arithmetic");
      bool ok = false;
      switch (T.ca) {
        case CAKind::None: throw SchemaError("theory " + T.name + " has no comprehension schema");
        case CAKind::Delta00:
        case CAKind::Delta01: ok = is_delta00(payload); break;
        case CAKind::PiOmega: ok = true; break;
      }
      if (!ok) throw SchemaError("payload class " + classify(payload).str() + " not admitted by " + T.name);
      Nat Xv = payload->has_set_atom ? max_set_var_index(payload) + 1 : 0;
      Formula body = f_all(var, f_iff(f_in_var(t_var(var), Xv), payload));
      return close_universally(f_ex_set(Xv, body));
    }
    case SchemaKind::Ind: {
      bool set_atom = payload->kind == FormulaKind::In && payload->t->kind == TermKind::Var &&
                      payload->t->value == var && !payload->set.is_const;
      if (T.ind == IndKind::None) throw SchemaError("theory " + T.name + " has no induction");
      if (payload->has_oracle) throw SchemaError("induction payload mentions the oracle");
      if (T.ind == IndKind::SetInd && !set_atom) throw SchemaError("set induction takes a membership atom");
      if (T.ind == IndKind::ISigma01 && !(is_arithmetic(payload) && payload->sig0 <= 1))
        throw SchemaError("induction payload is not Sigma0_1");
      Formula base = subst(payload, var, t_zero());
      Formula step = f_all(var, f_imp(payload, subst(payload, var, succ(t_var(var)))));
      return close_universally(f_imp(f_and(base, step), f_all(var, payload)));
    }
    case SchemaKind::TI: {
      if (!top) throw SchemaError("transfinite induction needs an upper notation");
      if (!is_arithmetic(payload)) throw SchemaError("TI payload is not arithmetic");
      Cnf t = *top;
      Nat nu = 0, k = 0;
      for (const auto& term : t.terms) {
        auto e = cnf_finite_value(term.exponent);
        if (!e || *e > 1) throw UnsupportedError("TI supports notations below omega^2");
        if (*e == 1) nu = term.coeff; else k = term.coeff;
      }
      Term topt = t_pair(t_num(nu), t_num(k));
      Nat w = fresh_var(payload, var);
      Formula below = f_all(w, f_imp(pair_order_lt(t_var(w), t_var(var)), subst(payload, var, t_var(w))));
      Formula prog = f_all(var, f_imp(pair_order_le(t_var(var), topt), f_imp(below, payload)));
      Formula concl = f_all(var, f_imp(pair_order_le(t_var(var), topt), payload));
      return close_universally(f_imp(prog, concl));
    }
  }
  throw SchemaError("unknown schema");
}

}  // namespace omk
