#include "omegak/synth.hpp"

#include <algorithm>
#include <map>
#include <unordered_map>

#include "omegak/errors.hpp"
#include "omegak/proofkit.hpp"

namespace omk {

using Line = ProofBuilder::Line;

Nat completeness_level(const Formula& f) {
  if (is_delta00(f)) return 0;
  return static_cast<Nat>(std::max(f->sig0, 1)) / 2;
}

namespace {

Nat level_of(const Certificate& c) {
  if (c.kind == Certificate::Kind::Fin) return 0;
  return cnf_finite_value(c.xi).value_or(0) + 1;
}

Term rebuild_term(const Term& t, Term a, Term b) {
  switch (t->kind) {
    case TermKind::Add: return t_add(std::move(a), std::move(b));
    case TermKind::Mul: return t_mul(std::move(a), std::move(b));
    case TermKind::Exp: return t_exp(std::move(a), std::move(b));
    case TermKind::Pair: return t_pair(std::move(a), std::move(b));
    case TermKind::Proj0: return t_proj(0, std::move(a));
    case TermKind::Proj1: return t_proj(1, std::move(a));
    default: return t;
  }
}

Term replace_term(const Term& t, const Term& s, const Term& r) {
  if (term_eq(t, s)) return r;
  if (!t->a) return t;
  return rebuild_term(t, replace_term(t->a, s, r), t->b ? replace_term(t->b, s, r) : nullptr);
}

// Replaces s by r except under binders of variables that s or r mention,
// matching what eq-subst accepts.
Formula replace_in(const Formula& f, const Term& s, const Term& r, const std::set<Nat>& risky) {
  auto rt = [&](const Term& t) { return replace_term(t, s, r); };
  auto rec = [&](const Formula& g) { return replace_in(g, s, r, risky); };
  switch (f->kind) {
    case FormulaKind::Eq: return f_eq(rt(f->t), rt(f->s));
    case FormulaKind::Lt: return f_lt(rt(f->t), rt(f->s));
    case FormulaKind::In: return f_in(rt(f->t), f->set);
    case FormulaKind::Oracle: return f_oracle(rt(f->t));
    case FormulaKind::Not: return f_not(rec(f->a));
    case FormulaKind::And: return f_and(rec(f->a), rec(f->b));
    case FormulaKind::Or: return f_or(rec(f->a), rec(f->b));
    case FormulaKind::Imp: return f_imp(rec(f->a), rec(f->b));
    case FormulaKind::Iff: return f_iff(rec(f->a), rec(f->b));
    case FormulaKind::All:
    case FormulaKind::Ex: {
      bool ex = f->kind == FormulaKind::Ex;
      if (f->second_order) return ex ? f_ex_set(f->var, rec(f->a)) : f_all_set(f->var, rec(f->a));
      if (risky.count(f->var)) return f;
      return ex ? f_ex(f->var, rec(f->a)) : f_all(f->var, rec(f->a));
    }
    case FormulaKind::BAll:
    case FormulaKind::BEx: {
      Term bound = rt(f->t);
      Formula body = risky.count(f->var) ? f->a : rec(f->a);
      return f->kind == FormulaKind::BAll ? f_ball(f->var, bound, body) : f_bex(f->var, bound, body);
    }
  }
  return f;
}

// From ∀x∀y B derive B[a, b] without capture, through a fresh name.
Line inst2(ProofBuilder& b, Line all2, const Term& a, const Term& t) {
  Nat u = std::max<Nat>(2, max_var_index(b.formula(all2))) + 1;
  for (Nat v : term_vars(a)) u = std::max(u, v + 1);
  for (Nat v : term_vars(t)) u = std::max(u, v + 1);
  Line l1 = b.inst(all2, t_var(u));
  Line l2 = b.inst(l1, t);
  Line l3 = b.gen(l2, u);
  return b.inst(l3, a);
}

// s = r for a projection-of-pair redex s.
Line redex_equation(ProofBuilder& b, const Term& s) {
  int side = s->kind == TermKind::Proj0 ? 1 : 2;
  Line ax = b.ax(pair_axiom(side));
  return inst2(b, ax, s->a->a, s->a->b);
}

// H → C  ⊢  H → C' with the redex s replaced by its reduct everywhere.
Line reduce_under(ProofBuilder& b, const Formula& H, Line hc, const Term& s) {
  Formula cur = b.formula(hc)->b;
  Term r = s->kind == TermKind::Proj0 ? s->a->a : s->a->b;
  std::set<Nat> risky = term_vars(s);
  for (Nat v : term_vars(r)) risky.insert(v);
  Formula next = replace_in(cur, s, r, risky);
  if (formula_eq(next, cur)) return hc;
  Line eq = redex_equation(b, s);
  Line es = b.lax("eq-subst", f_imp(b.formula(eq), f_imp(cur, next)));
  return b.by_taut({hc, eq, es}, f_imp(H, next));
}

// Undo the projections of a tuple code ⟨v1,⟨v2,...⟩⟩; redexes already in the
// formula are left alone.
Line unpack_under(ProofBuilder& b, const Formula& H, Line hc, Term code) {
  while (code->kind == TermKind::Pair) {
    hc = reduce_under(b, H, hc, t_proj(0, code));
    hc = reduce_under(b, H, hc, t_proj(1, code));
    code = code->b;
  }
  return hc;
}

FinitaryProof single_line(const std::string& id, const Formula& f) {
  ProofBuilder b;
  return b.finish(b.lax(id, f));
}

FinitaryProof taut_proof(const Formula& f) { return single_line("taut", f); }

struct Matcher {
  std::set<Nat> vars;
  std::map<Nat, Term> sigma;

  bool term(const Term& p, const Term& t) {
    if (p->kind == TermKind::Var && vars.count(p->value)) {
      auto it = sigma.find(p->value);
      if (it != sigma.end()) return term_eq(it->second, t);
      sigma.emplace(p->value, t);
      return true;
    }
    if (p->kind != t->kind || p->value != t->value) return false;
    if (static_cast<bool>(p->a) != static_cast<bool>(t->a) || static_cast<bool>(p->b) != static_cast<bool>(t->b))
      return false;
    return (!p->a || term(p->a, t->a)) && (!p->b || term(p->b, t->b));
  }

  bool formula(const Formula& p, const Formula& f) {
    if (p->kind != f->kind || p->second_order != f->second_order) return false;
    if (p->kind == FormulaKind::In && !(p->set == f->set)) return false;
    if (is_quantifier(p) && (p->var != f->var || vars.count(p->var))) return false;
    if (static_cast<bool>(p->t) != static_cast<bool>(f->t) || static_cast<bool>(p->s) != static_cast<bool>(f->s))
      return false;
    if (p->t && !term(p->t, f->t)) return false;
    if (p->s && !term(p->s, f->s)) return false;
    return (!p->a || formula(p->a, f->a)) && (!p->b || formula(p->b, f->b));
  }
};

class Synth {
 public:
  Synth(const OracleTheory& T, const SynthOptions& opt) : T_(T), opt_(opt) {}

  // Truth as far as a certificate can witness it: ∃ searches below the
  // quantifier cap, ∀ looks at the rows that end up tabulated.
  Tri truth(const Formula& g) {
    if (auto it = memo_.find(g); it != memo_.end()) return it->second;
    Tri t = decide(g);
    memo_.emplace(g, t);
    return t;
  }

  // Certificate of g when pos, of ¬g otherwise.
  CertPtr lit(const Formula& g, bool pos) {
    if (is_delta00(g)) {
      if (delta0_truth(T_, g) != pos) throw PreconditionError("cannot witness: the sentence is false");
      ProofBuilder b;
      return make_fin(b.finish(prove_delta0(b, T_, g, pos)));
    }
    if (g->has_so_quant || g->has_set_atom) throw UnsupportedError("completeness covers arithmetic sentences only");
    if (truth(g) != tri_of(pos)) throw PreconditionError("cannot witness: truncated evaluation disagrees");
    Formula target = pos ? g : f_not(g);
    const Formula& a = g->a;
    const Formula& b = g->b;
    switch (g->kind) {
      case FormulaKind::Not: {
        if (!pos) return postcompose(lit(a, true), taut_proof(f_imp(a, target)));
        return lit(a, false);
      }
      case FormulaKind::And: {
        if (pos) return combine_and(lit(a, true), lit(b, true), opt_.table);
        const Formula& c = truth(a) == Tri::False ? a : b;
        return postcompose(lit(c, false), taut_proof(f_imp(f_not(c), target)));
      }
      case FormulaKind::Or: {
        if (!pos) return both(f_not(a), lit(a, false), f_not(b), lit(b, false), target);
        const Formula& c = truth(a) == Tri::True ? a : b;
        return postcompose(lit(c, true), taut_proof(f_imp(c, target)));
      }
      case FormulaKind::Imp: {
        if (!pos) return both(a, lit(a, true), f_not(b), lit(b, false), target);
        if (truth(a) == Tri::False) return postcompose(lit(a, false), taut_proof(f_imp(f_not(a), target)));
        return postcompose(lit(b, true), taut_proof(f_imp(b, target)));
      }
      case FormulaKind::Iff: {
        bool ta = truth(a) == Tri::True;
        bool tb = pos ? ta : !ta;
        return both(ta ? a : f_not(a), lit(a, ta), tb ? b : f_not(b), lit(b, tb), target);
      }
      case FormulaKind::All:
        return pos ? block(g, true) : witness(g, false);
      case FormulaKind::Ex:
        return pos ? witness(g, true) : block(g, false);
      case FormulaKind::BAll:
      case FormulaKind::BEx:
        return bounded(g, pos);
      default:
        break;
    }
    throw UnsupportedError("no synthesis rule for this formula");
  }

 private:
  const OracleTheory& T_;
  SynthOptions opt_;
  std::unordered_map<Formula, Tri, FormulaHash, FormulaEq> memo_;

  Tri decide(const Formula& g) {
    if (is_delta00(g)) {
      try {
        return tri_of(delta0_truth(T_, g));
      } catch (const Error&) {
        return Tri::Unknown;
      }
    }
    switch (g->kind) {
      case FormulaKind::Not: return tri_not(truth(g->a));
      case FormulaKind::And: return tri_and(truth(g->a), truth(g->b));
      case FormulaKind::Or: return tri_or(truth(g->a), truth(g->b));
      case FormulaKind::Imp: return tri_or(tri_not(truth(g->a)), truth(g->b));
      case FormulaKind::Iff: {
        Tri a = truth(g->a), b = truth(g->b);
        return a == Tri::Unknown || b == Tri::Unknown ? Tri::Unknown : tri_of(a == b);
      }
      case FormulaKind::All:
      case FormulaKind::Ex:
      case FormulaKind::BAll:
      case FormulaKind::BEx: {
        if (g->second_order) return Tri::Unknown;
        bool universal = g->kind == FormulaKind::All || g->kind == FormulaKind::BAll;
        Nat k;
        if (g->kind == FormulaKind::All) {
          k = opt_.table;
        } else if (g->kind == FormulaKind::Ex) {
          k = opt_.caps.quant;
        } else {
          try {
            k = eval_term(g->t, Env{});
          } catch (const Error&) {
            return Tri::Unknown;
          }
          if (k > opt_.caps.bound_limit) return Tri::Unknown;
        }
        Tri acc = tri_of(universal);
        for (Nat n = 0; n < k; ++n) {
          Tri t = truth(substitute_numeral(g->a, g->var, n));
          acc = universal ? tri_and(acc, t) : tri_or(acc, t);
          if (acc == tri_of(!universal)) break;
        }
        return acc;
      }
      default: return Tri::Unknown;
    }
  }

  CertPtr both(const Formula& fa, CertPtr ca, const Formula& fb, CertPtr cb, const Formula& target) {
    return postcompose(combine_and(std::move(ca), std::move(cb), opt_.table), taut_proof(f_imp(f_and(fa, fb), target)));
  }

  // True ∃vA (pos) or false ∀vA (!pos): a numeral instance decides it.
  CertPtr witness(const Formula& g, bool pos) {
    for (Nat n = 0; n < opt_.caps.quant; ++n) {
      Formula inst = substitute_numeral(g->a, g->var, n);
      if (truth(inst) != tri_of(pos)) continue;
      CertPtr c;
      try {
        c = lit(inst, pos);
      } catch (const PreconditionError&) {
        continue;
      }
      if (pos) return postcompose(c, single_line("ex-intro", f_imp(inst, g)));
      ProofBuilder b;
      Line ai = b.lax("all-inst", f_imp(g, inst));
      return postcompose(c, b.finish(b.by_taut({ai}, f_imp(f_not(inst), f_not(g)))));
    }
    throw PreconditionError("cannot witness: no instance below the quantifier cap");
  }

  std::optional<CertPtr> uniform_skeleton(const Formula& A) {
    std::string id = find_logical_axiom(A, T_);
    if (!id.empty()) return make_fin(single_line(id, A));
    for (const auto& ax : T_.base.base_axioms) {
      std::vector<Nat> vars;
      Formula body = ax;
      while (body->kind == FormulaKind::All && !body->second_order) {
        vars.push_back(body->var);
        body = body->a;
      }
      if (vars.empty()) continue;
      Matcher m;
      m.vars.insert(vars.begin(), vars.end());
      if (!m.formula(body, A)) continue;
      try {
        ProofBuilder b;
        Line l = b.ax(ax);
        for (Nat v : vars) {
          auto it = m.sigma.find(v);
          l = b.inst(l, it == m.sigma.end() ? t_zero() : it->second);
        }
        if (formula_eq(b.formula(l), A)) return make_fin(b.finish(l));
      } catch (const PreconditionError&) {
      }
    }
    return std::nullopt;
  }

  // True ∀v1..∀vr A (pos) or false ∃v1..∃vr A (!pos) through one ω-node over
  // a paired variable.
  CertPtr block(const Formula& g, bool pos) {
    FormulaKind q = pos ? FormulaKind::All : FormulaKind::Ex;
    std::vector<Nat> vs;
    Formula core = g;
    while (core->kind == q && !core->second_order) {
      vs.push_back(core->var);
      core = core->a;
    }
    std::size_t r = vs.size();
    Nat x = r == 1 ? vs[0] : max_var_index(g) + 1;
    // components of x, and the code of (v1..vr)
    std::vector<Term> comps;
    Term rest = t_var(x);
    for (std::size_t i = 0; i + 1 < r; ++i) {
      comps.push_back(t_proj(0, rest));
      rest = t_proj(1, rest);
    }
    comps.push_back(rest);
    Term code = t_var(vs.back());
    for (std::size_t i = r - 1; i-- > 0;) code = t_pair(t_var(vs[i]), code);

    Formula body = core;
    if (r > 1)
      for (std::size_t i = 0; i < r; ++i) body = subst(body, vs[i], comps[i]);
    Formula psi = pos ? body : f_not(body);

    PremiseTemplate tmpl;
    Nat xi = 0;
    std::optional<CertPtr> sk;
    if (pos && r == 1) sk = uniform_skeleton(core);
    if (sk) {
      tmpl = uniform_template(x, *sk);
    } else {
      for (Nat n = 0; n < opt_.table; ++n) {
        CertPtr c = lit(substitute_numeral(body, x, n), pos);
        xi = std::max(xi, level_of(*c));
        tmpl.table[n] = c;
      }
    }

    Formula H = f_all(x, psi);
    ProofBuilder b;
    Line hh = b.taut(f_imp(H, H));
    Line cur = b.hyp_inst(H, hh, r == 1 ? t_var(x) : code);
    if (r > 1) cur = unpack_under(b, H, cur, code);
    Formula X = core;
    if (!formula_eq(b.formula(cur)->b, pos ? X : f_not(X))) throw UnsupportedError("block normalization failed");
    for (std::size_t i = r; i-- > 0;) {
      Nat v = vs[i];
      if (pos) {
        cur = b.hyp_gen(H, cur, v);
        X = f_all(v, X);
      } else {
        Line l1 = b.by_taut({cur}, f_imp(H, f_imp(X, f_bottom())));
        Line nb = b.lax("delta0", f_not(f_bottom()));
        Line l2 = b.hyp_gen(H, l1, v);
        Line e = b.lax("ex-elim", f_imp(b.formula(l2)->b, f_imp(f_ex(v, X), f_bottom())));
        X = f_ex(v, X);
        cur = b.by_taut({l2, e, nb}, f_imp(H, f_not(X)));
      }
    }
    return make_omega(cnf_nat(xi), x, psi, std::move(tmpl), b.finish(cur));
  }

  CertPtr bounded(const Formula& g, bool pos) {
    Nat k = eval_term(g->t, Env{});
    if (k > opt_.caps.bound_limit) throw PreconditionError("cannot witness: bound too large");
    bool universal = g->kind == FormulaKind::BAll;
    std::vector<Formula> parts;
    for (Nat i = 0; i < k; ++i) parts.push_back(substitute_numeral(g->a, g->var, i));
    Formula E = universal ? f_and_all(parts) : f_or_all(parts);
    Formula target = pos ? g : f_not(g);
    FinitaryProof iff = single_line("bnd-expand", f_iff(g, E));
    if (universal == pos) {
      // every part (negated when !pos) is needed
      std::vector<Formula> lits;
      for (const auto& p : parts) lits.push_back(pos ? p : f_not(p));
      CertPtr acc;
      Formula accf;
      if (k == 0) {
        accf = f_top();
        acc = make_fin(single_line("eq-refl", accf));
      } else {
        acc = lit(parts[k - 1], pos);
        accf = lits[k - 1];
        for (Nat i = k - 1; i-- > 0;) {
          acc = combine_and(lit(parts[i], pos), acc, opt_.table);
          accf = f_and(lits[i], accf);
        }
      }
      ProofBuilder b;
      Line l = b.import(iff);
      return postcompose(acc, b.finish(b.by_taut({l}, f_imp(accf, target))));
    }
    for (Nat i = 0; i < k; ++i) {
      if (truth(parts[i]) != tri_of(!universal)) continue;
      CertPtr c = lit(parts[i], !universal);
      Formula cf = universal ? f_not(parts[i]) : parts[i];
      ProofBuilder b;
      Line l = b.import(iff);
      return postcompose(c, b.finish(b.by_taut({l}, f_imp(cf, target))));
    }
    throw PreconditionError("cannot witness: no deciding instance of the bounded quantifier");
  }
};

}  // namespace

CertPtr completeness_certificate(const Formula& f, const OracleTheory& T, Nat m, const SynthOptions& opt) {
  if (!is_sentence(f)) throw PreconditionError("completeness needs a sentence");
  if (f->has_so_quant || f->has_set_atom) throw UnsupportedError("completeness covers arithmetic sentences only");
  if (!is_delta00(f) && static_cast<Nat>(f->sig0) > 2 * m + 1)
    throw ClassError("sentence is " + classify(f).str() + ", above Sigma0_" + std::to_string(2 * m + 1));
  Synth s(T, opt);
  if (s.truth(f) != Tri::True) throw PreconditionError("cannot witness: the sentence is not true");
  return s.lit(f, true);
}

Formula tuple_rewrite(const Formula& f, std::optional<Nat> set_var) {
  Nat v = max_var_index(f) + 1;
  Formula out = subst_oracle_atoms(f, v, f_oracle(t_pair(t_zero(), t_var(v))));
  if (set_var) out = subst_set_atoms(out, SetRef{false, *set_var}, v, f_oracle(t_pair(t_one(), t_var(v))));
  return out;
}

Sigma11Result sigma11_completeness_certificate(const Formula& f, const TheorySpec& base, const SetDescriptor& oracle,
                                               const std::optional<SetDescriptor>& witness,
                                               const SynthOptions& opt) {
  if (f->kind != FormulaKind::Ex || !f->second_order) throw ClassError("expected an existential set quantifier");
  const Formula& phi0 = f->a;
  if (phi0->has_so_quant) throw ClassError("matrix is not arithmetic");
  if (!free_vars(f).empty() || !free_set_vars(f).empty()) throw PreconditionError("completeness needs a sentence");
  if (base.ca == CAKind::None) throw SchemaError("theory " + base.name + " has no comprehension");
  if (!witness) throw PreconditionError("cannot witness: no witness set supplied");
  Nat Y = f->var;

  Sigma11Result res;
  res.oracle = DecidableSet(TupleFamily{{oracle, *witness}});
  OracleTheory T = make_oracle_theory(base, res.oracle);
  Formula phi_x = tuple_rewrite(phi0, std::nullopt);
  Formula phi_p = tuple_rewrite(phi0, Y);
  res.conclusion = f_ex_set(Y, phi_x);

  CertPtr c0 = completeness_certificate(phi_p, T, completeness_level(phi_p), opt);

  // φ' → ∃Y φˣ(Y), reading Y off a set Z that copies the oracle.
  Nat Z = std::max(max_set_var_index(phi0), Y) + 1;
  Nat x = max_var_index(phi_x) + 1;
  Formula S = f_all(x, f_iff(f_in_var(t_var(x), Z), f_oracle(t_var(x))));
  Formula R = f_all(x, f_iff(f_in_var(t_var(x), Y), f_in_var(t_pair(t_one(), t_var(x)), Z)));
  Formula B = subst_set_atoms(phi_x, SetRef{false, Y}, x, f_in_var(t_pair(t_one(), t_var(x)), Z));
  Formula back = subst_set_atoms(B, SetRef{false, Z}, x, f_oracle(t_var(x)));
  if (!formula_eq(back, phi_p)) throw UnsupportedError("set substitution does not reproduce the rewritten matrix");

  ProofBuilder b;
  Line s1 = b.lax("set-subst", f_imp(R, f_iff(phi_x, B)));
  Line s2 = b.lax("set-subst", f_imp(S, f_iff(B, phi_p)));
  Line core = b.by_taut({s1, s2}, f_imp(R, f_imp(S, f_imp(phi_p, phi_x))));
  Line exi = b.lax("ex2-intro", f_imp(phi_x, res.conclusion));
  Formula K = f_imp(phi_p, res.conclusion);
  Formula G = f_imp(S, K);
  Line rg = b.by_taut({core, exi}, f_imp(R, G));
  Line g1 = b.gen2(rg, Y);
  Line e1 = b.lax("ex2-elim", f_imp(b.formula(g1), f_imp(f_ex_set(Y, R), G)));
  Line ca = b.ax(f_ex_set(Y, R));
  Line lg = b.mp(ca, b.mp(g1, e1));
  Line g2 = b.gen2(lg, Z);
  Line e2 = b.lax("ex2-elim", f_imp(b.formula(g2), f_imp(f_ex_set(Z, S), K)));
  Line se = b.ax(f_ex_set(Z, S));
  Line lk = b.mp(se, b.mp(g2, e2));
  res.cert = postcompose(c0, b.finish(lk));
  return res;
}

// ------------------------------------------------------------ TI

namespace {

struct TiParts {
  Formula payload;
  Nat v, w;
  Term top;
  Formula H;  // progressiveness up to top

  Formula phi(const Term& t) const { return subst(payload, v, t); }
  Formula below(const Term& a) const {
    return f_all(w, f_imp(pair_order_lt(t_var(w), a), phi(t_var(w))));
  }
  Formula psi(const Term& a) const { return f_imp(H, below(a)); }
};

Term pt(Nat a, Nat b) { return t_pair(t_num(a), t_num(b)); }

// ν̄ = (w)₀ ∧ n̄ = (w)₁ → (X(⟨ν̄,n̄⟩) → X(w)), for X given by `at`.
template <class F>
Line pair_transport(ProofBuilder& b, const Term& nu, const Term& n, Nat w, F at) {
  Term w0 = t_proj(0, t_var(w)), w1 = t_proj(1, t_var(w));
  Formula x0 = at(t_pair(nu, n)), x1 = at(t_pair(w0, n)), x2 = at(t_pair(w0, w1)), x3 = at(t_var(w));
  Line e1 = b.lax("eq-subst", f_imp(f_eq(nu, w0), f_imp(x0, x1)));
  Line e2 = b.lax("eq-subst", f_imp(f_eq(n, w1), f_imp(x1, x2)));
  Line p3 = b.inst(b.ax(pair_axiom(3)), t_var(w));
  Line e3 = b.lax("eq-subst", f_imp(b.formula(p3), f_imp(x2, x3)));
  return b.by_taut({e1, e2, p3, e3}, f_imp(f_and(f_eq(nu, w0), f_eq(n, w1)), f_imp(x0, x3)));
}

// Ψ(⟨ν,n⟩) → Ψ(⟨ν,n+1⟩)
FinitaryProof step_lemma(const TiParts& P, Nat nu, Nat n) {
  ProofBuilder b;
  Term a = pt(nu, n), a1 = pt(nu, n + 1);
  Nat w = P.w;
  Formula G = P.psi(a);
  Line hinst = b.lax("all-inst", f_imp(P.H, f_imp(pair_order_le(a, P.top), f_imp(P.below(a), P.phi(a)))));
  Line le = b.lax("delta0", pair_order_le(a, P.top));
  Line l1 = b.by_taut({hinst, le}, f_imp(P.H, f_imp(P.below(a), P.phi(a))));
  Line l2 = b.by_taut({l1}, f_imp(G, f_imp(P.H, P.phi(a))));
  Formula same = f_and(f_eq(t_num(nu), t_proj(0, t_var(w))), f_eq(t_num(n), t_proj(1, t_var(w))));
  Line ord = b.lax("order", f_imp(pair_order_lt(t_var(w), a1), f_or(pair_order_lt(t_var(w), a), same)));
  Line binst = b.lax("all-inst", f_imp(P.below(a), f_imp(pair_order_lt(t_var(w), a), P.phi(t_var(w)))));
  Line tr = pair_transport(b, t_num(nu), t_num(n), w, [&](const Term& t) { return P.phi(t); });
  Formula step = f_imp(pair_order_lt(t_var(w), a1), P.phi(t_var(w)));
  Line l4 = b.by_taut({l2, ord, binst, tr}, f_imp(G, f_imp(P.H, step)));
  Formula K = f_and(G, P.H);
  Line l5 = b.by_taut({l4}, f_imp(K, step));
  Line l6 = b.hyp_gen(K, l5, w);
  return b.finish(b.by_taut({l6}, f_imp(G, P.psi(a1))));
}

// ∀x Ψ(⟨ν,x⟩) → Ψ(⟨ν+1,0⟩)
FinitaryProof transition_lemma(const TiParts& P, Nat nu, Nat x, Nat z) {
  ProofBuilder b;
  Formula A = f_all(x, P.psi(t_pair(t_num(nu), t_var(x))));
  Term zt = t_var(z);
  Term next = t_pair(t_num(nu), t_add(t_proj(1, zt), t_one()));
  Term top1 = pt(nu + 1, 0);
  Line ai = b.lax("all-inst", f_imp(A, P.psi(next)));
  Line bi = b.lax("all-inst", f_imp(P.below(next), f_imp(pair_order_lt(zt, next), P.phi(zt))));
  Line ord = b.lax("order", f_imp(pair_order_lt(zt, top1), pair_order_lt(zt, next)));
  Formula K = f_and(A, P.H);
  Line l = b.by_taut({ai, bi, ord}, f_imp(K, f_imp(pair_order_lt(zt, top1), P.phi(zt))));
  Line gz = b.hyp_gen(K, l, z);
  Line iw = b.hyp_inst(K, gz, t_var(P.w));
  Line gw = b.hyp_gen(K, iw, P.w);
  return b.finish(b.by_taut({gw}, f_imp(A, P.psi(top1))));
}

// Ψ(top) → TI
FinitaryProof final_lemma(const TiParts& P, Nat lambda, const Formula& ti) {
  ProofBuilder b;
  Nat v = P.v;
  Term vt = t_var(v);
  Formula Gt = P.psi(P.top);
  Line hi = b.lax("all-inst", f_imp(P.H, f_imp(pair_order_le(vt, P.top), f_imp(P.below(vt), P.phi(vt)))));
  Line bt = b.lax("all-inst", f_imp(P.below(P.top), f_imp(pair_order_lt(vt, P.top), P.phi(vt))));
  Formula same = f_and(f_eq(t_num(lambda), t_proj(0, vt)), f_eq(t_zero(), t_proj(1, vt)));
  Line ord = b.lax("order", f_imp(pair_order_le(vt, P.top), f_or(pair_order_lt(vt, P.top), same)));
  Line tr = pair_transport(b, t_num(lambda), t_zero(), v, [&](const Term& t) { return P.below(t); });
  Formula goal = f_imp(pair_order_le(vt, P.top), P.phi(vt));
  Line m = b.by_taut({hi, bt, ord, tr}, f_imp(Gt, f_imp(P.H, goal)));
  Formula K = f_and(Gt, P.H);
  Line l = b.by_taut({m}, f_imp(K, goal));
  Line g = b.hyp_gen(K, l, v);
  return b.finish(b.by_taut({g}, f_imp(Gt, ti)));
}

}  // namespace

CertPtr ti_certificate(const WellOrder& order, const Cnf& lambda, const Formula& payload, Nat var,
                       const OracleTheory& T, const SynthOptions& opt) {
  if (!order.cnf()) throw UnsupportedError("TI certificates need a notation order");
  auto L = cnf_finite_value(lambda);
  if (!L) throw UnsupportedError("TI certificates are built for finite levels only");
  if (!order.contains(lambda)) throw PreconditionError("level " + cnf_str(lambda) + " is not in the order");
  if (!T.base.order_facts()) throw SchemaError("theory " + T.base.name + " has no order facts");
  for (Nat fv : free_vars(payload))
    if (fv != var) throw UnsupportedError("TI payload has parameters besides the induction variable");
  if (!free_set_vars(payload).empty()) throw UnsupportedError("TI payload has set parameters");

  Cnf top_ord = cnf_mul_nat(cnf_omega(), *L);
  Formula ti = schema_instance(T.base, SchemaKind::TI, payload, var, top_ord);
  TiParts P;
  P.payload = payload;
  P.v = var;
  P.w = std::max(max_var_index(payload), var) + 1;
  P.top = pt(*L, 0);
  P.H = ti->a;
  Nat x = P.w + 1, z = P.w + 2;

  // Ψ(⟨0,0⟩): nothing lies below the least notation.
  ProofBuilder b0;
  Term wt = t_var(P.w);
  Formula lt0 = pair_order_lt(wt, pt(0, 0));
  Line none = b0.lax("order", f_not(lt0));
  Line imp = b0.by_taut({none}, f_imp(lt0, P.phi(wt)));
  Line all = b0.gen(imp, P.w);
  CertPtr cur = make_fin(b0.finish(b0.hyp_lift(P.H, all)));

  for (Nat nu = 0; nu < *L; ++nu) {
    PremiseTemplate tmpl;
    CertPtr row = cur;
    for (Nat n = 0; n < opt.table; ++n) {
      tmpl.table[n] = row;
      if (n + 1 < opt.table) row = postcompose(row, step_lemma(P, nu, n));
    }
    Formula psi = P.psi(t_pair(t_num(nu), t_var(x)));
    cur = make_omega(cnf_nat(nu), x, psi, std::move(tmpl), transition_lemma(P, nu, x, z));
  }
  return postcompose(cur, final_lemma(P, *L, ti));
}

}  // namespace omk
