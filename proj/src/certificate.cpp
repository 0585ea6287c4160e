#include "omegak/certificate.hpp"

#include <algorithm>

#include "omegak/errors.hpp"
#include "omegak/proofkit.hpp"

namespace omk {

Formula Certificate::conclusion() const {
  if (kind == Kind::Fin) return proof.conclusion();
  Formula c = d.conclusion();
  return c && c->kind == FormulaKind::Imp ? c->b : nullptr;
}

CertPtr make_fin(FinitaryProof p) {
  auto c = std::make_shared<Certificate>();
  c->kind = Certificate::Kind::Fin;
  c->proof = std::move(p);
  return c;
}

CertPtr make_omega(Cnf xi, Nat var, Formula psi, PremiseTemplate premises, FinitaryProof d) {
  auto c = std::make_shared<Certificate>();
  c->kind = Certificate::Kind::Omega;
  c->xi = std::move(xi);
  c->var = var;
  c->psi = std::move(psi);
  c->premises = std::move(premises);
  c->d = std::move(d);
  return c;
}

PremiseTemplate uniform_template(Nat hole, CertPtr skeleton) {
  PremiseTemplate t;
  t.uniform = UniformPremise{hole, std::move(skeleton)};
  return t;
}

const char* verdict_name(Verdict::Kind k) {
  switch (k) {
    case Verdict::Kind::Accepted: return "accepted";
    case Verdict::Kind::AcceptedAdvisory: return "accepted-advisory";
    case Verdict::Kind::Rejected: return "rejected";
  }
  return "?";
}

namespace {

bool proof_generalizes(const FinitaryProof& p, Nat var) {
  return std::any_of(p.lines.begin(), p.lines.end(),
                     [&](const ProofLine& l) { return l.just.kind == JustKind::Gen && l.just.var == var; });
}

bool generalizes(const Certificate& c, Nat var) {
  if (c.kind == Certificate::Kind::Fin) return proof_generalizes(c.proof, var);
  if (proof_generalizes(c.d, var)) return true;
  if (c.premises.uniform && c.premises.uniform->hole != var && generalizes(*c.premises.uniform->skeleton, var))
    return true;
  for (const auto& [n, e] : c.premises.table)
    if (generalizes(*e, var)) return true;
  return false;
}

struct Checker {
  const OracleTheory& T;
  const WellOrder& order;
  const CheckPolicy& policy;
  bool advisory = false;

  static Verdict reject(std::string why) { return {Verdict::Kind::Rejected, std::move(why)}; }

  Verdict uniform_premise(const Certificate& c, const UniformPremise& u) {
    if (u.hole != c.var && occurs_free(c.psi, u.hole)) return reject("template hole is a parameter of the premise");
    if (generalizes(*u.skeleton, u.hole)) return reject("template hole is generalized inside the skeleton");
    Formula goal = subst(c.psi, c.var, t_var(u.hole));
    Verdict v = run(*u.skeleton, c.xi, goal);
    if (!v.accepted()) v.reason = "uniform premise: " + v.reason;
    return v;
  }

  Verdict run(const Certificate& c, const Cnf& level, const Formula& goal) {
    if (c.kind == Certificate::Kind::Fin) {
      auto r = check_proof(T, c.proof, goal);
      if (!r.ok) return reject(r.message);
      return {};
    }
    if (!order.contains(c.xi)) return reject("ξ = " + cnf_str(c.xi) + " is not in the order");
    if (!order.less(c.xi, level)) return reject("ξ <_Λ λ violated");
    if (!c.psi) return reject("ω-node without premise formula");
    auto r = check_proof(T, c.d, f_imp(f_all(c.var, c.psi), goal));
    if (!r.ok) return reject("implication proof: " + r.message);

    const PremiseTemplate& t = c.premises;
    if (!t.uniform && !t.tabulated()) return reject("empty premise template");
    if (policy.mode == CheckPolicy::Mode::Sampled) {
      advisory = true;
      for (Nat n = 0; n < policy.k; ++n) {
        CertPtr inst = instantiate(t, n);
        if (!inst) return reject("template has no premise for " + std::to_string(n));
        Verdict v = run(*inst, c.xi, substitute_numeral(c.psi, c.var, n));
        if (!v.accepted()) return reject("premise " + std::to_string(n) + ": " + v.reason);
      }
      return {};
    }
    if (!t.tabulated()) return uniform_premise(c, *t.uniform);
    // A finite table never covers every instance.
    advisory = true;
    for (const auto& [n, e] : t.table) {
      Verdict v = run(*e, c.xi, substitute_numeral(c.psi, c.var, n));
      if (!v.accepted()) return reject("premise " + std::to_string(n) + ": " + v.reason);
    }
    if (t.uniform) return uniform_premise(c, *t.uniform);
    return {};
  }
};

}  // namespace

Verdict check_certificate(const Certificate& c, const Cnf& level, const Formula& goal, const OracleTheory& T,
                          const WellOrder& order, const CheckPolicy& policy) {
  if (!order.contains(level)) throw PreconditionError("level " + cnf_str(level) + " is not in the order");
  Checker ch{T, order, policy};
  Verdict v = ch.run(c, level, goal);
  if (v.accepted() && ch.advisory) v.kind = Verdict::Kind::AcceptedAdvisory;
  return v;
}

// ------------------------------------------------------------ transforms

namespace {

FinitaryProof subst_proof(const FinitaryProof& p, Nat var, const Term& by) {
  FinitaryProof out = p;
  for (auto& l : out.lines) l.formula = subst(l.formula, var, by);
  return out;
}

}  // namespace

CertPtr subst_cert(const CertPtr& c, Nat var, const Term& by) {
  if (c->kind == Certificate::Kind::Fin) return make_fin(subst_proof(c->proof, var, by));
  if (c->var == var) return make_omega(c->xi, c->var, c->psi, c->premises, subst_proof(c->d, var, by));
  PremiseTemplate t;
  if (c->premises.uniform) {
    UniformPremise u = *c->premises.uniform;
    if (u.hole != var) u.skeleton = subst_cert(u.skeleton, var, by);
    t.uniform = u;
  }
  for (const auto& [n, e] : c->premises.table) t.table[n] = subst_cert(e, var, by);
  return make_omega(c->xi, c->var, subst(c->psi, var, by), std::move(t), subst_proof(c->d, var, by));
}

CertPtr instantiate(const PremiseTemplate& t, Nat n) {
  auto it = t.table.find(n);
  if (it != t.table.end()) return it->second;
  if (t.uniform) return subst_cert(t.uniform->skeleton, t.uniform->hole, t_num(n));
  return nullptr;
}

namespace {

Nat proof_max_var(const FinitaryProof& p) {
  Nat m = 0;
  for (const auto& l : p.lines) {
    m = std::max(m, max_var_index(l.formula));
    if (l.just.kind == JustKind::Gen) m = std::max(m, l.just.var);
  }
  return m;
}

}  // namespace

Nat cert_max_var(const Certificate& c) {
  if (c.kind == Certificate::Kind::Fin) return proof_max_var(c.proof);
  Nat m = std::max({proof_max_var(c.d), c.var, max_var_index(c.psi)});
  if (c.premises.uniform)
    m = std::max({m, c.premises.uniform->hole, cert_max_var(*c.premises.uniform->skeleton)});
  for (const auto& [n, e] : c.premises.table) m = std::max(m, cert_max_var(*e));
  return m;
}

std::size_t cert_size(const Certificate& c) {
  if (c.kind == Certificate::Kind::Fin) return c.proof.lines.size();
  std::size_t s = c.d.lines.size();
  if (c.premises.uniform) s += cert_size(*c.premises.uniform->skeleton);
  for (const auto& [n, e] : c.premises.table) s += cert_size(*e);
  return s;
}

CertPtr postcompose(const CertPtr& c, const FinitaryProof& imp) {
  Formula i = imp.conclusion();
  if (!i || i->kind != FormulaKind::Imp || !formula_eq(i->a, c->conclusion()))
    throw PreconditionError("postcompose: implication does not start at the conclusion");
  ProofBuilder b;
  if (c->kind == Certificate::Kind::Fin) {
    auto l1 = b.import(c->proof);
    auto l2 = b.import(imp);
    return make_fin(b.finish(b.mp(l1, l2)));
  }
  auto ld = b.import(c->d);
  auto li = b.import(imp);
  auto l = b.by_taut({ld, li}, f_imp(b.formula(ld)->a, i->b));
  return make_omega(c->xi, c->var, c->psi, c->premises, b.finish(l));
}

namespace {

// Both premises described by one template over the conjunction.
PremiseTemplate combine_templates(const Certificate& a, const Certificate& b, Nat hole, Nat k) {
  PremiseTemplate t;
  if (a.premises.uniform && b.premises.uniform) {
    auto s1 = subst_cert(a.premises.uniform->skeleton, a.premises.uniform->hole, t_var(hole));
    auto s2 = subst_cert(b.premises.uniform->skeleton, b.premises.uniform->hole, t_var(hole));
    t.uniform = UniformPremise{hole, combine_and(s1, s2, k)};
  }
  if (a.premises.tabulated() || b.premises.tabulated()) {
    for (Nat n = 0; n < k; ++n) {
      auto i1 = instantiate(a.premises, n), i2 = instantiate(b.premises, n);
      if (i1 && i2) t.table[n] = combine_and(i1, i2, k);
    }
  }
  return t;
}

}  // namespace

CertPtr combine_and(const CertPtr& a, const CertPtr& b, Nat k) {
  Formula ca = a->conclusion(), cb = b->conclusion();
  Formula both = f_and(ca, cb);
  using K = Certificate::Kind;
  if (a->kind == K::Fin && b->kind == K::Fin) {
    ProofBuilder pb;
    auto la = pb.import(a->proof);
    auto lb = pb.import(b->proof);
    return make_fin(pb.finish(pb.by_taut({la, lb}, both)));
  }
  if (b->kind == K::Fin) {
    ProofBuilder pb;
    auto lb = pb.import(b->proof);
    return postcompose(a, pb.finish(pb.by_taut({lb}, f_imp(ca, both))));
  }
  if (a->kind == K::Fin) {
    ProofBuilder pb;
    auto la = pb.import(a->proof);
    return postcompose(b, pb.finish(pb.by_taut({la}, f_imp(cb, both))));
  }

  Nat x = std::max(cert_max_var(*a), cert_max_var(*b)) + 1;
  Nat hole = x + 1;
  Formula psi = f_and(subst(a->psi, a->var, t_var(x)), subst(b->psi, b->var, t_var(x)));
  Formula H = f_all(x, psi);
  ProofBuilder pb;
  auto hh = pb.taut(f_imp(H, H));
  auto side = [&](const Certificate& c, bool left) {
    auto inst = pb.hyp_inst(H, hh, t_var(c.var));
    const Formula& conj = pb.formula(inst)->b;
    auto one = pb.by_taut({inst}, f_imp(H, left ? conj->a : conj->b));
    auto g = pb.hyp_gen(H, one, c.var);
    auto ld = pb.import(c.d);
    return pb.by_taut({g, ld}, f_imp(H, c.conclusion()));
  };
  auto r1 = side(*a, true);
  auto r2 = side(*b, false);
  auto fin = pb.by_taut({r1, r2}, f_imp(H, both));
  Cnf xi = cnf_less(a->xi, b->xi) ? b->xi : a->xi;
  return make_omega(xi, x, psi, combine_templates(*a, *b, hole, k), pb.finish(fin));
}

// ------------------------------------------------------------ coding

namespace {

void num_toks(std::vector<Tok>& out, Nat n) {
  out.push_back(Tok::Hash);
  push_ticks(out, n);
}

void proof_toks(const FinitaryProof& p, std::vector<Tok>& out) {
  const auto& ids = logical_axiom_ids();
  for (const auto& l : p.lines) {
    out.push_back(Tok::Line);
    tokens_of(l.formula, out);
    const auto& j = l.just;
    switch (j.kind) {
      case JustKind::Axiom: out.push_back(Tok::Ax); break;
      case JustKind::Logical:
        out.push_back(Tok::Lax);
        num_toks(out, std::find(ids.begin(), ids.end(), j.id) - ids.begin());
        break;
      case JustKind::MP:
        out.push_back(Tok::Mp);
        num_toks(out, j.i);
        num_toks(out, j.j);
        break;
      case JustKind::Gen:
      case JustKind::Gen2:
        out.push_back(Tok::Gen);
        out.push_back(j.kind == JustKind::Gen ? Tok::Var : Tok::SetVar);
        push_ticks(out, j.var);
        num_toks(out, j.i);
        break;
    }
  }
  out.push_back(Tok::End);
}

void cert_toks(const Certificate& c, std::vector<Tok>& out) {
  if (c.kind == Certificate::Kind::Fin) {
    out.push_back(Tok::Fin);
    proof_toks(c.proof, out);
    return;
  }
  out.push_back(Tok::Omega);
  num_toks(out, cnf_code(c.xi));
  out.push_back(Tok::Var);
  push_ticks(out, c.var);
  tokens_of(c.psi, out);
  if (c.premises.tabulated()) {
    out.push_back(Tok::Tab);
    for (const auto& [n, e] : c.premises.table) {
      num_toks(out, n);
      cert_toks(*e, out);
    }
    if (c.premises.uniform) out.push_back(Tok::Tail);
  }
  if (c.premises.uniform) {
    out.push_back(Tok::Uniform);
    out.push_back(Tok::Var);
    push_ticks(out, c.premises.uniform->hole);
    cert_toks(*c.premises.uniform->skeleton, out);
  }
  out.push_back(Tok::End);
  proof_toks(c.d, out);
}

}  // namespace

Code godel_encode_cert(const Certificate& c) {
  std::vector<Tok> toks;
  cert_toks(c, toks);
  return code_of_tokens(toks);
}

}  // namespace omk
