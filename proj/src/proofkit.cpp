#include "omegak/proofkit.hpp"

#include "omegak/errors.hpp"
#include "omegak/eval.hpp"

namespace omk {

using Line = ProofBuilder::Line;

Line ProofBuilder::push(const Formula& f, Justification j) {
  auto it = index_.find(f);
  if (it != index_.end()) return it->second;
  proof_.lines.push_back({f, std::move(j)});
  Line k = proof_.lines.size() - 1;
  index_.emplace(f, k);
  return k;
}

std::optional<Line> ProofBuilder::find(const Formula& f) const {
  auto it = index_.find(f);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

Line ProofBuilder::ax(const Formula& f) { return push(f, Justification{JustKind::Axiom, "", 0, 0, 0}); }

Line ProofBuilder::lax(const std::string& id, const Formula& f) {
  return push(f, Justification{JustKind::Logical, id, 0, 0, 0});
}

Line ProofBuilder::mp(Line a, Line imp) {
  Formula f = formula(imp);
  if (f->kind != FormulaKind::Imp || !formula_eq(f->a, formula(a)))
    throw PreconditionError("builder: modus ponens premises do not fit");
  return push(f->b, Justification{JustKind::MP, "", a, imp, 0});
}

Line ProofBuilder::gen(Line i, Nat var) {
  return push(f_all(var, formula(i)), Justification{JustKind::Gen, "", i, 0, var});
}

Line ProofBuilder::gen2(Line i, Nat X) {
  return push(f_all_set(X, formula(i)), Justification{JustKind::Gen2, "", i, 0, X});
}

Line ProofBuilder::import(const FinitaryProof& p) {
  std::vector<Line> remap(p.lines.size());
  for (std::size_t k = 0; k < p.lines.size(); ++k) {
    Justification j = p.lines[k].just;
    if (j.kind == JustKind::MP) {
      j.i = remap.at(j.i);
      j.j = remap.at(j.j);
    } else if (j.kind == JustKind::Gen || j.kind == JustKind::Gen2) {
      j.i = remap.at(j.i);
    }
    remap[k] = push(p.lines[k].formula, j);
  }
  if (p.lines.empty()) throw PreconditionError("builder: importing an empty proof");
  return remap.back();
}

Line ProofBuilder::by_taut(const std::vector<Line>& premises, const Formula& conclusion) {
  Formula chain = conclusion;
  for (auto it = premises.rbegin(); it != premises.rend(); ++it) chain = f_imp(formula(*it), chain);
  Line cur = taut(chain);
  for (Line p : premises) cur = mp(p, cur);
  return cur;
}

Line ProofBuilder::inst(Line all_line, const Term& t) {
  Formula f = formula(all_line);
  if (f->kind != FormulaKind::All || f->second_order) throw PreconditionError("builder: instantiating a non-∀ line");
  Line ax_line = lax("all-inst", f_imp(f, subst(f->a, f->var, t)));
  return mp(all_line, ax_line);
}

Line ProofBuilder::ex_intro(Line inst_line, Nat v, const Formula& body) {
  Line ax_line = lax("ex-intro", f_imp(formula(inst_line), f_ex(v, body)));
  return mp(inst_line, ax_line);
}

Line ProofBuilder::hyp_lift(const Formula& H, Line x) {
  Formula X = formula(x);
  return mp(x, taut(f_imp(X, f_imp(H, X))));
}

Line ProofBuilder::hyp_gen(const Formula& H, Line hx, Nat var) {
  Formula f = formula(hx);
  if (f->kind != FormulaKind::Imp || !formula_eq(f->a, H)) throw PreconditionError("builder: not a hypothetical line");
  Line g = gen(hx, var);
  Line d = lax("all-dist", f_imp(formula(g), f_imp(H, f_all(var, f->b))));
  return mp(g, d);
}

Line ProofBuilder::hyp_gen2(const Formula& H, Line hx, Nat X) {
  Formula f = formula(hx);
  if (f->kind != FormulaKind::Imp || !formula_eq(f->a, H)) throw PreconditionError("builder: not a hypothetical line");
  Line g = gen2(hx, X);
  Line d = lax("all2-dist", f_imp(formula(g), f_imp(H, f_all_set(X, f->b))));
  return mp(g, d);
}

Line ProofBuilder::hyp_inst(const Formula& H, Line h_all, const Term& t) {
  Formula f = formula(h_all);
  if (f->kind != FormulaKind::Imp || f->b->kind != FormulaKind::All || f->b->second_order)
    throw PreconditionError("builder: not a hypothetical ∀ line");
  Formula all = f->b;
  Formula inst_f = subst(all->a, all->var, t);
  Line ai = lax("all-inst", f_imp(all, inst_f));
  Line lifted = hyp_lift(H, ai);
  return by_taut({h_all, lifted}, f_imp(H, inst_f));
}

FinitaryProof ProofBuilder::finish(Line concl) {
  FinitaryProof out = proof_;
  if (out.lines.empty()) throw PreconditionError("builder: empty proof");
  if (concl + 1 != out.lines.size()) {
    const Formula& C = formula(concl);
    Formula cc = f_imp(C, C);
    std::size_t t;
    if (auto found = find(cc)) {
      t = *found;
    } else {
      out.lines.push_back({cc, Justification{JustKind::Logical, "taut", 0, 0, 0}});
      t = out.lines.size() - 1;
    }
    out.lines.push_back({C, Justification{JustKind::MP, "", concl, t, 0}});
  }
  return out;
}

// ------------------------------------------------------------ Δ⁰₀ truths

bool delta0_truth(const OracleTheory& T, const Formula& f) {
  Env env;
  env.oracle = T.oracle;
  Tri t = evaluate(f, env, Caps{});
  if (t == Tri::Unknown) throw PreconditionError("Delta0_0 evaluation indeterminate");
  return t == Tri::True;
}

namespace {

bool plain(const Formula& f) { return !f->has_oracle && !f->has_set_atom && !f->has_const; }

Nat closed_value(const Term& t) {
  if (!t->closed) throw PreconditionError("open term in a closed Delta0_0 formula");
  return eval_term(t, Env{});
}

}  // namespace

Line prove_delta0(ProofBuilder& b, const OracleTheory& T, const Formula& f, bool truth) {
  if (!is_delta00(f) || !is_sentence(f)) throw PreconditionError("not a closed Delta0_0 formula");
  if (plain(f)) return b.lax("delta0", truth ? f : f_not(f));
  auto rec = [&](const Formula& g, bool tv) { return prove_delta0(b, T, g, tv); };
  auto val = [&](const Formula& g) { return delta0_truth(T, g); };
  Formula neg = f_not(f);
  switch (f->kind) {
    case FormulaKind::Oracle: {
      Nat n = closed_value(f->t);
      if (T.oracle.contains(n) != truth) throw PreconditionError("oracle literal has the other truth value");
      Term nn = t_num(n);
      Formula lit = truth ? f_oracle(nn) : f_not(f_oracle(nn));
      Line base = b.ax(lit);
      if (term_eq(nn, f->t)) return base;
      Line eq = b.lax("delta0", f_eq(nn, f->t));
      Line es = b.lax("eq-subst", f_imp(f_eq(nn, f->t), f_imp(lit, truth ? f : neg)));
      return b.mp(base, b.mp(eq, es));
    }
    case FormulaKind::In:
      throw PreconditionError("set atoms are not decided by the oracle theory");
    case FormulaKind::Eq:
    case FormulaKind::Lt:
      return b.lax("delta0", truth ? f : neg);
    case FormulaKind::Not:
      if (truth) return rec(f->a, false);
      return b.by_taut({rec(f->a, true)}, neg);
    case FormulaKind::And:
    case FormulaKind::Or:
    case FormulaKind::Imp:
    case FormulaKind::Iff: {
      bool va = val(f->a), vb = val(f->b);
      Line la = rec(f->a, va);
      Line lb = rec(f->b, vb);
      std::vector<Line> prem;
      switch (f->kind) {
        case FormulaKind::And:
          prem = truth ? std::vector<Line>{la, lb} : std::vector<Line>{!va ? la : lb};
          break;
        case FormulaKind::Or:
          prem = truth ? std::vector<Line>{va ? la : lb} : std::vector<Line>{la, lb};
          break;
        case FormulaKind::Imp:
          prem = truth ? std::vector<Line>{!va ? la : lb} : std::vector<Line>{la, lb};
          break;
        default:
          prem = {la, lb};
      }
      return b.by_taut(prem, truth ? f : neg);
    }
    case FormulaKind::BAll:
    case FormulaKind::BEx: {
      bool universal = f->kind == FormulaKind::BAll;
      Nat k = closed_value(f->t);
      std::vector<Formula> parts;
      for (Nat i = 0; i < k; ++i) parts.push_back(substitute_numeral(f->a, f->var, i));
      Formula E = universal ? f_and_all(parts) : f_or_all(parts);
      Line ex = b.lax("bnd-expand", f_iff(f, E));
      Line eline;
      // Conjunctions need all parts true, disjunctions all parts false; the
      // other polarity needs a single decisive part.
      bool need_all = universal == truth;
      if (need_all) {
        if (k == 0) {
          eline = truth ? b.lax("eq-refl", f_top()) : b.lax("delta0", f_not(f_bottom()));
        } else {
          Formula acc = parts.back();
          Line cur = rec(acc, truth);
          for (std::size_t i = k - 1; i-- > 0;) {
            Line li = rec(parts[i], truth);
            acc = universal ? f_and(parts[i], acc) : f_or(parts[i], acc);
            cur = b.by_taut({li, cur}, truth ? acc : f_not(acc));
          }
          eline = cur;
        }
      } else {
        std::optional<Nat> decisive;
        for (Nat i = 0; i < k && !decisive; ++i)
          if (val(parts[i]) != universal) decisive = i;
        if (!decisive) throw PreconditionError("bounded quantifier has the other truth value");
        Line li = rec(parts[*decisive], !universal);
        eline = b.by_taut({li}, truth ? E : f_not(E));
      }
      return b.by_taut({ex, eline}, truth ? f : neg);
    }
    default:
      throw PreconditionError("not a closed Delta0_0 formula");
  }
}

}  // namespace omk
