#include "omegak/model.hpp"

#include <algorithm>
#include <deque>

#include "omegak/errors.hpp"
#include "omegak/syntax.hpp"

namespace omk {

CodedOmegaModel::CodedOmegaModel(std::vector<SetDescriptor> s) : sets(std::move(s)) {
  if (sets.empty()) throw PreconditionError("a model lists at least the oracle set");
  for (const auto& d : sets) family_.emplace_back(d);
}

Env CodedOmegaModel::env() const {
  Env e;
  e.oracle = family_.front();
  e.consts = family_;
  e.family = &family_;
  return e;
}

Nat model_val(const Term& t) {
  if (!t->closed) throw PreconditionError("term has free variables: " + print_term(t));
  return eval_term(t, Env{});
}

Tri satisfies(const CodedOmegaModel& M, const Formula& sigma, const Caps& caps) {
  if (!is_sentence(sigma)) throw PreconditionError("not a sentence: " + print_formula(sigma));
  return evaluate(sigma, M.env(), caps);
}

void SatTable::add(const Formula& f, Tri v) {
  if (index.count(f)) return;
  index.emplace(f, scope.size());
  scope.push_back(f);
  values.push_back(v);
}

std::optional<Tri> SatTable::lookup(const Formula& f) const {
  auto it = index.find(f);
  if (it == index.end()) return std::nullopt;
  return values[it->second];
}

namespace {

// Instances of a bounded quantifier that the clauses read, and whether they
// cover the whole range.
std::pair<Nat, bool> bounded_range(const Formula& f, Nat instances, const Caps& caps) {
  Nat bound;
  try {
    bound = model_val(f->t);
  } catch (const MagnitudeError&) {
    return {instances, false};
  }
  if (bound > caps.bound_limit) return {instances, false};
  return {std::min(bound, instances), bound <= instances};
}

}  // namespace

std::vector<Formula> sat_children(const Formula& f, std::size_t listed, Nat instances, const Caps& caps) {
  switch (f->kind) {
    case FormulaKind::Not: return {f->a};
    case FormulaKind::And:
    case FormulaKind::Or:
    case FormulaKind::Imp:
    case FormulaKind::Iff: return {f->a, f->b};
    case FormulaKind::All:
    case FormulaKind::Ex: {
      std::vector<Formula> out;
      if (f->second_order) {
        for (Nat i = 0; i < listed; ++i) out.push_back(bind_set_const(f->a, f->var, i));
      } else {
        for (Nat n = 0; n < instances; ++n) out.push_back(bind_const(f->a, f->var, n));
      }
      return out;
    }
    case FormulaKind::BAll:
    case FormulaKind::BEx: {
      std::vector<Formula> out;
      Nat k = bounded_range(f, instances, caps).first;
      for (Nat n = 0; n < k; ++n) out.push_back(bind_const(f->a, f->var, n));
      return out;
    }
    default: return {};
  }
}

SatTable sat_table(const CodedOmegaModel& M, const std::vector<Formula>& roots, const Caps& caps, Nat instances) {
  SatTable tbl;
  tbl.instances = instances;
  std::deque<Formula> work(roots.begin(), roots.end());
  std::vector<Formula> order;
  std::unordered_map<Formula, char, FormulaHash, FormulaEq> seen;
  while (!work.empty()) {
    Formula f = work.front();
    work.pop_front();
    if (!seen.emplace(f, 1).second) continue;
    if (!is_sentence(f)) throw PreconditionError("not a sentence: " + print_formula(f));
    order.push_back(f);
    for (auto& c : sat_children(f, M.sets.size(), instances, caps)) work.push_back(c);
  }
  std::vector<Tri> vals(order.size());
  const long long n = static_cast<long long>(order.size());
#pragma omp parallel for schedule(dynamic)
  for (long long i = 0; i < n; ++i) vals[i] = satisfies(M, order[i], caps);
  for (std::size_t i = 0; i < order.size(); ++i) tbl.add(order[i], vals[i]);
  return tbl;
}

SatCheck check_sat_definition(const CodedOmegaModel& M, const SatTable& tbl, const Caps& caps) {
  SatCheck r;
  auto child_vals = [&](const Formula& f) {
    std::vector<Tri> out;
    for (const auto& c : sat_children(f, M.sets.size(), tbl.instances, caps)) {
      auto v = tbl.lookup(c);
      if (!v) throw PreconditionError("scope is not closed: missing " + print_formula(c));
      out.push_back(*v);
    }
    return out;
  };
  for (std::size_t i = 0; i < tbl.scope.size(); ++i) {
    const Formula& f = tbl.scope[i];
    std::vector<Tri> cs = child_vals(f);
    Tri v = tbl.values[i];
    if (v == Tri::Unknown) {
      ++r.unknown;
      continue;
    }
    if (!r.ok) continue;
    std::optional<Tri> expect;
    std::string clause;
    switch (f->kind) {
      case FormulaKind::Eq:
      case FormulaKind::Lt:
      case FormulaKind::In:
      case FormulaKind::Oracle:
        expect = satisfies(M, f, caps);
        clause = "atomic";
        break;
      case FormulaKind::Not:
        expect = tri_not(cs[0]);
        clause = "negation";
        break;
      case FormulaKind::And:
        expect = tri_and(cs[0], cs[1]);
        clause = "conjunction";
        break;
      case FormulaKind::Or:
        expect = tri_or(cs[0], cs[1]);
        clause = "disjunction";
        break;
      case FormulaKind::Imp:
        expect = tri_or(tri_not(cs[0]), cs[1]);
        clause = "implication";
        break;
      case FormulaKind::Iff:
        expect = cs[0] == Tri::Unknown || cs[1] == Tri::Unknown ? Tri::Unknown : tri_of(cs[0] == cs[1]);
        clause = "biconditional";
        break;
      case FormulaKind::All:
      case FormulaKind::Ex:
      case FormulaKind::BAll:
      case FormulaKind::BEx: {
        bool all = f->kind == FormulaKind::All || f->kind == FormulaKind::BAll;
        bool exact = f->second_order;
        if (f->kind == FormulaKind::BAll || f->kind == FormulaKind::BEx)
          exact = bounded_range(f, tbl.instances, caps).second;
        Tri acc = all ? Tri::True : Tri::False;
        for (Tri c : cs) acc = all ? tri_and(acc, c) : tri_or(acc, c);
        clause = f->second_order ? "set quantifier" : "quantifier";
        // A partial instance list can only refute ∀ or confirm ∃.
        if (exact || acc == (all ? Tri::False : Tri::True)) expect = acc;
        break;
      }
    }
    if (expect && *expect != Tri::Unknown && *expect != v) {
      r.ok = false;
      r.violated = f;
      r.clause = clause;
    }
  }
  return r;
}

Formula universal_closure(const Formula& f) {
  Formula g = f;
  auto fv = free_vars(f);
  for (auto it = fv.rbegin(); it != fv.rend(); ++it) g = f_all(*it, g);
  auto sv = free_set_vars(f);
  for (auto it = sv.rbegin(); it != sv.rend(); ++it) g = f_all_set(*it, g);
  return g;
}

Formula bind_const(const Formula& f, Nat var, Nat n) { return subst(f, var, t_const(n)); }
Formula bind_set_const(const Formula& f, Nat set_var, Nat i) { return subst_set(f, set_var, SetRef{true, i}); }

namespace {

void require_oracle(const CodedOmegaModel& M, const OracleTheory& T) {
  const SetDescriptor* d = T.oracle.descriptor();
  if (!d || !d->same_set(M.oracle())) throw PreconditionError("model oracle set differs from the theory's oracle");
}

}  // namespace

SoundnessReport soundness_audit(const CodedOmegaModel& M, const IpcTable& tbl, const OracleTheory& T,
                                const Caps& caps) {
  require_oracle(M, T);
  std::vector<std::size_t> used;
  for (std::size_t u = 0; u < tbl.universe.size(); ++u)
    for (const auto& row : tbl.entries)
      if (row[u]) {
        used.push_back(u);
        break;
      }
  std::vector<Tri> vals(used.size());
  const long long n = static_cast<long long>(used.size());
#pragma omp parallel for schedule(dynamic)
  for (long long i = 0; i < n; ++i) vals[i] = satisfies(M, universal_closure(tbl.universe[used[i]]), caps);
  SoundnessReport r;
  for (std::size_t p = 0; p < tbl.levels.size(); ++p)
    for (std::size_t i = 0; i < used.size(); ++i) {
      if (!tbl.entries[p][used[i]]) continue;
      ++r.entries;
      if (vals[i] == Tri::Unknown) ++r.unknown;
      if (vals[i] == Tri::False) r.violations.emplace_back(tbl.levels[p], tbl.universe[used[i]]);
    }
  return r;
}

SoundnessReport soundness_audit(const CodedOmegaModel& M, const Certificate& c, const Formula& goal,
                                const Cnf& level, const WellOrder& order, const OracleTheory& T,
                                const CheckPolicy& policy, const Caps& caps) {
  require_oracle(M, T);
  SoundnessReport r;
  Verdict v = check_certificate(c, level, goal, T, order, policy);
  if (!v.accepted()) return r;
  r.entries = 1;
  Tri t = satisfies(M, universal_closure(goal), caps);
  if (t == Tri::Unknown) ++r.unknown;
  if (t == Tri::False) r.violations.emplace_back(cnf_finite_value(level).value_or(0), goal);
  return r;
}

InductionCheck set_induction_check(const CodedOmegaModel& M, const Formula& phi, Nat var, Nat set_var, Nat b,
                                   Nat cutoff, const Caps& caps) {
  if (b >= M.sets.size()) throw PreconditionError("no listed set C" + std::to_string(b));
  // The step is read with unbounded quantifiers cut at caps.quant, so it
  // must cover every instance below the cutoff.
  Caps cut = caps;
  cut.truncate = true;
  if (cut.quant < cutoff) throw PreconditionError("quantifier cap below the induction cutoff");
  Formula psi = bind_set_const(phi, set_var, b);
  InductionCheck r;
  Formula base = bind_const(psi, var, 0);
  Nat u = std::max(max_var_index(psi), var) + 1;
  Formula step = f_all(u, f_imp(subst(psi, var, t_var(u)), subst(psi, var, t_add(t_var(u), t_one()))));
  r.premises = satisfies(M, base, cut) == Tri::True && satisfies(M, step, cut) == Tri::True;
  if (!r.premises) return r;
  for (Nat n = 0; n < cutoff; ++n)
    if (satisfies(M, bind_const(psi, var, n), cut) != Tri::True) {
      r.ok = false;
      r.failure = n;
      break;
    }
  return r;
}

CodedOmegaModel bounded_jump_model(const SetDescriptor& X, Nat cutoff, const std::vector<Formula>& defs, Nat var,
                                   const Caps& caps) {
  std::vector<SetDescriptor> sets{X};
  for (std::size_t i = 0; i < defs.size(); ++i) {
    const Formula& d = defs[i];
    for (Nat v : free_vars(d))
      if (v != var) throw PreconditionError("definition " + std::to_string(i) + " has other free variables");
    if (!free_set_vars(d).empty() || d->has_so_quant)
      throw PreconditionError("definition " + std::to_string(i) + " is not arithmetic in the listed sets");
    CodedOmegaModel partial(sets);
    Env env = partial.env();
    std::vector<Tri> vals(cutoff);
    std::vector<char> unbound(cutoff, 0);
    const long long n = static_cast<long long>(cutoff);
#pragma omp parallel for schedule(dynamic)
    for (long long x = 0; x < n; ++x) {
      Env e = env;
      e.bind(var, static_cast<Nat>(x));
      try {
        vals[x] = evaluate(d, e, caps);
      } catch (const BindingError&) {
        unbound[x] = 1;
      }
    }
    std::vector<bool> prefix(cutoff);
    for (Nat x = 0; x < cutoff; ++x) {
      if (unbound[x]) throw PreconditionError("definition " + std::to_string(i) + " reads a set not yet listed");
      if (vals[x] == Tri::Unknown)
        throw CapExceeded("definition " + std::to_string(i) + " is indeterminate at x = " + std::to_string(x));
      prefix[x] = vals[x] == Tri::True;
    }
    sets.emplace_back(std::move(prefix), std::vector<bool>{false});
  }
  return CodedOmegaModel(std::move(sets));
}

std::string print_model(const CodedOmegaModel& M) {
  std::string s = "(model";
  for (const auto& d : M.sets) s += " " + print_descriptor(d);
  return s + ")";
}

CodedOmegaModel parse_model(std::string_view src) {
  SExpr e = read_sexpr(src);
  if (e.head() != "model") fail_at(e, ParseErrorKind::Grammar, "expected a model", {"(model"});
  if (e.items.size() < 2) fail_at(e, ParseErrorKind::Arity, "a model lists at least one set");
  std::vector<SetDescriptor> sets;
  for (std::size_t i = 1; i < e.items.size(); ++i) sets.push_back(descriptor_of(e.items[i]));
  return CodedOmegaModel(std::move(sets));
}

}  // namespace omk
