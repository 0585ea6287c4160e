#include "omegak/tr.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <unordered_map>

#include "omegak/errors.hpp"
#include "omegak/proofkit.hpp"
#include "omegak/syntax.hpp"

namespace omk {

int RecursionFormula::degree() const { return nnf_atoms(phi)->pi0; }

bool StageSet::member_below(Nat code, std::optional<Nat> stage) const {
  auto [z, y] = unpair_code(code);
  if (y >= cutoff || !order.in_carrier(z)) return false;
  if (stage && !order.less(z, *stage)) return false;
  return has(z, y);
}

bool same_content(const StageSet& a, const StageSet& b) { return a.cutoff == b.cutoff && a.content == b.content; }

Formula order_lt_formula(const FiniteWellOrder& order, const Term& a, const Term& s) {
  std::vector<Formula> parts;
  if (auto v = numeral_value(s)) {
    for (Nat z : order.sorted())
      if (order.less(z, *v)) parts.push_back(f_eq(a, t_num(z)));
  } else {
    for (const auto& [p, q] : order.relation) parts.push_back(f_and(f_eq(a, t_num(p)), f_eq(s, t_num(q))));
  }
  return f_or_all(parts);
}

Formula relativize(const Formula& f, Nat set_var, const FiniteWellOrder& order, const Term& s) {
  Nat v = max_var_index(f) + 1;
  for (Nat u : term_vars(s)) v = std::max(v, u + 1);
  Formula body = f_and(order_lt_formula(order, t_proj(0, t_var(v)), s), f_in_var(t_var(v), set_var));
  return subst_set_atoms(f, SetRef{false, set_var}, v, body);
}

namespace {

Env base_env(const RecursionFormula& rf) {
  Env env;
  env.oracle = rf.oracle;
  for (const auto& [v, s] : rf.set_params) env.bind_set(v, s);
  return env;
}

void require_wo(const FiniteWellOrder& order) {
  auto wo = check_wo(order);
  if (!wo.ok) throw PreconditionError("not a well-order: " + wo.describe());
}

std::string at_str(Nat stage, Nat x) { return "(stage " + std::to_string(stage) + ", x = " + std::to_string(x) + ")"; }

bool value_or_throw(Tri t, Nat stage, Nat x) {
  if (t == Tri::Unknown) throw CapExceeded("indeterminate evaluation at " + at_str(stage, x));
  return t == Tri::True;
}

StageSet compute(const RecursionFormula& rf, const FiniteWellOrder& order, Nat cutoff, const Caps& caps,
                 bool parallel) {
  require_wo(order);
  StageSet X{order, cutoff, {}};
  for (Nat stage : order.sorted()) {
    std::vector<char> row(cutoff, 0), bad(cutoff, 0);
    std::vector<std::string> why(cutoff);
    const long long n = static_cast<long long>(cutoff);
#pragma omp parallel for schedule(dynamic) if (parallel)
    for (long long i = 0; i < n; ++i) {
      try {
        Tri t = stage_value(rf, X, stage, static_cast<Nat>(i), caps);
        if (t == Tri::Unknown) bad[i] = 1;
        row[i] = t == Tri::True;
      } catch (const std::exception& e) {
        bad[i] = 2;
        why[i] = e.what();
      }
    }
    for (Nat x = 0; x < cutoff; ++x) {
      if (bad[x] == 1) throw CapExceeded("indeterminate evaluation at " + at_str(stage, x));
      if (bad[x] == 2) throw CapExceeded("evaluation failed at " + at_str(stage, x) + ": " + why[x]);
    }
    for (Nat x = 0; x < cutoff; ++x)
      if (row[x]) X.content.insert({stage, x});
  }
  return X;
}

TrCheck check_range(const RecursionFormula& rf, Nat lambda, const StageSet& X, const Caps& caps, bool inclusive) {
  if (!X.order.in_carrier(lambda)) throw PreconditionError("stage " + std::to_string(lambda) + " is not in the order");
  for (Nat stage : X.order.sorted()) {
    bool in_range = X.order.less(stage, lambda) || (inclusive && stage == lambda);
    if (!in_range) continue;
    for (Nat x = 0; x < X.cutoff; ++x) {
      bool v = value_or_throw(stage_value(rf, X, stage, x, caps), stage, x);
      if (v != X.has(stage, x)) return {false, std::make_pair(stage, x)};
    }
  }
  return {};
}

std::size_t position(const FiniteWellOrder& order, Nat stage) {
  auto s = order.sorted();
  auto it = std::find(s.begin(), s.end(), stage);
  if (it == s.end()) throw PreconditionError("stage " + std::to_string(stage) + " is not in the order");
  return static_cast<std::size_t>(it - s.begin());
}

}  // namespace

Tri stage_value(const RecursionFormula& rf, const StageSet& X, Nat stage, Nat x, const Caps& caps) {
  Env env = base_env(rf);
  env.bind(rf.x, x);
  env.bind_set(rf.set_var, DecidableSet(PredicateSet{[&X, stage](Nat c) { return X.member_below(c, stage); }, "X<"}));
  return evaluate(rf.phi, env, caps);
}

StageSet tr_compute(const RecursionFormula& rf, const FiniteWellOrder& order, Nat cutoff, const Caps& caps) {
  return compute(rf, order, cutoff, caps, true);
}

StageSet tr_compute_serial(const RecursionFormula& rf, const FiniteWellOrder& order, Nat cutoff, const Caps& caps) {
  return compute(rf, order, cutoff, caps, false);
}

TrCheck tr_check(const RecursionFormula& rf, Nat lambda, const StageSet& X, const Caps& caps) {
  return check_range(rf, lambda, X, caps, true);
}

TrCheck tr_check_below(const RecursionFormula& rf, Nat lambda, const StageSet& X, const Caps& caps) {
  return check_range(rf, lambda, X, caps, false);
}

bool eq_upto(const StageSet& X, const StageSet& Y, Nat xi) {
  if (X.cutoff != Y.cutoff) throw PreconditionError("stage sets have different cutoffs");
  for (Nat stage : X.order.carrier) {
    if (!X.order.less(stage, xi)) continue;
    for (Nat x = 0; x < X.cutoff; ++x)
      if (X.has(stage, x) != Y.has(stage, x)) return false;
  }
  return true;
}

StageSet stage_set_of_bits(const FiniteWellOrder& order, Nat cutoff, std::uint64_t bits) {
  StageSet s{order, cutoff, {}};
  auto stages = order.sorted();
  for (std::size_t p = 0; p < stages.size(); ++p)
    for (Nat x = 0; x < cutoff; ++x)
      if (bits >> (p * cutoff + x) & 1U) s.content.insert({stages[p], x});
  return s;
}

namespace {

std::uint64_t bits_of(const StageSet& s) {
  std::uint64_t b = 0;
  auto stages = s.order.sorted();
  for (std::size_t p = 0; p < stages.size(); ++p)
    for (Nat x = 0; x < s.cutoff; ++x)
      if (s.has(stages[p], x)) b |= std::uint64_t{1} << (p * s.cutoff + x);
  return b;
}

}  // namespace

HatTable hat_table(const RecursionFormula& rf, const FiniteWellOrder& order, Nat cutoff, const Caps& caps,
                   std::size_t limit) {
  require_wo(order);
  std::size_t nbits = order.carrier.size() * cutoff;
  if (nbits > limit || nbits > 24)
    throw PreconditionError("pair universe has " + std::to_string(nbits) + " bits, limit " + std::to_string(limit));
  auto stages = order.sorted();
  HatTable h{order, cutoff, {}, {}};
  const std::uint64_t count = std::uint64_t{1} << nbits;
  h.prefix.assign(count, 0);
  std::vector<char> failed(count, 0);
  const long long n = static_cast<long long>(count);
#pragma omp parallel for schedule(dynamic, 64)
  for (long long yi = 0; yi < n; ++yi) {
    try {
      StageSet Y = stage_set_of_bits(order, cutoff, static_cast<std::uint64_t>(yi));
      std::uint8_t p = 0;
      for (; p < stages.size(); ++p) {
        bool ok = true;
        for (Nat x = 0; x < cutoff && ok; ++x) {
          Tri t = stage_value(rf, Y, stages[p], x, caps);
          if (t == Tri::Unknown) throw CapExceeded("indeterminate");
          ok = (t == Tri::True) == Y.has(stages[p], x);
        }
        if (!ok) break;
      }
      h.prefix[yi] = p;
    } catch (const std::exception&) {
      failed[yi] = 1;
    }
  }
  for (std::uint64_t yi = 0; yi < count; ++yi)
    if (failed[yi]) throw CapExceeded("indeterminate evaluation while enumerating candidate sets");
  h.rhs.assign(stages.size(), std::vector<char>(cutoff, 1));
  for (std::uint64_t yi = 0; yi < count; ++yi)
    for (std::size_t p = 0; p < stages.size() && p < h.prefix[yi]; ++p)
      for (Nat x = 0; x < cutoff; ++x)
        if (!(yi >> (p * cutoff + x) & 1U)) h.rhs[p][x] = 0;
  return h;
}

bool hat_tr_check(const HatTable& h, Nat lambda, const StageSet& X) {
  std::size_t pl = position(h.order, lambda);
  auto stages = h.order.sorted();
  for (std::size_t p = 0; p <= pl; ++p)
    for (Nat x = 0; x < h.cutoff; ++x)
      if (X.has(stages[p], x) != static_cast<bool>(h.rhs[p][x])) return false;
  return true;
}

bool hat_tr_check(const RecursionFormula& rf, Nat lambda, const StageSet& X, const Caps& caps, std::size_t limit) {
  return hat_tr_check(hat_table(rf, X.order, X.cutoff, caps, limit), lambda, X);
}

TrAudit tr_exhaustive_audit(const RecursionFormula& rf, const FiniteWellOrder& order, Nat cutoff, const Caps& caps) {
  HatTable h = hat_table(rf, order, cutoff, caps);
  StageSet truth = tr_compute(rf, order, cutoff, caps);
  std::uint64_t tb = bits_of(truth);
  std::size_t stages = order.carrier.size();
  std::uint64_t rhs = 0;
  for (std::size_t p = 0; p < stages; ++p)
    for (Nat x = 0; x < cutoff; ++x)
      if (h.rhs[p][x]) rhs |= std::uint64_t{1} << (p * cutoff + x);
  TrAudit a;
  a.candidates = h.prefix.size();
  for (std::uint64_t y = 0; y < h.prefix.size(); ++y) {
    for (std::size_t p = 0; p < stages; ++p) {
      std::uint64_t below = p * cutoff >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << (p * cutoff)) - 1;
      std::uint64_t upto = (p + 1) * cutoff >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << ((p + 1) * cutoff)) - 1;
      // any Y passing the condition below stage p agrees with the computed set there
      if (h.prefix[y] >= p && ((y ^ tb) & below) != 0) ++a.uniqueness_violations;
      bool hat = ((y ^ rhs) & upto) == 0;
      bool plain = h.prefix[y] >= p + 1;
      if (hat != plain) ++a.hat_violations;
    }
  }
  return a;
}

// ------------------------------------------------------------ unfolding

namespace {

// Renames every bound first-order variable to a fresh index from `next`.
Formula rename_bound(const Formula& f, Nat& next) {
  switch (f->kind) {
    case FormulaKind::Not: return f_not(rename_bound(f->a, next));
    case FormulaKind::And: return f_and(rename_bound(f->a, next), rename_bound(f->b, next));
    case FormulaKind::Or: return f_or(rename_bound(f->a, next), rename_bound(f->b, next));
    case FormulaKind::Imp: return f_imp(rename_bound(f->a, next), rename_bound(f->b, next));
    case FormulaKind::Iff: return f_iff(rename_bound(f->a, next), rename_bound(f->b, next));
    case FormulaKind::All:
    case FormulaKind::Ex:
    case FormulaKind::BAll:
    case FormulaKind::BEx: {
      if (f->second_order) {
        Formula body = rename_bound(f->a, next);
        return f->kind == FormulaKind::All ? f_all_set(f->var, body) : f_ex_set(f->var, body);
      }
      Nat v = next++;
      Formula body = rename_bound(subst(f->a, f->var, t_var(v)), next);
      switch (f->kind) {
        case FormulaKind::All: return f_all(v, body);
        case FormulaKind::Ex: return f_ex(v, body);
        case FormulaKind::BAll: return f_ball(v, f->t, body);
        default: return f_bex(v, f->t, body);
      }
    }
    default: return f;
  }
}

}  // namespace

Formula phi_unfold(const RecursionFormula& rf, Nat n) {
  if (n == 0) return f_bottom();
  Nat next = std::max(max_var_index(rf.phi), rf.x) + 2;
  std::vector<Formula> levels;  // levels[j] = φ⁽ʲ⁺¹⁾
  for (Nat k = 0; k < n; ++k) {
    Nat v = next++;
    std::vector<Formula> parts;
    for (Nat j = 0; j < k; ++j) {
      Formula inner = subst(levels[j], rf.x, t_proj(1, t_var(v)));
      parts.push_back(f_and(f_eq(t_proj(0, t_var(v)), t_num(j)), rename_bound(inner, next)));
    }
    levels.push_back(subst_set_atoms(rf.phi, SetRef{false, rf.set_var}, v, f_or_all(parts)));
  }
  return levels.back();
}

// ------------------------------------------------------------ box formulas

namespace {

void require_box_shape(const RecursionFormula& rf) {
  for (Nat v : free_vars(rf.phi))
    if (v != rf.x) throw UnsupportedError("recursion formula has number parameters");
  for (Nat s : free_set_vars(rf.phi))
    if (s != rf.set_var) throw UnsupportedError("recursion formula has set parameters");
}

Nat box_var(const RecursionFormula& rf) { return std::max(max_var_index(rf.phi), rf.x) + 1; }

Formula tr_below_formula(const RecursionFormula& rf, const FiniteWellOrder& order, Nat lambda) {
  Nat z = box_var(rf);
  Term zt = t_var(z);
  Formula step = relativize(subst(rf.phi, rf.x, t_proj(1, zt)), rf.set_var, order, t_proj(0, zt));
  return f_all(z, f_imp(order_lt_formula(order, t_proj(0, zt), t_num(lambda)),
                        f_iff(f_in_var(zt, rf.set_var), step)));
}

Formula box_conclusion(const RecursionFormula& rf, const FiniteWellOrder& order, Nat lambda, Nat x) {
  return relativize(substitute_numeral(rf.phi, rf.x, x), rf.set_var, order, t_num(lambda));
}

// Proves H → G or H → ¬G for closed Δ⁰₀ G over X, H the recursion
// hypothesis below λ.
class RelProver {
 public:
  RelProver(ProofBuilder& b, const RecursionFormula& rf, const FiniteWellOrder& order, const OracleTheory& T,
            Formula H)
      : b_(b), rf_(rf), order_(order), T_(T), H_(std::move(H)) {
    hh_ = b_.taut(f_imp(H_, H_));
  }

  bool value(const Formula& g) {
    Env env;
    env.oracle = T_.oracle;
    env.bind_set(rf_.set_var, DecidableSet(PredicateSet{[this](Nat c) { return member(c); }, "X"}));
    Tri t = evaluate(g, env, Caps{});
    if (t == Tri::Unknown) throw CapExceeded("indeterminate evaluation in a recursion proof");
    return t == Tri::True;
  }

  ProofBuilder::Line prove(const Formula& g, bool truth) {
    Formula lit = truth ? g : f_not(g);
    Formula goal = f_imp(H_, lit);
    if (auto l = b_.find(goal)) return *l;
    if (!g->has_set_atom) return b_.hyp_lift(H_, prove_delta0(b_, T_, g, truth));
    switch (g->kind) {
      case FormulaKind::In: {
        Formula inst_body = instance(g->t);
        auto inst = b_.hyp_inst(H_, hh_, g->t);
        const Formula& guard = inst_body->a;
        auto gl = b_.hyp_lift(H_, prove_delta0(b_, T_, guard, true));
        auto rl = prove(inst_body->b->b, truth);
        return b_.by_taut({inst, gl, rl}, goal);
      }
      case FormulaKind::Not: return b_.by_taut({prove(g->a, !truth)}, goal);
      case FormulaKind::And:
      case FormulaKind::Or:
      case FormulaKind::Imp:
      case FormulaKind::Iff: {
        bool va = value(g->a), vb = value(g->b);
        std::vector<ProofBuilder::Line> ls;
        auto need_a = [&] { ls.push_back(prove(g->a, va)); };
        auto need_b = [&] { ls.push_back(prove(g->b, vb)); };
        switch (g->kind) {
          case FormulaKind::And:
            if (truth) { need_a(); need_b(); } else if (!va) { need_a(); } else { need_b(); }
            break;
          case FormulaKind::Or:
            if (!truth) { need_a(); need_b(); } else if (va) { need_a(); } else { need_b(); }
            break;
          case FormulaKind::Imp:
            if (!truth) { need_a(); need_b(); } else if (!va) { need_a(); } else { need_b(); }
            break;
          default:
            need_a();
            need_b();
        }
        return b_.by_taut(ls, goal);
      }
      case FormulaKind::BAll:
      case FormulaKind::BEx: {
        Nat k = eval_term(g->t, Env{});
        std::vector<Formula> parts;
        for (Nat i = 0; i < k; ++i) parts.push_back(substitute_numeral(g->a, g->var, i));
        Formula E = g->kind == FormulaKind::BAll ? f_and_all(parts) : f_or_all(parts);
        auto iff = b_.hyp_lift(H_, b_.lax("bnd-expand", f_iff(g, E)));
        auto el = prove(E, truth);
        return b_.by_taut({iff, el}, goal);
      }
      default:
        throw UnsupportedError("recursion proofs cover bounded formulas only");
    }
  }

 private:
  ProofBuilder& b_;
  const RecursionFormula& rf_;
  const FiniteWellOrder& order_;
  const OracleTheory& T_;
  Formula H_;
  ProofBuilder::Line hh_;
  std::map<std::pair<Nat, Nat>, bool> memo_;

  // lt((t)₀, λ̄) → (t∈X ↔ φ((t)₁, X_{<(t)₀}))
  Formula instance(const Term& t) const {
    return subst(H_->a, H_->var, t);
  }

  // True recursion membership, not truncated at the cutoff.
  bool member(Nat code) {
    auto [z, y] = unpair_code(code);
    if (!order_.in_carrier(z)) return false;
    auto key = std::make_pair(z, y);
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    Env env;
    env.oracle = T_.oracle;
    env.bind(rf_.x, y);
    env.bind_set(rf_.set_var, DecidableSet(PredicateSet{[this, z](Nat c) {
                   return order_.less(unpair_code(c).first, z) && member(c);
                 }, "X<"}));
    Tri t = evaluate(rf_.phi, env, Caps{});
    if (t == Tri::Unknown) throw CapExceeded("indeterminate evaluation in a recursion proof");
    memo_[key] = t == Tri::True;
    return t == Tri::True;
  }
};

}  // namespace

Formula tr_box_formula(const RecursionFormula& rf, const FiniteWellOrder& order, Nat lambda, Nat x) {
  require_box_shape(rf);
  return f_all_set(rf.set_var, f_imp(tr_below_formula(rf, order, lambda), box_conclusion(rf, order, lambda, x)));
}

CertPtr tr_box_certificate(const RecursionFormula& rf, const StageSet& computed, Nat lambda, Nat x,
                           const OracleTheory& T) {
  require_box_shape(rf);
  if (rf.phi->has_unbounded || rf.phi->has_so_quant) throw UnsupportedError("recursion proofs cover bounded formulas only");
  if (!computed.has(lambda, x)) throw PreconditionError("pair is not in the recursion set");
  Formula H = tr_below_formula(rf, computed.order, lambda);
  ProofBuilder b;
  RelProver p(b, rf, computed.order, T, H);
  Formula concl = box_conclusion(rf, computed.order, lambda, x);
  if (!p.value(concl)) throw PreconditionError("pair is not in the recursion set");
  auto l = p.prove(concl, true);
  return make_fin(b.finish(b.gen2(l, rf.set_var)));
}

Nat tilde_level(const RecursionFormula& rf, const FiniteWellOrder& order, Nat lambda) {
  return static_cast<Nat>(std::max(rf.degree(), 0)) * position(order, lambda);
}

StageSet tilde_tr_build(const RecursionFormula& rf, const FiniteWellOrder& order, Nat cutoff, const IpcTable& tbl) {
  require_wo(order);
  StageSet out{order, cutoff, {}};
  std::vector<std::string> missing;
  for (Nat stage : order.sorted()) {
    Nat level = tilde_level(rf, order, stage);
    tbl.level_pos(level);
    for (Nat x = 0; x < cutoff; ++x) {
      Formula box = tr_box_formula(rf, order, stage, x);
      if (!tbl.in_universe(box)) {
        missing.push_back(code_str(godel_encode(box)));
        continue;
      }
      if (tbl.contains(level, box)) out.content.insert({stage, x});
    }
  }
  if (!missing.empty())
    throw CoverageError(std::to_string(missing.size()) + " box formulas are outside the table universe", missing);
  return out;
}

// ------------------------------------------------------------ text form

std::string print_stage_set(const StageSet& s) {
  std::string out = "(stages " + print_order(WellOrder(s.order)) + " (cutoff " + std::to_string(s.cutoff) + ") (members";
  for (const auto& [z, x] : s.content) out += " (" + std::to_string(z) + " " + std::to_string(x) + ")";
  return out + "))";
}

StageSet parse_stage_set(std::string_view src) {
  SExpr e = read_sexpr(src);
  if (e.head() != "stages") fail_at(e, ParseErrorKind::Grammar, "expected a stage set", {"(stages"});
  expect_arity(e, 3);
  WellOrder o = order_of(e.items[1]);
  if (!o.finite()) fail_at(e.items[1], ParseErrorKind::Grammar, "stage sets need a finite order", {"finite-order"});
  StageSet s{*o.finite(), 0, {}};
  const SExpr& c = e.items[2];
  if (c.head() != "cutoff") fail_at(c, ParseErrorKind::Grammar, "expected the cutoff", {"(cutoff"});
  expect_arity(c, 1);
  s.cutoff = nat_of(c.items[1]);
  const SExpr& m = e.items[3];
  if (m.head() != "members") fail_at(m, ParseErrorKind::Grammar, "expected the members", {"(members"});
  for (std::size_t i = 1; i < m.items.size(); ++i) {
    const SExpr& p = m.items[i];
    if (!p.is_list() || p.items.size() != 2) fail_at(p, ParseErrorKind::Arity, "a member is a (stage x) pair");
    Nat z = nat_of(p.items[0]), x = nat_of(p.items[1]);
    if (!s.order.in_carrier(z)) fail_at(p, ParseErrorKind::Grammar, "stage outside the carrier");
    if (x >= s.cutoff) fail_at(p, ParseErrorKind::Grammar, "member at or above the cutoff");
    s.content.insert({z, x});
  }
  return s;
}

}  // namespace omk
