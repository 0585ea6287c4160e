#include <map>

#include "doctest.h"
#include "omegak/errors.hpp"
#include "omegak/model.hpp"
#include "test_util.hpp"

using namespace omk;
using tu::F;

namespace {

CodedOmegaModel three_sets() {
  return CodedOmegaModel({SetDescriptor::finite({2}), SetDescriptor::evens(), SetDescriptor::finite({0, 1, 5})});
}

// Sentences with bounded number quantifiers and set quantifiers.
struct SentenceGen {
  tu::Gen g;
  std::vector<Nat> nums, sets;
  Nat next_num = 0, next_set = 0;
  explicit SentenceGen(std::uint64_t seed) : g(seed) {}

  Term term() {
    Term base = !nums.empty() && g.coin() ? t_var(nums[g.below(nums.size())]) : t_num(g.below(6));
    return g.below(3) == 0 ? t_add(base, t_num(g.below(3))) : base;
  }

  SetRef set() {
    if (!sets.empty() && g.coin()) return SetRef{false, sets[g.below(sets.size())]};
    return SetRef{true, g.below(3)};
  }

  Formula formula(int depth) {
    if (depth == 0 || g.below(4) == 0) {
      switch (g.below(4)) {
        case 0: return f_eq(term(), term());
        case 1: return f_oracle(term());
        default: return f_in(term(), set());
      }
    }
    switch (g.below(7)) {
      case 0: return f_not(formula(depth - 1));
      case 1: return f_and(formula(depth - 1), formula(depth - 1));
      case 2: return f_or(formula(depth - 1), formula(depth - 1));
      case 3: return f_imp(formula(depth - 1), formula(depth - 1));
      case 4: case 5: {
        Nat v = next_num++;
        Term bound = t_num(1 + g.below(5));
        nums.push_back(v);
        Formula body = formula(depth - 1);
        nums.pop_back();
        return g.coin() ? f_ball(v, bound, body) : f_bex(v, bound, body);
      }
      default: {
        Nat v = next_set++;
        sets.push_back(v);
        Formula body = formula(depth - 1);
        sets.pop_back();
        return g.coin() ? f_all_set(v, body) : f_ex_set(v, body);
      }
    }
  }
};

// Reference truth in the model, written against the node structure only.
struct Reference {
  const CodedOmegaModel& M;

  Nat term(const Term& t, const std::map<Nat, Nat>& env) const {
    if (auto n = numeral_value(t)) return *n;
    if (t->kind == TermKind::Var) return env.at(t->value);
    REQUIRE(t->kind == TermKind::Add);
    return term(t->a, env) + term(t->b, env);
  }

  bool truth(const Formula& f, std::map<Nat, Nat> env, std::map<Nat, Nat> sets) const {
    switch (f->kind) {
      case FormulaKind::Eq: return term(f->t, env) == term(f->s, env);
      case FormulaKind::Oracle: return M.sets[0].contains(term(f->t, env));
      case FormulaKind::In: {
        Nat i = f->set.is_const ? f->set.index : sets.at(f->set.index);
        return M.sets[i].contains(term(f->t, env));
      }
      case FormulaKind::Not: return !truth(f->a, env, sets);
      case FormulaKind::And: return truth(f->a, env, sets) && truth(f->b, env, sets);
      case FormulaKind::Or: return truth(f->a, env, sets) || truth(f->b, env, sets);
      case FormulaKind::Imp: return !truth(f->a, env, sets) || truth(f->b, env, sets);
      case FormulaKind::BAll:
      case FormulaKind::BEx: {
        bool all = f->kind == FormulaKind::BAll;
        Nat bound = term(f->t, env);
        for (Nat n = 0; n < bound; ++n) {
          env[f->var] = n;
          if (truth(f->a, env, sets) != all) return !all;
        }
        return all;
      }
      case FormulaKind::All:
      case FormulaKind::Ex: {
        REQUIRE(f->second_order);
        bool all = f->kind == FormulaKind::All;
        for (Nat i = 0; i < M.sets.size(); ++i) {
          sets[f->var] = i;
          if (truth(f->a, env, sets) != all) return !all;
        }
        return all;
      }
      default: FAIL("unexpected kind"); return false;
    }
  }
};

}  // namespace

TEST_CASE("closed term values") {
  CHECK(model_val(t_add(t_const(3), t_one())) == 4);
  CHECK(model_val(t_pair(t_const(1), t_const(2))) == pair_code(1, 2));
  CHECK_THROWS_AS(model_val(t_var(0)), PreconditionError);
}

TEST_CASE("satisfaction clauses") {
  CodedOmegaModel M = three_sets();
  CHECK(satisfies(M, F("(in (c 4) (C 1))")) == Tri::True);
  CHECK(satisfies(M, F("(in (c 5) (C 1))")) == Tri::False);
  CHECK(satisfies(M, F("(O 2)")) == Tri::True);
  CHECK(satisfies(M, F("(ex X (all< x 3 (in x X)))")) == Tri::False);
  CHECK(satisfies(M, F("(ex X (all< x 2 (in x X)))")) == Tri::True);
  Formula open = F("(ex y (= y (+ x 1)))");
  CHECK_THROWS_AS(satisfies(M, open), PreconditionError);

  Formula far = F("(ex x (= x 100))");
  CHECK(satisfies(M, far, Caps{16}) == Tri::Unknown);
  CHECK(satisfies(M, f_not(far), Caps{16}) == Tri::Unknown);
  CHECK(satisfies(M, far, Caps{128}) == Tri::True);
  CHECK(satisfies(M, f_not(far), Caps{128}) == Tri::False);
}

TEST_CASE("base axioms are never refuted") {
  for (const CodedOmegaModel& M :
       {three_sets(), CodedOmegaModel({SetDescriptor::empty()}), CodedOmegaModel({SetDescriptor::odds()})}) {
    for (int k = 1; k <= 8; ++k) CHECK(satisfies(M, q_axiom(k), Caps{24}) != Tri::False);
    CHECK(satisfies(M, set_existence_axiom()) != Tri::False);
    CHECK(satisfies(M, set_existence_axiom(), Caps{32, 1 << 20, true}) == Tri::True);
  }
}

TEST_CASE("property: satisfaction agrees with a reference over listed sets") {
  CodedOmegaModel M = three_sets();
  Reference ref{M};
  for (std::uint64_t seed = 1; seed <= 600; ++seed) {
    SentenceGen gen(seed);
    Formula f = gen.formula(4);
    REQUIRE(is_sentence(f));
    bool want = ref.truth(f, {}, {});
    CHECK(satisfies(M, f) == tri_of(want));
    CHECK(satisfies(M, f_not(f)) == tri_of(!want));
  }
}

TEST_CASE("satisfaction tables") {
  CodedOmegaModel M = three_sets();
  std::vector<Formula> roots = {F("(not (ex X (all< x 3 (in x X))))"), F("(all x (or (O x) (not (O x))))"),
                                F("(ex x (and (in x (C 1)) (O x)))")};
  SatTable tbl = sat_table(M, roots);
  SatCheck ok = check_sat_definition(M, tbl);
  CHECK(ok.ok);

  SatTable bad = tbl;
  std::size_t i = bad.index.at(roots[0]);
  bad.values[i] = tri_not(bad.values[i]);
  SatCheck broken = check_sat_definition(M, bad);
  CHECK_FALSE(broken.ok);
  REQUIRE(broken.violated.has_value());
  CHECK(formula_eq(*broken.violated, roots[0]));

  // A second table over the same roots with a larger cap agrees where both decide.
  SatTable wide = sat_table(M, roots, Caps{40});
  for (std::size_t k = 0; k < tbl.scope.size(); ++k) {
    auto other = wide.lookup(tbl.scope[k]);
    REQUIRE(other.has_value());
    if (tbl.values[k] != Tri::Unknown && *other != Tri::Unknown) CHECK(tbl.values[k] == *other);
  }

  SatTable partial;
  partial.add(roots[0], Tri::True);
  CHECK_THROWS_AS(check_sat_definition(M, partial), PreconditionError);
}

TEST_CASE("soundness audits") {
  SetDescriptor two = SetDescriptor::finite({2});
  OracleTheory T = make_oracle_theory(theory_q(), DecidableSet(two));
  IpcConfig cfg;
  cfg.code_bound = 512;
  cfg.numcap = 4;
  cfg.instance_closure = true;
  for (int k = 1; k <= 8; ++k) cfg.seeds.push_back(q_axiom(k));
  cfg.seeds.push_back(F("(-> (all x (= x x)) (all x (= x x)))"));
  IpcTable tbl = saturate_ipc(T, FiniteWellOrder::natural(2), cfg);
  CodedOmegaModel M({two, SetDescriptor::evens()});
  SoundnessReport r = soundness_audit(M, tbl, T, Caps{24});
  CHECK(r.ok());
  CHECK(r.entries > 20);

  OracleTheory broken = T;
  broken.extra_axioms.push_back(f_bottom());
  IpcTable bad = saturate_ipc(broken, FiniteWellOrder::natural(2), cfg);
  SoundnessReport rb = soundness_audit(M, bad, broken, Caps{24});
  CHECK_FALSE(rb.ok());
  bool found_bottom = false;
  for (const auto& [level, f] : rb.violations) found_bottom = found_bottom || formula_eq(f, f_bottom());
  CHECK(found_bottom);

  CodedOmegaModel other({SetDescriptor::evens()});
  CHECK_THROWS_AS(soundness_audit(other, tbl, T), PreconditionError);
}

TEST_CASE("closures and constant binding") {
  Formula f = F("(-> (in x Y) (O y))");
  Formula c = universal_closure(f);
  CHECK(is_sentence(c));
  CHECK(formula_eq(bind_const(F("(O x)"), 0, 3), f_oracle(t_const(3))));
  CHECK(formula_eq(bind_set_const(F("(in 1 X)"), 0, 2), f_in(t_one(), SetRef{true, 2})));
}

TEST_CASE("set induction in listed models") {
  CodedOmegaModel M = three_sets();
  // Evens are not closed under successor, so the step premise fails.
  InductionCheck evens = set_induction_check(M, F("(in x Y)"), 0, 1, 1, 10, Caps{12});
  CHECK_FALSE(evens.premises);
  CodedOmegaModel full({SetDescriptor::empty(), SetDescriptor::all()});
  InductionCheck all = set_induction_check(full, F("(in x Y)"), 0, 1, 1, 10, Caps{12});
  CHECK(all.premises);
  CHECK(all.ok);
}

TEST_CASE("bounded jump models") {
  SetDescriptor two = SetDescriptor::finite({2});
  CodedOmegaModel bare = bounded_jump_model(two, 8, {});
  REQUIRE(bare.sets.size() == 1);
  CHECK(bare.oracle().same_set(two));

  CodedOmegaModel m = bounded_jump_model(two, 8, {F("(or (in x (C 0)) (in (+ x 1) (C 0)))")});
  REQUIRE(m.sets.size() == 2);
  for (Nat x = 0; x < 8; ++x) CHECK(m.sets[1].contains(x) == (x == 1 || x == 2));

  CHECK_THROWS_AS(bounded_jump_model(two, 4, {F("(ex y (= y (+ x 50)))")}, 0, Caps{8}), CapExceeded);
  CHECK_THROWS_AS(bounded_jump_model(two, 4, {F("(in x (C 3))")}), PreconditionError);
}

TEST_CASE("models print and parse") {
  CodedOmegaModel M = three_sets();
  CodedOmegaModel back = parse_model(print_model(M));
  REQUIRE(back.sets.size() == M.sets.size());
  for (std::size_t i = 0; i < M.sets.size(); ++i) CHECK(back.sets[i].same_set(M.sets[i]));
  CHECK_THROWS_AS(CodedOmegaModel({}), PreconditionError);
}
