#include <map>
#include <vector>

#include "doctest.h"
#include "omegak/errors.hpp"
#include "omegak/eval.hpp"
#include "omegak/godel.hpp"
#include "test_util.hpp"

using namespace omk;
using tu::F;

namespace {

// Independent reference evaluator for the bounded, set-free fragment.
Nat ref_term(const Term& t, const std::map<Nat, Nat>& env) {
  switch (t->kind) {
    case TermKind::Zero: return 0;
    case TermKind::One: return 1;
    case TermKind::Numeral: return t->value;
    case TermKind::Var: return env.at(t->value);
    case TermKind::Add: return ref_term(t->a, env) + ref_term(t->b, env);
    case TermKind::Mul: return ref_term(t->a, env) * ref_term(t->b, env);
    case TermKind::Pair: {
      Nat a = ref_term(t->a, env), b = ref_term(t->b, env);
      return (a + b) * (a + b + 1) / 2 + b;
    }
    default: FAIL("unexpected term kind"); return 0;
  }
}

bool ref_formula(const Formula& f, std::map<Nat, Nat> env, const std::vector<Nat>& oracle) {
  switch (f->kind) {
    case FormulaKind::Eq: return ref_term(f->t, env) == ref_term(f->s, env);
    case FormulaKind::Lt: return ref_term(f->t, env) < ref_term(f->s, env);
    case FormulaKind::Oracle: {
      Nat v = ref_term(f->t, env);
      for (Nat o : oracle)
        if (o == v) return true;
      return false;
    }
    case FormulaKind::Not: return !ref_formula(f->a, env, oracle);
    case FormulaKind::And: return ref_formula(f->a, env, oracle) && ref_formula(f->b, env, oracle);
    case FormulaKind::Or: return ref_formula(f->a, env, oracle) || ref_formula(f->b, env, oracle);
    case FormulaKind::Imp: return !ref_formula(f->a, env, oracle) || ref_formula(f->b, env, oracle);
    case FormulaKind::Iff: return ref_formula(f->a, env, oracle) == ref_formula(f->b, env, oracle);
    case FormulaKind::BAll:
    case FormulaKind::BEx: {
      Nat bound = ref_term(f->t, env);
      bool all = f->kind == FormulaKind::BAll;
      for (Nat n = 0; n < bound; ++n) {
        env[f->var] = n;
        if (ref_formula(f->a, env, oracle) != all) return !all;
      }
      return all;
    }
    default: FAIL("unexpected formula kind"); return false;
  }
}

struct BoundedGen {
  tu::Gen g;
  std::vector<Nat> scope;
  Nat next = 1;  // x (var 0) is the free variable
  explicit BoundedGen(std::uint64_t seed) : g(seed) {}

  Term term(int depth) {
    if (depth == 0 || g.below(3) == 0) {
      if (!scope.empty() && g.coin()) return t_var(scope[g.below(scope.size())]);
      return t_num(g.below(4));
    }
    switch (g.below(3)) {
      case 0: return t_add(term(depth - 1), term(depth - 1));
      case 1: return t_mul(term(depth - 1), t_num(g.below(3)));
      default: return t_pair(term(depth - 1), term(depth - 1));
    }
  }

  Formula formula(int depth) {
    if (depth == 0 || g.below(4) == 0) {
      switch (g.below(3)) {
        case 0: return f_eq(term(1), term(1));
        case 1: return f_lt(term(1), term(1));
        default: return f_oracle(term(1));
      }
    }
    switch (g.below(6)) {
      case 0: return f_not(formula(depth - 1));
      case 1: return f_and(formula(depth - 1), formula(depth - 1));
      case 2: return f_or(formula(depth - 1), formula(depth - 1));
      case 3: return f_imp(formula(depth - 1), formula(depth - 1));
      default: {
        Nat v = next++;
        Term bound = t_num(g.below(5));
        scope.push_back(v);
        Formula body = formula(depth - 1);
        scope.pop_back();
        return g.coin() ? f_ball(v, bound, body) : f_bex(v, bound, body);
      }
    }
  }
};

void proper_subformulas(const Formula& f, std::vector<Formula>& out) {
  for (const Formula& c : {f->a, f->b}) {
    if (!c) continue;
    out.push_back(c);
    proper_subformulas(c, out);
  }
}

}  // namespace

TEST_CASE("classification of small formulas") {
  CHECK(classify(F("(all< x y (= (+ x 0) x))")).kind == ClassKind::Delta00);

  FormulaClass c = classify(F("(ex x (all y (all< z x (= z y))))"));
  CHECK(c.kind == ClassKind::Sigma0);
  CHECK(c.n == 2);

  FormulaClass s = classify(F("(ex Y (all x (-> (in x Y) (O x))))"));
  CHECK(s.kind == ClassKind::Sigma1);
  CHECK(s.n == 1);
  CHECK(s.oracle_extended);

  CHECK(belongs_to(F("(all x (= x x))"), make_class(ClassKind::Pi0, 1)));
  CHECK_FALSE(belongs_to(F("(all x (ex y (= x y)))"), make_class(ClassKind::Pi0, 1)));
  CHECK_THROWS_AS(belongs_to(F("(O 2)"), make_class(ClassKind::Delta00, 0)), ClassError);
}

TEST_CASE("numeral substitution") {
  CHECK(formula_eq(substitute_numeral(F("(= x x)"), 0, 3), F("(= 3 3)")));
  Formula closed = F("(all x (= x x))");
  CHECK(formula_eq(substitute_numeral(closed, 0, 3), closed));
  CHECK(formula_eq(substitute_numeral(F("(-> (O x) (in x Y))"), 0, 2), F("(-> (O 2) (in 2 Y))")));
  CHECK_THROWS_AS(subst(F("(all y (= x y))"), 0, t_var(1)), PreconditionError);
}

TEST_CASE("negation normal form") {
  CHECK(formula_eq(nnf_atoms(F("(not (and (= x 0) (< x 1)))")), F("(or (not (= x 0)) (not (< x 1)))")));
  CHECK(formula_eq(nnf_atoms(F("(not (all x (= x 0)))")), F("(ex x (not (= x 0)))")));
  Formula lit = F("(not (O 3))");
  CHECK(formula_eq(nnf_atoms(lit), lit));
}

TEST_CASE("coding round trip and range check") {
  Formula f = F("(= 0 0)");
  CHECK(formula_eq(godel_decode_formula(godel_encode(f)), f));
  CHECK_THROWS_AS(godel_decode_formula(Code(0)), DecodeError);
  CHECK(try_decode_formula(Code(0)) == nullptr);
}

TEST_CASE("property: proper subformulas have smaller codes and decode back") {
  for (std::uint64_t seed = 1; seed <= 300; ++seed) {
    BoundedGen gen(seed);
    Formula f = gen.formula(4);
    Code cf = godel_encode(f);
    REQUIRE(formula_eq(godel_decode_formula(cf), f));
    std::vector<Formula> subs;
    proper_subformulas(f, subs);
    for (const Formula& s : subs) CHECK(godel_encode(s) < cf);
  }
}

TEST_CASE("capped evaluation") {
  Env env;
  CHECK(evaluate(F("(all< x 5 (< x 6))"), env) == Tri::True);
  Formula seven = F("(ex x (= x 7))");
  CHECK(evaluate(seven, env, Caps{4}) == Tri::Unknown);
  CHECK(evaluate(seven, env, Caps{8}) == Tri::True);
  Env with_oracle;
  with_oracle.oracle = DecidableSet(SetDescriptor::finite({2}));
  CHECK(evaluate(F("(O 2)"), with_oracle) == Tri::True);
  CHECK(evaluate(F("(O 3)"), with_oracle) == Tri::False);
}

TEST_CASE("property: bounded evaluation agrees with a reference evaluator") {
  std::vector<Nat> oracle = {0, 2, 3, 7, 11};
  Env env;
  env.oracle = DecidableSet(SetDescriptor::finite(oracle));
  for (std::uint64_t seed = 1; seed <= 500; ++seed) {
    BoundedGen gen(seed * 7919);
    Formula f = gen.formula(4);
    bool want = ref_formula(f, {}, oracle);
    CHECK(evaluate(f, env) == tri_of(want));
    CHECK(evaluate(f_not(f), env) == tri_of(!want));
  }
}

TEST_CASE("three-valued connectives") {
  CHECK(tri_and(Tri::False, Tri::Unknown) == Tri::False);
  CHECK(tri_and(Tri::True, Tri::Unknown) == Tri::Unknown);
  CHECK(tri_or(Tri::True, Tri::Unknown) == Tri::True);
  CHECK(tri_not(Tri::Unknown) == Tri::Unknown);
}

TEST_CASE("pairing agrees with diagonal enumeration") {
  // Walk the diagonals a+b = d in order of increasing b.
  Nat code = 0;
  for (Nat d = 0; d < 40; ++d)
    for (Nat b = 0; b <= d; ++b, ++code) {
      Nat a = d - b;
      CHECK(pair_code(a, b) == code);
      CHECK(unpair_code(code) == std::make_pair(a, b));
    }
  CHECK_THROWS_AS(pair_code(Nat(1) << 40, Nat(1) << 40), MagnitudeError);
}

TEST_CASE("property: set descriptors behave pointwise") {
  tu::Gen g(42);
  auto random_desc = [&] {
    std::vector<bool> prefix(g.below(6)), period(1 + g.below(4));
    for (std::size_t i = 0; i < prefix.size(); ++i) prefix[i] = g.coin();
    for (std::size_t i = 0; i < period.size(); ++i) period[i] = g.coin();
    return SetDescriptor(prefix, period);
  };
  for (int round = 0; round < 300; ++round) {
    SetDescriptor a = random_desc(), b = random_desc();
    SetDescriptor u = a.unite(b), i = a.intersect(b), c = a.complement(), n = a.normalized();
    bool equal = true;
    for (Nat k = 0; k < 200; ++k) {
      CHECK(u.contains(k) == (a.contains(k) || b.contains(k)));
      CHECK(i.contains(k) == (a.contains(k) && b.contains(k)));
      CHECK(c.contains(k) == !a.contains(k));
      CHECK(n.contains(k) == a.contains(k));
      equal = equal && a.contains(k) == b.contains(k);
    }
    // Periods and prefixes are short, so 200 points decide equality.
    CHECK(a.same_set(b) == equal);
    CHECK((a.normalized() == b.normalized()) == equal);
    CHECK(n.prefix().size() <= a.prefix().size());
  }
}

TEST_CASE("structural equality is by value") {
  Formula a = F("(all x (-> (O x) (in x Y)))");
  Formula b = f_all(0, f_imp(f_oracle(t_var(0)), f_in_var(t_var(0), 1)));
  CHECK(a.get() != b.get());
  CHECK(formula_eq(a, b));
  CHECK(a->hash == b->hash);
  CHECK(is_sentence(F("(all X (ex x (in x X)))")));
  CHECK_FALSE(is_sentence(a));
  CHECK(free_set_vars(a) == std::set<Nat>{1});
}
