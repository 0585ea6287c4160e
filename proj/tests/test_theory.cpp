#include "doctest.h"
#include "omegak/errors.hpp"
#include "omegak/eval.hpp"
#include "omegak/proofkit.hpp"
#include "omegak/theory.hpp"
#include "test_util.hpp"

using namespace omk;
using tu::F;

namespace {

OracleTheory oracle2(TheorySpec base = theory_eca0()) {
  return make_oracle_theory(std::move(base), DecidableSet(SetDescriptor::finite({2})));
}

// Propositional combinations of 𝔒(0..3).
Formula prop(tu::Gen& g, int depth) {
  if (depth == 0 || g.below(4) == 0) return f_oracle(t_num(g.below(4)));
  switch (g.below(5)) {
    case 0: return f_not(prop(g, depth - 1));
    case 1: return f_and(prop(g, depth - 1), prop(g, depth - 1));
    case 2: return f_or(prop(g, depth - 1), prop(g, depth - 1));
    case 3: return f_imp(prop(g, depth - 1), prop(g, depth - 1));
    default: return f_iff(prop(g, depth - 1), prop(g, depth - 1));
  }
}

bool truth_table_valid(const Formula& f) {
  for (unsigned row = 0; row < 16; ++row) {
    std::vector<Nat> members;
    for (Nat i = 0; i < 4; ++i)
      if (row >> i & 1) members.push_back(i);
    Env env;
    env.oracle = DecidableSet(SetDescriptor::finite(members));
    if (evaluate(f, env) != Tri::True) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("oracle axioms") {
  OracleTheory T = oracle2();
  CHECK(is_axiom(T, F("(O 2)")));
  CHECK(axiom_clause(T, F("(O 2)")) == "oracle+");
  CHECK_FALSE(is_axiom(T, F("(not (O 2))")));
  CHECK(axiom_clause(T, F("(not (O 3))")) == "oracle-");
  Formula existence = F("(ex X (all x (<-> (in x X) (O x))))");
  CHECK(formula_eq(existence, set_existence_axiom()));
  for (const SetDescriptor& a : {SetDescriptor::empty(), SetDescriptor::evens(), SetDescriptor::finite({2})}) {
    OracleTheory Ta = make_oracle_theory(theory_q(), DecidableSet(a));
    CHECK(is_axiom(Ta, existence));
  }
  CHECK(is_axiom(T, q_axiom(3)));
  CHECK_FALSE(is_axiom(T, F("(all x (= x 0))")));
}

TEST_CASE("finitary proof checking") {
  OracleTheory T = oracle2();
  FinitaryProof one;
  one.lines.push_back({F("(O 2)"), {}});
  CHECK(check_proof(T, one, F("(O 2)")).ok);

  FinitaryProof mp = one;
  mp.lines.push_back({F("(-> (O 2) (or (O 2) (= 0 1)))"), {JustKind::Logical, "taut"}});
  mp.lines.push_back({F("(or (O 2) (= 0 1))"), {JustKind::MP, "", 0, 1}});
  CHECK(check_proof(T, mp, mp.conclusion()).ok);
  // A correct proof of something else is not a proof of the goal.
  CHECK_FALSE(check_proof(T, mp, F("(O 2)")).ok);

  FinitaryProof permuted;
  permuted.lines = {mp.lines[2], mp.lines[0], mp.lines[1]};
  permuted.lines[0].just.i = 1;
  permuted.lines[0].just.j = 2;
  CheckResult r = check_proof(T, permuted, mp.conclusion());
  CHECK_FALSE(r.ok);
  CHECK(r.line == 0);
  CHECK(r.message.find("dangling") != std::string::npos);

  FinitaryProof wrong;
  wrong.lines.push_back({F("(not (O 2))"), {}});
  CHECK_FALSE(check_proof(T, wrong, F("(not (O 2))")).ok);
}

TEST_CASE("generalization respects the variable condition") {
  OracleTheory T = oracle2();
  ProofBuilder b;
  auto l = b.lax("eq-refl", F("(= x x)"));
  auto g = b.gen(l, 0);
  CHECK(check_proof(T, b.finish(g), F("(all x (= x x))")).ok);
}

TEST_CASE("schema display") {
  Formula ca = schema_instance(theory_eca0(), SchemaKind::CA, F("(< x 3)"), 0);
  CHECK(formula_eq(ca, F("(ex X (all x (<-> (in x X) (< x 3))))")));

  Formula ind = set_induction_axiom();
  CHECK(formula_eq(ind, F("(all X (-> (and (in 0 X) (all x (-> (in x X) (in (+ x 1) X)))) (all x (in x X))))")));

  Formula payload = F("(< x 5)");
  Cnf top = cnf_nat(3);
  Formula ti = schema_instance(theory_rca0(), SchemaKind::TI, payload, 0, top);
  Term code = t_pair(t_num(0), t_num(3));  // ω·0 + 3
  CHECK(notation_code(top) == pair_code(0, 3));
  Formula below_top = pair_order_le(t_var(0), code);
  Formula hyp = f_all(1, f_imp(pair_order_lt(t_var(1), t_var(0)), F("(< y 5)")));
  Formula want = f_imp(f_all(0, f_imp(below_top, f_imp(hyp, payload))), f_all(0, f_imp(below_top, payload)));
  CHECK(formula_eq(ti, want));

  Formula ind_schema = schema_instance(theory_rca0(), SchemaKind::Ind, F("(ex y (= x (+ y y)))"), 0);
  CHECK(formula_eq(ind_schema, F("(-> (and (ex y (= 0 (+ y y))) (all x (-> (ex y (= x (+ y y))) "
                                 "(ex y (= (+ x 1) (+ y y)))))) (all x (ex y (= x (+ y y)))))")));
  CHECK_THROWS_AS(schema_instance(theory_rca0(), SchemaKind::Ind, F("(O x)"), 0), SchemaError);
}

TEST_CASE("theory lookup") {
  auto names = theory_names();
  REQUIRE(names.size() == 5);
  CHECK(names.front() == "q");
  CHECK(names.back() == "aca0");
  for (const auto& n : names) CHECK(theory_by_name(n).has_value());
  CHECK_FALSE(theory_by_name("zfc").has_value());
  CHECK(theory_q().ca == CAKind::None);
  CHECK(theory_aca0().ca == CAKind::PiOmega);
}

TEST_CASE("property: tautology check agrees with truth tables") {
  tu::Gen g(21);
  int valid = 0;
  for (int round = 0; round < 600; ++round) {
    Formula f = prop(g, 4);
    // Bias towards valid inputs half of the time.
    if (g.coin()) f = f_or(f, f_not(prop(g, 2)));
    bool want = truth_table_valid(f);
    valid += want;
    CHECK_MESSAGE(is_tautology(f) == want, round);
  }
  CHECK(valid > 20);
}

TEST_CASE("property: decided bounded sentences get checkable proofs") {
  OracleTheory T = oracle2();
  tu::Gen g(22);
  for (int round = 0; round < 150; ++round) {
    Formula body = f_or(f_oracle(t_add(t_var(0), t_num(g.below(3)))), f_lt(t_var(0), t_num(g.below(4))));
    Formula f = g.coin() ? f_ball(0, t_num(g.below(5)), body) : f_bex(0, t_num(g.below(5)), body);
    bool truth = delta0_truth(T, f);
    Env env;
    env.oracle = T.oracle;
    REQUIRE(evaluate(f, env) == tri_of(truth));
    ProofBuilder b;
    auto line = prove_delta0(b, T, f, truth);
    FinitaryProof p = b.finish(line);
    Formula goal = truth ? f : f_not(f);
    CHECK(check_proof(T, p, goal).ok);
    // The same proof never establishes the opposite.
    CHECK_FALSE(check_proof(T, p, truth ? f_not(f) : f).ok);
  }
}
