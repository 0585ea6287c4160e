#include <algorithm>

#include "doctest.h"
#include "omegak/errors.hpp"
#include "omegak/ipc.hpp"
#include "omegak/proofkit.hpp"
#include "omegak/synth.hpp"
#include "test_util.hpp"

using namespace omk;
using tu::F;

namespace {

OracleTheory q_over(SetDescriptor a) { return make_oracle_theory(theory_q(), DecidableSet(std::move(a))); }

Verdict check_at(const CertPtr& c, Nat level, const Formula& goal, const OracleTheory& T, Nat stages) {
  return check_certificate(*c, cnf_nat(level), goal, T, WellOrder(FiniteWellOrder::natural(stages)), CheckPolicy{});
}

// ω-node for ∀x(x+0=x) whose premise skeleton instantiates the Q axiom.
CertPtr plus_zero_node(Nat xi) {
  ProofBuilder sk;
  auto inst = sk.inst(sk.ax(q_axiom(4)), t_var(0));
  CertPtr skeleton = make_fin(sk.finish(inst));
  Formula goal = F("(all x (= (+ x 0) x))");
  ProofBuilder d;
  auto imp = d.taut(f_imp(goal, goal));
  return make_omega(cnf_nat(xi), 0, F("(= (+ x 0) x)"), uniform_template(0, skeleton), d.finish(imp));
}

IpcConfig small_config() {
  IpcConfig cfg;
  cfg.code_bound = 256;
  cfg.numcap = 4;
  cfg.instance_closure = true;
  for (int k = 1; k <= 8; ++k) cfg.seeds.push_back(q_axiom(k));
  cfg.seeds.push_back(F("(O 2)"));
  cfg.seeds.push_back(F("(all x (= (+ x 0) x))"));
  cfg.seeds.push_back(F("(-> (all x (= (+ x 0) x)) (all x (= (+ x 0) x)))"));
  cfg.seeds.push_back(F("(-> (all x (= x x)) (all x (= x x)))"));
  return cfg;
}

FiniteWellOrder shuffled_order(tu::Gen& g, Nat n) {
  std::vector<Nat> chain;
  for (Nat i = 0; i < n; ++i) chain.push_back(3 * i + g.below(3));
  FiniteWellOrder o;
  o.carrier = chain;
  std::sort(o.carrier.begin(), o.carrier.end());
  std::shuffle(chain.begin(), chain.end(), g.rng);
  for (std::size_t i = 0; i < chain.size(); ++i)
    for (std::size_t j = i + 1; j < chain.size(); ++j) o.relation.insert({chain[i], chain[j]});
  return o;
}

}  // namespace

TEST_CASE("finitary leaf at level zero") {
  OracleTheory T = q_over(SetDescriptor::finite({2}));
  FinitaryProof p;
  p.lines.push_back({F("(O 2)"), {}});
  Verdict v = check_at(make_fin(p), 0, F("(O 2)"), T, 1);
  CHECK(v.kind == Verdict::Kind::Accepted);
}

TEST_CASE("omega node must sit strictly below the level") {
  OracleTheory T = q_over(SetDescriptor::finite({2}));
  Formula goal = F("(all x (= (+ x 0) x))");
  Verdict same = check_at(plus_zero_node(1), 1, goal, T, 2);
  CHECK(same.kind == Verdict::Kind::Rejected);
  CHECK(same.reason == "ξ <_Λ λ violated");

  Verdict ok = check_at(plus_zero_node(0), 1, goal, T, 2);
  CHECK(ok.kind == Verdict::Kind::Accepted);
  // Without the ω-rule the goal is not reachable at the bottom level.
  CHECK_FALSE(check_at(plus_zero_node(0), 0, goal, T, 2).accepted());
  CHECK_THROWS_AS(check_at(plus_zero_node(0), 5, goal, T, 2), PreconditionError);
}

TEST_CASE("synthesized certificates re-check") {
  OracleTheory T = q_over(SetDescriptor::finite({2}));
  CertPtr oracle_leaf = completeness_certificate(F("(O 2)"), T, 0);
  CHECK(oracle_leaf->kind == Certificate::Kind::Fin);
  CHECK(check_at(oracle_leaf, 0, F("(O 2)"), T, 1).accepted());

  Formula ex3 = F("(ex x (= x 3))");
  CertPtr witness = completeness_certificate(ex3, T, 0);
  CHECK(witness->kind == Certificate::Kind::Fin);
  CHECK(check_at(witness, 0, ex3, T, 1).accepted());

  Formula plus0 = F("(all x (= (+ x 0) x))");
  CHECK(completeness_level(plus0) == 1);
  CertPtr node = completeness_certificate(plus0, T, 1);
  CHECK(node->kind == Certificate::Kind::Omega);
  CHECK(check_at(node, 1, plus0, T, 2).kind == Verdict::Kind::Accepted);

  CHECK_THROWS_AS(completeness_certificate(F("(O 3)"), T, 0), PreconditionError);
  CHECK_THROWS_AS(completeness_certificate(F("(all x (ex y (all z (= (+ x y) (+ z z)))))"), T, 0), ClassError);
}

TEST_CASE("property: bounded-witness sentences certify at level zero") {
  tu::Gen g(31);
  OracleTheory T = q_over(SetDescriptor::evens());
  for (int round = 0; round < 40; ++round) {
    Nat k = g.below(10);
    // Some even number above k exists; a witness search finds it.
    Formula f = f_ex(0, f_and(f_oracle(t_var(0)), f_lt(t_num(k), t_var(0))));
    CertPtr c = completeness_certificate(f, T, 0);
    CHECK(check_at(c, 0, f, T, 1).accepted());
    // The same certificate does not prove a different sentence.
    Formula other = f_ex(0, f_and(f_oracle(t_var(0)), f_lt(t_num(k + 1), t_var(0))));
    if (!formula_eq(other, f)) CHECK_FALSE(check_at(c, 0, other, T, 1).accepted());
  }
}

TEST_CASE("existential set witness") {
  Formula f = F("(ex Y (in 2 Y))");
  Sigma11Result r =
      sigma11_completeness_certificate(f, theory_eca0(), SetDescriptor::empty(), SetDescriptor::finite({2}));
  OracleTheory T = make_oracle_theory(theory_eca0(), r.oracle);
  Verdict v = check_certificate(*r.cert, cnf_omega(), r.conclusion, T, WellOrder(CnfOrder{cnf_omega()}), {});
  CHECK(v.accepted());

  CHECK_THROWS_AS(sigma11_completeness_certificate(f, theory_eca0(), SetDescriptor::empty(), std::nullopt),
                  PreconditionError);
  CHECK_THROWS(sigma11_completeness_certificate(f, theory_eca0(), SetDescriptor::empty(), SetDescriptor::finite({3})));
}

TEST_CASE("transfinite induction certificates") {
  OracleTheory T = make_oracle_theory(theory_rca0(), DecidableSet(SetDescriptor::evens()));
  WellOrder notation(CnfOrder{cnf_mul_nat(cnf_omega(), 2)});
  Formula payload = F("(O (+ x x))");
  for (Nat level = 0; level <= 1; ++level) {
    CertPtr c = ti_certificate(notation, cnf_nat(level), payload, 0, T);
    Formula goal = schema_instance(T.base, SchemaKind::TI, payload, 0, cnf_mul_nat(cnf_omega(), level));
    CHECK(check_certificate(*c, cnf_nat(level), goal, T, notation, {}).accepted());
    CHECK(c->kind == (level == 0 ? Certificate::Kind::Fin : Certificate::Kind::Omega));
  }
  CHECK_THROWS_AS(ti_certificate(WellOrder(FiniteWellOrder::natural(3)), cnf_nat(1), payload, 0, T),
                  UnsupportedError);
}

TEST_CASE("one-stage table is the finitary closure") {
  OracleTheory T = q_over(SetDescriptor::finite({2}));
  IpcTable t = saturate_ipc(T, FiniteWellOrder::natural(1), small_config());
  REQUIRE(t.entries.size() == 1);
  CHECK(t.entries[0] == t.fin);
  CHECK(t.contains(0, F("(O 2)")));
  CHECK(t.count(0) > 10);
}

TEST_CASE("consistency queries") {
  OracleTheory T = q_over(SetDescriptor::finite({2}));
  IpcTable t = saturate_ipc(T, FiniteWellOrder::natural(3), small_config());
  CHECK(consistency_query(t, 0));
  CHECK(consistency_query(t, 2));
  // Only the ω-clause introduces a number quantifier, one level up.
  Formula refl = F("(all x (= x x))");
  CHECK_FALSE(t.contains(0, refl));
  CHECK(t.contains(1, refl));
  CHECK(t.contains(2, refl));

  OracleTheory broken = T;
  broken.extra_axioms.push_back(f_bottom());
  IpcConfig cfg = small_config();
  cfg.seeds.push_back(f_bottom());
  IpcTable b = saturate_ipc(broken, FiniteWellOrder::natural(3), cfg);
  for (Nat level = 0; level < 3; ++level) CHECK_FALSE(consistency_query(b, level));
}

TEST_CASE("property: tables grow along the order and do not depend on worklist order") {
  tu::Gen g(32);
  for (int round = 0; round < 4; ++round) {
    SetDescriptor a = round % 2 ? SetDescriptor::evens() : SetDescriptor::finite({2});
    OracleTheory T = q_over(a);
    FiniteWellOrder o = shuffled_order(g, 2 + g.below(3));
    IpcConfig cfg = small_config();
    cfg.numcap = 3 + g.below(3);
    IpcTable par = saturate_ipc(T, o, cfg);
    REQUIRE_FALSE(par.truncated);
    CHECK(par.count(o.sorted().back()) > par.count(o.sorted().front()));
    for (std::uint64_t s : {0, 1, 2, 3}) {
      cfg.shuffle_seed = s;
      CHECK(same_entries(par, saturate_ipc_serial(T, o, cfg)));
    }
    for (Nat lo : o.carrier)
      for (Nat hi : o.carrier) {
        if (!o.less(lo, hi)) continue;
        const auto& el = par.entries[par.level_pos(lo)];
        const auto& eh = par.entries[par.level_pos(hi)];
        for (std::size_t i = 0; i < el.size(); ++i)
          if (el[i]) CHECK(eh[i]);
        if (!consistency_query(par, lo)) CHECK_FALSE(consistency_query(par, hi));
      }
  }
}

TEST_CASE("certificate coding and substitution") {
  CertPtr c = plus_zero_node(0);
  CHECK(godel_encode_cert(*c) > 0);
  CHECK(cert_size(*c) >= 3);
  CertPtr inst = instantiate(c->premises, 5);
  REQUIRE(inst);
  CHECK(formula_eq(inst->conclusion(), F("(= (+ 5 0) 5)")));
  OracleTheory T = q_over(SetDescriptor::empty());
  CHECK(check_at(inst, 0, F("(= (+ 5 0) 5)"), T, 1).accepted());
}
