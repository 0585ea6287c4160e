#include <functional>

#include "doctest.h"
#include "omegak/errors.hpp"
#include "omegak/tr.hpp"
#include "test_util.hpp"

using namespace omk;
using tu::F;

namespace {

RecursionFormula rec(const char* src) {
  RecursionFormula rf;
  rf.phi = F(src);
  return rf;
}

std::size_t count_set_atoms(const Formula& f) {
  if (!f) return 0;
  if (f->kind == FormulaKind::In) return 1;
  return count_set_atoms(f->a) + count_set_atoms(f->b);
}

// Recursion formulas over stages 0..stages-1 that only query pairs ⟨s̄, y⟩
// with y ≤ x, with bounded quantifiers and optional oracle atoms.
struct RecFormulaGen {
  tu::Gen g;
  Nat stages;
  std::vector<Nat> scope{0};
  Nat next = 1;
  RecFormulaGen(std::uint64_t seed, Nat s) : g(seed), stages(s) {}

  Term small() { return scope.size() > 1 && g.coin() ? t_var(scope[g.below(scope.size())]) : t_var(0); }

  Formula atom() {
    switch (g.below(5)) {
      case 0: return f_eq(small(), t_num(g.below(4)));
      case 1: return f_lt(small(), t_num(g.below(5)));
      case 2: return f_oracle(t_add(small(), t_num(g.below(2))));
      default: return f_in_var(t_pair(t_num(g.below(stages)), small()), 0);
    }
  }

  Formula formula(int depth) {
    if (depth == 0 || g.below(3) == 0) return atom();
    switch (g.below(5)) {
      case 0: return f_not(formula(depth - 1));
      case 1: return f_and(formula(depth - 1), formula(depth - 1));
      case 2: return f_or(formula(depth - 1), formula(depth - 1));
      case 3: return f_imp(formula(depth - 1), formula(depth - 1));
      default: {
        // y < x + 1 keeps every query at a second component ≤ x.
        Nat v = next++;
        scope.push_back(v);
        Formula body = formula(depth - 1);
        scope.pop_back();
        Term bound = t_add(t_var(0), t_num(1));
        return g.coin() ? f_bex(v, bound, body) : f_ball(v, bound, body);
      }
    }
  }

  RecursionFormula make() {
    RecursionFormula rf;
    rf.phi = formula(3);
    rf.oracle = DecidableSet(SetDescriptor::finite({1, 2, 5}));
    return rf;
  }
};

}  // namespace

TEST_CASE("relativization") {
  FiniteWellOrder three = FiniteWellOrder::natural(3);
  Term s = t_num(2);
  Formula one = relativize(F("(in (pair 1 x) X)"), 0, three, s);
  Term t = t_pair(t_num(1), t_var(0));
  CHECK(formula_eq(one, f_and(order_lt_formula(three, t_proj(0, t), s), f_in_var(t, 0))));

  Formula free = F("(all< y x (= y y))");
  CHECK(formula_eq(relativize(free, 0, three, s), free));

  Formula nested = F("(or (not (in x X)) (and (in (+ x 1) X) (-> (in 0 X) (in x Y))))");
  Formula r = relativize(nested, 0, three, s);
  CHECK(count_set_atoms(r) == count_set_atoms(nested));
  CHECK(r->len > nested->len);
}

TEST_CASE("computed stage sets") {
  FiniteWellOrder three = FiniteWellOrder::natural(3);
  StageSet all = tr_compute(rec("(= x x)"), three, 4);
  CHECK(all.content.size() == 12);

  // Stage 0 sees nothing below it; later stages see all of stage 0.
  StageSet alt = tr_compute(rec("(not (in (pair 0 x) X))"), three, 4);
  for (Nat x = 0; x < 4; ++x) {
    CHECK(alt.has(0, x));
    CHECK_FALSE(alt.has(1, x));
    CHECK_FALSE(alt.has(2, x));
  }

  StageSet none = tr_compute(rec("(= 0 1)"), three, 4);
  CHECK(none.content.empty());

  FiniteWellOrder cyc;
  cyc.carrier = {0, 1};
  cyc.relation = {{0, 1}, {1, 0}};
  CHECK_THROWS_AS(tr_compute(rec("(= x x)"), cyc, 2), PreconditionError);
  CHECK_THROWS_AS(tr_compute(rec("(ex y (= y (+ x 100)))"), three, 2, Caps{8}), CapExceeded);
}

TEST_CASE("recursion condition checks") {
  FiniteWellOrder three = FiniteWellOrder::natural(3);
  RecursionFormula rf = rec("(or (= x 1) (in (pair 0 (+ x 1)) X))");
  StageSet X = tr_compute(rf, three, 4);
  for (Nat l : three.carrier) CHECK(tr_check(rf, l, X).ok);

  StageSet flipped = X;
  if (flipped.has(1, 2)) flipped.content.erase({1, 2}); else flipped.content.insert({1, 2});
  TrCheck c = tr_check(rf, 2, flipped);
  CHECK_FALSE(c.ok);
  REQUIRE(c.witness.has_value());
  CHECK(*c.witness == std::make_pair(Nat(1), Nat(2)));
  CHECK(tr_check(rf, 0, flipped).ok);

  StageSet junk = stage_set_of_bits(three, 4, 0xabc);
  CHECK(tr_check_below(rf, 0, junk).ok);
}

TEST_CASE("agreement up to a stage") {
  FiniteWellOrder three = FiniteWellOrder::natural(3);
  StageSet X = stage_set_of_bits(three, 3, 0x1a5);
  CHECK(eq_upto(X, X, 2));
  StageSet Y = X;  // differs from X only at stage 1
  if (X.has(1, 0)) Y.content.erase({1, 0}); else Y.content.insert({1, 0});
  CHECK(eq_upto(X, Y, 0));
  CHECK(eq_upto(X, Y, 1));
  CHECK_FALSE(eq_upto(X, Y, 2));
  StageSet other = stage_set_of_bits(three, 4, 0);
  CHECK_THROWS_AS(eq_upto(X, other, 1), PreconditionError);
}

TEST_CASE("property: parallel and serial recursion agree and are unique") {
  for (std::uint64_t seed = 1; seed <= 60; ++seed) {
    Nat stages = 2 + seed % 3;
    RecFormulaGen gen(seed, stages);
    RecursionFormula rf = gen.make();
    FiniteWellOrder order = FiniteWellOrder::natural(stages);
    StageSet a = tr_compute(rf, order, 5);
    StageSet b = tr_compute_serial(rf, order, 5);
    CHECK(same_content(a, b));
    for (Nat l : order.carrier) CHECK(tr_check(rf, l, a).ok);
    if (a.bits() <= 12) {
      // Every other solution of the recursion condition agrees with a.
      for (std::uint64_t bits = 0; bits < (1ull << a.bits()); ++bits) {
        StageSet y = stage_set_of_bits(order, 5, bits);
        if (tr_check(rf, stages - 1, y).ok) CHECK(same_content(y, a));
      }
    }
  }
}

TEST_CASE("universal form on a 2x2 universe against direct enumeration") {
  // φ(x, X) = x = 1 ∨ ¬(⟨0,x⟩ ∈ X) over stages 0 < 1 and x < 2.
  RecursionFormula rf = rec("(or (= x 1) (not (in (pair 0 x) X)))");
  FiniteWellOrder two = FiniteWellOrder::natural(2);
  auto phi = [](Nat stage, Nat x, std::uint64_t y) {
    bool member = stage > 0 && (y >> x & 1);  // bit (0, x)
    return x == 1 || !member;
  };
  auto tr_below = [&](Nat stage, std::uint64_t y) {
    for (Nat z = 0; z < stage; ++z)
      for (Nat x = 0; x < 2; ++x)
        if (bool(y >> (2 * z + x) & 1) != phi(z, x, y)) return false;
    return true;
  };
  bool rhs[2][2];
  for (Nat z = 0; z < 2; ++z)
    for (Nat x = 0; x < 2; ++x) {
      rhs[z][x] = true;
      for (std::uint64_t y = 0; y < 16; ++y)
        if (tr_below(z, y) && !phi(z, x, y)) rhs[z][x] = false;
    }

  HatTable h = hat_table(rf, two, 2);
  REQUIRE(h.rhs.size() == 2);
  for (Nat z = 0; z < 2; ++z)
    for (Nat x = 0; x < 2; ++x) CHECK(bool(h.rhs[z][x]) == rhs[z][x]);

  StageSet computed = tr_compute(rf, two, 2);
  for (std::uint64_t y = 0; y < 16; ++y) {
    StageSet X = stage_set_of_bits(two, 2, y);
    bool direct = true;
    for (Nat z = 0; z < 2; ++z)
      for (Nat x = 0; x < 2; ++x) direct = direct && X.has(z, x) == rhs[z][x];
    CHECK(hat_tr_check(h, 1, X) == direct);
    CHECK(hat_tr_check(h, 1, X) == tr_check(rf, 1, X).ok);
    CHECK(hat_tr_check(h, 1, X) == same_content(X, computed));
  }
  CHECK_THROWS_AS(hat_table(rf, FiniteWellOrder::natural(5), 5), PreconditionError);
}

TEST_CASE("property: universal form matches the plain form exhaustively") {
  for (std::uint64_t seed = 100; seed < 112; ++seed) {
    RecFormulaGen gen(seed, 2);
    RecursionFormula rf = gen.make();
    TrAudit a = tr_exhaustive_audit(rf, FiniteWellOrder::natural(2), 5);
    CHECK(a.candidates == 1024);
    CHECK(a.uniqueness_violations == 0);
    CHECK(a.hat_violations == 0);
  }
}

TEST_CASE("finite unfoldings") {
  RecursionFormula rf = rec("(or (= x 0) (in (pair 0 x) X))");
  CHECK(formula_eq(phi_unfold(rf, 0), f_bottom()));
  CHECK(formula_eq(phi_unfold(rf, 1), F("(or (= x 0) (= 0 1))")));
}

TEST_CASE("property: unfoldings evaluate to the computed stages") {
  for (std::uint64_t seed = 1; seed <= 40; ++seed) {
    const Nat n = 3, cutoff = 8;
    RecFormulaGen gen(seed * 31, n + 1);
    RecursionFormula rf = gen.make();
    StageSet X = tr_compute(rf, FiniteWellOrder::natural(n + 1), cutoff);
    for (Nat m = 0; m <= n; ++m) {
      Formula u = phi_unfold(rf, m + 1);
      for (Nat x = 0; x < cutoff; ++x) {
        Env env;
        env.oracle = rf.oracle;
        env.bind(0, x);
        CHECK(evaluate(u, env) == tri_of(X.has(m, x)));
      }
    }
  }
}

TEST_CASE("table-based variant") {
  RecursionFormula rf = rec("(= x x)");
  FiniteWellOrder two = FiniteWellOrder::natural(2);
  const Nat cutoff = 2;
  OracleTheory T = make_oracle_theory(theory_rca0(), DecidableSet());
  StageSet truth = tr_compute(rf, two, cutoff);
  IpcConfig cfg;
  cfg.code_bound = 64;
  cfg.numcap = 4;
  for (Nat z : two.carrier)
    for (Nat x = 0; x < cutoff; ++x) {
      cfg.seeds.push_back(tr_box_formula(rf, two, z, x));
      CertPtr c = tr_box_certificate(rf, truth, z, x, T);
      Verdict v = check_certificate(*c, cnf_nat(0), tr_box_formula(rf, two, z, x), T,
                                    WellOrder(FiniteWellOrder::natural(1)), {});
      CHECK(v.accepted());
      for (const auto& f : cert_formulas(*c, cfg.numcap)) cfg.seeds.push_back(f);
    }
  CHECK(tilde_level(rf, two, 1) == 0);
  IpcTable tbl = saturate_ipc(T, FiniteWellOrder::natural(1), cfg);
  CHECK(same_content(tilde_tr_build(rf, two, cutoff, tbl), truth));

  IpcTable blank = tbl;
  for (auto& e : blank.entries) std::fill(e.begin(), e.end(), 0);
  CHECK(tilde_tr_build(rf, two, cutoff, blank).content.empty());

  IpcConfig small;
  small.code_bound = 16;
  IpcTable bare = saturate_ipc(T, FiniteWellOrder::natural(1), small);
  try {
    tilde_tr_build(rf, two, cutoff, bare);
    FAIL("expected a coverage error");
  } catch (const CoverageError& e) {
    CHECK(e.missing.size() == 4);
  }
  CHECK_THROWS_AS(tr_box_certificate(rec("(= x 0)"), tr_compute(rec("(= x 0)"), two, 2), 1, 1, T),
                  PreconditionError);
}

TEST_CASE("stage sets print and parse") {
  StageSet X = stage_set_of_bits(FiniteWellOrder::natural(3), 4, 0x9c3);
  StageSet back = parse_stage_set(print_stage_set(X));
  CHECK(same_content(X, back));
  CHECK(back.cutoff == 4);
  CHECK(back.order.carrier == X.order.carrier);
}
