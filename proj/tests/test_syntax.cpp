#include "doctest.h"
#include "omegak/certificate.hpp"
#include "omegak/errors.hpp"
#include "omegak/syntax.hpp"
#include "test_util.hpp"

using namespace omk;
using tu::F;

namespace {

// Open formulas over both sorts, including constants and unbounded quantifiers.
struct SurfaceGen {
  tu::Gen g;
  explicit SurfaceGen(std::uint64_t seed) : g(seed) {}

  Term term(int depth) {
    if (depth == 0 || g.below(3) == 0) {
      switch (g.below(4)) {
        case 0: return t_var(g.below(7));
        case 1: return t_const(g.below(3));
        default: return t_num(g.below(12));
      }
    }
    switch (g.below(6)) {
      case 0: return t_add(term(depth - 1), term(depth - 1));
      case 1: return t_mul(term(depth - 1), term(depth - 1));
      case 2: return t_exp(term(depth - 1), term(depth - 1));
      case 3: return t_pair(term(depth - 1), term(depth - 1));
      default: return t_proj(static_cast<int>(g.below(2)), term(depth - 1));
    }
  }

  SetRef set_ref() { return SetRef{g.coin(), g.below(7)}; }

  Formula formula(int depth) {
    if (depth == 0 || g.below(4) == 0) {
      switch (g.below(4)) {
        case 0: return f_eq(term(2), term(2));
        case 1: return f_lt(term(2), term(2));
        case 2: return f_in(term(2), set_ref());
        default: return f_oracle(term(2));
      }
    }
    Nat v = g.below(7);
    switch (g.below(11)) {
      case 0: return f_not(formula(depth - 1));
      case 1: return f_and(formula(depth - 1), formula(depth - 1));
      case 2: return f_or(formula(depth - 1), formula(depth - 1));
      case 3: return f_imp(formula(depth - 1), formula(depth - 1));
      case 4: return f_iff(formula(depth - 1), formula(depth - 1));
      case 5: return f_all(v, formula(depth - 1));
      case 6: return f_ex(v, formula(depth - 1));
      case 7: return f_all_set(v, formula(depth - 1));
      case 8: return f_ex_set(v, formula(depth - 1));
      case 9: {
        Term bound = term(1);
        if (term_vars(bound).count(v)) bound = t_num(3);
        return f_ball(v, bound, formula(depth - 1));
      }
      default: {
        Term bound = term(1);
        if (term_vars(bound).count(v)) bound = t_num(3);
        return f_bex(v, bound, formula(depth - 1));
      }
    }
  }
};

ParseErrorKind parse_kind(const char* src) {
  try {
    parse_formula(src);
  } catch (const ParseError& e) {
    return e.kind;
  }
  FAIL("no parse error for " << src);
  return ParseErrorKind::Lexical;
}

}  // namespace

TEST_CASE("formula grammar instance") {
  Formula f = parse_formula("(all x (-> (O x) (in x Y)))");
  CHECK(formula_eq(f, f_all(0, f_imp(f_oracle(t_var(0)), f_in_var(t_var(0), 1)))));
  CHECK(print_formula(f) == "(all x (-> (O x) (in x Y)))");
}

TEST_CASE("ordinal notation grammar") {
  CHECK(parse_cnf("(w^ (w^ 0))") == cnf_omega());
  CHECK(parse_cnf("(w^ 0)") == cnf_nat(1));
  Cnf a = parse_cnf("(+ (* (w^ 2) 3) w 1)");
  CHECK(print_cnf(a) == "(+ (* (w^ 2) 3) w 1)");
  CHECK(parse_cnf(print_cnf(cnf_omega())) == cnf_omega());
}

TEST_CASE("unbalanced input is a grammar error at end of input") {
  try {
    parse_formula("(all x");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.kind == ParseErrorKind::Grammar);
    CHECK(e.line == 1);
    CHECK(e.col >= 7);
  }
}

TEST_CASE("other parse error kinds") {
  CHECK(parse_kind("(= 0 0 0)") == ParseErrorKind::Arity);
  CHECK(parse_kind("(frob 0 0)") == ParseErrorKind::Grammar);
  CHECK(parse_kind("(= qq 0)") == ParseErrorKind::UnboundName);
  CHECK(parse_kind("(= 0 {)") == ParseErrorKind::Lexical);
  CHECK(parse_kind("(= 0 123456789012345678901234)") == ParseErrorKind::Lexical);
}

TEST_CASE("error positions count lines and columns") {
  try {
    parse_formula("(and (= 0 0)\n     (frob))");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.line == 2);
    CHECK(e.col == 7);
  }
}

TEST_CASE("printing") {
  CHECK(print_formula(f_eq(t_zero(), t_zero())) == "(= 0 0)");
  CHECK(print_term(t_num(3)) == "3");
  CHECK(term_eq(parse_term("3"), t_num(3)));
  // The successor sugar collapses to the numeral.
  CHECK(term_eq(parse_term("(+ 2 1)"), t_num(3)));

  FinitaryProof p;
  p.lines.push_back({F("(= 0 0)"), Justification{JustKind::Logical, "eq-refl"}});
  CertPtr leaf = make_fin(p);
  std::string s = print_cert(*leaf);
  CHECK(s == "(fin (line (= 0 0) (lax eq-refl)))");
  CHECK(print_cert(*parse_cert(s)) == s);
}

TEST_CASE("property: parse and print are inverse on formulas") {
  for (std::uint64_t seed = 1; seed <= 1000; ++seed) {
    SurfaceGen gen(seed);
    Formula f = gen.formula(4);
    std::string s = print_formula(f);
    Formula back = parse_formula(s);
    CHECK_MESSAGE(formula_eq(back, f), s);
    CHECK(print_formula(back) == s);
  }
}

TEST_CASE("property: sets and orders round trip") {
  tu::Gen g(7);
  for (int round = 0; round < 200; ++round) {
    std::vector<bool> prefix(g.below(5)), period(1 + g.below(4));
    for (std::size_t i = 0; i < prefix.size(); ++i) prefix[i] = g.coin();
    for (std::size_t i = 0; i < period.size(); ++i) period[i] = g.coin();
    SetDescriptor d(prefix, period);
    DecidableSet back = parse_set(print_set(DecidableSet(d)));
    REQUIRE(back.descriptor() != nullptr);
    CHECK(*back.descriptor() == d);

    FiniteWellOrder o = FiniteWellOrder::natural(1 + g.below(5));
    WellOrder wo(o);
    WellOrder wback = parse_order(print_order(wo));
    REQUIRE(wback.is_finite());
    CHECK(wback.finite()->carrier == o.carrier);
    CHECK(wback.finite()->relation == o.relation);
  }
  CHECK(parse_set("evens").contains(4));
  CHECK_FALSE(parse_set("odds").contains(4));
  CHECK(parse_set("(finite 1 5)").contains(5));
  WellOrder bare = parse_order("3");
  REQUIRE(bare.is_finite());
  CHECK(bare.finite()->relation == FiniteWellOrder::natural(3).relation);
  CHECK(parse_order("(cnf-order (* w 2))").cnf()->bound == cnf_mul_nat(cnf_omega(), 2));
}

TEST_CASE("batch lines skip comments and blanks") {
  auto lines = batch_lines("(= 0 0)\n\n; note\n  (O 1)  \n");
  REQUIRE(lines.size() == 2);
  CHECK(lines[0] == "(= 0 0)");
  CHECK(formula_eq(parse_formula(lines[1]), F("(O 1)")));
}
