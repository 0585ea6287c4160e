#include <algorithm>
#include <map>

#include "doctest.h"
#include "omegak/errors.hpp"
#include "omegak/ordinal.hpp"
#include "test_util.hpp"

using namespace omk;

namespace {

// Ordinals below ω^ω as coefficient vectors, index = exponent. Order is
// length-then-lexicographic from the top exponent once trailing zeros are cut.
using Poly = std::vector<Nat>;

Poly trim(Poly p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
  return p;
}

int poly_cmp(Poly a, Poly b) {
  a = trim(a);
  b = trim(b);
  if (a.size() != b.size()) return a.size() < b.size() ? -1 : 1;
  for (std::size_t i = a.size(); i-- > 0;)
    if (a[i] != b[i]) return a[i] < b[i] ? -1 : 1;
  return 0;
}

Poly poly_add(Poly a, Poly b) {
  a = trim(a);
  b = trim(b);
  if (b.empty()) return a;
  std::size_t d = b.size() - 1;
  Poly out(std::max(a.size(), b.size()), 0);
  for (std::size_t i = d + 1; i < a.size(); ++i) out[i] = a[i];
  out[d] = (d < a.size() ? a[d] : 0) + b[d];
  for (std::size_t i = 0; i < d; ++i) out[i] = b[i];
  return trim(out);
}

Cnf to_cnf(const Poly& p) {
  Cnf c;
  for (std::size_t i = p.size(); i-- > 0;)
    if (p[i]) c.terms.push_back(CnfTerm{cnf_nat(i), p[i]});
  return c;
}

Poly random_poly(tu::Gen& g) {
  Poly p(g.below(4));
  for (auto& c : p) c = g.below(3) == 0 ? 0 : g.below(4);
  return p;
}

}  // namespace

TEST_CASE("notation comparison") {
  CHECK(cnf_compare(cnf_omega(), cnf_nat(1)) == Cmp::Greater);
  Cnf w1 = cnf_add(cnf_omega(), cnf_nat(1));
  CHECK(cnf_compare(w1, cnf_add(cnf_omega(), cnf_nat(1))) == Cmp::Equal);
  CHECK(cnf_compare(cnf_nat(0), cnf_nat(0)) == Cmp::Equal);
  CHECK(cnf_less(omega_power(cnf_omega()), omega_power(cnf_add(cnf_omega(), cnf_nat(1)))));
}

TEST_CASE("notation arithmetic") {
  CHECK(cnf_add(cnf_nat(1), cnf_omega()) == cnf_omega());
  CHECK(nat_left_mul(2, cnf_add(cnf_omega(), cnf_nat(1))) == cnf_add(cnf_omega(), cnf_nat(2)));
  CHECK(omega_power(cnf_nat(0)) == cnf_nat(1));
  CHECK(cnf_mul_nat(cnf_omega(), 3) == to_cnf({0, 3}));
  CHECK(cnf_is_limit(cnf_omega()));
  CHECK_FALSE(cnf_is_limit(cnf_nat(4)));
  CHECK(cnf_finite_value(cnf_nat(4)) == Nat(4));
  CHECK(cnf_str(to_cnf({1, 1, 3})) == "w^2*3+w+1");
}

TEST_CASE("property: comparison and addition match the coefficient oracle") {
  tu::Gen g(11);
  for (int round = 0; round < 3000; ++round) {
    Poly a = random_poly(g), b = random_poly(g);
    Cnf ca = to_cnf(a), cb = to_cnf(b);
    REQUIRE(cnf_well_formed(ca));
    int want = poly_cmp(a, b);
    Cmp got = cnf_compare(ca, cb);
    CHECK((got == Cmp::Less) == (want < 0));
    CHECK((got == Cmp::Equal) == (want == 0));
    CHECK(cnf_add(ca, cb) == to_cnf(poly_add(a, b)));
    // Left multiplication by m ≥ 1 only scales the finite part.
    Nat m = 1 + g.below(4);
    Poly scaled = trim(a);
    if (!scaled.empty()) scaled[0] *= m;
    CHECK(nat_left_mul(m, ca) == to_cnf(scaled));
  }
}

TEST_CASE("property: codes are injective and decode back") {
  tu::Gen g(12);
  std::map<Nat, Poly> seen;
  for (int round = 0; round < 2000; ++round) {
    Poly a = trim(random_poly(g));
    Cnf c = to_cnf(a);
    Nat code = cnf_code(c);
    auto back = cnf_decode(code);
    REQUIRE(back.has_value());
    CHECK(*back == c);
    auto [it, fresh] = seen.emplace(code, a);
    if (!fresh) CHECK(it->second == a);
  }
  CHECK(cnf_decode(cnf_code(omega_power(cnf_omega()))) == omega_power(cnf_omega()));
}

TEST_CASE("finite well-order checks") {
  CHECK(check_wo(FiniteWellOrder::natural(3)).ok);

  FiniteWellOrder cyc;
  cyc.carrier = {0, 1};
  cyc.relation = {{0, 1}, {1, 0}};
  WoResult r = check_wo(cyc);
  CHECK_FALSE(r.ok);
  CHECK(r.failure == WoFailure::Cycle);
  CHECK(r.witness.size() >= 2);

  FiniteWellOrder part;
  part.carrier = {0, 1, 2};
  part.relation = {{0, 1}, {1, 2}};  // 0 < 2 missing
  r = check_wo(part);
  CHECK_FALSE(r.ok);
  CHECK((r.failure == WoFailure::Incomparable || r.failure == WoFailure::NotTransitive));

  FiniteWellOrder loose;
  loose.carrier = {0, 1, 2};
  loose.relation = {{0, 1}};
  r = check_wo(loose);
  CHECK_FALSE(r.ok);
  CHECK(r.failure == WoFailure::Incomparable);
  CHECK(r.witness.size() == 2);

  FiniteWellOrder outside;
  outside.carrier = {0};
  outside.relation = {{0, 4}};
  CHECK(check_wo(outside).failure == WoFailure::OutsideCarrier);
}

TEST_CASE("property: shuffled finite orders are well-orders and lose it when a pair is dropped") {
  tu::Gen g(13);
  for (int round = 0; round < 300; ++round) {
    Nat n = 2 + g.below(5);
    std::vector<Nat> labels;
    for (Nat i = 0; i < 3 * n && labels.size() < n; ++i)
      if (g.coin() || 3 * n - i <= n - labels.size()) labels.push_back(i);
    std::vector<Nat> chain = labels;
    std::shuffle(chain.begin(), chain.end(), g.rng);
    FiniteWellOrder o;
    o.carrier = labels;
    for (std::size_t i = 0; i < chain.size(); ++i)
      for (std::size_t j = i + 1; j < chain.size(); ++j) o.relation.insert({chain[i], chain[j]});
    REQUIRE(check_wo(o).ok);
    CHECK(o.sorted() == chain);

    FiniteWellOrder broken = o;
    auto it = broken.relation.begin();
    std::advance(it, g.below(broken.relation.size()));
    broken.relation.erase(it);
    CHECK_FALSE(check_wo(broken).ok);
  }
}

TEST_CASE("lexicographic product") {
  FiniteWellOrder two = FiniteWellOrder::natural(2);
  FiniteWellOrder one = lex_product(two, {5});
  CHECK(check_wo(one).ok);
  CHECK(one.sorted() == std::vector<Nat>{pair_code(0, 5), pair_code(1, 5)});

  FiniteWellOrder four = lex_product(two, {1, 2});
  CHECK(check_wo(four).ok);
  CHECK(four.sorted() == std::vector<Nat>{pair_code(0, 1), pair_code(0, 2), pair_code(1, 1), pair_code(1, 2)});

  CHECK_THROWS_AS(lex_product(two, {}), PreconditionError);
}

TEST_CASE("property: lexicographic product sorts by stage then value") {
  tu::Gen g(14);
  for (int round = 0; round < 100; ++round) {
    Nat n = 1 + g.below(4);
    std::vector<Nat> ys;
    for (Nat y = 0; y < 8; ++y)
      if (g.coin()) ys.push_back(y);
    if (ys.empty()) ys.push_back(g.below(8));
    // Reverse the stage order so the product is not accidentally numeric.
    FiniteWellOrder o;
    for (Nat i = 0; i < n; ++i) o.carrier.push_back(i);
    for (Nat i = 0; i < n; ++i)
      for (Nat j = 0; j < i; ++j) o.relation.insert({i, j});
    FiniteWellOrder p = lex_product(o, ys);
    REQUIRE(check_wo(p).ok);
    std::vector<Nat> want;
    for (Nat i = n; i-- > 0;)
      for (Nat y : ys) want.push_back(pair_code(i, y));
    CHECK(p.sorted() == want);
  }
}

TEST_CASE("notation orders") {
  WellOrder w2(CnfOrder{cnf_mul_nat(cnf_omega(), 2)});
  CHECK(w2.contains(cnf_add(cnf_omega(), cnf_nat(7))));
  CHECK_FALSE(w2.contains(cnf_add(cnf_mul_nat(cnf_omega(), 2), cnf_nat(1))));
  CHECK(w2.less(cnf_nat(5), cnf_omega()));
  CHECK(w2.least() == cnf_nat(0));

  WellOrder fin(FiniteWellOrder::natural(3));
  CHECK(fin.elements() == std::vector<Cnf>{cnf_nat(0), cnf_nat(1), cnf_nat(2)});
  CHECK(fin.less(cnf_nat(0), cnf_nat(2)));
  CHECK_FALSE(fin.contains(cnf_nat(3)));
}
