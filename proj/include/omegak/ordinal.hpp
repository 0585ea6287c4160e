#pragma once
// Cantor normal form notations below ε₀ and explicit finite well-orders.

#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "omegak/sets.hpp"

namespace omk {

struct CnfTerm;

// ω^e1·c1 + ω^e2·c2 + ... with e1 > e2 > ..., ci ≥ 1; empty = 0.
struct Cnf {
  std::vector<CnfTerm> terms;
  bool operator==(const Cnf& o) const;
  bool is_zero() const { return terms.empty(); }
};

struct CnfTerm {
  Cnf exponent;
  Nat coeff = 1;
};

enum class Cmp { Less, Equal, Greater };

Cnf cnf_nat(Nat n);
Cnf cnf_omega();
Cmp cnf_compare(const Cnf& a, const Cnf& b);
inline bool cnf_less(const Cnf& a, const Cnf& b) { return cnf_compare(a, b) == Cmp::Less; }
Cnf cnf_add(const Cnf& a, const Cnf& b);
// m·α (left multiplication by a natural number).
Cnf nat_left_mul(Nat m, const Cnf& a);
// α·m (right multiplication by a natural number).
Cnf cnf_mul_nat(const Cnf& a, Nat m);
Cnf omega_power(const Cnf& a);
bool cnf_is_finite(const Cnf& a);
std::optional<Nat> cnf_finite_value(const Cnf& a);
bool cnf_is_limit(const Cnf& a);
bool cnf_well_formed(const Cnf& a);  // exponents strictly descending, coefficients positive
// Injective numeric code; decode returns nullopt for codes of ill-formed term lists.
Nat cnf_code(const Cnf& a);
std::optional<Cnf> cnf_decode(Nat code);
// Human form: 0, 3, w, w^2*3+w+1, w^(w)
std::string cnf_str(const Cnf& a);

struct CnfOrdHash {
  std::size_t operator()(const Cnf& a) const;
};
struct CnfLess {
  bool operator()(const Cnf& a, const Cnf& b) const { return cnf_less(a, b); }
};

struct FiniteWellOrder {
  std::vector<Nat> carrier;                 // ascending, distinct
  std::set<std::pair<Nat, Nat>> relation;   // (a, b) means a < b
  std::optional<std::map<std::pair<Nat, Nat>, Nat>> addition;

  static FiniteWellOrder natural(Nat n);    // 0 < 1 < ... < n-1
  bool in_carrier(Nat x) const;
  bool less(Nat a, Nat b) const { return relation.count({a, b}) > 0; }
  // Carrier in increasing order; only meaningful when check_wo holds.
  std::vector<Nat> sorted() const;
};

enum class WoFailure { None, Cycle, Incomparable, NotTransitive, OutsideCarrier, BadAddition };

struct WoResult {
  bool ok = true;
  WoFailure failure = WoFailure::None;
  std::vector<Nat> witness;  // cycle, or the offending pair/triple
  std::string describe() const;
};

WoResult check_wo(const FiniteWellOrder& r);

// Λ × Y ordered by (x ≺ x') ∨ (x = x' ∧ y < y'); elements are pair codes ⟨x,y⟩.
FiniteWellOrder lex_product(const FiniteWellOrder& order, const std::vector<Nat>& ys);

// Notation order: all CNF notations ≤ bound.
struct CnfOrder {
  Cnf bound;
};

class WellOrder {
 public:
  WellOrder(FiniteWellOrder f) : rep_(std::move(f)) {}
  WellOrder(CnfOrder c) : rep_(std::move(c)) {}

  bool is_finite() const { return std::holds_alternative<FiniteWellOrder>(rep_); }
  const FiniteWellOrder* finite() const { return std::get_if<FiniteWellOrder>(&rep_); }
  const CnfOrder* cnf() const { return std::get_if<CnfOrder>(&rep_); }

  // Finite carriers are addressed through cnf_nat(label).
  bool contains(const Cnf& a) const;
  bool less(const Cnf& a, const Cnf& b) const;
  Cnf least() const;
  std::vector<Cnf> elements() const;  // finite orders only, increasing

 private:
  std::variant<FiniteWellOrder, CnfOrder> rep_;
};

}  // namespace omk
