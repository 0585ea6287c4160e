#pragma once
// Transfinite recursion along finite well-orders: stage sets, the recursion
// condition and its restricted forms, the ∀Y and table-based variants, and
// finite unfoldings.

#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "omegak/certificate.hpp"
#include "omegak/eval.hpp"
#include "omegak/ipc.hpp"
#include "omegak/ordinal.hpp"

namespace omk {

struct RecursionFormula {
  Formula phi;
  Nat x = 0;        // number variable
  Nat set_var = 0;  // recursion variable
  std::optional<DecidableSet> oracle;
  std::vector<std::pair<Nat, DecidableSet>> set_params;

  // Π⁰ degree after pushing negations to atoms.
  int degree() const;
};

struct StageSet {
  FiniteWellOrder order;
  Nat cutoff = 0;
  std::set<std::pair<Nat, Nat>> content;  // (stage, x)

  bool has(Nat stage, Nat x) const { return content.count({stage, x}) > 0; }
  // Membership of a pair code in the set read below `stage` (or everywhere).
  bool member_below(Nat code, std::optional<Nat> stage) const;
  std::size_t bits() const { return order.carrier.size() * cutoff; }
};

bool same_content(const StageSet& a, const StageSet& b);

// (t)₀ <_Λ s as a Δ⁰₀ formula: a disjunction over the order relation, or
// over the stages below s when s is a numeral.
Formula order_lt_formula(const FiniteWellOrder& order, const Term& a, const Term& s);
// Every atom t∈X becomes (t)₀ <_Λ s ∧ t∈X.
Formula relativize(const Formula& f, Nat set_var, const FiniteWellOrder& order, const Term& s);

// φ(x̄, X_{<ξ}) evaluated over the content of X.
Tri stage_value(const RecursionFormula& rf, const StageSet& X, Nat stage, Nat x, const Caps& caps);

// Throws PreconditionError when Λ is not a well-order, CapExceeded naming
// the first indeterminate (ξ, x).
StageSet tr_compute(const RecursionFormula& rf, const FiniteWellOrder& order, Nat cutoff, const Caps& caps = {});
StageSet tr_compute_serial(const RecursionFormula& rf, const FiniteWellOrder& order, Nat cutoff,
                           const Caps& caps = {});

struct TrCheck {
  bool ok = true;
  std::optional<std::pair<Nat, Nat>> witness;  // first failing (stage, x)
};

// ∀ξ ≤_Λ λ ∀x<N (x ∈ X_ξ ↔ φ(x, X_{<ξ})); the _below form uses ξ <_Λ λ.
TrCheck tr_check(const RecursionFormula& rf, Nat lambda, const StageSet& X, const Caps& caps = {});
TrCheck tr_check_below(const RecursionFormula& rf, Nat lambda, const StageSet& X, const Caps& caps = {});
// Agreement on stages ζ <_Λ ξ. Throws PreconditionError on mismatched cutoffs.
bool eq_upto(const StageSet& X, const StageSet& Y, Nat xi);

// The right-hand side of the ∀Y form for every (stage, x), computed by
// enumerating all stage sets on the bounded universe.
struct HatTable {
  FiniteWellOrder order;
  Nat cutoff = 0;
  std::vector<std::vector<char>> rhs;  // [stage position][x]
  // Per candidate Y (bit pattern): how many leading stages satisfy the
  // recursion condition.
  std::vector<std::uint8_t> prefix;
};

constexpr std::size_t kHatBits = 16;

// Throws PreconditionError (with the size) when the universe exceeds `limit` bits.
HatTable hat_table(const RecursionFormula& rf, const FiniteWellOrder& order, Nat cutoff, const Caps& caps = {},
                   std::size_t limit = kHatBits);
bool hat_tr_check(const HatTable& h, Nat lambda, const StageSet& X);
bool hat_tr_check(const RecursionFormula& rf, Nat lambda, const StageSet& X, const Caps& caps = {},
                  std::size_t limit = kHatBits);

// Stage set for a bit pattern over (stage position, x) in row-major order.
StageSet stage_set_of_bits(const FiniteWellOrder& order, Nat cutoff, std::uint64_t bits);

struct TrAudit {
  std::size_t candidates = 0;
  std::size_t uniqueness_violations = 0;
  std::size_t hat_violations = 0;
};
// Exhaustive check of uniqueness and of the ∀Y form against the plain one.
TrAudit tr_exhaustive_audit(const RecursionFormula& rf, const FiniteWellOrder& order, Nat cutoff,
                            const Caps& caps = {});

// φ⁽ⁿ⁾(x): ⊥ for n = 0; otherwise φ with each t∈X replaced by
// ⋁_{j<n-1} ((t)₀ = j̄ ∧ φ⁽ʲ⁺¹⁾((t)₁)), stages being 0 < 1 < ... .
Formula phi_unfold(const RecursionFormula& rf, Nat n);

// ∀X(TR_{<λ}(φ,X) → φ(x̄, X_{<λ})), the formula boxed by the table variant.
Formula tr_box_formula(const RecursionFormula& rf, const FiniteWellOrder& order, Nat lambda, Nat x);
// Certificate of the box formula for a pair in the computed set, for φ
// without unbounded quantifiers. Throws PreconditionError when the pair is
// absent, UnsupportedError above Δ⁰₀.
CertPtr tr_box_certificate(const RecursionFormula& rf, const StageSet& computed, Nat lambda, Nat x,
                           const OracleTheory& T);

// Level of the box for stage λ: m·rank(λ) (m the degree), a label of the table order.
Nat tilde_level(const RecursionFormula& rf, const FiniteWellOrder& order, Nat lambda);
// Pairs whose box formula sits in the table at the box level. Throws
// CoverageError listing codes of box formulas outside the universe.
StageSet tilde_tr_build(const RecursionFormula& rf, const FiniteWellOrder& order, Nat cutoff, const IpcTable& tbl);

std::string print_stage_set(const StageSet& s);
StageSet parse_stage_set(std::string_view src);

}  // namespace omk
