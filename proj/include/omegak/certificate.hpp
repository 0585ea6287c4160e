#pragma once
// Nested ω-rule certificates: finitary leaves and ω-nodes whose premises are
// given by a template (one free-variable skeleton, or a finite table).

#include <map>
#include <memory>
#include <optional>
#include <string>

#include "omegak/godel.hpp"
#include "omegak/ordinal.hpp"
#include "omegak/theory.hpp"

namespace omk {

struct Certificate;
using CertPtr = std::shared_ptr<const Certificate>;

struct UniformPremise {
  Nat hole = 0;      // free variable standing for the numeral
  CertPtr skeleton;  // proves ψ[var := hole]
};

struct PremiseTemplate {
  std::optional<UniformPremise> uniform;  // alone: Uniform; with a table: the tail
  std::map<Nat, CertPtr> table;           // n ↦ certificate of ψ(n̄)

  bool tabulated() const { return !table.empty(); }
};

struct Certificate {
  enum class Kind { Fin, Omega };
  Kind kind = Kind::Fin;
  FinitaryProof proof;  // Fin

  // Omega: premises ψ(n̄) at level xi, and d ⊢ ∀var ψ → conclusion.
  Cnf xi;
  Nat var = 0;
  Formula psi;
  PremiseTemplate premises;
  FinitaryProof d;

  Formula conclusion() const;
};

CertPtr make_fin(FinitaryProof p);
CertPtr make_omega(Cnf xi, Nat var, Formula psi, PremiseTemplate premises, FinitaryProof d);
PremiseTemplate uniform_template(Nat hole, CertPtr skeleton);

struct CheckPolicy {
  enum class Mode { UniformRequired, Sampled };
  Mode mode = Mode::UniformRequired;
  Nat k = 8;
  static CheckPolicy sampled(Nat k) { return {Mode::Sampled, k}; }
};

struct Verdict {
  enum class Kind { Accepted, AcceptedAdvisory, Rejected };
  Kind kind = Kind::Accepted;
  std::string reason;
  bool accepted() const { return kind != Kind::Rejected; }
};

const char* verdict_name(Verdict::Kind k);

// Throws PreconditionError when λ is not in Λ.
Verdict check_certificate(const Certificate& c, const Cnf& level, const Formula& goal, const OracleTheory& T,
                          const WellOrder& order, const CheckPolicy& policy);

// Replace the free variable `var` by `by` in every formula. Nodes that bind
// `var` as their ω-variable keep their premise data unchanged.
CertPtr subst_cert(const CertPtr& c, Nat var, const Term& by);
CertPtr instantiate(const PremiseTemplate& t, Nat n);  // nullptr when n is not covered

Nat cert_max_var(const Certificate& c);
std::size_t cert_size(const Certificate& c);  // total proof lines

// `imp` proves conclusion(c) → φ'; the result concludes φ'.
CertPtr postcompose(const CertPtr& c, const FinitaryProof& imp);
// Certificate of conclusion(a) ∧ conclusion(b). `k` is the table size used
// when one side is tabulated.
CertPtr combine_and(const CertPtr& a, const CertPtr& b, Nat k);

// Skeleton coding (prefix token strings, as for formulas).
Code godel_encode_cert(const Certificate& c);

}  // namespace omk
