#pragma once
// Certificate synthesis: completeness for true arithmetic sentences,
// Σ¹₁ completeness with a supplied witness, and transfinite induction.

#include <optional>

#include "omegak/certificate.hpp"
#include "omegak/eval.hpp"

namespace omk {

struct SynthOptions {
  Caps caps{64, 1 << 20, true};  // caps.quant bounds witness searches
  Nat table = 8;                 // rows of tabulated ω-premises; ∀ is read on these
};

// Level of the ω-nodes needed for a Σ⁰ₛ formula: ⌈(s-1)/2⌉, 0 for Δ⁰₀.
Nat completeness_level(const Formula& f);

// Certificate for a sentence whose truth the search can witness. The
// result checks at level m whenever f ∈ Σ⁰_{2m+1}. Throws PreconditionError
// when truth cannot be witnessed, ClassError when f is above Σ⁰_{2m+1},
// UnsupportedError for second-order sentences.
CertPtr completeness_certificate(const Formula& f, const OracleTheory& T, Nat m, const SynthOptions& opt = {});

struct Sigma11Result {
  DecidableSet oracle;    // tuple family: part 0 the old oracle, part 1 the witness
  Formula conclusion;     // ∃Y φ₀ with the oracle read through ⟨0,·⟩
  CertPtr cert;           // checks at level ω over the extended oracle
};

// `f` is ∃Y φ₀ with φ₀ arithmetic. Needs a theory with comprehension.
Sigma11Result sigma11_completeness_certificate(const Formula& f, const TheorySpec& base, const SetDescriptor& oracle,
                                               const std::optional<SetDescriptor>& witness,
                                               const SynthOptions& opt = {});
// 𝔒(t) ↦ 𝔒(⟨0,t⟩) and, when set_var is given, t∈Y ↦ 𝔒(⟨1,t⟩).
Formula tuple_rewrite(const Formula& f, std::optional<Nat> set_var);

// Certificate at level λ of TI up to ω·λ for payload(var). Needs a notation
// order, a finite λ, and a theory with order facts.
CertPtr ti_certificate(const WellOrder& order, const Cnf& lambda, const Formula& payload, Nat var,
                       const OracleTheory& T, const SynthOptions& opt = {});

}  // namespace omk
