#pragma once
// Incremental construction of finitary proofs.

#include <optional>
#include <unordered_map>

#include "omegak/theory.hpp"

namespace omk {

class ProofBuilder {
 public:
  using Line = std::size_t;

  Line ax(const Formula& f);
  Line lax(const std::string& id, const Formula& f);
  Line taut(const Formula& f) { return lax("taut", f); }
  Line mp(Line antecedent, Line implication);
  Line gen(Line i, Nat var);
  Line gen2(Line i, Nat set_var);

  // Appends a proof, reusing lines already present; returns its conclusion.
  Line import(const FinitaryProof& p);

  // Derives `conclusion` from the premise lines through the tautology
  // P1 → (P2 → ... → C).
  Line by_taut(const std::vector<Line>& premises, const Formula& conclusion);

  // From ∀v A derive A[v := t].
  Line inst(Line all_line, const Term& t);
  // From A[v := t] derive ∃v A.
  Line ex_intro(Line inst_line, Nat v, const Formula& body);

  // Hypothetical reasoning: lines of the form H → X.
  Line hyp_lift(const Formula& H, Line x);                 // X ⊢ H → X
  Line hyp_gen(const Formula& H, Line hx, Nat var);        // H → A ⊢ H → ∀v A (v not free in H)
  Line hyp_gen2(const Formula& H, Line hx, Nat set_var);
  Line hyp_inst(const Formula& H, Line h_all, const Term& t);  // H → ∀vA ⊢ H → A[t]

  const Formula& formula(Line i) const { return proof_.lines.at(i).formula; }
  std::size_t size() const { return proof_.lines.size(); }
  std::optional<Line> find(const Formula& f) const;

  // The proof with `concl` as its last line.
  FinitaryProof finish(Line concl);

 private:
  Line push(const Formula& f, Justification j);
  FinitaryProof proof_;
  std::unordered_map<Formula, Line, FormulaHash, FormulaEq> index_;
};

// Closed Δ⁰₀ formulas over the oracle: proof of f when true, of ¬f when false.
// Throws PreconditionError when f is not such a formula.
ProofBuilder::Line prove_delta0(ProofBuilder& b, const OracleTheory& T, const Formula& f, bool truth);
bool delta0_truth(const OracleTheory& T, const Formula& f);

}  // namespace omk
