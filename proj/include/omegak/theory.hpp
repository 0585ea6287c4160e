#pragma once
// Theories, oracle theories, and the finitary Hilbert-style proof checker.

#include <optional>
#include <string>
#include <vector>

#include "omegak/formula.hpp"
#include "omegak/ordinal.hpp"
#include "omegak/sets.hpp"

namespace omk {

enum class JustKind { Axiom, Logical, MP, Gen, Gen2 };

struct Justification {
  JustKind kind = JustKind::Axiom;
  std::string id;          // logical axiom id
  std::size_t i = 0, j = 0;  // MP: i = antecedent line, j = implication line; Gen: i
  Nat var = 0;             // Gen/Gen2 variable
};

struct ProofLine {
  Formula formula;
  Justification just;
};

struct FinitaryProof {
  std::vector<ProofLine> lines;
  Formula conclusion() const { return lines.empty() ? nullptr : lines.back().formula; }
};

enum class CAKind { None, Delta00, Delta01, PiOmega };
enum class IndKind { None, SetInd, ISigma01 };

struct TheorySpec {
  std::string name;
  std::vector<Formula> base_axioms;  // closed
  CAKind ca = CAKind::None;
  IndKind ind = IndKind::None;
  // Whether the decidable quantifier-free order facts are available.
  bool order_facts() const { return ind != IndKind::None; }
};

TheorySpec theory_q();
TheorySpec theory_eca0();
TheorySpec theory_rca0star();
TheorySpec theory_rca0();
TheorySpec theory_aca0();
std::optional<TheorySpec> theory_by_name(const std::string& name);
// Ordered weakest to strongest.
std::vector<std::string> theory_names();

// The named base axioms (closed).
Formula q_axiom(int k);    // 1..8
Formula exp_axiom(int k);  // 1..2
Formula pair_axiom(int k); // 1..3
Formula set_induction_axiom();
Formula set_existence_axiom();

// A Σ⁰₁ payload accepted for Δ⁰₁ comprehension because `proof` derives
// ∀var(sigma ↔ pi) with pi ∈ Π⁰₁.
struct Delta01Pair {
  Formula sigma, pi;
  Nat var = 0;
  FinitaryProof proof;
};

struct OracleTheory {
  TheorySpec base;
  DecidableSet oracle;
  std::vector<Formula> extra_axioms;  // used for deliberately broken tables
  std::vector<Delta01Pair> delta01;
};

OracleTheory make_oracle_theory(TheorySpec base, DecidableSet oracle);

struct CheckResult {
  bool ok = true;
  std::size_t line = 0;
  std::string message;
  static CheckResult fail(std::size_t line, std::string msg) { return {false, line, std::move(msg)}; }
};

bool is_axiom(const OracleTheory& T, const Formula& f);
// Why f is an axiom ("base", "oracle+", "oracle-", "set-existence", "ca", "ind"), or empty.
std::string axiom_clause(const OracleTheory& T, const Formula& f);

// Logical axiom schemas. Returns an empty string when f is an instance.
std::string check_logical_axiom(const std::string& id, const Formula& f, const OracleTheory& T);
const std::vector<std::string>& logical_axiom_ids();
// First id that accepts f, or empty.
std::string find_logical_axiom(const Formula& f, const OracleTheory& T);

CheckResult check_proof(const OracleTheory& T, const FinitaryProof& p, const Formula& goal);
CheckResult check_proof_lines(const OracleTheory& T, const FinitaryProof& p);

// Validates the proof and registers the pair. Throws SchemaError on failure.
void register_delta01(OracleTheory& T, Delta01Pair pair);

enum class SchemaKind { CA, Ind, TI };

// CA: ∃X∀v(v∈X ↔ payload); Ind: (φ(0) ∧ ∀v(φ(v)→φ(v+1))) → ∀v φ(v);
// TI: transfinite induction for payload(v) along the notation order coded by
// pairs, up to `top` (requires a notation order below ω²).
Formula schema_instance(const TheorySpec& T, SchemaKind kind, const Formula& payload, Nat var,
                        const std::optional<Cnf>& top = std::nullopt);

// Tautology check by signed tableau, closing on complementary occurrences of
// any subformula. `step_limit` bounds the work.
bool is_tautology(const Formula& f, std::size_t step_limit = 200000);

// Pair-code ordering used for notations below ω²: a ≺ b.
Formula pair_order_lt(const Term& a, const Term& b);
Formula pair_order_le(const Term& a, const Term& b);  // ¬(b ≺ a)
// Numeral code of the notation ω·ν + k.
Nat notation_code(const Cnf& a);

}  // namespace omk
