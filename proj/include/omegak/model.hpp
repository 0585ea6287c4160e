#pragma once
// Coded ω-models given by finitely many listed sets, three-valued
// satisfaction, satisfaction tables and their audits, and a bounded
// jump-model builder.

#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "omegak/certificate.hpp"
#include "omegak/eval.hpp"
#include "omegak/ipc.hpp"

namespace omk {

// M_n = sets[n]; 𝔒 reads M₀. Second-order quantifiers range over the list.
struct CodedOmegaModel {
  std::vector<SetDescriptor> sets;

  explicit CodedOmegaModel(std::vector<SetDescriptor> s);
  const SetDescriptor& oracle() const { return sets.front(); }
  Env env() const;

 private:
  std::vector<DecidableSet> family_;
};

// Value of a closed term (c_n is n). Throws PreconditionError on open terms.
Nat model_val(const Term& t);

// Throws PreconditionError when σ has free variables of either sort.
Tri satisfies(const CodedOmegaModel& M, const Formula& sigma, const Caps& caps = {});

// Three-valued truth for a subformula-closed set of sentences. Quantified
// entries are closed over the instances c_n for n below `instances` and over
// C_i for every listed set.
struct SatTable {
  std::vector<Formula> scope;
  std::vector<Tri> values;
  Nat instances = 8;
  std::unordered_map<Formula, std::size_t, FormulaHash, FormulaEq> index;

  void add(const Formula& f, Tri v);
  std::optional<Tri> lookup(const Formula& f) const;
};

// Immediate parts of a sentence as read by the truth clauses.
std::vector<Formula> sat_children(const Formula& f, std::size_t listed, Nat instances, const Caps& caps);

// Closes `roots` under sat_children and fills values by `satisfies`.
SatTable sat_table(const CodedOmegaModel& M, const std::vector<Formula>& roots, const Caps& caps = {},
                   Nat instances = 8);

struct SatCheck {
  bool ok = true;
  std::optional<Formula> violated;  // first offending entry
  std::string clause;
  std::size_t unknown = 0;          // entries skipped as indeterminate
};

// Every truth clause on determinate entries. Throws PreconditionError when
// the scope is not closed under sat_children.
SatCheck check_sat_definition(const CodedOmegaModel& M, const SatTable& tbl, const Caps& caps = {});

struct SoundnessReport {
  std::size_t entries = 0;
  std::size_t unknown = 0;
  std::vector<std::pair<Nat, Formula>> violations;  // (level, formula) judged false
  bool ok() const { return violations.empty(); }
};

// Every table entry (universally closed) must not be false in M. Throws
// PreconditionError when M₀ differs from the table's oracle.
SoundnessReport soundness_audit(const CodedOmegaModel& M, const IpcTable& tbl, const OracleTheory& T,
                                const Caps& caps = {});
// The conclusion of an accepted certificate must not be false in M.
SoundnessReport soundness_audit(const CodedOmegaModel& M, const Certificate& c, const Formula& goal,
                                const Cnf& level, const WellOrder& order, const OracleTheory& T,
                                const CheckPolicy& policy = {}, const Caps& caps = {});

// ∀ over free number variables, then ∀ over free set variables.
Formula universal_closure(const Formula& f);

// Replace the free number variable `var` by c_n, or set variable by C_i.
Formula bind_const(const Formula& f, Nat var, Nat n);
Formula bind_set_const(const Formula& f, Nat set_var, Nat i);

struct InductionCheck {
  bool premises = false;  // base and step judged true
  bool ok = true;         // when premises hold: every instance below the cutoff true
  std::optional<Nat> failure;
};
// φ(u, Y) with Y read as C_b.
InductionCheck set_induction_check(const CodedOmegaModel& M, const Formula& phi, Nat var, Nat set_var, Nat b,
                                   Nat cutoff, const Caps& caps = {});

// M₀ = X; M_{i+1} is defs[i](x) over M₀..M_i (as C_0..C_i and 𝔒), listed as a
// finite prefix of length `cutoff`. An approximation, not a minimal model.
// Throws CapExceeded on an indeterminate value, PreconditionError when a
// definition reads an unlisted set or has other free variables.
CodedOmegaModel bounded_jump_model(const SetDescriptor& X, Nat cutoff, const std::vector<Formula>& defs,
                                   Nat var = 0, const Caps& caps = {});

// (model <descriptor> ...)
std::string print_model(const CodedOmegaModel& M);
CodedOmegaModel parse_model(std::string_view src);

}  // namespace omk
