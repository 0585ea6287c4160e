#pragma once
// Seeded generators for formulas, orders, sets, recursion formulas and
// models, plus the fixed sentence list used by the completeness loop.

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "omegak/model.hpp"
#include "omegak/tr.hpp"

namespace omk {

using Rng = std::mt19937_64;

constexpr std::uint64_t kDefaultSeed = 20240611;
// OMEGAK_SEED when set and numeric, else kDefaultSeed.
std::uint64_t corpus_seed();

struct GenOptions {
  Nat free_vars = 0;    // x0..x_{k-1} may occur free
  Nat free_sets = 0;    // X0.. may occur free
  Nat listed = 0;       // constants c_n and C_i with i < listed may occur
  Nat max_num = 5;
  bool oracle = true;
  bool unbounded = true;
  bool second_order = true;
  bool exp = false;
  bool set_atoms = true;
};

class FormulaGen {
 public:
  FormulaGen(Rng& rng, GenOptions opt);
  Term term(int depth);
  Formula formula(int depth);

 private:
  Nat pick(Nat n) { return std::uniform_int_distribution<Nat>(0, n - 1)(rng_); }
  Formula atom();
  Rng& rng_;
  GenOptions opt_;
  std::vector<Nat> scope_, set_scope_;
  Nat next_var_, next_set_;
};

// Mixed corpus for coding and round-trip checks: open and closed, both sorts.
std::vector<Formula> formula_corpus(std::uint64_t seed, std::size_t count, int depth = 4);

SetDescriptor random_descriptor(Rng& rng, Nat max_prefix = 5, Nat max_period = 4);
// n stages with shuffled labels drawn below 3n.
FiniteWellOrder random_order(Rng& rng, Nat n);

struct CompletenessCase {
  Formula sentence;
  SetDescriptor oracle;
  std::string oracle_name;
};
// Sentences of degree at most Σ⁰₃, each true for its oracle.
std::vector<CompletenessCase> completeness_corpus();

// Recursion formulas in x (var 0) and X (set var 0). `downward` keeps every
// X-query at a second component ≤ x; `unbounded` allows X-free unbounded
// quantifiers; `max_degree` bounds the Π⁰ degree.
RecursionFormula random_recursion_formula(Rng& rng, Nat stages, bool downward, bool unbounded, int max_degree = 0);

// Up to 4 listed sets; M₀ cycles through {2}, ∅, evens and random sets.
std::vector<CodedOmegaModel> model_corpus(std::uint64_t seed, std::size_t count);

}  // namespace omk
