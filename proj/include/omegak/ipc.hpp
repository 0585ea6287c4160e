#pragma once
// Bounded least-fixpoint tables of iterated ω-rule provability over a finite
// formula universe.

#include <cstdint>
#include <string>
#include <unordered_map>
#include <vector>

#include "omegak/certificate.hpp"
#include "omegak/godel.hpp"
#include "omegak/ordinal.hpp"
#include "omegak/theory.hpp"

namespace omk {

struct IpcConfig {
  Nat code_bound = 4096;          // every formula with a smaller code is in the universe
  Nat numcap = 16;                // ω-clause instances checked below this
  std::size_t budget = 100000;    // derivations per level
  std::vector<Formula> seeds;     // added to the universe
  // Also add subformulas of seeds and numeral instances ψ(n̄), n < numcap, of
  // every ∀vψ among them.
  bool instance_closure = false;
  std::uint64_t shuffle_seed = 0;  // serial worklist order; 0 keeps the natural order
};

struct IpcTable {
  FiniteWellOrder order;
  std::vector<Nat> levels;             // carrier in increasing order
  std::vector<Formula> universe;       // sorted by code
  std::vector<Code> codes;
  std::unordered_map<Formula, std::size_t, FormulaHash, FormulaEq> index;
  std::vector<std::vector<char>> entries;  // [level position][universe position]
  std::vector<char> fin;                   // finitary closure
  bool truncated = false;
  std::size_t derivations = 0;

  std::size_t level_pos(Nat level) const;  // throws PreconditionError
  bool in_universe(const Formula& f) const { return index.count(f) > 0; }
  bool contains(Nat level, const Formula& f) const;
  std::size_t count(Nat level) const;
};

// OpenMP kernel: closure in synchronous rounds.
IpcTable saturate_ipc(const OracleTheory& T, const FiniteWellOrder& order, const IpcConfig& cfg);
// Serial worklist reference, processing in the order fixed by cfg.shuffle_seed.
IpcTable saturate_ipc_serial(const OracleTheory& T, const FiniteWellOrder& order, const IpcConfig& cfg);

bool consistency_query(const IpcTable& t, Nat level);
bool same_entries(const IpcTable& a, const IpcTable& b);
// Sorted (level, code, formula) lines.
std::string dump_table(const IpcTable& t);

// Every formula a certificate mentions, with premise instances n < numcap.
std::vector<Formula> cert_formulas(const Certificate& c, Nat numcap);

}  // namespace omk
