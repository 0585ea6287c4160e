#pragma once
// Capped evaluation in the standard model.

#include <optional>
#include <vector>

#include "omegak/formula.hpp"
#include "omegak/sets.hpp"

namespace omk {

enum class Tri : std::uint8_t { False, True, Unknown };

inline Tri tri_of(bool b) { return b ? Tri::True : Tri::False; }
inline Tri tri_not(Tri t) { return t == Tri::Unknown ? t : (t == Tri::True ? Tri::False : Tri::True); }
Tri tri_and(Tri a, Tri b);
Tri tri_or(Tri a, Tri b);
const char* tri_name(Tri t);

struct Caps {
  Nat quant = 64;             // unbounded quantifiers look at values below this
  Nat bound_limit = 1 << 20;  // bounded quantifiers above this give Unknown
  // Read unbounded quantifiers as bounded by `quant` (∃ false / ∀ true when
  // nothing below the cap decides). Used only where a caller needs the
  // truncated reading explicitly.
  bool truncate = false;
};

struct Env {
  std::vector<std::optional<Nat>> vars;
  std::vector<std::optional<DecidableSet>> sets;
  std::optional<DecidableSet> oracle;
  std::vector<DecidableSet> consts;  // C_n; c_n is always n
  // Range of second-order quantifiers; none means they are rejected.
  const std::vector<DecidableSet>* family = nullptr;

  Env& bind(Nat var, Nat value);
  Env& bind_set(Nat var, DecidableSet s);
  std::optional<Nat> lookup(Nat var) const {
    return var < vars.size() ? vars[var] : std::nullopt;
  }
};

// Checked 64-bit arithmetic; values past 2^64 raise MagnitudeError.
Nat eval_term(const Term& t, const Env& env);

Tri evaluate(const Formula& f, const Env& env, const Caps& caps = {});

}  // namespace omk
