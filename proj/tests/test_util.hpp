#pragma once
// Small helpers shared by the unit tests.

#include <random>

#include "omegak/formula.hpp"
#include "omegak/syntax.hpp"

namespace tu {

inline omk::Formula F(const char* s) { return omk::parse_formula(s); }

// Deterministic generator for property tests; each test seeds its own.
struct Gen {
  std::mt19937_64 rng;
  explicit Gen(std::uint64_t seed) : rng(seed) {}
  std::uint64_t below(std::uint64_t n) { return std::uniform_int_distribution<std::uint64_t>(0, n - 1)(rng); }
  bool coin() { return below(2) == 1; }
};

}  // namespace tu
