#pragma once
// Length-lexicographic (bijective base-38) coding of prefix token strings.
// A strict substring is a shorter string, hence has a smaller code.

#include <boost/multiprecision/cpp_int.hpp>
#include <string>
#include <vector>

#include "omegak/formula.hpp"

namespace omk {

using Code = boost::multiprecision::cpp_int;

enum class Tok : std::uint8_t {
  Eq, Lt, Oracle, In, Not, And, Or, Imp, Iff, All, Ex, BAll, BEx,
  Zero, One, Var, Tick, SetVar, Add, Mul, Exp, Pair, P0, P1, Const, SetConst,
  // certificate skeleton tokens
  Fin, Omega, Line, Ax, Lax, Mp, Gen, Uniform, Tab, Tail, End, Hash,
  Count_
};

constexpr unsigned kAlphabet = static_cast<unsigned>(Tok::Count_);  // 38

const char* tok_text(Tok t);

void tokens_of(const Term& t, std::vector<Tok>& out);
void tokens_of(const Formula& f, std::vector<Tok>& out);
// k ticks after a head token
void push_ticks(std::vector<Tok>& out, Nat k);

Code code_of_tokens(const std::vector<Tok>& toks);
std::vector<Tok> tokens_of_code(const Code& c);

Code godel_encode(const Formula& f);
Code godel_encode(const Term& t);
// Throw DecodeError when the code is 0 or the token string is not a
// well-formed formula/term.
Formula godel_decode_formula(const Code& c);
Term godel_decode_term(const Code& c);
// Non-throwing variant used when sweeping code ranges.
Formula try_decode_formula(const Code& c);

std::string code_str(const Code& c);

}  // namespace omk
