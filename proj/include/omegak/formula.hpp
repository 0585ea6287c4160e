#pragma once
// Two-sorted terms and formulas with an oracle atom. Nodes are immutable and
// hash-consed only by value (structural hash + equality), never by identity.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "omegak/sets.hpp"

namespace omk {

struct TermNode;
struct FormulaNode;
using Term = std::shared_ptr<const TermNode>;
using Formula = std::shared_ptr<const FormulaNode>;

enum class TermKind : std::uint8_t { Zero, One, Var, Add, Mul, Exp, Pair, Proj0, Proj1, Numeral, Const };

struct TermNode {
  TermKind kind;
  Nat value = 0;  // variable index, numeral value, or constant index
  Term a, b;
  std::size_t hash = 0;
  std::size_t len = 0;  // length of the prefix serialization
  bool closed = true;
};

Term t_zero();
Term t_one();
Term t_var(Nat index);
Term t_add(Term a, Term b);  // canonicalizes numeral + 1 into the next numeral
Term t_mul(Term a, Term b);
Term t_exp(Term a, Term b);
Term t_pair(Term a, Term b);
Term t_proj(int side, Term t);
Term t_num(Nat n);
Term t_const(Nat n);

bool is_numeral(const Term& t);            // 0, 1 or a Numeral node
std::optional<Nat> numeral_value(const Term& t);

bool term_eq(const Term& a, const Term& b);

// Set references inside membership atoms: a set variable or a model constant C_n.
struct SetRef {
  bool is_const = false;
  Nat index = 0;
  bool operator==(const SetRef& o) const { return is_const == o.is_const && index == o.index; }
  bool operator<(const SetRef& o) const {
    return is_const != o.is_const ? is_const < o.is_const : index < o.index;
  }
};

enum class FormulaKind : std::uint8_t { Eq, Lt, In, Oracle, Not, And, Or, Imp, Iff, All, Ex, BAll, BEx };

struct FormulaNode {
  FormulaKind kind;
  Term t, s;            // atom arguments; for BAll/BEx `t` is the bound
  SetRef set;           // In
  Formula a, b;         // subformulas (a = body for quantifiers)
  bool second_order = false;  // All/Ex over a set variable
  Nat var = 0;          // bound variable index for quantifiers
  std::size_t hash = 0;
  std::size_t len = 0;
  // classification cache
  int sig0 = 0, pi0 = 0;   // arithmetic hierarchy levels (syntactic closure rules)
  int sig1 = 0, pi1 = 0;   // analytic levels
  bool has_oracle = false;
  bool has_unbounded = false;
  bool has_so_quant = false;
  bool has_set_atom = false;
  bool has_const = false;  // c_n or C_n present
};

Formula f_eq(Term a, Term b);
Formula f_lt(Term a, Term b);
Formula f_in(Term t, SetRef s);
Formula f_in_var(Term t, Nat set_var);
Formula f_oracle(Term t);
Formula f_not(Formula a);
Formula f_and(Formula a, Formula b);
Formula f_or(Formula a, Formula b);
Formula f_imp(Formula a, Formula b);
Formula f_iff(Formula a, Formula b);
Formula f_all(Nat var, Formula body);
Formula f_ex(Nat var, Formula body);
Formula f_all_set(Nat set_var, Formula body);
Formula f_ex_set(Nat set_var, Formula body);
Formula f_ball(Nat var, Term bound, Formula body);
Formula f_bex(Nat var, Term bound, Formula body);
Formula f_bottom();  // 0 = 1
Formula f_top();     // 0 = 0
Formula f_and_all(const std::vector<Formula>& parts);  // right-nested, empty -> top
Formula f_or_all(const std::vector<Formula>& parts);   // right-nested, empty -> bottom

bool formula_eq(const Formula& a, const Formula& b);

bool is_atomic(const Formula& f);
bool is_boolean(const Formula& f);  // Not/And/Or/Imp/Iff
bool is_quantifier(const Formula& f);

struct FormulaHash {
  std::size_t operator()(const Formula& f) const { return f->hash; }
};
struct FormulaEq {
  bool operator()(const Formula& a, const Formula& b) const { return formula_eq(a, b); }
};
struct TermHash {
  std::size_t operator()(const Term& t) const { return t->hash; }
};
struct TermEq {
  bool operator()(const Term& a, const Term& b) const { return term_eq(a, b); }
};

// Variables
std::set<Nat> term_vars(const Term& t);
std::set<Nat> free_vars(const Formula& f);
std::set<Nat> free_set_vars(const Formula& f);
bool occurs_free(const Formula& f, Nat var);
bool set_occurs_free(const Formula& f, Nat set_var);
Nat max_var_index(const Formula& f);      // over free and bound first-order variables, 0 if none
Nat max_set_var_index(const Formula& f);
bool is_sentence(const Formula& f);        // no free variables of either sort

// Substitution. Both throw PreconditionError on capture.
Term subst_term(const Term& t, Nat var, const Term& by);
Formula subst(const Formula& f, Nat var, const Term& by);
Formula substitute_numeral(const Formula& f, Nat var, Nat n);
Formula subst_set(const Formula& f, Nat set_var, SetRef by);
// Replace every atom t∈S by body[v := t].
Formula subst_set_atoms(const Formula& f, SetRef target, Nat v, const Formula& body);
// Replace every atom 𝔒(t) by body[v := t].
Formula subst_oracle_atoms(const Formula& f, Nat v, const Formula& body);

// Names
std::string var_name(Nat index);
std::string set_var_name(Nat index);
std::optional<Nat> parse_var_name(const std::string& s);
std::optional<Nat> parse_set_var_name(const std::string& s);

// Classification
enum class ClassKind { Delta00, Sigma0, Pi0, PiOmega, Sigma1, Pi1 };

struct FormulaClass {
  ClassKind kind = ClassKind::Delta00;
  int n = 0;
  bool oracle_extended = false;
  std::vector<Nat> set_params;  // free set variables, ascending
  int sigma = 0, pi = 0;        // both arithmetic levels (when arithmetic)
  std::string str() const;
};

FormulaClass classify(const Formula& f);
bool is_arithmetic(const Formula& f);
bool is_delta00(const Formula& f);  // ignores the oracle flag
// Membership of f in the class `target`; throws ClassError when 𝔒 occurs and
// the target class is 𝔒-free.
bool belongs_to(const Formula& f, const FormulaClass& target);
FormulaClass make_class(ClassKind k, int n, bool oracle = false);

Formula nnf_atoms(const Formula& f);

}  // namespace omk
