#pragma once
// Canonical S-expression surface syntax for kernel objects.

#include <string>
#include <string_view>
#include <vector>

#include "omegak/certificate.hpp"
#include "omegak/formula.hpp"
#include "omegak/ordinal.hpp"
#include "omegak/sets.hpp"
#include "omegak/sexpr.hpp"
#include "omegak/theory.hpp"

namespace omk {

std::string print_term(const Term& t);
std::string print_formula(const Formula& f);
std::string print_cnf(const Cnf& a);
std::string print_order(const WellOrder& o);
std::string print_set(const DecidableSet& s);
std::string print_proof(const FinitaryProof& p);
std::string print_cert(const Certificate& c);

Term parse_term(std::string_view src);
Formula parse_formula(std::string_view src);
Cnf parse_cnf(std::string_view src);
WellOrder parse_order(std::string_view src);
DecidableSet parse_set(std::string_view src);
FinitaryProof parse_proof(std::string_view src);
CertPtr parse_cert(std::string_view src);

// The same, from an already-read expression.
Term term_of(const SExpr& e);
Formula formula_of(const SExpr& e);
Cnf cnf_of(const SExpr& e);
WellOrder order_of(const SExpr& e);
DecidableSet set_of(const SExpr& e);
SetDescriptor descriptor_of(const SExpr& e);
FinitaryProof proof_of(const SExpr& e);
CertPtr cert_of(const SExpr& e);
Nat nat_of(const SExpr& e);

std::string print_descriptor(const SetDescriptor& d);

// Batch format: one object per non-blank line; lines starting with ';' are skipped.
std::vector<std::string> batch_lines(std::string_view text);

}  // namespace omk
