#include <algorithm>

#include "omegak/errors.hpp"
#include "omegak/formula.hpp"

namespace omk {

std::string FormulaClass::str() const {
  std::string s;
  switch (kind) {
    case ClassKind::Delta00: s = "Delta0_0"; break;
    case ClassKind::Sigma0: s = "Sigma0_" + std::to_string(n); break;
    case ClassKind::Pi0: s = "Pi0_" + std::to_string(n); break;
    case ClassKind::PiOmega: s = "Pi0_omega"; break;
    case ClassKind::Sigma1: s = "Sigma1_" + std::to_string(n); break;
    case ClassKind::Pi1: s = "Pi1_" + std::to_string(n); break;
  }
  if (oracle_extended) s += "(O)";
  if (!set_params.empty()) {
    s += "[";
    for (std::size_t i = 0; i < set_params.size(); ++i) {
      if (i) s += ",";
      s += set_var_name(set_params[i]);
    }
    s += "]";
  }
  return s;
}

FormulaClass make_class(ClassKind k, int n, bool oracle) {
  FormulaClass c;
  c.kind = k;
  c.n = n;
  c.oracle_extended = oracle;
  return c;
}

bool is_arithmetic(const Formula& f) { return !f->has_so_quant; }
bool is_delta00(const Formula& f) { return !f->has_so_quant && !f->has_unbounded; }

FormulaClass classify(const Formula& f) {
  FormulaClass c;
  c.oracle_extended = f->has_oracle;
  auto sv = free_set_vars(f);
  c.set_params.assign(sv.begin(), sv.end());
  if (f->has_so_quant) {
    if (f->sig1 <= f->pi1) {
      c.kind = ClassKind::Sigma1;
      c.n = f->sig1;
    } else {
      c.kind = ClassKind::Pi1;
      c.n = f->pi1;
    }
    return c;
  }
  c.sigma = f->sig0;
  c.pi = f->pi0;
  if (f->sig0 == 0 && f->pi0 == 0) {
    c.kind = ClassKind::Delta00;
  } else if (f->sig0 <= f->pi0) {
    c.kind = ClassKind::Sigma0;
    c.n = f->sig0;
  } else {
    c.kind = ClassKind::Pi0;
    c.n = f->pi0;
  }
  return c;
}

bool belongs_to(const Formula& f, const FormulaClass& target) {
  if (f->has_oracle && !target.oracle_extended)
    throw ClassError("oracle atom in a formula classified against an oracle-free class");
  const bool arith = is_arithmetic(f);
  switch (target.kind) {
    case ClassKind::Delta00: return is_delta00(f);
    case ClassKind::Sigma0: return arith && f->sig0 <= target.n;
    case ClassKind::Pi0: return arith && f->pi0 <= target.n;
    case ClassKind::PiOmega: return arith;
    case ClassKind::Sigma1: return arith || f->sig1 <= target.n;
    case ClassKind::Pi1: return arith || f->pi1 <= target.n;
  }
  return false;
}

namespace {
Formula nnf(const Formula& f, bool neg) {
  switch (f->kind) {
    case FormulaKind::Eq:
    case FormulaKind::Lt:
    case FormulaKind::In:
    case FormulaKind::Oracle:
      return neg ? f_not(f) : f;
    case FormulaKind::Not:
      return nnf(f->a, !neg);
    case FormulaKind::And:
      return neg ? f_or(nnf(f->a, true), nnf(f->b, true)) : f_and(nnf(f->a, false), nnf(f->b, false));
    case FormulaKind::Or:
      return neg ? f_and(nnf(f->a, true), nnf(f->b, true)) : f_or(nnf(f->a, false), nnf(f->b, false));
    case FormulaKind::Imp:
      return neg ? f_and(nnf(f->a, false), nnf(f->b, true)) : f_or(nnf(f->a, true), nnf(f->b, false));
    case FormulaKind::Iff: {
      Formula pa = nnf(f->a, false), na = nnf(f->a, true);
      Formula pb = nnf(f->b, false), nb = nnf(f->b, true);
      return neg ? f_or(f_and(pa, nb), f_and(na, pb)) : f_or(f_and(pa, pb), f_and(na, nb));
    }
    case FormulaKind::All:
    case FormulaKind::Ex: {
      if (f->second_order) throw UnsupportedError("nnf_atoms: second-order quantifier");
      bool universal = (f->kind == FormulaKind::All) != neg;
      Formula body = nnf(f->a, neg);
      return universal ? f_all(f->var, body) : f_ex(f->var, body);
    }
    case FormulaKind::BAll:
    case FormulaKind::BEx: {
      bool universal = (f->kind == FormulaKind::BAll) != neg;
      Formula body = nnf(f->a, neg);
      return universal ? f_ball(f->var, f->t, body) : f_bex(f->var, f->t, body);
    }
  }
  return f;
}
}  // namespace

Formula nnf_atoms(const Formula& f) { return nnf(f, false); }

}  // namespace omk
