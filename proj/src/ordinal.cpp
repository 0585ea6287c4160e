#include "omegak/ordinal.hpp"

#include <algorithm>
#include <functional>

#include "omegak/errors.hpp"

namespace omk {

bool Cnf::operator==(const Cnf& o) const { return cnf_compare(*this, o) == Cmp::Equal; }

Cnf cnf_nat(Nat n) {
  Cnf a;
  if (n) a.terms.push_back(CnfTerm{Cnf{}, n});
  return a;
}

Cnf cnf_omega() { return omega_power(cnf_nat(1)); }

Cmp cnf_compare(const Cnf& a, const Cnf& b) {
  std::size_t n = std::min(a.terms.size(), b.terms.size());
  for (std::size_t i = 0; i < n; ++i) {
    Cmp c = cnf_compare(a.terms[i].exponent, b.terms[i].exponent);
    if (c != Cmp::Equal) return c;
    if (a.terms[i].coeff != b.terms[i].coeff) return a.terms[i].coeff < b.terms[i].coeff ? Cmp::Less : Cmp::Greater;
  }
  if (a.terms.size() == b.terms.size()) return Cmp::Equal;
  return a.terms.size() < b.terms.size() ? Cmp::Less : Cmp::Greater;
}

Cnf cnf_add(const Cnf& a, const Cnf& b) {
  if (b.is_zero()) return a;
  const Cnf& lead = b.terms.front().exponent;
  Cnf r;
  Nat carry = 0;
  for (const auto& t : a.terms) {
    Cmp c = cnf_compare(t.exponent, lead);
    if (c == Cmp::Greater) r.terms.push_back(t);
    else if (c == Cmp::Equal) carry = t.coeff;
    else break;
  }
  for (std::size_t i = 0; i < b.terms.size(); ++i) {
    CnfTerm t = b.terms[i];
    if (i == 0 && __builtin_add_overflow(t.coeff, carry, &t.coeff)) throw MagnitudeError("coefficient overflow");
    r.terms.push_back(std::move(t));
  }
  return r;
}

// Left multiplication is absorbed by every infinite term (m·ω^e = ω^e for
// e ≥ 1), so only the finite tail scales.
Cnf nat_left_mul(Nat m, const Cnf& a) {
  if (m == 0 || a.is_zero()) return Cnf{};
  Cnf r = a;
  auto& last = r.terms.back();
  if (last.exponent.is_zero() && __builtin_mul_overflow(last.coeff, m, &last.coeff))
    throw MagnitudeError("coefficient overflow");
  return r;
}

Cnf cnf_mul_nat(const Cnf& a, Nat m) {
  if (m == 0 || a.is_zero()) return Cnf{};
  Cnf r = a;
  if (__builtin_mul_overflow(r.terms.front().coeff, m, &r.terms.front().coeff))
    throw MagnitudeError("coefficient overflow");
  return r;
}

Cnf omega_power(const Cnf& a) {
  Cnf r;
  r.terms.push_back(CnfTerm{a, 1});
  return r;
}

bool cnf_is_finite(const Cnf& a) { return a.is_zero() || (a.terms.size() == 1 && a.terms[0].exponent.is_zero()); }

std::optional<Nat> cnf_finite_value(const Cnf& a) {
  if (a.is_zero()) return 0;
  if (cnf_is_finite(a)) return a.terms[0].coeff;
  return std::nullopt;
}

bool cnf_is_limit(const Cnf& a) { return !a.is_zero() && !a.terms.back().exponent.is_zero(); }

bool cnf_well_formed(const Cnf& a) {
  for (std::size_t i = 0; i < a.terms.size(); ++i) {
    if (a.terms[i].coeff == 0 || !cnf_well_formed(a.terms[i].exponent)) return false;
    if (i && cnf_compare(a.terms[i - 1].exponent, a.terms[i].exponent) != Cmp::Greater) return false;
  }
  return true;
}

namespace {
Nat code_from(const Cnf& a, std::size_t i) {
  if (i == a.terms.size()) return 0;
  Nat head = pair_code(cnf_code(a.terms[i].exponent), a.terms[i].coeff - 1);
  Nat p = pair_code(head, code_from(a, i + 1));
  if (p == ~Nat{0}) throw MagnitudeError("notation code overflow");
  return p + 1;
}
}  // namespace

Nat cnf_code(const Cnf& a) { return code_from(a, 0); }

std::optional<Cnf> cnf_decode(Nat code) {
  if (code == 0) return Cnf{};
  auto [head, rest] = unpair_code(code - 1);
  auto [e, c] = unpair_code(head);
  auto ex = cnf_decode(e);
  auto tail = cnf_decode(rest);
  if (!ex || !tail) return std::nullopt;
  if (!tail->is_zero() && cnf_compare(tail->terms.front().exponent, *ex) != Cmp::Less) return std::nullopt;
  Cnf r;
  r.terms.push_back(CnfTerm{*ex, c + 1});
  r.terms.insert(r.terms.end(), tail->terms.begin(), tail->terms.end());
  return r;
}

std::string cnf_str(const Cnf& a) {
  if (a.is_zero()) return "0";
  std::string s;
  for (std::size_t i = 0; i < a.terms.size(); ++i) {
    const auto& t = a.terms[i];
    if (i) s += "+";
    if (t.exponent.is_zero()) {
      s += std::to_string(t.coeff);
      continue;
    }
    s += "w";
    auto fv = cnf_finite_value(t.exponent);
    if (!(fv && *fv == 1)) s += fv ? "^" + std::to_string(*fv) : "^(" + cnf_str(t.exponent) + ")";
    if (t.coeff > 1) s += "*" + std::to_string(t.coeff);
  }
  return s;
}

std::size_t CnfOrdHash::operator()(const Cnf& a) const {
  std::size_t h = 1469598103934665603ULL;
  for (const auto& t : a.terms) {
    h = (h ^ (*this)(t.exponent)) * 1099511628211ULL;
    h = (h ^ t.coeff) * 1099511628211ULL;
  }
  return h;
}

// ------------------------------------------------------------ finite orders

FiniteWellOrder FiniteWellOrder::natural(Nat n) {
  FiniteWellOrder w;
  for (Nat i = 0; i < n; ++i) {
    w.carrier.push_back(i);
    for (Nat j = i + 1; j < n; ++j) w.relation.insert({i, j});
  }
  return w;
}

bool FiniteWellOrder::in_carrier(Nat x) const { return std::binary_search(carrier.begin(), carrier.end(), x); }

std::vector<Nat> FiniteWellOrder::sorted() const {
  std::vector<std::pair<std::size_t, Nat>> keyed;
  for (Nat x : carrier) {
    std::size_t below = 0;
    for (Nat y : carrier)
      if (less(y, x)) ++below;
    keyed.push_back({below, x});
  }
  std::sort(keyed.begin(), keyed.end());
  std::vector<Nat> out;
  for (auto& k : keyed) out.push_back(k.second);
  return out;
}

std::string WoResult::describe() const {
  std::string w;
  for (std::size_t i = 0; i < witness.size(); ++i) w += (i ? " " : "") + std::to_string(witness[i]);
  switch (failure) {
    case WoFailure::None: return "well-order";
    case WoFailure::Cycle: return "cycle: " + w;
    case WoFailure::Incomparable: return "incomparable: " + w;
    case WoFailure::NotTransitive: return "not transitive: " + w;
    case WoFailure::OutsideCarrier: return "relation leaves carrier: " + w;
    case WoFailure::BadAddition: return "addition table: " + w;
  }
  return "";
}

WoResult check_wo(const FiniteWellOrder& r) {
  auto fail = [](WoFailure f, std::vector<Nat> w) {
    WoResult res;
    res.ok = false;
    res.failure = f;
    res.witness = std::move(w);
    return res;
  };
  for (auto [a, b] : r.relation)
    if (!r.in_carrier(a) || !r.in_carrier(b)) return fail(WoFailure::OutsideCarrier, {a, b});
  for (Nat a : r.carrier)
    if (r.less(a, a)) return fail(WoFailure::Cycle, {a});

  // Cycle search by DFS colouring.
  std::map<Nat, int> colour;
  std::vector<Nat> stack;
  std::vector<Nat> cycle;
  std::function<bool(Nat)> dfs = [&](Nat u) -> bool {
    colour[u] = 1;
    stack.push_back(u);
    for (Nat v : r.carrier) {
      if (!r.less(u, v)) continue;
      if (colour[v] == 1) {
        auto it = std::find(stack.begin(), stack.end(), v);
        cycle.assign(it, stack.end());
        return true;
      }
      if (colour[v] == 0 && dfs(v)) return true;
    }
    stack.pop_back();
    colour[u] = 2;
    return false;
  };
  for (Nat a : r.carrier)
    if (colour[a] == 0 && dfs(a)) return fail(WoFailure::Cycle, cycle);

  for (std::size_t i = 0; i < r.carrier.size(); ++i)
    for (std::size_t j = i + 1; j < r.carrier.size(); ++j) {
      Nat a = r.carrier[i], b = r.carrier[j];
      if (!r.less(a, b) && !r.less(b, a)) return fail(WoFailure::Incomparable, {a, b});
    }
  for (auto [a, b] : r.relation)
    for (Nat c : r.carrier)
      if (r.less(b, c) && !r.less(a, c)) return fail(WoFailure::NotTransitive, {a, b, c});

  if (r.addition) {
    const auto& add = *r.addition;
    auto get = [&](Nat a, Nat b) -> std::optional<Nat> {
      auto it = add.find({a, b});
      if (it == add.end() || !r.in_carrier(it->second)) return std::nullopt;
      return it->second;
    };
    for (Nat a : r.carrier)
      for (Nat b : r.carrier)
        if (!get(a, b)) return fail(WoFailure::BadAddition, {a, b});
    for (Nat a : r.carrier)
      for (Nat b : r.carrier) {
        for (Nat c : r.carrier) {
          if (*get(*get(a, b), c) != *get(a, *get(b, c))) return fail(WoFailure::BadAddition, {a, b, c});
          if (r.less(b, c) && !r.less(*get(a, b), *get(a, c))) return fail(WoFailure::BadAddition, {a, b, c});
        }
      }
  }
  return {};
}

FiniteWellOrder lex_product(const FiniteWellOrder& order, const std::vector<Nat>& ys_in) {
  if (ys_in.empty()) throw PreconditionError("lexicographic product with an empty second factor");
  std::vector<Nat> ys = ys_in;
  std::sort(ys.begin(), ys.end());
  ys.erase(std::unique(ys.begin(), ys.end()), ys.end());
  FiniteWellOrder out;
  struct E {
    Nat x, y, code;
  };
  std::vector<E> elems;
  for (Nat x : order.carrier)
    for (Nat y : ys) elems.push_back({x, y, pair_code(x, y)});
  for (auto& e : elems) out.carrier.push_back(e.code);
  std::sort(out.carrier.begin(), out.carrier.end());
  for (auto& p : elems)
    for (auto& q : elems)
      if (order.less(p.x, q.x) || (p.x == q.x && p.y < q.y)) out.relation.insert({p.code, q.code});
  return out;
}

// -------------------------------------------------------------- WellOrder

bool WellOrder::contains(const Cnf& a) const {
  if (auto f = finite()) {
    auto v = cnf_finite_value(a);
    return v && f->in_carrier(*v);
  }
  return cnf_well_formed(a) && !cnf_less(cnf()->bound, a);
}

bool WellOrder::less(const Cnf& a, const Cnf& b) const {
  if (auto f = finite()) {
    auto va = cnf_finite_value(a), vb = cnf_finite_value(b);
    if (!va || !vb || !f->in_carrier(*va) || !f->in_carrier(*vb))
      throw PreconditionError("element outside the order's carrier");
    return f->less(*va, *vb);
  }
  if (!contains(a) || !contains(b)) throw PreconditionError("notation outside the order's bound");
  return cnf_less(a, b);
}

Cnf WellOrder::least() const {
  if (auto f = finite()) {
    auto s = f->sorted();
    if (s.empty()) throw PreconditionError("empty order has no least element");
    return cnf_nat(s.front());
  }
  return Cnf{};
}

std::vector<Cnf> WellOrder::elements() const {
  std::vector<Cnf> out;
  if (auto f = finite()) {
    for (Nat x : f->sorted()) out.push_back(cnf_nat(x));
    return out;
  }
  auto v = cnf_finite_value(cnf()->bound);
  if (!v) throw UnsupportedError("infinite notation order has no finite element list");
  for (Nat i = 0; i <= *v; ++i) out.push_back(cnf_nat(i));
  return out;
}

}  // namespace omk
