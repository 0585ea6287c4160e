#include "omegak/sets.hpp"

#include <numeric>

#include "omegak/errors.hpp"

namespace omk {

Nat pair_code(Nat a, Nat b) {
  Nat s;
  if (__builtin_add_overflow(a, b, &s)) throw MagnitudeError("pair overflow");
  Nat s1;
  if (__builtin_add_overflow(s, Nat{1}, &s1)) throw MagnitudeError("pair overflow");
  Nat prod;
  // one of s, s+1 is even
  Nat x = s, y = s1;
  if (x % 2 == 0) x /= 2; else y /= 2;
  if (__builtin_mul_overflow(x, y, &prod)) throw MagnitudeError("pair overflow");
  Nat r;
  if (__builtin_add_overflow(prod, b, &r)) throw MagnitudeError("pair overflow");
  return r;
}

static Nat isqrt(Nat n) {
  Nat r = static_cast<Nat>(__builtin_sqrtl(static_cast<long double>(n)));
  while (r > 0 && r * r > n) --r;
  while ((r + 1) * (r + 1) <= n) ++r;
  return r;
}

std::pair<Nat, Nat> unpair_code(Nat z) {
  // w = floor((sqrt(8z+1)-1)/2), computed without overflowing 8z
  Nat w;
  if (z < (Nat{1} << 60)) {
    w = (isqrt(8 * z + 1) - 1) / 2;
  } else {
    w = static_cast<Nat>((__builtin_sqrtl(8.0L * static_cast<long double>(z) + 1.0L) - 1.0L) / 2.0L);
    auto tri = [](Nat v) { return (v % 2 == 0) ? (v / 2) * (v + 1) : v * ((v + 1) / 2); };
    while (w > 0 && tri(w) > z) --w;
    while (tri(w + 1) <= z) ++w;
  }
  Nat t = (w % 2 == 0) ? (w / 2) * (w + 1) : w * ((w + 1) / 2);
  Nat b = z - t;
  Nat a = w - b;
  return {a, b};
}

SetDescriptor::SetDescriptor() : period_{false} {}

SetDescriptor::SetDescriptor(std::vector<bool> prefix, std::vector<bool> period)
    : prefix_(std::move(prefix)), period_(std::move(period)) {
  if (period_.empty()) throw std::invalid_argument("set descriptor needs a nonempty period");
}

SetDescriptor SetDescriptor::empty() { return SetDescriptor({}, {false}); }
SetDescriptor SetDescriptor::all() { return SetDescriptor({}, {true}); }
SetDescriptor SetDescriptor::evens() { return SetDescriptor({}, {true, false}); }
SetDescriptor SetDescriptor::odds() { return SetDescriptor({}, {false, true}); }

SetDescriptor SetDescriptor::finite(const std::vector<Nat>& members) {
  Nat top = 0;
  for (Nat m : members) top = std::max(top, m + 1);
  if (top > (Nat{1} << 26)) throw MagnitudeError("finite set member too large for a bitmap");
  std::vector<bool> bits(top, false);
  for (Nat m : members) bits[m] = true;
  return SetDescriptor(std::move(bits), {false}).normalized();
}

SetDescriptor SetDescriptor::normalized() const {
  std::vector<bool> per = period_;
  const std::size_t L = per.size();
  for (std::size_t p = 1; p <= L; ++p) {
    if (L % p) continue;
    bool ok = true;
    for (std::size_t i = p; i < L && ok; ++i) ok = per[i] == per[i - p];
    if (ok) {
      per.resize(p);
      break;
    }
  }
  std::vector<bool> pre = prefix_;
  while (!pre.empty() && pre.back() == per.back()) {
    pre.pop_back();
    bool last = per.back();
    per.pop_back();
    per.insert(per.begin(), last);
  }
  return SetDescriptor(std::move(pre), std::move(per));
}

bool SetDescriptor::same_set(const SetDescriptor& other) const {
  return normalized() == other.normalized();
}

bool SetDescriptor::is_finite() const {
  for (bool b : period_)
    if (b) return false;
  return true;
}

std::vector<Nat> SetDescriptor::members_below(Nat limit) const {
  std::vector<Nat> out;
  for (Nat n = 0; n < limit; ++n)
    if (contains(n)) out.push_back(n);
  return out;
}

SetDescriptor SetDescriptor::complement() const {
  std::vector<bool> pre(prefix_.size()), per(period_.size());
  for (std::size_t i = 0; i < pre.size(); ++i) pre[i] = !prefix_[i];
  for (std::size_t i = 0; i < per.size(); ++i) per[i] = !period_[i];
  return SetDescriptor(std::move(pre), std::move(per));
}

namespace {
template <class Op>
SetDescriptor combine(const SetDescriptor& a, const SetDescriptor& b, Op op) {
  std::size_t P = std::max(a.prefix().size(), b.prefix().size());
  std::size_t L = std::lcm(a.period().size(), b.period().size());
  std::vector<bool> pre(P), per(L);
  for (std::size_t i = 0; i < P; ++i) pre[i] = op(a.contains(i), b.contains(i));
  for (std::size_t i = 0; i < L; ++i) per[i] = op(a.contains(P + i), b.contains(P + i));
  return SetDescriptor(std::move(pre), std::move(per)).normalized();
}
}  // namespace

SetDescriptor SetDescriptor::unite(const SetDescriptor& o) const {
  return combine(*this, o, [](bool x, bool y) { return x || y; });
}
SetDescriptor SetDescriptor::intersect(const SetDescriptor& o) const {
  return combine(*this, o, [](bool x, bool y) { return x && y; });
}

bool DecidableSet::contains(Nat n) const {
  if (auto d = std::get_if<SetDescriptor>(&rep_)) return d->contains(n);
  if (auto t = std::get_if<TupleFamily>(&rep_)) {
    auto [i, x] = unpair_code(n);
    return i < t->parts.size() && t->parts[i].contains(x);
  }
  return std::get<PredicateSet>(rep_).test(n);
}

bool DecidableSet::same_set(const DecidableSet& o) const {
  auto d1 = descriptor();
  auto d2 = o.descriptor();
  if (d1 && d2) return d1->same_set(*d2);
  auto t1 = family();
  auto t2 = o.family();
  if (t1 && t2) {
    if (t1->parts.size() != t2->parts.size()) return false;
    for (std::size_t i = 0; i < t1->parts.size(); ++i)
      if (!t1->parts[i].same_set(t2->parts[i])) return false;
    return true;
  }
  if (is_predicate() && o.is_predicate())
    return std::get<PredicateSet>(rep_).name == std::get<PredicateSet>(o.rep_).name;
  return false;
}

static std::string bits_text(const std::vector<bool>& v) {
  std::string s;
  for (bool b : v) s += b ? '1' : '0';
  return s.empty() ? "-" : s;
}

std::string DecidableSet::describe() const {
  if (auto d = descriptor()) return "set[" + bits_text(d->prefix()) + "|" + bits_text(d->period()) + "]";
  if (auto t = family()) {
    std::string s = "tuple[";
    for (std::size_t i = 0; i < t->parts.size(); ++i) {
      if (i) s += ",";
      s += bits_text(t->parts[i].prefix()) + "|" + bits_text(t->parts[i].period());
    }
    return s + "]";
  }
  return "pred[" + std::get<PredicateSet>(rep_).name + "]";
}

}  // namespace omk
