#pragma once
// Decidable sets of naturals: ultimately periodic descriptors, tuple families
// read through the pairing function, and opaque predicates.

#include <cstdint>
#include <functional>
#include <memory>
#include <stdexcept>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace omk {

using Nat = std::uint64_t;

// Cantor pairing: <a,b> = (a+b)(a+b+1)/2 + b. Throws on overflow.
Nat pair_code(Nat a, Nat b);
std::pair<Nat, Nat> unpair_code(Nat z);

class SetDescriptor {
 public:
  SetDescriptor();  // empty set
  SetDescriptor(std::vector<bool> prefix, std::vector<bool> period);

  static SetDescriptor empty();
  static SetDescriptor all();
  static SetDescriptor evens();
  static SetDescriptor odds();
  static SetDescriptor finite(const std::vector<Nat>& members);

  bool contains(Nat n) const {
    if (n < prefix_.size()) return prefix_[n];
    return period_[(n - prefix_.size()) % period_.size()];
  }
  const std::vector<bool>& prefix() const { return prefix_; }
  const std::vector<bool>& period() const { return period_; }

  // Shortest period, then shortest prefix. Equal sets normalize identically.
  SetDescriptor normalized() const;
  bool same_set(const SetDescriptor& other) const;
  bool is_finite() const;
  // Members below `limit`.
  std::vector<Nat> members_below(Nat limit) const;

  SetDescriptor complement() const;
  SetDescriptor unite(const SetDescriptor& o) const;
  SetDescriptor intersect(const SetDescriptor& o) const;

  bool operator==(const SetDescriptor& o) const { return prefix_ == o.prefix_ && period_ == o.period_; }

 private:
  std::vector<bool> prefix_;
  std::vector<bool> period_;
};

// 𝔒(<i,x>) <-> x in component i.
struct TupleFamily {
  std::vector<SetDescriptor> parts;
};

struct PredicateSet {
  std::function<bool(Nat)> test;
  std::string name;
};

class DecidableSet {
 public:
  DecidableSet() : rep_(SetDescriptor::empty()) {}
  DecidableSet(SetDescriptor d) : rep_(std::move(d)) {}
  DecidableSet(TupleFamily t) : rep_(std::move(t)) {}
  DecidableSet(PredicateSet p) : rep_(std::move(p)) {}

  bool contains(Nat n) const;
  const SetDescriptor* descriptor() const { return std::get_if<SetDescriptor>(&rep_); }
  const TupleFamily* family() const { return std::get_if<TupleFamily>(&rep_); }
  bool is_predicate() const { return std::holds_alternative<PredicateSet>(rep_); }
  // Same membership; predicates only compare equal by identity of name.
  bool same_set(const DecidableSet& o) const;
  std::string describe() const;

 private:
  std::variant<SetDescriptor, TupleFamily, PredicateSet> rep_;
};

}  // namespace omk
