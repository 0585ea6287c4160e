#include "omegak/corpus.hpp"

#include <algorithm>
#include <cstdlib>
#include <numeric>

#include "omegak/syntax.hpp"

namespace omk {

std::uint64_t corpus_seed() {
  const char* s = std::getenv("OMEGAK_SEED");
  if (!s || !*s) return kDefaultSeed;
  char* end = nullptr;
  unsigned long long v = std::strtoull(s, &end, 10);
  return *end ? kDefaultSeed : v;
}

FormulaGen::FormulaGen(Rng& rng, GenOptions opt)
    : rng_(rng), opt_(opt), next_var_(opt.free_vars), next_set_(opt.free_sets) {
  for (Nat v = 0; v < opt.free_vars; ++v) scope_.push_back(v);
  for (Nat v = 0; v < opt.free_sets; ++v) set_scope_.push_back(v);
}

Term FormulaGen::term(int depth) {
  if (depth <= 0 || pick(3) == 0) {
    Nat r = pick(opt_.listed ? 3 : 2);
    if (r == 0 && !scope_.empty()) return t_var(scope_[pick(scope_.size())]);
    if (r == 2) return t_const(pick(opt_.max_num + 1));
    return t_num(pick(opt_.max_num + 1));
  }
  switch (pick(opt_.exp ? 6 : 5)) {
    case 0: return t_add(term(depth - 1), term(depth - 1));
    case 1: return t_mul(term(depth - 1), term(depth - 1));
    case 2: return t_pair(term(depth - 1), term(depth - 1));
    case 3: return t_proj(0, term(depth - 1));
    case 4: return t_proj(1, term(depth - 1));
    default: return t_exp(term(depth - 1), t_num(pick(3)));
  }
}

Formula FormulaGen::atom() {
  std::vector<int> kinds{0, 1};
  if (opt_.oracle) kinds.push_back(2);
  bool sets = opt_.set_atoms && (!set_scope_.empty() || opt_.listed > 0);
  if (sets) kinds.push_back(3);
  switch (kinds[pick(kinds.size())]) {
    case 0: return f_eq(term(2), term(2));
    case 1: return f_lt(term(2), term(2));
    case 2: return f_oracle(term(2));
    default: {
      Nat options = set_scope_.size() + opt_.listed;
      Nat r = pick(options);
      SetRef ref = r < set_scope_.size() ? SetRef{false, set_scope_[r]} : SetRef{true, r - set_scope_.size()};
      return f_in(term(1), ref);
    }
  }
}

Formula FormulaGen::formula(int depth) {
  if (depth <= 0 || pick(4) == 0) return atom();
  std::vector<int> kinds{0, 1, 2, 3, 4, 5, 6};
  if (opt_.unbounded) kinds.insert(kinds.end(), {7, 8});
  if (opt_.second_order && opt_.set_atoms) kinds.insert(kinds.end(), {9, 10});
  int k = kinds[pick(kinds.size())];
  switch (k) {
    case 0: return f_not(formula(depth - 1));
    case 1: return f_and(formula(depth - 1), formula(depth - 1));
    case 2: return f_or(formula(depth - 1), formula(depth - 1));
    case 3: return f_imp(formula(depth - 1), formula(depth - 1));
    case 4: return f_iff(formula(depth - 1), formula(depth - 1));
    case 5:
    case 6: {
      Term bound = scope_.empty() || pick(2) ? t_num(pick(opt_.max_num) + 1) : t_var(scope_[pick(scope_.size())]);
      Nat v = next_var_++;
      scope_.push_back(v);
      Formula body = formula(depth - 1);
      scope_.pop_back();
      return k == 5 ? f_ball(v, bound, body) : f_bex(v, bound, body);
    }
    case 7:
    case 8: {
      Nat v = next_var_++;
      scope_.push_back(v);
      Formula body = formula(depth - 1);
      scope_.pop_back();
      return k == 7 ? f_all(v, body) : f_ex(v, body);
    }
    default: {
      Nat v = next_set_++;
      set_scope_.push_back(v);
      Formula body = formula(depth - 1);
      set_scope_.pop_back();
      return k == 9 ? f_all_set(v, body) : f_ex_set(v, body);
    }
  }
}

std::vector<Formula> formula_corpus(std::uint64_t seed, std::size_t count, int depth) {
  Rng rng(seed);
  std::vector<Formula> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    GenOptions o;
    o.free_vars = i % 3;
    o.free_sets = i % 2;
    o.listed = i % 5 == 0 ? 2 : 0;
    o.exp = i % 7 == 0;
    FormulaGen g(rng, o);
    out.push_back(g.formula(depth));
  }
  return out;
}

SetDescriptor random_descriptor(Rng& rng, Nat max_prefix, Nat max_period) {
  auto pick = [&](Nat n) { return std::uniform_int_distribution<Nat>(0, n)(rng); };
  std::vector<bool> prefix(pick(max_prefix)), period(pick(max_period - 1) + 1);
  for (std::size_t i = 0; i < prefix.size(); ++i) prefix[i] = pick(1);
  for (std::size_t i = 0; i < period.size(); ++i) period[i] = pick(1);
  return SetDescriptor(prefix, period);
}

FiniteWellOrder random_order(Rng& rng, Nat n) {
  std::vector<Nat> labels(3 * n);
  std::iota(labels.begin(), labels.end(), Nat{0});
  std::shuffle(labels.begin(), labels.end(), rng);
  labels.resize(n);  // labels[i] is the i-th stage
  FiniteWellOrder o;
  o.carrier = labels;
  std::sort(o.carrier.begin(), o.carrier.end());
  for (Nat i = 0; i < n; ++i)
    for (Nat j = i + 1; j < n; ++j) o.relation.insert({labels[i], labels[j]});
  return o;
}

std::vector<CompletenessCase> completeness_corpus() {
  // Each sentence lists the oracles it holds for: s = {2}, e = ∅, v = evens.
  static const std::pair<const char*, const char*> rows[] = {
      {"sev", "(all x (= (+ x 0) x))"},
      {"sev", "(all x (all y (= (+ x y) (+ y x))))"},
      {"sev", "(all x (ex y (< x y)))"},
      {"sev", "(ex x (all y (not (< y x))))"},
      {"sev", "(all x (ex y (= y (+ x 1))))"},
      {"sev", "(all x (or (O x) (not (O x))))"},
      {"sev", "(ex x (= (* x x) 9))"},
      {"sev", "(all x (ex y (or (= x (* 2 y)) (= x (+ (* 2 y) 1)))))"},
      {"sev", "(ex z (all x (ex y (= (+ x z) y))))"},
      {"sev", "(all x (-> (< x 3) (< x 5)))"},
      {"sev", "(all< x 5 (ex y (= (* 2 x) y)))"},
      {"sev", "(all x (all y (ex z (= (+ x y) z))))"},
      {"sev", "(not (ex x (< x 0)))"},
      {"sev", "(all x (= (p0 (pair x x)) x))"},
      {"sev", "(ex x (ex y (= (pair x y) 7)))"},
      {"sev", "(all x (ex y (and (< x y) (not (O (+ (* 2 y) 1))))))"},
      {"sev", "(not (O 3))"},
      {"sev", "(all x (not (O (+ (* 2 x) 1))))"},
      {"sev", "(ex x (and (< 3 x) (not (O x))))"},
      {"sev", "(all x (ex y (and (< x y) (not (O y)))))"},
      {"se", "(ex x (all y (-> (O y) (< y x))))"},
      {"se", "(all x (-> (O x) (< x 3)))"},
      {"sv", "(ex x (O x))"},
      {"sv", "(O 2)"},
      {"sv", "(ex x (and (O x) (all y (-> (< y x) (not (O y))))))"},
      {"ev", "(all x (-> (O x) (O (+ x 2))))"},
      {"e", "(all x (not (O x)))"},
      {"v", "(all x (ex y (and (< x y) (O y))))"},
      {"v", "(ex z (all x (ex y (and (< x y) (O (+ y z))))))"},
      {"v", "(all x (O (* 2 x)))"},
      {"v", "(all x (<-> (O x) (not (O (+ x 1)))))"},
      {"s", "(ex x (and (O x) (all y (-> (O y) (= y x)))))"},
      {"s", "(all x (-> (O x) (= x 2)))"},
  };
  const std::pair<char, std::pair<const char*, SetDescriptor>> oracles[] = {
      {'s', {"{2}", SetDescriptor::finite({2})}},
      {'e', {"empty", SetDescriptor::empty()}},
      {'v', {"evens", SetDescriptor::evens()}},
  };
  std::vector<CompletenessCase> out;
  for (const auto& [tags, src] : rows)
    for (const auto& [tag, o] : oracles)
      if (std::string(tags).find(tag) != std::string::npos) out.push_back({parse_formula(src), o.second, o.first});
  return out;
}

namespace {

constexpr Nat kX = 0;    // number variable of recursion formulas
constexpr Nat kSet = 0;  // recursion set variable

struct RecGen {
  Rng& rng;
  Nat stages;
  bool downward, unbounded;
  Nat next = 1;
  std::vector<Nat> below;  // bounded variables known to be ≤ x

  Nat pick(Nat n) { return std::uniform_int_distribution<Nat>(0, n - 1)(rng); }

  Formula query() {
    Term s = t_num(pick(stages));
    Term y;
    if (downward) {
      Nat r = pick(below.size() + 1);
      y = r == below.size() ? t_var(kX) : t_var(below[r]);
    } else {
      switch (pick(3)) {
        case 0: y = t_var(kX); break;
        case 1: y = t_add(t_var(kX), t_one()); break;
        default: y = t_num(pick(4));
      }
    }
    return f_in_var(t_pair(s, y), kSet);
  }

  Formula arith() {
    if (unbounded && pick(4) == 0) {
      // X-free unbounded piece about x
      Nat y = next++;
      Term yt = t_var(y);
      switch (pick(3)) {
        case 0: return f_ex(y, f_and(f_lt(t_var(kX), yt), f_oracle(yt)));
        case 1: return f_all(y, f_imp(f_oracle(t_add(t_var(kX), yt)), f_oracle(t_add(t_add(t_var(kX), yt), t_num(2)))));
        default: {
          Nat z = next++;
          return f_all(y, f_ex(z, f_and(f_lt(yt, t_var(z)), f_oracle(t_add(t_var(z), t_var(kX))))));
        }
      }
    }
    Term x = t_var(kX);
    switch (pick(5)) {
      case 0: return f_eq(x, t_num(pick(4)));
      case 1: return f_lt(x, t_num(pick(4) + 1));
      case 2: return f_lt(t_num(pick(3)), x);
      case 3: return f_oracle(x);
      default: return f_oracle(t_add(x, t_num(pick(3) + 1)));
    }
  }

  Formula gen(int depth) {
    if (depth <= 0) return pick(2) ? query() : arith();
    switch (pick(7)) {
      case 0: return f_not(gen(depth - 1));
      case 1: return f_and(gen(depth - 1), gen(depth - 1));
      case 2: return f_or(gen(depth - 1), gen(depth - 1));
      case 3: return f_imp(gen(depth - 1), gen(depth - 1));
      case 4:
      case 5: {
        Nat v = next++;
        // all< v (x+1) / ex< v x: v stays ≤ x
        Term bound = pick(2) ? t_add(t_var(kX), t_one()) : t_var(kX);
        below.push_back(v);
        Formula body = gen(depth - 1);
        below.pop_back();
        return pick(2) ? f_ball(v, bound, body) : f_bex(v, bound, body);
      }
      default: return pick(2) ? query() : arith();
    }
  }
};

}  // namespace

RecursionFormula random_recursion_formula(Rng& rng, Nat stages, bool downward, bool unbounded, int max_degree) {
  for (;;) {
    RecGen g{rng, stages, downward, unbounded, 1, {}};
    RecursionFormula rf;
    rf.phi = g.gen(3);
    rf.x = kX;
    rf.set_var = kSet;
    if (rf.degree() > max_degree || nnf_atoms(rf.phi)->sig0 > max_degree + 1) continue;
    if (!rf.phi->has_set_atom) continue;
    if (rf.phi->has_oracle) rf.oracle = DecidableSet(random_descriptor(rng));
    return rf;
  }
}

std::vector<CodedOmegaModel> model_corpus(std::uint64_t seed, std::size_t count) {
  Rng rng(seed);
  std::vector<CodedOmegaModel> out;
  for (std::size_t i = 0; i < count; ++i) {
    std::vector<SetDescriptor> sets;
    switch (i % 4) {
      case 0: sets.push_back(SetDescriptor::finite({2})); break;
      case 1: sets.push_back(SetDescriptor::empty()); break;
      case 2: sets.push_back(SetDescriptor::evens()); break;
      default: sets.push_back(random_descriptor(rng));
    }
    Nat extra = std::uniform_int_distribution<Nat>(0, 3)(rng);
    for (Nat k = 0; k < extra; ++k) sets.push_back(random_descriptor(rng));
    out.emplace_back(std::move(sets));
  }
  return out;
}

}  // namespace omk
