#include "omegak/ipc.hpp"

#include <omp.h>

#include <algorithm>
#include <deque>
#include <random>
#include <sstream>
#include <unordered_set>

#include "omegak/errors.hpp"
#include "omegak/syntax.hpp"

namespace omk {

std::size_t IpcTable::level_pos(Nat level) const {
  auto it = std::find(levels.begin(), levels.end(), level);
  if (it == levels.end()) throw PreconditionError("level " + std::to_string(level) + " is not in the order");
  return it - levels.begin();
}

bool IpcTable::contains(Nat level, const Formula& f) const {
  auto it = index.find(f);
  return it != index.end() && entries[level_pos(level)][it->second];
}

std::size_t IpcTable::count(Nat level) const {
  const auto& e = entries[level_pos(level)];
  return std::count(e.begin(), e.end(), 1);
}

namespace {

using Idx = std::uint32_t;

struct MpRule { Idx a, imp, c; };
struct GenRule { Idx a, c; };
struct OmegaRule {
  Idx imp, psi, phi;
  std::vector<Idx> insts;
};

struct Prepared {
  IpcTable table;
  std::vector<MpRule> mp;
  std::vector<GenRule> gen;
  std::vector<OmegaRule> omega;
  std::vector<char> axioms;
};

void add_subformulas(const Formula& f, std::vector<Formula>& out) {
  out.push_back(f);
  if (f->a) add_subformulas(f->a, out);
  if (f->b) add_subformulas(f->b, out);
}

Prepared prepare(const OracleTheory& T, const FiniteWellOrder& order, const IpcConfig& cfg) {
  auto wo = check_wo(order);
  if (!wo.ok) throw PreconditionError("not a well-order: " + wo.describe());
  Prepared P;
  IpcTable& t = P.table;
  t.order = order;
  t.levels = order.sorted();

  std::vector<Formula> pool;
  for (Nat c = 1; c < cfg.code_bound; ++c)
    if (auto f = try_decode_formula(Code(c))) pool.push_back(f);
  pool.push_back(f_bottom());
  for (const auto& f : T.extra_axioms) pool.push_back(f);
  if (cfg.instance_closure) {
    std::vector<Formula> subs;
    for (const auto& s : cfg.seeds) add_subformulas(s, subs);
    for (const auto& f : subs) {
      pool.push_back(f);
      if (f->kind == FormulaKind::All && !f->second_order)
        for (Nat n = 0; n < cfg.numcap; ++n) pool.push_back(substitute_numeral(f->a, f->var, n));
    }
  } else {
    pool.insert(pool.end(), cfg.seeds.begin(), cfg.seeds.end());
  }

  std::vector<std::pair<Code, Formula>> keyed;
  std::unordered_set<Formula, FormulaHash, FormulaEq> seen;
  for (const auto& f : pool)
    if (seen.insert(f).second) keyed.emplace_back(godel_encode(f), f);
  std::sort(keyed.begin(), keyed.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
  for (auto& [c, f] : keyed) {
    t.index.emplace(f, t.universe.size());
    t.universe.push_back(f);
    t.codes.push_back(c);
  }
  const std::size_t n = t.universe.size();

  auto idx = [&](const Formula& f) -> std::optional<Idx> {
    auto it = t.index.find(f);
    if (it == t.index.end()) return std::nullopt;
    return static_cast<Idx>(it->second);
  };
  for (Idx i = 0; i < n; ++i) {
    const Formula& f = t.universe[i];
    if (f->kind == FormulaKind::Imp) {
      auto a = idx(f->a), c = idx(f->b);
      if (a && c) P.mp.push_back({*a, i, *c});
      const Formula& lhs = f->a;
      if (c && lhs->kind == FormulaKind::All && !lhs->second_order) {
        auto psi = idx(lhs->a);
        if (!psi) continue;
        OmegaRule r{i, *psi, *c, {}};
        bool all = true;
        for (Nat k = 0; k < cfg.numcap && all; ++k) {
          auto inst = idx(substitute_numeral(lhs->a, lhs->var, k));
          if (inst) r.insts.push_back(*inst); else all = false;
        }
        if (all) P.omega.push_back(std::move(r));
      }
    } else if (f->kind == FormulaKind::All && f->second_order) {
      // Number quantifiers are introduced only by the ω-clause.
      if (auto a = idx(f->a)) P.gen.push_back({*a, i});
    }
  }

  P.axioms.assign(n, 0);
#pragma omp parallel for schedule(dynamic, 16)
  for (std::size_t i = 0; i < n; ++i) {
    const Formula& f = t.universe[i];
    P.axioms[i] = is_axiom(T, f) || !find_logical_axiom(f, T).empty();
  }
  return P;
}

// Synchronous rounds; each round reads the previous set only, so the result
// does not depend on thread scheduling.
void close_rounds(const Prepared& P, std::vector<char>& set, std::size_t budget, std::size_t& count,
                  bool& truncated) {
  const std::size_t n = set.size();
  std::vector<char> add(n);
  for (;;) {
    std::fill(add.begin(), add.end(), 0);
    const auto nmp = static_cast<std::int64_t>(P.mp.size());
#pragma omp parallel for schedule(static)
    for (std::int64_t r = 0; r < nmp; ++r) {
      const auto& m = P.mp[r];
      if (set[m.a] && set[m.imp] && !set[m.c]) {
#pragma omp atomic write
        add[m.c] = 1;
      }
    }
    const auto ngen = static_cast<std::int64_t>(P.gen.size());
#pragma omp parallel for schedule(static)
    for (std::int64_t r = 0; r < ngen; ++r) {
      const auto& g = P.gen[r];
      if (set[g.a] && !set[g.c]) {
#pragma omp atomic write
        add[g.c] = 1;
      }
    }
    std::size_t fresh = 0;
    for (std::size_t i = 0; i < n; ++i)
      if (add[i] && !set[i]) {
        set[i] = 1;
        ++fresh;
      }
    if (fresh == 0) return;
    count += fresh;
    if (count > budget) {
      truncated = true;
      return;
    }
  }
}

struct Worklist {
  const Prepared& P;
  std::vector<std::vector<std::pair<bool, Idx>>> watch;  // (is_mp, rule)
  std::mt19937_64 rng;
  bool shuffle;

  Worklist(const Prepared& p, std::uint64_t seed) : P(p), watch(p.table.universe.size()), rng(seed), shuffle(seed != 0) {
    for (Idx r = 0; r < P.mp.size(); ++r) {
      watch[P.mp[r].a].push_back({true, r});
      if (P.mp[r].imp != P.mp[r].a) watch[P.mp[r].imp].push_back({true, r});
    }
    for (Idx r = 0; r < P.gen.size(); ++r) watch[P.gen[r].a].push_back({false, r});
    if (shuffle)
      for (auto& w : watch) std::shuffle(w.begin(), w.end(), rng);
  }

  void close(std::vector<char>& set, std::size_t budget, std::size_t& count, bool& truncated) {
    std::vector<Idx> start;
    for (Idx i = 0; i < set.size(); ++i)
      if (set[i]) start.push_back(i);
    if (shuffle) std::shuffle(start.begin(), start.end(), rng);
    std::deque<Idx> queue(start.begin(), start.end());
    while (!queue.empty()) {
      Idx f = queue.front();
      queue.pop_front();
      for (auto [is_mp, r] : watch[f]) {
        Idx c;
        if (is_mp) {
          const auto& m = P.mp[r];
          if (!set[m.a] || !set[m.imp]) continue;
          c = m.c;
        } else {
          c = P.gen[r].c;
        }
        if (set[c]) continue;
        set[c] = 1;
        queue.push_back(c);
        if (++count > budget) {
          truncated = true;
          return;
        }
      }
    }
  }
};

template <class Close>
IpcTable run_levels(Prepared& P, std::size_t budget, Close close) {
  IpcTable& t = P.table;
  const std::size_t n = t.universe.size();
  std::size_t count = 0;
  std::vector<char> fin = P.axioms;
  close(fin, budget, count, t.truncated);
  t.derivations += count;
  t.fin = fin;
  t.entries.assign(t.levels.size(), {});
  for (std::size_t p = 0; p < t.levels.size(); ++p) {
    std::vector<char> set = fin;
    std::vector<std::size_t> lower;
    for (std::size_t q = 0; q < p; ++q)
      if (t.order.less(t.levels[q], t.levels[p])) lower.push_back(q);
    for (auto q : lower)
      for (std::size_t i = 0; i < n; ++i) set[i] |= t.entries[q][i];
    count = 0;
    for (const auto& r : P.omega) {
      if (!fin[r.imp] || set[r.phi]) continue;
      for (auto q : lower) {
        const auto& e = t.entries[q];
        if (e[r.psi] && std::all_of(r.insts.begin(), r.insts.end(), [&](Idx k) { return e[k] != 0; })) {
          set[r.phi] = 1;
          ++count;
          break;
        }
      }
    }
    close(set, budget, count, t.truncated);
    t.derivations += count;
    t.entries[p] = std::move(set);
  }
  return std::move(P.table);
}

}  // namespace

IpcTable saturate_ipc(const OracleTheory& T, const FiniteWellOrder& order, const IpcConfig& cfg) {
  Prepared P = prepare(T, order, cfg);
  return run_levels(P, cfg.budget, [&](std::vector<char>& s, std::size_t b, std::size_t& c, bool& tr) {
    close_rounds(P, s, b, c, tr);
  });
}

IpcTable saturate_ipc_serial(const OracleTheory& T, const FiniteWellOrder& order, const IpcConfig& cfg) {
  Prepared P = prepare(T, order, cfg);
  Worklist w(P, cfg.shuffle_seed);
  return run_levels(P, cfg.budget, [&](std::vector<char>& s, std::size_t b, std::size_t& c, bool& tr) {
    w.close(s, b, c, tr);
  });
}

bool consistency_query(const IpcTable& t, Nat level) { return !t.contains(level, f_bottom()); }

bool same_entries(const IpcTable& a, const IpcTable& b) {
  return a.levels == b.levels && a.codes == b.codes && a.entries == b.entries;
}

std::string dump_table(const IpcTable& t) {
  std::ostringstream os;
  for (std::size_t p = 0; p < t.levels.size(); ++p)
    for (std::size_t i = 0; i < t.universe.size(); ++i)
      if (t.entries[p][i]) os << t.levels[p] << ' ' << code_str(t.codes[i]) << ' ' << print_formula(t.universe[i]) << '\n';
  return os.str();
}

namespace {

void collect(const Certificate& c, Nat numcap, std::vector<Formula>& out) {
  auto lines = [&](const FinitaryProof& p) {
    for (const auto& l : p.lines) out.push_back(l.formula);
  };
  if (c.kind == Certificate::Kind::Fin) {
    lines(c.proof);
    return;
  }
  lines(c.d);
  out.push_back(c.psi);
  out.push_back(f_all(c.var, c.psi));
  for (Nat n = 0; n < numcap; ++n) {
    out.push_back(substitute_numeral(c.psi, c.var, n));
    if (auto inst = instantiate(c.premises, n)) collect(*inst, numcap, out);
  }
  if (c.premises.uniform) collect(*c.premises.uniform->skeleton, numcap, out);
}

}  // namespace

std::vector<Formula> cert_formulas(const Certificate& c, Nat numcap) {
  std::vector<Formula> all;
  collect(c, numcap, all);
  std::vector<Formula> out;
  std::unordered_set<Formula, FormulaHash, FormulaEq> seen;
  for (auto& f : all)
    if (seen.insert(f).second) out.push_back(f);
  return out;
}

}  // namespace omk
