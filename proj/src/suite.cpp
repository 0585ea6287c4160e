#include "omegak/suite.hpp"

#include <omp.h>

#include <atomic>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "omegak/cli.hpp"
#include "omegak/corpus.hpp"
#include "omegak/errors.hpp"
#include "omegak/ipc.hpp"
#include "omegak/model.hpp"
#include "omegak/synth.hpp"
#include "omegak/syntax.hpp"
#include "omegak/tr.hpp"

namespace omk {

namespace {

using Clock = std::chrono::steady_clock;

struct Outcome {
  bool pass = false;
  std::string detail;
};

void collect_subformulas(const Formula& f, std::vector<Formula>& out) {
  if (f->a) {
    out.push_back(f->a);
    collect_subformulas(f->a, out);
  }
  if (f->b) {
    out.push_back(f->b);
    collect_subformulas(f->b, out);
  }
}

// ------------------------------------------------------------ 1: coding

Outcome coding_monotonicity(std::uint64_t seed) {
  auto corpus = formula_corpus(seed, 10000, 4);
  std::atomic<std::size_t> violations{0}, pairs{0}, roundtrip{0};
  const long long n = static_cast<long long>(corpus.size());
#pragma omp parallel for schedule(dynamic, 64)
  for (long long i = 0; i < n; ++i) {
    const Formula& f = corpus[i];
    Code c = godel_encode(f);
    std::vector<Formula> subs;
    collect_subformulas(f, subs);
    for (const auto& s : subs) {
      ++pairs;
      if (!(godel_encode(s) < c)) ++violations;
    }
    if (!formula_eq(godel_decode_formula(c), f)) ++roundtrip;
  }
  std::ostringstream d;
  d << "formulas=" << corpus.size() << " pairs=" << pairs << " violations=" << violations
    << " decode_mismatch=" << roundtrip;
  return {violations == 0 && roundtrip == 0, d.str()};
}

// ------------------------------------------------------------ 2, 3: tables

struct TableCase {
  OracleTheory T;
  FiniteWellOrder order;
  IpcConfig cfg;
};

TableCase random_table_case(Rng& rng, std::size_t i) {
  static const std::vector<TheorySpec> theories = {theory_q(), theory_eca0(), theory_rca0star(), theory_rca0()};
  auto pick = [&](Nat n) { return std::uniform_int_distribution<Nat>(0, n - 1)(rng); };
  TableCase c;
  DecidableSet oracle;
  switch (i % 4) {
    case 0: oracle = SetDescriptor::finite({2}); break;
    case 1: oracle = SetDescriptor::empty(); break;
    case 2: oracle = SetDescriptor::evens(); break;
    default: oracle = random_descriptor(rng);
  }
  c.T = make_oracle_theory(theories[i % theories.size()], oracle);
  c.order = random_order(rng, 1 + pick(5));
  c.cfg.code_bound = 256 + pick(1793);
  c.cfg.numcap = 6;
  c.cfg.instance_closure = true;
  auto& seeds = c.cfg.seeds;
  for (const auto& a : c.T.base.base_axioms)
    if (is_sentence(a)) seeds.push_back(a);
  for (Nat k = 0; k < 4; ++k) {
    Formula lit = f_oracle(t_num(k));
    seeds.push_back(c.T.oracle.contains(k) ? lit : f_not(lit));
  }
  GenOptions go;
  go.free_vars = 1;
  go.unbounded = false;
  go.second_order = false;
  go.set_atoms = false;
  go.max_num = 3;
  std::vector<Formula> sentences;
  for (int k = 0; k < 6; ++k) {
    FormulaGen g(rng, go);
    Formula body = g.formula(2);
    Formula all = f_all(0, body);
    sentences.push_back(all);
    seeds.push_back(all);
    seeds.push_back(f_imp(all, all));
    // An open tautology reaches its universal closure only through the ω-clause.
    Formula lem = f_all(0, f_or(body, f_not(body)));
    seeds.push_back(f_imp(lem, lem));
    if (k % 2) seeds.push_back(f_imp(lem, all));
  }
  GenOptions cl = go;
  cl.free_vars = 0;
  for (int k = 0; k < 6; ++k) {
    FormulaGen g(rng, cl);
    sentences.push_back(g.formula(2));
  }
  // chains so that modus ponens has work at every level
  for (std::size_t k = 0; k + 1 < sentences.size(); ++k) {
    seeds.push_back(f_imp(sentences[k], sentences[k + 1]));
    seeds.push_back(f_imp(sentences[k], f_and(sentences[k], sentences[(k + 3) % sentences.size()])));
  }
  return c;
}

struct TableBattery {
  std::vector<IpcTable> tables;
  std::size_t configs = 0, truncated = 0, mono_violations = 0, det_violations = 0, growing = 0;
};

TableBattery build_tables(std::uint64_t seed) {
  Rng rng(seed ^ 0x2a2a);
  TableBattery b;
  for (std::size_t i = 0; b.configs - b.truncated < 20 && i < 40; ++i) {
    TableCase c = random_table_case(rng, i);
    IpcTable t = saturate_ipc(c.T, c.order, c.cfg);
    ++b.configs;
    for (std::uint64_t s : {std::uint64_t{0}, std::uint64_t{17 + i}, std::uint64_t{991 * (i + 1)}}) {
      IpcConfig cs = c.cfg;
      cs.shuffle_seed = s;
      IpcTable r = saturate_ipc_serial(c.T, c.order, cs);
      if (!t.truncated && !r.truncated && !same_entries(t, r)) ++b.det_violations;
    }
    if (t.truncated) {
      ++b.truncated;
      continue;
    }
    bool grows = false;
    for (std::size_t p = 0; p < t.levels.size(); ++p)
      for (std::size_t q = 0; q < t.levels.size(); ++q) {
        if (!t.order.less(t.levels[q], t.levels[p])) continue;
        for (std::size_t u = 0; u < t.universe.size(); ++u) {
          if (t.entries[q][u] && !t.entries[p][u]) ++b.mono_violations;
          if (!t.entries[q][u] && t.entries[p][u]) grows = true;
        }
      }
    b.growing += grows;
    b.tables.push_back(std::move(t));
  }
  return b;
}

Outcome ipc_monotonicity(std::uint64_t seed) {
  TableBattery b = build_tables(seed);
  std::size_t entries = 0;
  for (const auto& t : b.tables)
    for (Nat l : t.levels) entries += t.count(l);
  std::ostringstream d;
  d << "configs=" << b.configs << " checked=" << b.tables.size() << " truncated=" << b.truncated
    << " entries=" << entries << " growing=" << b.growing << " monotonicity_violations=" << b.mono_violations
    << " determinism_violations=" << b.det_violations;
  // Tables whose levels all equal the finitary closure would pass vacuously.
  return {b.tables.size() >= 20 && b.growing > 0 && b.mono_violations == 0 && b.det_violations == 0, d.str()};
}

Outcome distributivity(std::uint64_t seed) {
  TableBattery b = build_tables(seed);
  std::size_t checked = 0, violations = 0;
  for (const auto& t : b.tables)
    for (std::size_t p = 0; p < t.levels.size(); ++p) {
      const auto& e = t.entries[p];
      for (std::size_t u = 0; u < t.universe.size(); ++u) {
        const Formula& f = t.universe[u];
        if (!e[u] || f->kind != FormulaKind::Imp) continue;
        auto a = t.index.find(f->a);
        auto c = t.index.find(f->b);
        if (a == t.index.end() || c == t.index.end() || !e[a->second]) continue;
        ++checked;
        if (!e[c->second]) ++violations;
      }
    }
  std::ostringstream d;
  d << "tables=" << b.tables.size() << " applicable=" << checked << " violations=" << violations;
  return {!b.tables.empty() && violations == 0, d.str()};
}

// ------------------------------------------------------------ 4: completeness

Outcome completeness_loop() {
  auto cases = completeness_corpus();
  std::vector<int> verdict(cases.size(), -1);
  std::vector<std::string> why(cases.size());
  const long long n = static_cast<long long>(cases.size());
#pragma omp parallel for schedule(dynamic)
  for (long long i = 0; i < n; ++i) {
    const auto& c = cases[i];
    try {
      auto T = make_oracle_theory(theory_eca0(), DecidableSet(c.oracle));
      Nat m = completeness_level(c.sentence);
      auto cert = completeness_certificate(c.sentence, T, m);
      WellOrder ord(FiniteWellOrder::natural(m + 1));
      Verdict v = check_certificate(*cert, cnf_nat(m), c.sentence, T, ord, CheckPolicy{});
      verdict[i] = static_cast<int>(v.kind);
      why[i] = v.reason;
    } catch (const std::exception& e) {
      why[i] = e.what();
    }
  }
  std::size_t accepted = 0, advisory = 0;
  std::string first_fail;
  for (std::size_t i = 0; i < cases.size(); ++i) {
    if (verdict[i] == static_cast<int>(Verdict::Kind::Accepted)) ++accepted;
    else if (verdict[i] == static_cast<int>(Verdict::Kind::AcceptedAdvisory)) ++advisory;
    else if (first_fail.empty())
      first_fail = print_formula(cases[i].sentence) + " over " + cases[i].oracle_name + ": " + why[i];
  }
  std::ostringstream d;
  d << "cases=" << cases.size() << " accepted=" << accepted << " advisory=" << advisory
    << " rejected=" << cases.size() - accepted - advisory;
  if (!first_fail.empty()) d << " first_failure=\"" << first_fail << "\"";
  return {cases.size() >= 50 && accepted + advisory == cases.size(), d.str()};
}

// ------------------------------------------------------------ 5: uniqueness

Outcome tr_uniqueness(std::uint64_t seed) {
  Rng rng(seed ^ 0x5151);
  std::size_t formulas = 0, candidates = 0, uv = 0, hv = 0, direct_uv = 0, direct_hv = 0;
  for (int i = 0; i < 12; ++i) {
    Nat stages = 2 + i % 3;
    Nat cutoff = kHatBits / stages;
    auto order = random_order(rng, stages);
    auto rf = random_recursion_formula(rng, stages, false, false);
    TrAudit a = tr_exhaustive_audit(rf, order, cutoff);
    HatTable h = hat_table(rf, order, cutoff);
    StageSet truth = tr_compute(rf, order, cutoff);
    ++formulas;
    candidates += a.candidates;
    uv += a.uniqueness_violations;
    hv += a.hat_violations;
    // the same statements through the public checks, candidate by candidate
    const long long n = static_cast<long long>(h.prefix.size());
    std::size_t du = 0, dh = 0;
#pragma omp parallel for schedule(dynamic, 256) reduction(+ : du, dh)
    for (long long y = 0; y < n; ++y) {
      StageSet Y = stage_set_of_bits(order, cutoff, static_cast<std::uint64_t>(y));
      for (Nat lambda : order.carrier) {
        if (tr_check_below(rf, lambda, Y).ok && !eq_upto(Y, truth, lambda)) ++du;
        if (hat_tr_check(h, lambda, Y) != tr_check(rf, lambda, Y).ok) ++dh;
      }
    }
    direct_uv += du;
    direct_hv += dh;
  }
  std::ostringstream d;
  d << "formulas=" << formulas << " candidates=" << candidates << " uniqueness_violations=" << uv + direct_uv
    << " hat_violations=" << hv + direct_hv;
  return {formulas >= 10 && uv + hv + direct_uv + direct_hv == 0, d.str()};
}

// ------------------------------------------------------------ 6: unfolding

Outcome unfolding(std::uint64_t seed) {
  Rng rng(seed ^ 0x6161);
  const Caps caps{16, 1 << 20, true};
  const Nat cutoff = 8, depth = 4;
  std::size_t formulas = 0, points = 0, mismatches = 0;
  for (int i = 0; i < 12; ++i) {
    auto rf = random_recursion_formula(rng, depth, true, true, 2);
    auto truth = tr_compute(rf, FiniteWellOrder::natural(depth), cutoff, caps);
    ++formulas;
    for (Nat m = 0; m < depth; ++m) {
      Formula u = phi_unfold(rf, m + 1);
      for (Nat x = 0; x < cutoff; ++x) {
        Env env;
        env.oracle = rf.oracle;
        env.bind(rf.x, x);
        ++points;
        if ((evaluate(u, env, caps) == Tri::True) != truth.has(m, x)) ++mismatches;
      }
    }
    Env env;
    if (evaluate(phi_unfold(rf, 0), env, caps) != Tri::False) ++mismatches;
  }
  std::ostringstream d;
  d << "formulas=" << formulas << " points=" << points << " mismatches=" << mismatches;
  return {mismatches == 0, d.str()};
}

// ------------------------------------------------------------ 7: table variant

Outcome tilde_agreement(std::uint64_t seed) {
  Rng rng(seed ^ 0x7171);
  std::size_t instances = 0, mismatches = 0, members = 0;
  std::string failure;
  for (int i = 0; i < 4; ++i) {
    Nat stages = 2 + i % 2, cutoff = 3 + i % 2;
    auto order = random_order(rng, stages);
    auto rf = random_recursion_formula(rng, stages, true, false, 0);
    try {
      auto T = make_oracle_theory(theory_rca0(), rf.oracle ? *rf.oracle : DecidableSet());
      StageSet truth = tr_compute(rf, order, cutoff);
      IpcConfig cfg;
      cfg.code_bound = 64;
      cfg.numcap = 4;
      for (Nat z : order.carrier)
        for (Nat x = 0; x < cutoff; ++x) {
          cfg.seeds.push_back(tr_box_formula(rf, order, z, x));
          if (!truth.has(z, x)) continue;
          auto c = tr_box_certificate(rf, truth, z, x, T);
          for (auto& f : cert_formulas(*c, cfg.numcap)) cfg.seeds.push_back(f);
        }
      Nat top = 0;
      for (Nat z : order.carrier) top = std::max(top, tilde_level(rf, order, z));
      IpcTable tbl = saturate_ipc(T, FiniteWellOrder::natural(top + 1), cfg);
      StageSet built = tilde_tr_build(rf, order, cutoff, tbl);
      ++instances;
      members += truth.content.size();
      if (!same_content(built, truth)) ++mismatches;
    } catch (const std::exception& e) {
      ++mismatches;
      if (failure.empty()) failure = e.what();
    }
  }
  std::ostringstream d;
  d << "instances=" << instances << " members=" << members << " mismatches=" << mismatches;
  if (!failure.empty()) d << " error=\"" << failure << "\"";
  return {instances >= 3 && mismatches == 0, d.str()};
}

// ------------------------------------------------------------ 8: models

Outcome model_battery(std::uint64_t seed) {
  auto models = model_corpus(seed ^ 0x8181, 12);
  Rng rng(seed ^ 0x8282);
  const Caps small{16, 1 << 20, false}, large{40, 1 << 20, false};
  std::size_t sat_fail = 0, disagree = 0, refl_points = 0, refl_fail = 0, ind_applied = 0, ind_fail = 0;
  std::size_t audited = 0, unsound = 0;
  std::string first;
  auto note = [&](const std::string& s) {
    if (first.empty()) first = s;
  };
  for (const auto& M : models) {
    const Nat listed = M.sets.size();
    // determinate uniqueness
    GenOptions so;
    so.listed = listed;
    std::vector<Formula> roots;
    for (int k = 0; k < 6; ++k) {
      FormulaGen g(rng, so);
      roots.push_back(g.formula(3));
    }
    SatTable a = sat_table(M, roots, small, 4), b = sat_table(M, roots, large, 4);
    SatTable c = a;
    for (auto& v : c.values)
      if (std::uniform_int_distribution<int>(0, 1)(rng)) v = Tri::Unknown;
    for (const SatTable* t : {&a, &b, &c}) {
      auto ck = check_sat_definition(M, *t, small);
      if (!ck.ok) {
        ++sat_fail;
        note("sat clause " + ck.clause + " at " + print_formula(*ck.violated));
      }
    }
    for (std::size_t i = 0; i < a.scope.size(); ++i)
      for (const SatTable* t : {&b, &c}) {
        auto v = t->lookup(a.scope[i]);
        if (v && *v != Tri::Unknown && a.values[i] != Tri::Unknown && *v != a.values[i]) ++disagree;
      }
    // reflection
    GenOptions ro;
    ro.free_vars = 2;
    ro.free_sets = std::min<Nat>(2, listed);
    for (int k = 0; k < 8; ++k) {
      FormulaGen g(rng, ro);
      Formula phi = g.formula(3);
      for (Nat n0 = 0; n0 < 3; ++n0) {
        Nat n1 = std::uniform_int_distribution<Nat>(0, 6)(rng);
        Nat i0 = std::uniform_int_distribution<Nat>(0, listed - 1)(rng);
        Nat i1 = std::uniform_int_distribution<Nat>(0, listed - 1)(rng);
        Env env = M.env();
        env.bind(0, n0).bind(1, n1);
        Formula closed = bind_const(bind_const(phi, 0, n0), 1, n1);
        if (ro.free_sets > 0) {
          env.bind_set(0, DecidableSet(M.sets[i0]));
          closed = bind_set_const(closed, 0, i0);
        }
        if (ro.free_sets > 1) {
          env.bind_set(1, DecidableSet(M.sets[i1]));
          closed = bind_set_const(closed, 1, i1);
        }
        ++refl_points;
        if (evaluate(phi, env, small) != satisfies(M, closed, small)) {
          ++refl_fail;
          note("reflection at " + print_formula(phi));
        }
      }
    }
    // set induction
    std::vector<Formula> ind = {parse_formula("(or (in x X) (not (in x X)))"),
                                parse_formula("(ex< y (+ x 1) (= y x))"),
                                parse_formula("(-> (in (+ x 1) X) (in (+ x 1) X))")};
    GenOptions io;
    io.free_vars = 1;
    io.free_sets = 1;
    io.second_order = false;
    for (int k = 0; k < 8; ++k) {
      FormulaGen g(rng, io);
      ind.push_back(g.formula(2));
    }
    for (const auto& phi : ind)
      for (Nat bset = 0; bset < listed; ++bset) {
        auto r = set_induction_check(M, phi, 0, 0, bset, 8, small);
        if (r.premises) ++ind_applied;
        if (!r.ok) {
          ++ind_fail;
          note("induction at " + print_formula(phi));
        }
      }
    // soundness of a saturated table over Q with M's oracle
    auto T = make_oracle_theory(theory_q(), DecidableSet(M.oracle()));
    IpcConfig cfg;
    cfg.code_bound = 1024;
    cfg.numcap = 8;
    cfg.instance_closure = true;
    for (const auto& ax : T.base.base_axioms) cfg.seeds.push_back(ax);
    for (Nat k = 0; k < 6; ++k) {
      Formula lit = f_oracle(t_num(k));
      cfg.seeds.push_back(M.oracle().contains(k) ? lit : f_not(lit));
    }
    IpcTable t = saturate_ipc(T, FiniteWellOrder::natural(2), cfg);
    auto rep = soundness_audit(M, t, T, small);
    audited += rep.entries;
    unsound += rep.violations.size();
    if (!rep.ok()) note("unsound entry " + print_formula(rep.violations.front().second));
  }
  std::ostringstream d;
  d << "models=" << models.size() << " sat_failures=" << sat_fail << " disagreements=" << disagree
    << " reflection_points=" << refl_points << " reflection_failures=" << refl_fail
    << " induction_applied=" << ind_applied << " induction_failures=" << ind_fail << " audited=" << audited
    << " soundness_violations=" << unsound;
  if (!first.empty()) d << " first=\"" << first << "\"";
  bool ok = models.size() >= 10 && sat_fail + disagree + refl_fail + ind_fail + unsound == 0;
  return {ok, d.str()};
}

// ------------------------------------------------------------ 9: round trips

struct CliRun {
  int code;
  std::string out, err;
  bool operator==(const CliRun& o) const { return code == o.code && out == o.out && err == o.err; }
};

CliRun cli(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

void write_file(const std::filesystem::path& p, const std::string& s) {
  std::ofstream f(p, std::ios::binary);
  f << s;
}

Outcome round_trips(std::uint64_t seed) {
  std::size_t objects = 0, failures = 0;
  std::string first;
  auto check = [&](bool ok, const std::string& what) {
    ++objects;
    if (!ok) {
      ++failures;
      if (first.empty()) first = what;
    }
  };
  for (const auto& f : formula_corpus(seed, 5000, 4)) {
    std::string s = print_formula(f);
    Formula g = parse_formula(s);
    check(formula_eq(f, g) && print_formula(g) == s, s);
  }
  Rng rng(seed ^ 0x9191);
  for (int i = 0; i < 200; ++i) {
    auto d = random_descriptor(rng);
    check(descriptor_of(read_sexpr(print_descriptor(d))) == d, print_descriptor(d));
    auto o = random_order(rng, 1 + i % 5);
    std::string os = print_order(WellOrder(o));
    check(print_order(parse_order(os)) == os, os);
    auto rf = random_recursion_formula(rng, 2, true, false);
    auto st = tr_compute(rf, o, 3);
    std::string ss = print_stage_set(st);
    check(print_stage_set(parse_stage_set(ss)) == ss, ss);
  }
  for (const auto& M : model_corpus(seed, 50)) {
    std::string ms = print_model(M);
    check(print_model(parse_model(ms)) == ms, ms);
  }
  auto T = make_oracle_theory(theory_eca0(), DecidableSet(SetDescriptor::evens()));
  for (const auto& c : completeness_corpus())
    if (c.oracle_name == "evens") {
      auto cert = completeness_certificate(c.sentence, T, completeness_level(c.sentence));
      std::string cs = print_cert(*cert);
      check(print_cert(*parse_cert(cs)) == cs, "certificate for " + print_formula(c.sentence));
    }

  // CLI determinism: each command twice in process
  namespace fs = std::filesystem;
  fs::path dir = fs::temp_directory_path() / ("omegak-suite-" + std::to_string(seed));
  fs::create_directories(dir);
  std::string forms;
  for (const auto& f : formula_corpus(seed, 30, 3)) forms += print_formula(f) + "\n";
  write_file(dir / "corpus.sof", forms);
  write_file(dir / "true.sof", "(all x (ex y (< x y)))\n(ex x (O x))\n(all x (-> (< x 3) (< x 5)))\n");
  write_file(dir / "orders.swo", "3\n(finite-order (carrier 0 1) (rel (0 1)))\n(w^ 2)\n");
  write_file(dir / "rec.sof", "(or (= x 0) (ex< y x (in (pair 0 y) X)))\n");
  write_file(dir / "model.smod", "(model evens (set (prefix 1 0 1) (period 0)))\n");
  write_file(dir / "defs.sof", "(or (in x (C 0)) (in (+ x 1) (C 0)))\n");
  write_file(dir / "sat.sof", "(in (c 4) (C 0))\n(all X (ex x (in x X)))\n(ex x (O x))\n");
  const std::string p = dir.string() + "/";
  std::vector<std::vector<std::string>> runs = {
      {"parse", p + "corpus.sof"},
      {"--format", "records", "classify", p + "corpus.sof"},
      {"ord", p + "orders.swo"},
      {"--codes", "512", "saturate", "--theory", "q", "--oracle", "(finite 2)", "--order", "3"},
      {"--codes", "512", "cons", "--theory", "q", "--oracle", "(finite 2)", "--order", "1", "--level", "0"},
      {"synth-complete", "--theory", "eca0", "--oracle", "evens", p + "true.sof"},
      {"tr", "run", "--order", "3", "--cutoff", "4", p + "rec.sof"},
      {"tr", "unfold", "--n", "3", p + "rec.sof"},
      {"model", "sat", p + "model.smod", p + "sat.sof"},
      {"model", "jump", "--oracle", "(finite 2)", "--cutoff", "8", p + "defs.sof"},
      {"--format", "records", "model", "audit", "--theory", "q", "--order", "2", p + "model.smod"},
  };
  for (const auto& r : runs) {
    std::string joined;
    for (const auto& a : r) joined += a + " ";
    CliRun x = cli(r), y = cli(r);
    check(x == y && x.code != 2, "cli " + joined + "exit " + std::to_string(x.code) + ": " + x.err);
  }
  std::error_code ec;
  fs::remove_all(dir, ec);
  std::ostringstream d;
  d << "objects=" << objects << " failures=" << failures;
  if (!first.empty()) d << " first=\"" << first << "\"";
  return {failures == 0, d.str()};
}

struct CriterionInfo {
  const char* name;
  double limit;
};

const CriterionInfo kCriteriaInfo[kCriteria] = {
    {"coding monotonicity", 10},       {"table monotonicity and determinism", 60},
    {"distributivity closure", 0},     {"completeness loop", 60},
    {"recursion uniqueness", 120},     {"unfolding agreement", 0},
    {"table-based recursion", 0},      {"model battery", 60},
    {"round trips and determinism", 0},
};

}  // namespace

CriterionResult run_criterion(int id, const SuiteOptions& opt) {
  if (id < 1 || id > kCriteria) throw UsageError("no criterion " + std::to_string(id));
  std::uint64_t seed = opt.seed ? opt.seed : corpus_seed();
  CriterionResult r;
  r.id = id;
  r.name = kCriteriaInfo[id - 1].name;
  r.limit = kCriteriaInfo[id - 1].limit;
  auto t0 = Clock::now();
  Outcome o;
  try {
    switch (id) {
      case 1: o = coding_monotonicity(seed); break;
      case 2: o = ipc_monotonicity(seed); break;
      case 3: o = distributivity(seed); break;
      case 4: o = completeness_loop(); break;
      case 5: o = tr_uniqueness(seed); break;
      case 6: o = unfolding(seed); break;
      case 7: o = tilde_agreement(seed); break;
      case 8: o = model_battery(seed); break;
      default: o = round_trips(seed); break;
    }
  } catch (const std::exception& e) {
    o = {false, std::string("error: ") + e.what()};
  }
  r.seconds = std::chrono::duration<double>(Clock::now() - t0).count();
  r.pass = o.pass && (r.limit == 0 || r.seconds < r.limit);
  r.detail = o.detail;
  return r;
}

std::vector<CriterionResult> run_suite(const SuiteOptions& opt,
                                       const std::function<void(const CriterionResult&)>& on_result) {
  std::vector<CriterionResult> out;
  for (int id = 1; id <= kCriteria; ++id) {
    if (!opt.only.empty() && std::find(opt.only.begin(), opt.only.end(), id) == opt.only.end()) continue;
    out.push_back(run_criterion(id, opt));
    if (on_result) on_result(out.back());
  }
  return out;
}

std::string format_result(const CriterionResult& r, bool timing) {
  std::string s = std::string(r.pass ? "PASS" : "FAIL") + " [" + std::to_string(r.id) + "] " + r.name;
  if (timing) {
    char t[32];
    std::snprintf(t, sizeof t, "%.2f", r.seconds);
    s += std::string(" (") + t + "s";
    if (r.limit > 0) s += " < " + std::to_string(static_cast<int>(r.limit)) + "s";
    s += ")";
  } else if (r.limit > 0) {
    s += " (limit " + std::to_string(static_cast<int>(r.limit)) + "s)";
  }
  return s + " " + r.detail;
}

}  // namespace omk
