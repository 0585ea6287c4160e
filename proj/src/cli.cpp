#include "omegak/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <fstream>
#include <sstream>

#include "omegak/corpus.hpp"
#include "omegak/errors.hpp"
#include "omegak/ipc.hpp"
#include "omegak/model.hpp"
#include "omegak/suite.hpp"
#include "omegak/synth.hpp"
#include "omegak/syntax.hpp"
#include "omegak/tr.hpp"

namespace omk {

namespace {

struct Globals {
  Nat caps = 64, numcap = 16, codes = 4096, budget = 100000, sample = 8;
  std::string format = "text";
  std::string out;
};

std::string quote(const std::string& v) {
  if (!v.empty() && v.find_first_of(" \"\\=") == std::string::npos) return v;
  std::string s = "\"";
  for (char c : v) {
    if (c == '"' || c == '\\') s += '\\';
    s += c;
  }
  return s + "\"";
}

using Fields = std::vector<std::pair<std::string, std::string>>;

// Text lines or key=value records, one per line.
class Report {
 public:
  explicit Report(bool records) : records_(records) {}
  void line(const std::string& kind, const Fields& fields, const std::string& text) {
    if (!records_) {
      os_ << text << '\n';
      return;
    }
    os_ << "record=" << kind;
    for (const auto& [k, v] : fields) os_ << ' ' << k << '=' << quote(v);
    os_ << '\n';
  }
  std::string str() const { return os_.str(); }

 private:
  bool records_;
  std::ostringstream os_;
};

std::string read_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw UsageError("cannot read " + path);
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

// "@path" reads a file; anything else is the object text itself.
std::string inline_or_file(const std::string& arg) { return !arg.empty() && arg[0] == '@' ? read_file(arg.substr(1)) : arg; }

struct NumberedLine {
  int line;
  std::string text;
};

std::vector<NumberedLine> object_lines(const std::string& path) {
  std::istringstream in(read_file(path));
  std::vector<NumberedLine> out;
  std::string s;
  for (int n = 1; std::getline(in, s); ++n) {
    auto first = s.find_first_not_of(" \t\r");
    if (first == std::string::npos || s[first] == ';') continue;
    out.push_back({n, s});
  }
  return out;
}

struct FileParseError {
  std::string where;
  ParseError e;
};

template <class F>
auto parse_line(const std::string& path, const NumberedLine& l, F f) {
  try {
    return f(l.text);
  } catch (const ParseError& e) {
    throw FileParseError{path + ":" + std::to_string(l.line), e};
  }
}

std::vector<Formula> formulas_in(const std::string& path) {
  std::vector<Formula> out;
  for (const auto& l : object_lines(path)) out.push_back(parse_line(path, l, parse_formula));
  return out;
}

Formula first_formula(const std::string& path) {
  auto fs = formulas_in(path);
  if (fs.empty()) throw UsageError(path + " holds no formula");
  return fs.front();
}

TheorySpec theory_arg(const std::string& name) {
  auto t = theory_by_name(name);
  if (!t) {
    std::string names;
    for (const auto& n : theory_names()) names += " " + n;
    throw UsageError("unknown theory '" + name + "'; known:" + names);
  }
  return *t;
}

FiniteWellOrder finite_order_arg(const std::string& arg) {
  WellOrder o = parse_order(inline_or_file(arg));
  if (!o.finite()) throw UsageError("a finite order is needed here");
  return *o.finite();
}

Caps caps_of(const Globals& g) { return Caps{g.caps, 1 << 20, false}; }

IpcConfig ipc_config(const Globals& g, const std::string& seeds, bool closure) {
  IpcConfig cfg;
  cfg.code_bound = g.codes;
  cfg.numcap = g.numcap;
  cfg.budget = g.budget;
  cfg.instance_closure = closure;
  if (!seeds.empty()) cfg.seeds = formulas_in(seeds);
  return cfg;
}

RecursionFormula recursion_arg(const std::string& path, const std::string& oracle) {
  RecursionFormula rf;
  rf.phi = first_formula(path);
  rf.x = 0;
  rf.set_var = 0;
  if (!oracle.empty()) rf.oracle = parse_set(inline_or_file(oracle));
  if (rf.phi->has_oracle && !rf.oracle) throw UsageError("the formula reads the oracle; pass --oracle");
  return rf;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Iterated ω-rule provability toolkit"};
  app.name("omegak");
  app.require_subcommand(1);
  Globals g;
  app.add_option("--caps", g.caps, "unbounded-quantifier cap N")->check(CLI::PositiveNumber);
  app.add_option("--numcap", g.numcap, "numeral cap for ω-premise instances")->check(CLI::PositiveNumber);
  app.add_option("--codes", g.codes, "code bound G of the table universe")->check(CLI::PositiveNumber);
  app.add_option("--budget", g.budget, "derivations per level")->check(CLI::PositiveNumber);
  app.add_option("--sample", g.sample, "rows read from tabulated premises")->check(CLI::PositiveNumber);
  app.add_option("--format", g.format, "text or records")->check(CLI::IsMember({"text", "records"}));
  app.add_option("--out", g.out, "write the report here instead of stdout");

  std::string file, file2, theory = "eca0", audit_theory = "q", oracle = "empty", order, level, goal, seeds;
  Nat cutoff = 8, n = 0, lambda = 0;
  bool closure = false, dump = false, emit = false, sampled = false, below = false, timing = false;
  std::optional<Nat> mlevel;
  std::vector<int> criteria;

  auto theory_opts = [&](CLI::App* c) {
    c->add_option("--theory", theory, "q, eca0, rca0star, rca0, aca0");
    c->add_option("--oracle", oracle, "oracle set (text or @file)");
  };

  auto* parse = app.add_subcommand("parse", "print formulas canonically");
  parse->add_option("file", file, ".sof file")->required();
  auto* classify = app.add_subcommand("classify", "hierarchy class of each formula");
  classify->add_option("file", file)->required();
  auto* ord = app.add_subcommand("ord", "normal forms and well-order checks");
  ord->add_option("file", file)->required();

  auto* check_proof = app.add_subcommand("check-proof", "check a finitary proof");
  theory_opts(check_proof);
  check_proof->add_option("--goal", goal, "required conclusion (text or @file)");
  check_proof->add_option("file", file)->required();

  auto* check_cert = app.add_subcommand("check-cert", "check an ω-certificate");
  theory_opts(check_cert);
  check_cert->add_option("--order", order)->required();
  check_cert->add_option("--level", level)->required();
  check_cert->add_option("--goal", goal)->required();
  check_cert->add_flag("--sampled", sampled, "accept tabulated premises on --sample rows");
  check_cert->add_option("file", file)->required();

  auto* saturate = app.add_subcommand("saturate", "bounded provability table");
  auto* cons = app.add_subcommand("cons", "consistency query on a saturated table");
  for (auto* c : {saturate, cons}) {
    theory_opts(c);
    c->add_option("--order", order)->required();
    c->add_option("--seeds", seeds, "file of formulas added to the universe");
    c->add_flag("--closure", closure, "add subformulas and numeral instances of seeds");
  }
  saturate->add_flag("--dump", dump, "list every entry");
  cons->add_option("--level", lambda)->required();

  auto* synth = app.add_subcommand("synth-complete", "certificates for true sentences");
  theory_opts(synth);
  synth->add_option("--level", mlevel, "ω-nesting level (default: the least that suffices)");
  synth->add_flag("--emit", emit, "print each certificate");
  synth->add_option("file", file)->required();

  auto* tr = app.add_subcommand("tr", "transfinite recursion");
  tr->require_subcommand(1);
  auto* tr_run = tr->add_subcommand("run", "compute the stage set");
  tr_run->add_option("--order", order)->required();
  tr_run->add_option("--cutoff", cutoff);
  tr_run->add_option("--oracle", oracle);
  tr_run->add_option("file", file)->required();
  auto* tr_check = tr->add_subcommand("check", "check a stage set against the recursion");
  tr_check->add_option("--lambda", lambda)->required();
  tr_check->add_option("--oracle", oracle);
  tr_check->add_flag("--below", below, "stages strictly below lambda only");
  tr_check->add_option("formula", file)->required();
  tr_check->add_option("stages", file2)->required();
  auto* tr_unfold = tr->add_subcommand("unfold", "finite unfolding");
  tr_unfold->add_option("--n", n)->required();
  tr_unfold->add_option("file", file)->required();

  auto* model = app.add_subcommand("model", "coded ω-models");
  model->require_subcommand(1);
  auto* model_sat = model->add_subcommand("sat", "truth values of sentences");
  model_sat->add_option("model", file)->required();
  model_sat->add_option("sentences", file2)->required();
  auto* model_audit = model->add_subcommand("audit", "soundness of a saturated table in the model");
  model_audit->add_option("--theory", audit_theory);
  model_audit->add_option("--order", order)->required();
  model_audit->add_option("--seeds", seeds);
  model_audit->add_flag("--closure", closure);
  model_audit->add_option("model", file)->required();
  auto* model_jump = model->add_subcommand("jump", "bounded jump model");
  model_jump->add_option("--oracle", oracle);
  model_jump->add_option("--cutoff", cutoff);
  model_jump->add_option("defs", file)->required();

  auto* suite = app.add_subcommand("suite", "run the property battery");
  suite->add_option("--criterion", criteria, "criterion ids (default: all)");
  suite->add_flag("--timing", timing, "include wall-clock times");

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\n";
    return 2;
  }

  Report rep(g.format == "records");
  int code = 0;
  try {
    if (*parse) {
      int i = 0;
      for (const auto& f : formulas_in(file)) {
        std::string s = print_formula(f);
        rep.line("formula", {{"index", std::to_string(i++)}, {"code", code_str(godel_encode(f))}, {"text", s}}, s);
      }
    } else if (*classify) {
      int i = 0;
      for (const auto& f : formulas_in(file)) {
        std::string c = omk::classify(f).str();
        rep.line("class", {{"index", std::to_string(i++)}, {"class", c}}, c + " " + print_formula(f));
      }
    } else if (*ord) {
      for (const auto& l : object_lines(file)) {
        SExpr e = parse_line(file, l, [](const std::string& s) { return read_sexpr(s); });
        if (e.head() == "finite-order") {
          WellOrder o = parse_line(file, l, [&](const std::string&) { return order_of(e); });
          WoResult r = check_wo(*o.finite());
          if (!r.ok) code = 1;
          std::string v = r.ok ? "well-order" : "not a well-order: " + r.describe();
          rep.line("order", {{"elements", std::to_string(o.finite()->carrier.size())}, {"ok", r.ok ? "1" : "0"},
                             {"detail", v}},
                   v);
        } else if (e.head() == "cnf-order") {
          WellOrder o = parse_line(file, l, [&](const std::string&) { return order_of(e); });
          std::string s = cnf_str(o.cnf()->bound);
          rep.line("order", {{"bound", s}}, "notations up to " + s);
        } else {
          Cnf a = parse_line(file, l, [&](const std::string&) { return cnf_of(e); });
          std::string s = cnf_str(a);
          std::string lim = cnf_is_limit(a) ? "limit" : (a.is_zero() ? "zero" : "successor");
          rep.line("cnf", {{"value", s}, {"code", std::to_string(cnf_code(a))}, {"kind", lim}},
                   s + " code " + std::to_string(cnf_code(a)) + " " + lim);
        }
      }
    } else if (*check_proof) {
      auto T = make_oracle_theory(theory_arg(theory), parse_set(inline_or_file(oracle)));
      FinitaryProof p = parse_proof(read_file(file));
      CheckResult r = goal.empty() ? check_proof_lines(T, p) : omk::check_proof(T, p, parse_formula(inline_or_file(goal)));
      if (r.ok) {
        rep.line("proof", {{"verdict", "ok"}, {"lines", std::to_string(p.lines.size())}}, "ok");
      } else {
        code = 1;
        rep.line("proof", {{"verdict", "rejected"}, {"line", std::to_string(r.line)}, {"reason", r.message}},
                 "rejected at line " + std::to_string(r.line) + ": " + r.message);
      }
    } else if (*check_cert) {
      auto T = make_oracle_theory(theory_arg(theory), parse_set(inline_or_file(oracle)));
      CertPtr c = parse_cert(read_file(file));
      WellOrder o = parse_order(inline_or_file(order));
      CheckPolicy pol = sampled ? CheckPolicy::sampled(g.sample) : CheckPolicy{CheckPolicy::Mode::UniformRequired, g.sample};
      Verdict v = check_certificate(*c, parse_cnf(inline_or_file(level)), parse_formula(inline_or_file(goal)), T, o, pol);
      if (!v.accepted()) code = 1;
      std::string text = verdict_name(v.kind);
      if (!v.reason.empty()) text += ": " + v.reason;
      rep.line("certificate", {{"verdict", verdict_name(v.kind)}, {"reason", v.reason}}, text);
    } else if (*saturate || *cons) {
      auto T = make_oracle_theory(theory_arg(theory), parse_set(inline_or_file(oracle)));
      IpcTable t = saturate_ipc(T, finite_order_arg(order), ipc_config(g, seeds, closure));
      if (*saturate) {
        rep.line("table", {{"universe", std::to_string(t.universe.size())}, {"truncated", t.truncated ? "1" : "0"},
                           {"derivations", std::to_string(t.derivations)}},
                 "universe " + std::to_string(t.universe.size()) + (t.truncated ? " truncated" : ""));
        for (Nat l : t.levels)
          rep.line("level", {{"level", std::to_string(l)}, {"entries", std::to_string(t.count(l))}},
                   "level " + std::to_string(l) + " entries " + std::to_string(t.count(l)));
        if (dump) {
          std::istringstream in(dump_table(t));
          std::string s;
          while (std::getline(in, s)) {
            auto a = s.find(' '), b = s.find(' ', a + 1);
            rep.line("entry", {{"level", s.substr(0, a)}, {"code", s.substr(a + 1, b - a - 1)}, {"formula", s.substr(b + 1)}},
                     s);
          }
        }
      } else {
        bool ok = consistency_query(t, lambda);
        if (!ok) code = 1;
        rep.line("consistency", {{"level", std::to_string(lambda)}, {"result", ok ? "consistent" : "inconsistent"},
                                 {"truncated", t.truncated ? "1" : "0"}},
                 ok ? "consistent" : "inconsistent");
      }
    } else if (*synth) {
      auto T = make_oracle_theory(theory_arg(theory), parse_set(inline_or_file(oracle)));
      SynthOptions so;
      so.caps.quant = g.caps;
      so.table = g.sample;
      for (const auto& f : formulas_in(file)) {
        Nat m = mlevel ? *mlevel : completeness_level(f);
        std::string fs = print_formula(f);
        try {
          CertPtr c = completeness_certificate(f, T, m, so);
          Verdict v = check_certificate(*c, cnf_nat(m), f, T, WellOrder(FiniteWellOrder::natural(m + 1)),
                                        CheckPolicy{CheckPolicy::Mode::UniformRequired, g.sample});
          if (!v.accepted()) code = 1;
          rep.line("synth", {{"formula", fs}, {"level", std::to_string(m)}, {"verdict", verdict_name(v.kind)},
                             {"lines", std::to_string(cert_size(*c))}},
                   fs + " level " + std::to_string(m) + " " + verdict_name(v.kind) + " lines " +
                       std::to_string(cert_size(*c)));
          if (emit) rep.line("cert", {{"text", print_cert(*c)}}, print_cert(*c));
        } catch (const Error& e) {
          code = 1;
          rep.line("synth", {{"formula", fs}, {"level", std::to_string(m)}, {"verdict", "failed"}, {"reason", e.what()}},
                   fs + " level " + std::to_string(m) + " failed: " + e.what());
        }
      }
    } else if (*tr_run) {
      auto rf = recursion_arg(file, oracle == "empty" ? "" : oracle);
      StageSet s = tr_compute(rf, finite_order_arg(order), cutoff, caps_of(g));
      rep.line("stages", {{"members", std::to_string(s.content.size())}, {"text", print_stage_set(s)}}, print_stage_set(s));
    } else if (*tr_check) {
      auto rf = recursion_arg(file, oracle == "empty" ? "" : oracle);
      StageSet s = parse_stage_set(read_file(file2));
      TrCheck r = below ? omk::tr_check_below(rf, lambda, s, caps_of(g)) : omk::tr_check(rf, lambda, s, caps_of(g));
      if (r.ok) {
        rep.line("check", {{"result", "ok"}}, "ok");
      } else {
        code = 1;
        rep.line("check", {{"result", "violated"}, {"stage", std::to_string(r.witness->first)},
                           {"x", std::to_string(r.witness->second)}},
                 "violated at stage " + std::to_string(r.witness->first) + ", x = " + std::to_string(r.witness->second));
      }
    } else if (*tr_unfold) {
      RecursionFormula rf;
      rf.phi = first_formula(file);
      Formula u = phi_unfold(rf, n);
      rep.line("unfold", {{"n", std::to_string(n)}, {"text", print_formula(u)}}, print_formula(u));
    } else if (*model_sat) {
      CodedOmegaModel M = parse_model(read_file(file));
      for (const auto& f : formulas_in(file2)) {
        Tri t = satisfies(M, f, caps_of(g));
        rep.line("sat", {{"formula", print_formula(f)}, {"value", tri_name(t)}}, std::string(tri_name(t)) + " " + print_formula(f));
      }
    } else if (*model_audit) {
      CodedOmegaModel M = parse_model(read_file(file));
      auto T = make_oracle_theory(theory_arg(audit_theory), DecidableSet(M.oracle()));
      IpcConfig cfg = ipc_config(g, seeds, closure);
      for (const auto& a : T.base.base_axioms) cfg.seeds.push_back(a);
      IpcTable t = saturate_ipc(T, finite_order_arg(order), cfg);
      SoundnessReport r = soundness_audit(M, t, T, caps_of(g));
      if (!r.ok()) code = 1;
      rep.line("audit", {{"entries", std::to_string(r.entries)}, {"unknown", std::to_string(r.unknown)},
                         {"violations", std::to_string(r.violations.size())}},
               "entries " + std::to_string(r.entries) + " unknown " + std::to_string(r.unknown) + " violations " +
                   std::to_string(r.violations.size()));
      for (const auto& [l, f] : r.violations)
        rep.line("violation", {{"level", std::to_string(l)}, {"formula", print_formula(f)}},
                 "false at level " + std::to_string(l) + ": " + print_formula(f));
    } else if (*model_jump) {
      SetDescriptor X = descriptor_of(read_sexpr(inline_or_file(oracle)));
      CodedOmegaModel M = bounded_jump_model(X, cutoff, formulas_in(file), 0, caps_of(g));
      rep.line("model", {{"sets", std::to_string(M.sets.size())}, {"text", print_model(M)}}, print_model(M));
    } else if (*suite) {
      SuiteOptions so;
      so.seed = corpus_seed();
      so.only = criteria;
      for (const auto& r : run_suite(so)) {
        if (!r.pass) code = 1;
        rep.line("criterion", {{"id", std::to_string(r.id)}, {"name", r.name}, {"pass", r.pass ? "1" : "0"},
                               {"detail", r.detail}},
                 format_result(r, timing));
      }
    }
  } catch (const FileParseError& e) {
    // Objects sit on one line each, so the file line plus the column locate the error.
    std::string msg = e.e.what();
    if (auto p = msg.find(": "); p != std::string::npos) msg = msg.substr(p + 2);
    err << e.where << ":" << e.e.col << ": " << msg << "\n";
    return 2;
  } catch (const ParseError& e) {
    err << "parse error at " << e.what() << "\n";
    return 2;
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }

  if (g.out.empty()) {
    out << rep.str();
  } else {
    std::ofstream f(g.out, std::ios::binary);
    if (!f) {
      err << "usage error: cannot write " << g.out << "\n";
      return 2;
    }
    f << rep.str();
  }
  return code;
}

}  // namespace omk
