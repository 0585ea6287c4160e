#include <sys/wait.h>
#include <unistd.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "omegak/cli.hpp"
#include "omegak/model.hpp"
#include "omegak/proofkit.hpp"
#include "omegak/syntax.hpp"
#include "test_util.hpp"

using namespace omk;
using tu::F;
namespace fs = std::filesystem;

namespace {

struct Run {
  int code = -1;
  std::string out;  // stdout and stderr together
};

Run run(const std::string& args) {
  std::string cmd = std::string(OMEGAK_CLI_PATH) + " " + args + " 2>&1";
  Run r;
  FILE* p = popen(cmd.c_str(), "r");
  REQUIRE(p != nullptr);
  char buf[4096];
  std::size_t n;
  while ((n = fread(buf, 1, sizeof buf, p)) > 0) r.out.append(buf, n);
  int status = pclose(p);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

struct TempDir {
  fs::path dir;
  TempDir() {
    dir = fs::temp_directory_path() / ("omegak-cli-test-" + std::to_string(::getpid()));
    fs::create_directories(dir);
  }
  ~TempDir() {
    std::error_code ec;
    fs::remove_all(dir, ec);
  }
  std::string write(const std::string& name, const std::string& text) const {
    fs::path p = dir / name;
    std::ofstream(p) << text;
    return p.string();
  }
};

std::string plus_zero_node(Nat xi) {
  ProofBuilder sk;
  auto inst = sk.inst(sk.ax(q_axiom(4)), t_var(0));
  CertPtr skeleton = make_fin(sk.finish(inst));
  Formula goal = F("(all x (= (+ x 0) x))");
  ProofBuilder d;
  auto imp = d.taut(f_imp(goal, goal));
  return print_cert(*make_omega(cnf_nat(xi), 0, F("(= (+ x 0) x)"), uniform_template(0, skeleton), d.finish(imp)));
}

}  // namespace

TEST_CASE("consistency of the oracle table at the bottom level") {
  Run r = run("cons --theory q --oracle '(finite 2)' --order 1 --level 0");
  CHECK(r.code == 0);
  CHECK(r.out == "consistent\n");
}

TEST_CASE("certificate with its premise level equal to the goal level is rejected") {
  TempDir tmp;
  std::string same = tmp.write("same.scert", plus_zero_node(1) + "\n");
  Run r = run("check-cert --theory q --order 2 --level 1 --goal '(all x (= (+ x 0) x))' " + same);
  CHECK(r.code == 1);
  CHECK(r.out.find("ξ <_Λ λ violated") != std::string::npos);

  std::string below = tmp.write("below.scert", plus_zero_node(0) + "\n");
  Run ok = run("check-cert --theory q --order 2 --level 1 --goal '(all x (= (+ x 0) x))' " + below);
  CHECK(ok.code == 0);
}

TEST_CASE("malformed input files exit with 2") {
  TempDir tmp;
  std::string bad = tmp.write("bad.sof", "(= 0 0)\n; note\n(all x\n");
  Run r = run("parse " + bad);
  CHECK(r.code == 2);
  CHECK(r.out.find("bad.sof:3:7: grammar error") != std::string::npos);
  CHECK(run("classify " + (tmp.dir / "missing.sof").string()).code == 2);
  CHECK(run("frobnicate").code == 2);
  CHECK(run("cons --order 1").code == 2);
  CHECK(run("--help").code == 0);
}

TEST_CASE("classification and records output") {
  TempDir tmp;
  std::string f = tmp.write("f.sof", "(ex x (= x 3))\n(all x (ex y (< x y)))\n");
  Run text = run("classify " + f);
  CHECK(text.code == 0);
  Run rec = run("--format records classify " + f);
  CHECK(rec.code == 0);
  CHECK(rec.out == "record=class index=0 class=Sigma0_1\nrecord=class index=1 class=Pi0_2\n");
}

TEST_CASE("synthesis, recursion and models from the command line") {
  TempDir tmp;
  std::string s = tmp.write("s.sof", "(ex x (= x 3))\n(O 2)\n");
  Run synth = run("synth-complete --theory q --oracle '(finite 2)' " + s);
  CHECK(synth.code == 0);

  std::string phi = tmp.write("phi.sof", "(not (in (pair 0 x) X))\n");
  Run tr = run("--format records tr run --order 3 --cutoff 2 " + phi);
  CHECK(tr.code == 0);
  CHECK(tr.out.find("record=") != std::string::npos);

  std::string model = tmp.write("m.model", print_model(CodedOmegaModel({SetDescriptor::finite({2})})) + "\n");
  std::string sents = tmp.write("t.sof", "(O 2)\n(O 3)\n");
  Run sat = run("model sat " + model + " " + sents);
  CHECK(sat.code == 0);
  CHECK(sat.out.find("true") != std::string::npos);
  CHECK(sat.out.find("false") != std::string::npos);
}

TEST_CASE("reports are byte-for-byte reproducible") {
  TempDir tmp;
  std::string seeds = tmp.write("seeds.sof", "(-> (all x (= x x)) (all x (= x x)))\n(O 2)\n");
  std::string args = "--format records --codes 512 --numcap 4 saturate --dump --theory q --oracle '(finite 2)' "
                     "--order 3 --closure --seeds " + seeds;
  Run a = run(args), b = run(args);
  CHECK(a.code == 0);
  CHECK(a.out == b.out);
  CHECK(a.out.size() > 100);

  Run s1 = run("--format records suite --criterion 1 --criterion 6");
  Run s2 = run("--format records suite --criterion 1 --criterion 6");
  CHECK(s1.code == 0);
  CHECK(s1.out == s2.out);
}

TEST_CASE("the in-process entry point matches the binary") {
  std::ostringstream out, err;
  int code = run_cli({"cons", "--theory", "q", "--oracle", "(finite 2)", "--order", "1", "--level", "0"}, out, err);
  CHECK(code == 0);
  CHECK(out.str() == "consistent\n");
}
