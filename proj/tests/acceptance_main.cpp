// One PASS/FAIL line per acceptance criterion; exit status 1 if any fails.

#include <sys/wait.h>
#include <unistd.h>

#include <cstdio>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>

#include "omegak/suite.hpp"

namespace {

struct Run {
  int code = -1;
  std::string out;
};

Run run_binary(const std::string& args) {
  std::string cmd = std::string(OMEGAK_CLI_PATH) + " " + args + " 2>&1";
  Run r;
  FILE* p = popen(cmd.c_str(), "r");
  if (!p) return r;
  char buf[4096];
  std::size_t n;
  while ((n = fread(buf, 1, sizeof buf, p)) > 0) r.out.append(buf, n);
  int status = pclose(p);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

// The in-process checks share an address space; this repeats a few commands
// in fresh processes so nothing leaks between runs.
std::string external_reproducibility() {
  namespace fs = std::filesystem;
  fs::path dir = fs::temp_directory_path() / ("omegak-acceptance-" + std::to_string(::getpid()));
  fs::create_directories(dir);
  std::ofstream(dir / "seeds.sof") << "(-> (all x (= x x)) (all x (= x x)))\n(O 2)\n";
  std::ofstream(dir / "rec.sof") << "(or (= x 0) (ex< y x (in (pair 0 y) X)))\n";
  const std::string d = dir.string() + "/";
  const char* commands[] = {
      "--format records --codes 512 --numcap 4 saturate --dump --theory q --oracle '(finite 2)' --order 3 "
      "--closure --seeds ",
      "--format records tr run --order 3 --cutoff 4 ",
      "--format records suite --criterion 1 --criterion 6",
  };
  const std::string inputs[] = {d + "seeds.sof", d + "rec.sof", ""};
  std::string problem;
  for (int i = 0; i < 3 && problem.empty(); ++i) {
    std::string args = commands[i] + inputs[i];
    Run a = run_binary(args), b = run_binary(args);
    if (a.code != 0) problem = "exit " + std::to_string(a.code) + " from: " + args;
    else if (a.out != b.out) problem = "output differs between runs of: " + args;
  }
  std::error_code ec;
  fs::remove_all(dir, ec);
  return problem;
}

}  // namespace

int main(int argc, char** argv) {
  omk::SuiteOptions opt;
  for (int i = 1; i < argc; ++i) {
    if (std::strcmp(argv[i], "--seed") == 0 && i + 1 < argc) opt.seed = std::stoull(argv[++i]);
    else opt.only.push_back(std::stoi(argv[i]));
  }
  bool all = true;
  omk::run_suite(opt, [&](const omk::CriterionResult& r) {
    omk::CriterionResult shown = r;
    if (r.id == 9) {
      std::string problem = external_reproducibility();
      shown.detail += problem.empty() ? " external_runs=ok" : " external_runs=\"" + problem + "\"";
      shown.pass = shown.pass && problem.empty();
    }
    all = all && shown.pass;
    std::cout << omk::format_result(shown) << std::endl;
  });
  return all ? 0 : 1;
}
