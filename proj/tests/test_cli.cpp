#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "qmix/datastore.hpp"
#include "qmix/linalg.hpp"
#include "qmix/states.hpp"

using namespace qmix;
namespace fs = std::filesystem;

namespace {

struct TempDir {
  fs::path path;
  TempDir() {
    static int counter = 0;
    path = fs::temp_directory_path() /
           ("qmix_cli_" + std::to_string(::getpid()) + "_" +
            std::to_string(counter++));
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
};

int run_cli(const std::string& args, const std::string& stdout_path = "") {
  std::string cmd = std::string(QMIX_CLI_PATH) + " " + args;
  if (!stdout_path.empty()) cmd += " > " + stdout_path;
  cmd += " 2>/dev/null";
  const int rc = std::system(cmd.c_str());
  return WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("cel subcommand reports the Bell-state value") {
  TempDir dir;
  save_state((dir.path / "bell.qmix").string(), pure_to_density(ghz_state(2)));
  const auto out = dir.path / "cel.csv";
  REQUIRE(run_cli("cel --input " + (dir.path / "bell.qmix").string(),
                  out.string()) == 0);
  std::istringstream in(slurp(out));
  std::string header, row;
  std::getline(in, header);
  std::getline(in, row);
  CHECK(header == "value,n_qubits,purity,subset_purity_sum");
  CHECK(std::stod(row.substr(0, row.find(','))) ==
        doctest::Approx(0.25).epsilon(1e-12));
  CHECK(row.find(",2,") != std::string::npos);
}

TEST_CASE("families subcommand flags the threshold point") {
  TempDir dir;
  const auto out = dir.path / "fam.csv";
  REQUIRE(run_cli("families ghz --n 3 --p 0.2", out.string()) == 0);
  const std::string text = slurp(out);
  // at the exact threshold: within the separable region, CEL not positive
  CHECK(text.find(",1,0\n") != std::string::npos);
}

TEST_CASE("swap-test subcommand matches the exact CEL") {
  TempDir dir;
  save_state((dir.path / "noisy.qmix").string(), noisy_ghz_state(2, 0.5));
  const auto out = dir.path / "swap.csv";
  REQUIRE(run_cli("swap-test --input " + (dir.path / "noisy.qmix").string(),
                  out.string()) == 0);
  std::istringstream in(slurp(out));
  std::string header, row;
  std::getline(in, header);
  std::getline(in, row);
  const auto last_comma = row.rfind(',');
  const double abs_err = std::stod(row.substr(last_comma + 1));
  CHECK(abs_err < 1e-8);
}

TEST_CASE("gen-separable is deterministic across runs") {
  TempDir dir;
  const auto d1 = dir.path / "a";
  const auto d2 = dir.path / "b";
  REQUIRE(run_cli("gen-separable --n 3 --count 10 --seed 1 --out " + d1.string(),
                  (dir.path / "log1").string()) == 0);
  REQUIRE(run_cli("gen-separable --n 3 --count 10 --seed 1 --out " + d2.string(),
                  (dir.path / "log2").string()) == 0);
  int compared = 0;
  for (const auto& entry : fs::directory_iterator(d1)) {
    const auto other = d2 / entry.path().filename();
    REQUIRE(fs::exists(other));
    REQUIRE(slurp(entry.path()) == slurp(other));
    ++compared;
  }
  CHECK(compared == 11);  // 10 states + manifest
}

TEST_CASE("stochastic subcommands refuse to run without a seed") {
  TempDir dir;
  CHECK(run_cli("gen-separable --n 2 --count 2 --out " +
                (dir.path / "x").string()) != 0);
  CHECK(run_cli("purity-survey --samples 2") != 0);
  CHECK(run_cli("report --figure purity --samples 1") != 0);
}

TEST_CASE("train and eval complete on a tiny dataset") {
  TempDir dir;
  const auto ent = dir.path / "ent";
  const auto sep = dir.path / "sep";
  const auto all = dir.path / "all";
  REQUIRE(run_cli("gen-entangled --n 2 --count 24 --seed 3 --ansatz SEA "
                  "--depth 2 --out " + ent.string(),
                  (dir.path / "lg").string()) == 0);
  REQUIRE(run_cli("gen-separable --n 2 --count 24 --seed 3 --out " +
                  sep.string(), (dir.path / "lg").string()) == 0);

  // merge the two directories into one dataset
  auto loaded = load_dataset(ent.string());
  auto more = load_dataset(sep.string());
  auto states = loaded.states;
  states.insert(states.end(), more.states.begin(), more.states.end());
  save_dataset(all.string(), "tiny", states, 0.25, 0.5);

  const auto params = dir.path / "params.json";
  const auto finals = dir.path / "final.csv";
  REQUIRE(run_cli("train --dataset " + all.string() +
                  " --ansatz HWE --width 3 --depth 2 --seed 5 --iters 8 "
                  "--batch 8 --save-params " + params.string(),
                  finals.string()) == 0);
  const std::string ftext = slurp(finals);
  CHECK(ftext.find("n,ansatz,width,depth,seed,accuracy,precision,recall,f1") == 0);
  CHECK(ftext.find("2,HWE,3,2,5,") != std::string::npos);

  const auto eval_out = dir.path / "eval.csv";
  REQUIRE(run_cli("eval --dataset " + all.string() + " --params " +
                  params.string(), eval_out.string()) == 0);
  CHECK(slurp(eval_out).find("2,HWE,3,2,5,") != std::string::npos);
}
