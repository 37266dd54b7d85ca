#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "conc/json_io.hpp"
#include "conc/run.hpp"
#include "oracle.hpp"

using namespace conc;
namespace fs = std::filesystem;

namespace {

struct TempDir {
  fs::path path;
  TempDir() : path(fs::temp_directory_path() / "conc_run_test") {
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  std::string file(const char* name) const { return (path / name).string(); }
};

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

void write_verify_input(const std::string& path) {
  // a junta with unit L_2 norm on 11 fair bits
  nlohmann::json doc;
  doc["space"] = {{"uniform", {{"k", 2}, {"n", 11}}}};
  doc["f"] = {{"type", "junta"},
              {"coords", {1, 2, 3}},
              {"values", {0.5, -0.5, 0.5, -0.5, 0.5, -0.5, 0.5, -0.5}}};
  std::ofstream(path) << doc.dump();
}

}  // namespace

TEST_CASE("parameter validation happens before any computation") {
  RunConfig cfg;
  cfg.command = RunConfig::Command::verify;
  cfg.input_path = "does-not-matter.json";
  cfg.epsilon = 0.0;
  cfg.p = 2.0;
  CHECK(run(cfg) == 2);
  cfg.epsilon = 0.9;
  cfg.p = 1.0;
  CHECK(run(cfg) == 2);
}

TEST_CASE("missing input files exit with status 2") {
  TempDir dir;
  RunConfig cfg;
  cfg.command = RunConfig::Command::locate;
  cfg.input_path = dir.file("nope.json");
  cfg.out_path = dir.file("out.json");
  cfg.epsilon = 1.0;
  cfg.p = 2.0;
  CHECK(run(cfg) == 2);
}

TEST_CASE("verify runs end to end and is byte-deterministic") {
  TempDir dir;
  write_verify_input(dir.file("in.json"));

  RunConfig cfg;
  cfg.command = RunConfig::Command::verify;
  cfg.input_path = dir.file("in.json");
  cfg.out_path = dir.file("r1.json");
  cfg.epsilon = 0.9;
  cfg.p = 2.0;
  cfg.seed = 7;
  CHECK(run(cfg) == 0);
  cfg.out_path = dir.file("r2.json");
  CHECK(run(cfg) == 0);
  const std::string r1 = slurp(dir.file("r1.json"));
  CHECK(!r1.empty());
  CHECK(r1 == slurp(dir.file("r2.json")));
  CHECK(nlohmann::json::parse(r1)["pass"] == true);
}

TEST_CASE("locate emits the derived constants") {
  TempDir dir;
  write_verify_input(dir.file("in.json"));
  RunConfig cfg;
  cfg.command = RunConfig::Command::locate;
  cfg.input_path = dir.file("in.json");
  cfg.out_path = dir.file("loc.json");
  cfg.epsilon = 0.9;
  cfg.p = 2.0;
  CHECK(run(cfg) == 0);
  const auto rep = nlohmann::json::parse(slurp(dir.file("loc.json")));
  CHECK(rep["c"].get<double>() == doctest::Approx(0.25 * std::pow(0.9, 3.0)).epsilon(1e-15));
  CHECK(rep["min_n"] == 11);
  CHECK(rep["interval"]["hi"].get<int>() >= rep["interval"]["lo"].get<int>());
}

TEST_CASE("inequality suites run and report zero violations") {
  TempDir dir;
  RunConfig cfg;
  cfg.command = RunConfig::Command::ineq;
  cfg.suite = "rx";
  cfg.trials = 5;
  cfg.seed = 3;
  cfg.out_path = dir.file("rx.json");
  CHECK(run(cfg) == 0);
  const auto recs = nlohmann::json::parse(slurp(dir.file("rx.json")));
  CHECK(recs.is_array());
  CHECK(recs.size() == 25);  // 5 trials x default grid of 5 exponents
  for (const auto& r : recs) CHECK(r["holds"] == true);

  cfg.suite = "bad";
  CHECK(run(cfg) == 2);
}

TEST_CASE("counterexample subcommand") {
  TempDir dir;
  RunConfig cfg;
  cfg.command = RunConfig::Command::counterexample;
  cfg.n = 4;
  cfg.out_path = dir.file("ce.json");
  CHECK(run(cfg) == 0);
  const auto rep = nlohmann::json::parse(slurp(dir.file("ce.json")));
  CHECK(rep["pass"] == true);
  CHECK(rep["p_A"].get<double>() == 0.0625);
  CHECK(rep["subsets"].size() == 14);  // 2^4 - 2 proper nonempty subsets

  cfg.n = 1;
  CHECK(run(cfg) == 2);
  cfg.n = 20;
  CHECK(run(cfg) == 2);
}

TEST_CASE("lemma8 subcommand on the uniform cube") {
  TempDir dir;
  nlohmann::json doc;
  doc["space"] = {{"uniform", {{"k", 2}, {"n", 176}}}};
  doc["f"] = {{"type", "junta"}, {"coords", {4, 9}}, {"values", {1.0, 0.0, 0.0, 1.0}}};
  std::ofstream(dir.file("in.json")) << doc.dump();

  RunConfig cfg;
  cfg.command = RunConfig::Command::lemma8;
  cfg.input_path = dir.file("in.json");
  cfg.out_path = dir.file("l8.json");
  cfg.k = 2;
  cfg.m = 1;
  cfg.eta = 0.9;
  CHECK(run(cfg) == 0);
  const auto rep = nlohmann::json::parse(slurp(dir.file("l8.json")));
  CHECK(rep["pass"] == true);
  CHECK(rep["n_min"] == 176);
  CHECK(rep["interval"]["hi"].get<int>() == rep["interval"]["lo"].get<int>());
}

TEST_CASE("theorem9 subcommand") {
  TempDir dir;
  nlohmann::json doc;
  doc["space"] = {{"uniform", {{"k", 2}, {"n", 14}}}};
  doc["members"] = nlohmann::json::array();
  for (int t = 0; t < 4; ++t)
    doc["members"].push_back(
        {{"type", "junta"}, {"coords", {2, 5}}, {"values", {0.4, -0.4, 0.4, -0.4}}});
  std::ofstream(dir.file("fam.json")) << doc.dump();

  RunConfig cfg;
  cfg.command = RunConfig::Command::theorem9;
  cfg.input_path = dir.file("fam.json");
  cfg.out_path = dir.file("t9.json");
  cfg.epsilon = 0.9;
  cfg.p = 2.0;
  CHECK(run(cfg) == 0);
  const auto rep = nlohmann::json::parse(slurp(dir.file("t9.json")));
  CHECK(rep["pass"] == true);
  CHECK(rep["mu_G"].get<double>() >= 0.1);
}
