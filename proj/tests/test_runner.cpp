#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "doctest.h"
#include "heavyloc/runner.hpp"

using namespace heavyloc;
namespace fs = std::filesystem;

namespace {

nlohmann::json base_doc(const std::string& experiment) {
  return {{"experiment", experiment},
          {"model", {{"model", "III"}, {"alpha1", 0.5}, {"alpha2", 0.5}, {"theta0", 0.0}}},
          {"alpha_grid", {0.5}},
          {"energy_grid", {1.0}},
          {"n_grid", {100, 400}},
          {"n_seeds", 6},
          {"master_seed", 17},
          {"output_dir", (fs::temp_directory_path() / "heavyloc_runner_test").string()},
          {"workers", 1}};
}

ExperimentConfig parsed(const nlohmann::json& doc) {
  std::vector<std::string> diag;
  ExperimentConfig c = parse_config(doc, diag);
  REQUIRE(diag.empty());
  return c;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

bool has(const std::vector<std::string>& diag, const std::string& text) {
  for (const auto& d : diag)
    if (d.find(text) != std::string::npos) return true;
  return false;
}

}  // namespace

TEST_CASE("valid config has no diagnostics") { CHECK(validate(base_doc("ids")).empty()); }

TEST_CASE("alpha outside (0,1) is reported") {
  auto doc = base_doc("ids");
  doc["alpha_grid"] = {1.2};
  CHECK(has(validate(doc), "alpha must lie in (0,1)"));
}

TEST_CASE("Model I needs positive energy") {
  auto doc = base_doc("lyapunov");
  doc["model"]["model"] = "I";
  doc["energy_grid"] = {0.0};
  CHECK(has(validate(doc), "energy > 0"));
}

TEST_CASE("structural problems are all listed") {
  auto doc = base_doc("ids");
  doc["energy_grid"] = nlohmann::json::array();
  doc["n_seeds"] = 0;
  doc["workers"] = 0;
  const auto diag = validate(doc);
  CHECK(has(diag, "energy_grid must not be empty"));
  CHECK(has(diag, "n_seeds must be >= 1"));
  CHECK(has(diag, "workers must be >= 1"));
  auto bad = base_doc("nope");
  bad.erase("master_seed");
  bad["n_grid"] = "x";
  const auto d2 = validate(bad);
  CHECK(has(d2, "unknown experiment"));
  CHECK(has(d2, "missing field 'master_seed'"));
  CHECK(has(d2, "'n_grid' must be a list"));
}

TEST_CASE("mixing requires Model I") {
  auto doc = base_doc("mixing");
  CHECK(has(validate(doc), "Model I"));
}

TEST_CASE("empty energy grid exits with status 2") {
  auto doc = base_doc("ids");
  ExperimentConfig c = parsed(doc);
  c.energy_grid.clear();
  CHECK(run(c) == kExitInvalidConfig);
}

TEST_CASE("unwritable output directory exits with status 3") {
  const fs::path blocker = fs::temp_directory_path() / "heavyloc_runner_blocker";
  { std::ofstream(blocker) << "x"; }
  ExperimentConfig c = parsed(base_doc("ids"));
  c.output_dir = (blocker / "sub").string();
  CHECK(run(c) == kExitIo);
  fs::remove(blocker);
}

TEST_CASE("results are independent of the worker count") {
  ExperimentConfig c = parsed(base_doc("lyapunov"));
  const fs::path dir = c.output_dir;
  c.output_dir = (dir / "w1").string();
  REQUIRE(run(c) == kExitOk);
  c.output_dir = (dir / "w3").string();
  c.workers = 3;
  REQUIRE(run(c) == kExitOk);
  const std::string a = slurp(dir / "w1" / "results.csv");
  CHECK(a == slurp(dir / "w3" / "results.csv"));
  CHECK(a.rfind("experiment,model,alpha,energy,n,seed,observable,value\n", 0) == 0);
  CHECK(slurp(dir / "w1" / "summary.json") == slurp(dir / "w3" / "summary.json"));
  const auto manifest = nlohmann::json::parse(slurp(dir / "w1" / "manifest.json"));
  CHECK(manifest["master_seed"] == 17);
  CHECK(manifest["code_version"] == kCodeVersion);
  fs::remove_all(dir);
}

TEST_CASE("Model III rotation per unit length is near 1/pi") {
  auto doc = base_doc("ids");
  doc["n_grid"] = {2000};
  doc["n_seeds"] = 20;
  ExperimentConfig c = parsed(doc);
  REQUIRE(run(c) == kExitOk);
  const auto summary = nlohmann::json::parse(slurp(fs::path(c.output_dir) / "summary.json"));
  bool found = false;
  for (const auto& g : summary["groups"]) {
    if (g["observable"] == "ids_per_length") {
      CHECK(g["median"].get<double>() == doctest::Approx(1.0 / 3.141592653589793).epsilon(0.02));
      found = true;
    }
  }
  CHECK(found);
  fs::remove_all(c.output_dir);
}

TEST_CASE("a saturating task is recorded and the sweep continues") {
  auto doc = base_doc("lyapunov");
  doc["model"]["model"] = "I";
  doc["alpha_grid"] = {0.005, 0.5};  // sqrt(X) = Z with index 0.005 overflows doubles
  doc["n_grid"] = {2000};
  doc["n_seeds"] = 3;
  ExperimentConfig c = parsed(doc);
  CHECK(run(c) == kExitNumerical);
  const auto summary = nlohmann::json::parse(slurp(fs::path(c.output_dir) / "summary.json"));
  REQUIRE(!summary["failed_tasks"].empty());
  CHECK(summary["failed_tasks"][0]["kind"] == "saturation");
  const std::string csv = slurp(fs::path(c.output_dir) / "results.csv");
  CHECK(csv.find(",0.5,1,2000,") != std::string::npos);
  fs::remove_all(c.output_dir);
}

TEST_CASE("every experiment kind runs") {
  for (const char* e : {"nonlinear", "darling", "spectrum"}) {
    auto doc = base_doc(e);
    doc["model"]["model"] = "II";
    doc["n_seeds"] = 3;
    ExperimentConfig c = parsed(doc);
    CHECK(run(c) == kExitOk);
    CHECK(fs::exists(fs::path(c.output_dir) / "results.csv"));
    fs::remove_all(c.output_dir);
  }
  auto doc = base_doc("mixing");
  doc["model"]["model"] = "I";
  doc["n_grid"] = {10};
  doc["n_seeds"] = 50;
  ExperimentConfig c = parsed(doc);
  CHECK(run(c) == kExitOk);
  fs::remove_all(c.output_dir);
}
