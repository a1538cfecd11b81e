#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "heavyloc/runner.hpp"

namespace {

std::optional<nlohmann::json> load(const std::string& path, int& status) {
  std::ifstream in(path);
  if (!in) {
    std::cerr << "cannot read " << path << "\n";
    status = heavyloc::kExitIo;
    return std::nullopt;
  }
  try {
    return nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    std::cerr << "invalid config: " << e.what() << "\n";
    status = heavyloc::kExitInvalidConfig;
    return std::nullopt;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Heavy-tailed Kronig-Penney simulations"};
  app.require_subcommand(1);
  std::string config_path;
  int workers = 0;
  std::string output_dir;

  auto* run_cmd = app.add_subcommand("run", "run an experiment sweep");
  run_cmd->add_option("config", config_path, "JSON config")->required();
  run_cmd->add_option("--workers", workers, "worker threads (overrides config)")->check(CLI::PositiveNumber);
  run_cmd->add_option("--output-dir", output_dir, "output directory (overrides config)");

  auto* validate_cmd = app.add_subcommand("validate", "check a config and list problems");
  validate_cmd->add_option("config", config_path, "JSON config")->required();

  CLI11_PARSE(app, argc, argv);

  int status = 0;
  auto doc = load(config_path, status);
  if (!doc) return status;
  std::vector<std::string> diag;
  heavyloc::ExperimentConfig config = heavyloc::parse_config(*doc, diag);
  if (diag.empty()) {
    if (workers > 0) config.workers = workers;
    if (!output_dir.empty()) config.output_dir = output_dir;
    diag = heavyloc::validate(config);
  }
  if (!diag.empty()) {
    for (const auto& d : diag) std::cerr << "invalid config: " << d << "\n";
    return heavyloc::kExitInvalidConfig;
  }
  if (*validate_cmd) {
    std::cout << "config ok\n";
    return 0;
  }
  return heavyloc::run(config);
}
