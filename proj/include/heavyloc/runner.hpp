#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "heavyloc/models.hpp"
#include "json.hpp"

namespace heavyloc {

enum class Experiment { lyapunov, ids, nonlinear, darling, mixing, spectrum };

std::string to_string(Experiment experiment);

struct ExperimentConfig {
  Experiment experiment = Experiment::ids;
  ModelConfig model;
  std::vector<double> alpha_grid;   // overrides the model's main tail index (alpha1, or alpha2 for Model III)
  std::vector<double> energy_grid;  // lambda values
  std::vector<std::size_t> n_grid;  // bump counts
  std::size_t n_seeds = 1;
  std::uint64_t master_seed = 0;
  std::string output_dir = "results";
  int workers = 1;
  // mixing
  std::vector<double> initial_points{-10.0, 0.0, 10.0};
  // spectrum
  double spectrum_half_width = 0.05;
  std::size_t max_eigenvalues = 50;
  double scale_exponent = 0.0;  // 0 selects the model's natural scale

  nlohmann::json to_json() const;
};

// Parses a config document; problems are appended to `diagnostics` instead of thrown.
ExperimentConfig parse_config(const nlohmann::json& doc, std::vector<std::string>& diagnostics);

// Every invariant violation of a parsed config; empty iff runnable.
std::vector<std::string> validate(const ExperimentConfig& config);

// Convenience: parse + validate a document.
std::vector<std::string> validate(const nlohmann::json& doc);

enum ExitCode : int { kExitOk = 0, kExitInvalidConfig = 2, kExitIo = 3, kExitNumerical = 4 };

// Runs the sweep and writes results.csv, summary.json and manifest.json into output_dir.
// Output depends only on the config (never on the worker count).
int run(const ExperimentConfig& config);

inline constexpr const char* kCodeVersion = "heavyloc 0.1.0";

}  // namespace heavyloc
