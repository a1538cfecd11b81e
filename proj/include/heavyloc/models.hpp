#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "heavyloc/rng.hpp"

namespace heavyloc {

enum class PieceKind { bump, gap };

// One constant-potential segment.
struct Piece {
  double value = 0.0;
  double length = 1.0;
  std::int64_t index = 0;  // bump ordinal n (1-based), shared by a gap and the bump after it
  PieceKind kind = PieceKind::bump;
};

enum class Model { I, II, III, IV };

std::string to_string(Model model);
Model model_from_string(const std::string& name);

struct ModelConfig {
  Model model = Model::I;
  double alpha1 = 0.5;  // bump-height index (I, II, IV)
  double alpha2 = 0.5;  // gap-length index (III, IV)
  double theta0 = 0.0;  // boundary angle in [0, pi)
  double energy = 1.0;  // lambda; k = sqrt(|lambda|)

  // Tail index that sets the nonlinear scale n^{1/alpha} of the model.
  double primary_alpha() const;
};

// Empty when the configuration is admissible.
std::vector<std::string> config_diagnostics(const ModelConfig& config);
void require_valid(const ModelConfig& config);

struct Realization {
  Model model = Model::I;
  std::vector<Piece> pieces;
  std::vector<double> offsets;       // left end of each piece
  std::vector<double> bump_heights;  // X_n (I, II, IV)
  std::vector<double> gap_lengths;   // Y_n (III, IV)
  std::vector<int> signs;            // epsilon_n in {0,1} (IV)
  std::vector<double> bump_ends;     // coordinate of the right edge of bump n: n (I, II) or L_n (III, IV)

  std::size_t n_bumps() const { return bump_ends.size(); }
  double total_length() const { return pieces.empty() ? 0.0 : offsets.back() + pieces.back().length; }
  // Number of pieces that make up the first n bumps (and their gaps).
  std::size_t pieces_through_bump(std::size_t n) const;
};

Realization generate(const ModelConfig& config, std::size_t n_bumps, RngStream& stream);

// Builds a realization from explicit sequences (missing ones are ignored by models that don't use them).
Realization assemble(Model model, std::span<const double> heights, std::span<const double> gaps,
                     std::span<const int> signs);

// Free potential made of `n` unit pieces with V = 0 (test and calibration fixture).
Realization free_realization(std::size_t n, double piece_length = 1.0);

// Index of the piece whose half-open interval contains x; x = total length maps to the last piece.
std::size_t l_index(const Realization& realization, double x);

// Prefix of the realization covering [0, length] (the last piece is cut if needed).
Realization truncate(const Realization& realization, double length);

void write_realization_csv(std::ostream& out, const Realization& realization);

}  // namespace heavyloc
