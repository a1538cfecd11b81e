#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "heavyloc/models.hpp"
#include "heavyloc/rng.hpp"
#include "heavyloc/sl2.hpp"

namespace heavyloc {

struct LyapunovPoint {
  std::size_t n;  // bumps crossed
  double x;       // coordinate of the checkpoint (n or L_n)
  double log_norm;
};

struct RotationPoint {
  std::size_t n;
  double x;
  double theta_over_pi;
};

// ln||M([0, x_j])|| at the right edge of bump n_j for each checkpoint n_j (sorted, 1-based).
std::vector<LyapunovPoint> lyapunov_trace(const Realization& realization, const EnergyFrame& frame,
                                          std::span<const std::size_t> checkpoints);
std::vector<LyapunovPoint> lyapunov_trace(const ModelConfig& config, std::size_t n_bumps,
                                          std::span<const std::size_t> checkpoints, RngStream& stream);

// theta(x_j)/pi at the same checkpoints, starting from the boundary angle theta0.
std::vector<RotationPoint> ids_trace(const Realization& realization, const EnergyFrame& frame, double theta0,
                                     std::span<const std::size_t> checkpoints);
std::vector<RotationPoint> ids_trace(const ModelConfig& config, std::size_t n_bumps,
                                     std::span<const std::size_t> checkpoints, RngStream& stream);

enum class Functional { lyapunov, ids };

// Normalizer of the nonlinear scale for the given functional and model, evaluated at n bumps
// (for Model III Lyapunov samples the per-realization L_n^alpha is used instead; see nonlinear_value).
double nonlinear_normalizer(const ModelConfig& config, Functional which, std::size_t n);

// Nonlinear-scale value of one realization: ln||M||/n^{1/alpha}, theta/(pi n^{1/alpha}),
// or ln||M([0,L_n])||/L_n^alpha for Model III.
double nonlinear_value(const ModelConfig& config, const Realization& realization, Functional which);

// One value per seed; seed s uses split_stream(stream, s).
std::vector<double> nonlinear_samples(const ModelConfig& config, std::size_t n_bumps, std::size_t n_seeds,
                                      Functional which, const RngStream& stream);

// max/sum of a positive sample.
double darling_ratio(std::span<const double> values);

// Replicas of n^{-1/alpha} * sum of n Frechet(alpha) variates (bump sqrt-heights or gap lengths).
std::vector<double> stable_sum_samples(double alpha, std::size_t n, std::size_t replicas, const RngStream& stream);
// Replicas of max/sum over n Frechet(alpha) variates.
std::vector<double> darling_samples(double alpha, std::size_t n, std::size_t replicas, const RngStream& stream);

struct MixingResult {
  std::vector<double> initial_points;
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  // ks[p][n]: KS distance between the laws of theta mod pi after n steps for pair p (n = 0..n_steps).
  std::vector<std::vector<double>> ks;
};

// Model I phase chain from several initial tangents. Every initial point is driven by the same
// bump heights for a given seed (common random numbers), so each empirical law is an honest
// sample of its marginal while the pairwise comparison carries little sampling noise.
MixingResult chain_mixing(const ModelConfig& config, std::size_t n_steps, std::span<const double> initial_points,
                          std::size_t n_seeds, const RngStream& stream);

// Per-seed joint sample for Model III: (ln||M||/n, L_n/n^{1/alpha}, ln||M||/L_n^alpha).
struct Model3Joint {
  double lyap_per_bump;
  double scaled_length;
  double lyap_over_length_alpha;
};
std::vector<Model3Joint> model3_joint_samples(const ModelConfig& config, std::size_t n_bumps, std::size_t n_seeds,
                                              const RngStream& stream);

}  // namespace heavyloc
