#include "heavyloc/estimators.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "heavyloc/error.hpp"
#include "heavyloc/prufer.hpp"
#include "heavyloc/stats.hpp"

namespace heavyloc {
namespace {

void check_checkpoints(std::span<const std::size_t> checkpoints, std::size_t n_bumps) {
  for (std::size_t i = 0; i < checkpoints.size(); ++i) {
    if (checkpoints[i] < 1 || checkpoints[i] > n_bumps) throw ParameterError("checkpoint outside 1..n_bumps");
    if (i > 0 && checkpoints[i] < checkpoints[i - 1]) throw ParameterError("checkpoints must be sorted");
  }
}

double bump_end(const Realization& r, std::size_t n) { return r.bump_ends[n - 1]; }

}  // namespace

std::vector<LyapunovPoint> lyapunov_trace(const Realization& realization, const EnergyFrame& frame,
                                          std::span<const std::size_t> checkpoints) {
  check_checkpoints(checkpoints, realization.n_bumps());
  std::vector<LyapunovPoint> out;
  out.reserve(checkpoints.size());
  ScaledMat acc = ScaledMat::identity();
  std::size_t piece = 0;
  for (std::size_t n : checkpoints) {
    const std::size_t stop = realization.pieces_through_bump(n);
    for (; piece < stop; ++piece) {
      const Piece& p = realization.pieces[piece];
      acc = accumulate(acc, transfer_matrix(p.value, p.length, frame));
    }
    out.push_back({n, bump_end(realization, n), log_norm(acc)});
  }
  return out;
}

std::vector<LyapunovPoint> lyapunov_trace(const ModelConfig& config, std::size_t n_bumps,
                                          std::span<const std::size_t> checkpoints, RngStream& stream) {
  const Realization r = generate(config, n_bumps, stream);
  return lyapunov_trace(r, EnergyFrame(config.energy), checkpoints);
}

std::vector<RotationPoint> ids_trace(const Realization& realization, const EnergyFrame& frame, double theta0,
                                     std::span<const std::size_t> checkpoints) {
  check_checkpoints(checkpoints, realization.n_bumps());
  std::vector<RotationPoint> out;
  out.reserve(checkpoints.size());
  PruferState state = initial_state(theta0, frame);
  std::size_t piece = 0;
  for (std::size_t n : checkpoints) {
    const std::size_t stop = realization.pieces_through_bump(n);
    for (; piece < stop; ++piece) state = advance_piece(state, realization.pieces[piece], frame);
    out.push_back({n, bump_end(realization, n), state.theta() / std::numbers::pi});
  }
  return out;
}

std::vector<RotationPoint> ids_trace(const ModelConfig& config, std::size_t n_bumps,
                                     std::span<const std::size_t> checkpoints, RngStream& stream) {
  const Realization r = generate(config, n_bumps, stream);
  return ids_trace(r, EnergyFrame(config.energy), config.theta0, checkpoints);
}

double nonlinear_normalizer(const ModelConfig& config, Functional which, std::size_t n) {
  const double nn = static_cast<double>(n);
  if (config.model == Model::IV && which == Functional::lyapunov) return std::pow(nn, 1.0 / config.alpha1);
  return std::pow(nn, 1.0 / config.primary_alpha());
}

double nonlinear_value(const ModelConfig& config, const Realization& realization, Functional which) {
  const std::size_t n = realization.n_bumps();
  const EnergyFrame frame(config.energy);
  const std::size_t cp[] = {n};
  if (which == Functional::lyapunov) {
    const double ln_m = lyapunov_trace(realization, frame, cp).front().log_norm;
    if (config.model == Model::III) return ln_m / std::pow(realization.total_length(), config.alpha2);
    return ln_m / nonlinear_normalizer(config, which, n);
  }
  const double rot = ids_trace(realization, frame, config.theta0, cp).front().theta_over_pi;
  return rot / nonlinear_normalizer(config, which, n);
}

std::vector<double> nonlinear_samples(const ModelConfig& config, std::size_t n_bumps, std::size_t n_seeds,
                                      Functional which, const RngStream& stream) {
  if (n_seeds < 2) throw ParameterError("nonlinear_samples needs at least two seeds");
  std::vector<double> out;
  out.reserve(n_seeds);
  for (std::size_t s = 0; s < n_seeds; ++s) {
    RngStream sub = split_stream(stream, s);
    out.push_back(nonlinear_value(config, generate(config, n_bumps, sub), which));
  }
  return out;
}

double darling_ratio(std::span<const double> values) {
  if (values.empty()) throw ParameterError("darling_ratio of an empty sample");
  double sum = 0.0, max = 0.0;
  for (double v : values) {
    if (!(v > 0.0)) throw ParameterError("darling_ratio needs positive values");
    sum += v;
    max = std::max(max, v);
  }
  return max / sum;
}

std::vector<double> stable_sum_samples(double alpha, std::size_t n, std::size_t replicas, const RngStream& stream) {
  const double norm = std::pow(static_cast<double>(n), 1.0 / alpha);
  std::vector<double> out;
  out.reserve(replicas);
  for (std::size_t r = 0; r < replicas; ++r) {
    RngStream sub = split_stream(stream, r);
    double sum = 0.0;
    for (std::size_t i = 0; i < n; ++i) sum += sample_frechet(alpha, sub);
    out.push_back(sum / norm);
  }
  return out;
}

std::vector<double> darling_samples(double alpha, std::size_t n, std::size_t replicas, const RngStream& stream) {
  std::vector<double> out;
  out.reserve(replicas);
  std::vector<double> buf(n);
  for (std::size_t r = 0; r < replicas; ++r) {
    RngStream sub = split_stream(stream, r);
    for (auto& v : buf) v = sample_frechet(alpha, sub);
    out.push_back(darling_ratio(buf));
  }
  return out;
}

MixingResult chain_mixing(const ModelConfig& config, std::size_t n_steps, std::span<const double> initial_points,
                          std::size_t n_seeds, const RngStream& stream) {
  if (config.model != Model::I) throw ParameterError("the phase chain is defined for Model I");
  if (initial_points.size() < 2) throw ParameterError("chain_mixing needs at least two initial points");
  if (n_seeds < 1) throw ParameterError("chain_mixing needs at least one seed");
  const EnergyFrame frame(config.energy);
  const TailLaw law(config.alpha1, TailKind::bump_height);
  const std::size_t m = initial_points.size();
  // angles[step][init][seed]
  std::vector<std::vector<std::vector<double>>> angles(
      n_steps + 1, std::vector<std::vector<double>>(m, std::vector<double>(n_seeds)));
  for (std::size_t s = 0; s < n_seeds; ++s) {
    RngStream sub = split_stream(stream, s);
    std::vector<PhaseChainState> chains;
    for (double t : initial_points) chains.push_back(PhaseChainState::from_tangent(t));
    for (std::size_t i = 0; i < m; ++i) angles[0][i][s] = chains[i].theta_mod;
    for (std::size_t step = 1; step <= n_steps; ++step) {
      const double height = sample_bump_height(law, sub);
      for (std::size_t i = 0; i < m; ++i) {
        chains[i] = phase_chain_step(chains[i], height, frame);
        angles[step][i][s] = chains[i].theta_mod;
      }
    }
  }
  MixingResult out;
  out.initial_points.assign(initial_points.begin(), initial_points.end());
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = i + 1; j < m; ++j) out.pairs.emplace_back(i, j);
  }
  out.ks.assign(out.pairs.size(), std::vector<double>(n_steps + 1));
  for (std::size_t step = 0; step <= n_steps; ++step) {
    std::vector<Ecdf> laws;
    for (std::size_t i = 0; i < m; ++i) laws.emplace_back(angles[step][i]);
    for (std::size_t p = 0; p < out.pairs.size(); ++p) {
      out.ks[p][step] = ks_distance(laws[out.pairs[p].first], laws[out.pairs[p].second]);
    }
  }
  return out;
}

std::vector<Model3Joint> model3_joint_samples(const ModelConfig& config, std::size_t n_bumps, std::size_t n_seeds,
                                              const RngStream& stream) {
  if (config.model != Model::III) throw ParameterError("joint samples are defined for Model III");
  const EnergyFrame frame(config.energy);
  const double nn = static_cast<double>(n_bumps);
  std::vector<Model3Joint> out;
  out.reserve(n_seeds);
  for (std::size_t s = 0; s < n_seeds; ++s) {
    RngStream sub = split_stream(stream, s);
    const Realization r = generate(config, n_bumps, sub);
    const std::size_t cp[] = {n_bumps};
    const double ln_m = lyapunov_trace(r, frame, cp).front().log_norm;
    const double length = r.total_length();
    out.push_back({ln_m / nn, length / std::pow(nn, 1.0 / config.alpha2), ln_m / std::pow(length, config.alpha2)});
  }
  return out;
}

}  // namespace heavyloc
