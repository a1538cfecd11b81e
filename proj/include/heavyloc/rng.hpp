#pragma once

#include <array>
#include <cstdint>

namespace heavyloc {

// Deterministic random stream: xoshiro256** keyed by (seed, stream_id).
//
// Two streams with equal (seed, stream_id) produce identical sequences.
// Substreams are derived by keyed mixing, never by advancing shared state,
// so a stream can be split from any thread without coordination.
class RngStream {
 public:
  RngStream(std::uint64_t seed, std::uint64_t stream_id = 0);

  std::uint64_t seed() const { return seed_; }
  std::uint64_t stream_id() const { return stream_id_; }

  std::uint64_t next_u64();
  // Uniform on the open interval (0, 1); never returns 0 or 1.
  double uniform();
  // Unit-rate exponential.
  double exponential();
  bool bernoulli_half();

 private:
  std::uint64_t seed_;
  std::uint64_t stream_id_;
  std::array<std::uint64_t, 4> state_;
};

// Deterministic child stream for parallel task `task_index`.
RngStream split_stream(const RngStream& stream, std::uint64_t task_index);

enum class TailKind { bump_height, gap_length };

// Tail law in the domain of attraction of a one-sided alpha-stable law.
class TailLaw {
 public:
  TailLaw(double alpha, TailKind kind);
  double alpha() const { return alpha_; }
  TailKind kind() const { return kind_; }

 private:
  double alpha_;
  TailKind kind_;
};

// Z = (-ln u)^(-1/alpha): the Frechet(alpha) quantile transform, P(Z > z) = 1 - exp(-z^-alpha).
double frechet_from_uniform(double alpha, double u);
double frechet_cdf(double alpha, double z);

double sample_frechet(double alpha, RngStream& stream);
// X = Z^2, so that sqrt(X) carries the Frechet(alpha) tail.
double sample_bump_height(const TailLaw& law, RngStream& stream);
// Y = Z directly.
double sample_gap_length(const TailLaw& law, RngStream& stream);

// Exact positive alpha-stable variate with E[exp(-s S)] = exp(-s^alpha)
// (Kanter's representation: one uniform angle, one unit exponential).
double stable_from_uniforms(double alpha, double angle, double exp_variate);
double sample_stable_oracle(double alpha, RngStream& stream);

}  // namespace heavyloc
