#include "heavyloc/rng.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "heavyloc/error.hpp"

namespace heavyloc {
namespace {

constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;

std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }

void check_alpha(double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0)) {
    throw ParameterError("alpha must lie in (0,1), got " + std::to_string(alpha));
  }
}

}  // namespace

RngStream::RngStream(std::uint64_t seed, std::uint64_t stream_id) : seed_(seed), stream_id_(stream_id) {
  std::uint64_t key = mix64(seed + kGolden) ^ rotl(mix64(stream_id ^ 0xD1B54A32D192ED03ULL), 23);
  for (auto& word : state_) {
    key += kGolden;
    word = mix64(key);
  }
}

std::uint64_t RngStream::next_u64() {
  const std::uint64_t result = rotl(state_[1] * 5, 7) * 9;
  const std::uint64_t t = state_[1] << 17;
  state_[2] ^= state_[0];
  state_[3] ^= state_[1];
  state_[1] ^= state_[2];
  state_[0] ^= state_[3];
  state_[2] ^= t;
  state_[3] = rotl(state_[3], 45);
  return result;
}

double RngStream::uniform() {
  return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
}

double RngStream::exponential() { return -std::log(uniform()); }

bool RngStream::bernoulli_half() { return (next_u64() >> 63) != 0; }

RngStream split_stream(const RngStream& stream, std::uint64_t task_index) {
  const std::uint64_t child = mix64(stream.stream_id() * kGolden ^ mix64(task_index + 0x632BE59BD9B4E019ULL));
  return RngStream(stream.seed(), child);
}

TailLaw::TailLaw(double alpha, TailKind kind) : alpha_(alpha), kind_(kind) { check_alpha(alpha); }

double frechet_from_uniform(double alpha, double u) {
  check_alpha(alpha);
  if (!(u > 0.0 && u < 1.0)) throw ParameterError("uniform variate must lie in (0,1)");
  return std::pow(-std::log(u), -1.0 / alpha);
}

double frechet_cdf(double alpha, double z) {
  if (z <= 0.0) return 0.0;
  return std::exp(-std::pow(z, -alpha));
}

double sample_frechet(double alpha, RngStream& stream) {
  return frechet_from_uniform(alpha, stream.uniform());
}

double sample_bump_height(const TailLaw& law, RngStream& stream) {
  if (law.kind() != TailKind::bump_height) throw ParameterError("tail law is not a bump-height law");
  const double z = sample_frechet(law.alpha(), stream);
  return z * z;
}

double sample_gap_length(const TailLaw& law, RngStream& stream) {
  if (law.kind() != TailKind::gap_length) throw ParameterError("tail law is not a gap-length law");
  return sample_frechet(law.alpha(), stream);
}

double stable_from_uniforms(double alpha, double angle, double exp_variate) {
  check_alpha(alpha);
  // A(u) = sin(a u)^(a/(1-a)) sin((1-a)u) / sin(u)^(1/(1-a)),  S = (A(u)/E)^((1-a)/a)
  const double a = alpha;
  const double log_a = (a / (1.0 - a)) * std::log(std::sin(a * angle)) + std::log(std::sin((1.0 - a) * angle)) -
                       (1.0 / (1.0 - a)) * std::log(std::sin(angle));
  return std::exp(((1.0 - a) / a) * (log_a - std::log(exp_variate)));
}

double sample_stable_oracle(double alpha, RngStream& stream) {
  const double angle = std::numbers::pi * stream.uniform();
  const double e = stream.exponential();
  return stable_from_uniforms(alpha, angle, e);
}

}  // namespace heavyloc
