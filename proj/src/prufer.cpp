#include "heavyloc/prufer.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include "heavyloc/error.hpp"

namespace heavyloc {
namespace {

constexpr double kPi = std::numbers::pi;

// Reduces an angle to [0, pi).
double mod_pi(double angle) {
  double r = std::fmod(angle, kPi);
  if (r < 0.0) r += kPi;
  if (r >= kPi) r -= kPi;
  return r;
}

// Adds a phase increment to (half_turns, residual).
void add_phase(PruferState& s, double delta) {
  const double total = s.residual + delta;
  const double reduced = mod_pi(total);
  s.half_turns += std::llround((total - reduced) / kPi);
  s.residual = reduced;
}

void require_finite(const PruferState& s) {
  if (!std::isfinite(s.residual) || !std::isfinite(s.log_r) || !std::isfinite(s.x)) {
    throw SaturationError("non-finite Prufer state");
  }
}

// Oscillatory piece: in the local frame (psi, psi'/omega) the phase turns by exactly omega*l
// and the local radius is conserved. The two frames share the angles m*pi/2.
void advance_oscillatory(PruferState& s, double omega, double length, double k) {
  const double turn = omega * length;
  const double ratio = omega / k;
  if (ratio == 1.0) {
    add_phase(s, turn);
    return;
  }
  const double sr = std::sin(s.residual), cr = std::cos(s.residual);
  const double local0 = std::atan2(ratio * sr, cr);  // tan(local) = (omega/k) tan(theta), in [0, pi]
  const double total = local0 + turn;
  const double local1 = mod_pi(total);
  std::int64_t turns = std::llround((total - local1) / kPi);
  const double sl = std::sin(local1), cl = std::cos(local1);
  double fixed1 = std::atan2(sl / ratio, cl);
  if (fixed1 >= kPi) {
    fixed1 -= kPi;
    ++turns;
  }
  const double sl0 = std::sin(local0), cl0 = std::cos(local0);
  const double r2 = ratio * ratio;
  s.log_r += 0.5 * std::log((sl * sl + r2 * cl * cl) / (sl0 * sl0 + r2 * cl0 * cl0));
  s.half_turns += turns;
  s.residual = fixed1;
}

// Hyperbolic piece: decompose on the eigenvectors (k, b) and (k, -b) of the transfer matrix.
// The phase cannot leave the open window of width pi that starts at the unstable fixed angle,
// which pins down the half-turn count of the new angle.
void advance_hyperbolic(PruferState& s, double b, double length, double k) {
  const double x = b * length;
  const double q = std::exp(-2.0 * x);
  const double v0 = std::sin(s.residual), v1 = std::cos(s.residual);
  const double cp = 0.5 * (v0 / k + v1 / b);
  const double cm = 0.5 * (v0 / k - v1 / b);
  double u0 = k * (cp + q * cm);
  double u1 = b * (cp - q * cm);
  double gain = x;
  if (u0 == 0.0 && u1 == 0.0) {
    // Exactly on the contracting direction with e^{-2x} underflowing.
    u0 = k * cm;
    u1 = -b * cm;
    gain = -x;
  }
  gain += std::log(std::hypot(u0, u1));
  const double next = mod_pi(std::atan2(u0, u1));
  const double unstable = kPi - std::atan(k / b);
  std::int64_t turns = s.half_turns;
  if (s.residual < unstable) {
    if (next >= unstable) --turns;
  } else {
    if (next < unstable) ++turns;
  }
  s.half_turns = turns;
  s.residual = next;
  s.log_r += gain;
}

// Near-degenerate piece (lambda ~ V): a shear; substeps keep each turn below pi/2.
void advance_degenerate(PruferState& s, double potential, double length, const EnergyFrame& frame) {
  const int steps = std::max(1, static_cast<int>(std::ceil(frame.k() * length)));
  const double h = length / steps;
  const ScaledMat m = transfer_matrix(potential, h, frame);
  for (int i = 0; i < steps; ++i) {
    const auto out = apply(m, {std::sin(s.residual), std::cos(s.residual)});
    double delta = std::atan2(out.direction[0], out.direction[1]) - s.residual;
    delta = std::remainder(delta, kPi);  // in [-pi/2, pi/2]
    add_phase(s, delta);
    s.log_r += out.log_gain;
  }
}

}  // namespace

double PruferState::theta() const { return static_cast<double>(half_turns) * kPi + residual; }

PruferState initial_state(double theta0, const EnergyFrame& frame) {
  if (!(theta0 >= 0.0 && theta0 < kPi)) throw ParameterError("theta0 must lie in [0, pi)");
  PruferState s;
  s.residual = mod_pi(std::atan2(frame.k() * std::sin(theta0), std::cos(theta0)));
  return s;
}

PruferState advance_piece(const PruferState& state, const Piece& piece, const EnergyFrame& frame) {
  require_finite(state);
  if (!(piece.length > 0.0) || !std::isfinite(piece.length)) throw ParameterError("piece length must be positive");
  if (!std::isfinite(piece.value)) throw ParameterError("piece value must be finite");
  PruferState s = state;
  const double w2 = frame.lambda() - piece.value;
  if (std::abs(w2) * piece.length * piece.length < kDegenerateThreshold) {
    advance_degenerate(s, piece.value, piece.length, frame);
  } else if (w2 > 0.0) {
    advance_oscillatory(s, std::sqrt(w2), piece.length, frame.k());
  } else {
    advance_hyperbolic(s, std::sqrt(-w2), piece.length, frame.k());
  }
  s.x = state.x + piece.length;
  require_finite(s);
  return s;
}

std::vector<TraceRecord> advance_realization(PruferState state, const Realization& realization,
                                             const EnergyFrame& frame, std::span<const double> checkpoints) {
  const double total = realization.total_length();
  for (std::size_t i = 0; i < checkpoints.size(); ++i) {
    if (checkpoints[i] < 0.0 || checkpoints[i] > total) throw ParameterError("checkpoint outside the realization");
    if (i > 0 && checkpoints[i] < checkpoints[i - 1]) throw ParameterError("checkpoints must be sorted");
  }
  std::vector<TraceRecord> out;
  out.reserve(checkpoints.size());
  std::size_t next = 0;
  auto record_until = [&](double x) {
    while (next < checkpoints.size() && checkpoints[next] <= x) {
      out.push_back({state.x, state.theta(), state.log_r});
      ++next;
    }
  };
  record_until(state.x);
  for (std::size_t i = 0; i < realization.pieces.size() && next < checkpoints.size(); ++i) {
    const Piece& piece = realization.pieces[i];
    const double end = realization.offsets[i] + piece.length;
    // Split the piece at interior checkpoints.
    while (next < checkpoints.size() && checkpoints[next] < end && checkpoints[next] > state.x) {
      Piece part = piece;
      part.length = checkpoints[next] - state.x;
      state = advance_piece(state, part, frame);
      state.x = checkpoints[next];
      record_until(state.x);
    }
    if (end > state.x) {
      Piece rest = piece;
      rest.length = end - state.x;
      state = advance_piece(state, rest, frame);
    }
    state.x = end;
    record_until(end);
  }
  return out;
}

double tan_update_F(double t, double y, double k) {
  const ProjectivePoint p = std::isinf(t) ? ProjectivePoint{1.0, 0.0} : ProjectivePoint{t, 1.0};
  const ProjectivePoint q = projective_F(p, y, k);
  return q.s / q.c;
}

double tan_update_G(double t, double y, double k) {
  const ProjectivePoint p = std::isinf(t) ? ProjectivePoint{1.0, 0.0} : ProjectivePoint{t, 1.0};
  const ProjectivePoint q = projective_G(p, y, k);
  return q.s / q.c;
}

ProjectivePoint projective_F(ProjectivePoint p, double y, double k) {
  // tanh(y)/y and y tanh(y), with the y -> 0 limits 1 and 0.
  const double th = std::tanh(y);
  const double th_over_y = y < 1e-4 ? 1.0 - y * y / 3.0 : th / y;
  return {p.s + k * th_over_y * p.c, (y * th / k) * p.s + p.c};
}

ProjectivePoint projective_G(ProjectivePoint p, double y, double k) {
  // Multiplied through by cos(y) so that tan(y) poles never appear.
  const double cs = std::cos(y);
  const double sinc = y < 1e-4 ? 1.0 - y * y / 6.0 : std::sin(y) / y;
  return {cs * p.s + k * sinc * p.c, -(y * std::sin(y) / k) * p.s + cs * p.c};
}

PhaseChainState PhaseChainState::from_tangent(double t) {
  if (std::isinf(t)) return {t, kPi / 2.0};
  return {t, mod_pi(std::atan(t))};
}

PhaseChainState PhaseChainState::from_angle(double theta) {
  const double r = mod_pi(theta);
  return {std::tan(r), r};
}

PhaseChainState phase_chain_step(const PhaseChainState& state, double height, const EnergyFrame& frame) {
  if (!(height > 0.0) || !std::isfinite(height)) throw ParameterError("bump height must be positive and finite");
  const double k = frame.k();
  const double k2 = frame.lambda();
  const ProjectivePoint p{std::sin(state.theta_mod), std::cos(state.theta_mod)};
  ProjectivePoint q;
  if (std::abs(height - k2) < kDegenerateThreshold) {
    q = {p.s + k * p.c, p.c};
  } else if (height > k2) {
    q = projective_F(p, std::sqrt(height - k2), k);
  } else {
    q = projective_G(p, std::sqrt(k2 - height), k);
  }
  const double theta = mod_pi(std::atan2(q.s, q.c));
  return {q.s / q.c, theta};
}

}  // namespace heavyloc
