#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "heavyloc/models.hpp"
#include "heavyloc/sl2.hpp"

namespace heavyloc {

// Unwound Prufer phase theta = half_turns * pi + residual with residual in [0, pi),
// so (psi, psi'/k) = e^{log_r} (sin theta, cos theta).
//
// half_turns is the exact number of zeros of psi crossed since the phase
// started in [0, pi); keeping it as an integer makes winding counts independent
// of floating-point growth of theta.
struct PruferState {
  std::int64_t half_turns = 0;
  double residual = 0.0;
  double log_r = 0.0;
  double x = 0.0;

  double theta() const;
};

// Phase at x = 0 for the boundary condition psi(0) cos(theta0) - psi'(0) sin(theta0) = 0.
// In the (psi, psi'/k) frame tan(theta) = k tan(theta0); the branch is taken in [0, pi).
PruferState initial_state(double theta0, const EnergyFrame& frame);

PruferState advance_piece(const PruferState& state, const Piece& piece, const EnergyFrame& frame);

struct TraceRecord {
  double x;
  double theta;
  double log_r;
};

// Records (x, theta, log_r) at every checkpoint coordinate; pieces are split at checkpoints.
std::vector<TraceRecord> advance_realization(PruferState state, const Realization& realization,
                                             const EnergyFrame& frame, std::span<const double> checkpoints);

// --- Phase Markov chain of the tangent t = tan(theta) (Model I). ---

// Homogeneous (sin, cos) pair; t = s / c, with c = 0 the point at infinity.
struct ProjectivePoint {
  double s;
  double c;
};

// F(t, y) = (t + (k/y) tanh y) / (t (y/k) tanh y + 1): the hyperbolic update, y = sqrt(X - k^2).
double tan_update_F(double t, double y, double k);
// G(t, y) = (t + (k/y) tan y) / (-t (y/k) tan y + 1): the oscillatory update, y = sqrt(k^2 - X).
double tan_update_G(double t, double y, double k);
ProjectivePoint projective_F(ProjectivePoint p, double y, double k);
ProjectivePoint projective_G(ProjectivePoint p, double y, double k);

struct PhaseChainState {
  double t;          // tan(theta); +-inf at theta = pi/2
  double theta_mod;  // theta mod pi in [0, pi)

  static PhaseChainState from_tangent(double t);
  static PhaseChainState from_angle(double theta);
};

// One step across a unit bump of height X.
PhaseChainState phase_chain_step(const PhaseChainState& state, double height, const EnergyFrame& frame);

}  // namespace heavyloc
