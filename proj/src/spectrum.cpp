#include "heavyloc/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "heavyloc/error.hpp"
#include "heavyloc/stats.hpp"

namespace heavyloc {
namespace {

constexpr int kMaxBisection = 400;

PruferState shoot(const BoxProblem& problem, double lambda) {
  const EnergyFrame frame(lambda);
  PruferState s = initial_state(problem.theta0, frame);
  for (const Piece& p : problem.realization.pieces) s = advance_piece(s, p, frame);
  return s;
}

// log_r at every piece boundary (including x = 0), shooting from the left with angle theta0.
std::vector<double> log_r_profile(const std::vector<Piece>& pieces, double theta0, const EnergyFrame& frame) {
  std::vector<double> out;
  out.reserve(pieces.size() + 1);
  PruferState s = initial_state(theta0, frame);
  out.push_back(s.log_r);
  for (const Piece& p : pieces) {
    s = advance_piece(s, p, frame);
    out.push_back(s.log_r);
  }
  return out;
}

}  // namespace

BoxProblem make_box(const Realization& realization, double box_length, double theta0) {
  if (!(theta0 >= 0.0 && theta0 < std::numbers::pi)) throw ParameterError("theta0 must lie in [0, pi)");
  return {truncate(realization, box_length), theta0, box_length};
}

double boundary_phase(const BoxProblem& problem, double lambda) { return shoot(problem, lambda).theta(); }

std::int64_t count_below(const BoxProblem& problem, double lambda) { return shoot(problem, lambda).half_turns; }

double default_tolerance(double lambda) { return 1e-10 * std::max(1.0, std::abs(lambda)); }

std::vector<double> find_eigenvalues(const BoxProblem& problem, double lambda_lo, double lambda_hi, double tol) {
  if (!(lambda_lo < lambda_hi)) throw ParameterError("find_eigenvalues needs lambda_lo < lambda_hi");
  const std::int64_t c_lo = count_below(problem, lambda_lo);
  const std::int64_t c_hi = count_below(problem, lambda_hi);
  std::vector<double> out;
  double a = lambda_lo;
  for (std::int64_t m = c_lo + 1; m <= c_hi; ++m) {
    // Invariant: count(a) < m <= count(b).
    double b = lambda_hi;
    const double eps = tol > 0.0 ? tol : default_tolerance(std::max(std::abs(a), std::abs(b)));
    for (int it = 0; it < kMaxBisection && b - a >= eps; ++it) {
      const double mid = 0.5 * (a + b);
      if (mid <= a || mid >= b) break;
      if (count_below(problem, mid) >= m) {
        b = mid;
      } else {
        a = mid;
      }
    }
    out.push_back(0.5 * (a + b));
  }
  return out;
}

Envelope eigenfunction_envelope(const BoxProblem& problem, double lambda) {
  const EnergyFrame frame(lambda);
  const auto& pieces = problem.realization.pieces;
  const std::vector<double> left = log_r_profile(pieces, problem.theta0, frame);
  const std::vector<Piece> reversed(pieces.rbegin(), pieces.rend());
  std::vector<double> right = log_r_profile(reversed, 0.0, frame);
  std::reverse(right.begin(), right.end());

  Envelope env;
  env.x.reserve(pieces.size() + 1);
  env.x.push_back(0.0);
  for (std::size_t i = 0; i < pieces.size(); ++i) env.x.push_back(problem.realization.offsets[i] + pieces[i].length);

  std::size_t center = 0;
  for (std::size_t i = 1; i < left.size(); ++i) {
    if (left[i] + right[i] > left[center] + right[center]) center = i;
  }
  env.center = center;
  env.log_r.resize(left.size());
  for (std::size_t i = 0; i < left.size(); ++i) {
    env.log_r[i] = std::min(left[i] - left[center], right[i] - right[center]);
  }
  return env;
}

DecayFit decay_fit(const Envelope& envelope, double box_length, double scale_exponent) {
  if (!(scale_exponent > 0.0)) throw ParameterError("scale_exponent must be positive");
  std::vector<double> xs, ys;
  for (std::size_t i = 0; i < envelope.x.size(); ++i) {
    const double x = envelope.x[i];
    if (x >= 0.25 * box_length && x <= 0.75 * box_length) {
      xs.push_back(std::pow(x, scale_exponent));
      ys.push_back(envelope.log_r[i]);
    }
  }
  if (xs.size() < 10) throw ParameterError("decay fit needs at least 10 checkpoints in the middle half of the box");
  const LinearFit fit = linear_fit(xs, ys);
  return {scale_exponent, fit.slope, fit.r_squared};
}

DecayFit decay_fit(const BoxProblem& problem, double lambda, double scale_exponent) {
  return decay_fit(eigenfunction_envelope(problem, lambda), problem.length, scale_exponent);
}

EigenResult analyze_eigenvalue(const BoxProblem& problem, double lambda, double scale_exponent) {
  const EnergyFrame frame(lambda);
  std::vector<double> checkpoints;
  for (std::size_t i = 0; i < problem.realization.pieces.size(); ++i) {
    checkpoints.push_back(problem.realization.offsets[i] + problem.realization.pieces[i].length);
  }
  EigenResult out;
  out.lambda = lambda;
  out.theta_trace = advance_realization(initial_state(problem.theta0, frame), problem.realization, frame, checkpoints);
  out.fit = decay_fit(problem, lambda, scale_exponent);
  return out;
}

}  // namespace heavyloc
