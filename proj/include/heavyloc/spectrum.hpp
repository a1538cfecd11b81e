#pragma once

#include <vector>

#include "heavyloc/models.hpp"
#include "heavyloc/prufer.hpp"

namespace heavyloc {

// Realization restricted to [0, L_box] with the boundary angle theta0 at 0 and Dirichlet at L_box.
struct BoxProblem {
  Realization realization;
  double theta0 = 0.0;
  double length = 0.0;
};

BoxProblem make_box(const Realization& realization, double box_length, double theta0 = 0.0);

// Unwound theta_lambda(L_box).
double boundary_phase(const BoxProblem& problem, double lambda);
// Number of Dirichlet-box eigenvalues <= lambda: the half-turn count of theta_lambda(L_box).
std::int64_t count_below(const BoxProblem& problem, double lambda);

double default_tolerance(double lambda);

// All eigenvalues in (lambda_lo, lambda_hi], each bisected on the eigenvalue count to |dlambda| < tol.
// tol <= 0 selects default_tolerance at the bracket.
std::vector<double> find_eigenvalues(const BoxProblem& problem, double lambda_lo, double lambda_hi, double tol = 0.0);

struct Envelope {
  std::vector<double> x;
  std::vector<double> log_r;  // log-amplitude of the eigenfunction, 0 at its maximum
  std::size_t center = 0;     // index of the maximum
};

// Eigenfunction log-amplitude at piece boundaries. Shooting from either end is accurate only
// until the error in lambda is amplified above the decaying solution, so the envelope takes
// the left solution on the left of the peak and the right solution on its right.
Envelope eigenfunction_envelope(const BoxProblem& problem, double lambda);

struct DecayFit {
  double scale_exponent;
  double slope;
  double r_squared;
};

// Least-squares slope of the envelope against x^scale_exponent over the middle half of the box.
DecayFit decay_fit(const BoxProblem& problem, double lambda, double scale_exponent);
DecayFit decay_fit(const Envelope& envelope, double box_length, double scale_exponent);

struct EigenResult {
  double lambda;
  std::vector<TraceRecord> theta_trace;
  DecayFit fit;
};

EigenResult analyze_eigenvalue(const BoxProblem& problem, double lambda, double scale_exponent);

}  // namespace heavyloc
