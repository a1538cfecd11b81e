#include <cmath>
#include <numbers>
#include <vector>

#include "doctest.h"
#include "heavyloc/error.hpp"
#include "heavyloc/spectrum.hpp"
#include "oracles.hpp"

using namespace heavyloc;

TEST_CASE("free box eigenvalues are (m pi / L)^2") {
  const double L = 10.0;
  const BoxProblem box = make_box(free_realization(10), L);
  const double top = std::pow(20.5 * std::numbers::pi / L, 2);
  const auto eig = find_eigenvalues(box, 1e-3, top, 1e-13);
  REQUIRE(eig.size() == 20);
  for (int m = 1; m <= 20; ++m) {
    const double exact = std::pow(m * std::numbers::pi / L, 2);
    CHECK(std::abs(eig[m - 1] - exact) <= 1e-10 * exact);
  }
  CHECK(count_below(box, 0.5 * (eig[4] + eig[5])) == 5);
}

TEST_CASE("count below matches zero counting") {
  RngStream rng(41);
  ModelConfig c;
  for (int rep = 0; rep < 20; ++rep) {
    c.model = rep % 2 ? Model::II : Model::I;
    const Realization r = generate(c, 30, rng);
    const BoxProblem box = make_box(r, r.total_length());
    const double lambda = c.model == Model::II ? -5.0 + 10.0 * rng.uniform() : 0.1 + 10.0 * rng.uniform();
    CHECK(count_below(box, lambda) == oracle::dense_zero_count(r, lambda));
  }
}

TEST_CASE("eigenvalue count is monotone in lambda") {
  RngStream rng(42);
  ModelConfig c;
  c.model = Model::II;
  const Realization r = generate(c, 50, rng);
  const BoxProblem box = make_box(r, 50.0);
  std::int64_t prev = count_below(box, -3.0);
  for (double l = -2.9; l < 3.0; l += 0.1) {
    const std::int64_t next = count_below(box, l);
    CHECK(next >= prev);
    prev = next;
  }
}

TEST_CASE("each eigenvalue is a unit jump of the count") {
  RngStream rng(43);
  ModelConfig c;
  c.model = Model::II;
  const Realization r = generate(c, 60, rng);
  const BoxProblem box = make_box(r, r.total_length());
  const auto eig = find_eigenvalues(box, 0.0, 2.0);
  REQUIRE(!eig.empty());
  // Localized states make theta(L) extremely steep in lambda, so the check is on the count jump.
  for (double e : eig) {
    const double tol = default_tolerance(e);
    CHECK(count_below(box, e + 2 * tol) == count_below(box, e - 2 * tol) + 1);
  }
  CHECK_THROWS_AS(find_eigenvalues(box, 1.0, 1.0), ParameterError);
}

TEST_CASE("envelope peaks at zero and decays away from the center") {
  RngStream rng(44);
  ModelConfig c;
  c.model = Model::II;
  const Realization r = generate(c, 400, rng);
  const BoxProblem box = make_box(r, r.total_length());
  const auto eig = find_eigenvalues(box, 0.5, 1.5);
  REQUIRE(!eig.empty());
  const Envelope env = eigenfunction_envelope(box, eig.front());
  CHECK(env.log_r[env.center] == 0.0);
  for (double v : env.log_r) CHECK(v <= 0.0);
  CHECK(env.x.size() == r.pieces.size() + 1);
}

TEST_CASE("decay fit on a synthetic envelope") {
  Envelope env;
  for (int i = 0; i <= 100; ++i) {
    env.x.push_back(i);
    env.log_r.push_back(-0.3 * i);
  }
  const DecayFit lin = decay_fit(env, 100.0, 1.0);
  CHECK(lin.slope == doctest::Approx(-0.3));
  CHECK(lin.r_squared == doctest::Approx(1.0));
  const DecayFit sq = decay_fit(env, 100.0, 2.0);
  CHECK(sq.r_squared < 1.0);
  CHECK_THROWS_AS(decay_fit(env, 100.0, 0.0), ParameterError);
  Envelope tiny{{0.0, 1.0}, {0.0, -1.0}, 0};
  CHECK_THROWS_AS(decay_fit(tiny, 1.0, 1.0), ParameterError);
}

TEST_CASE("analysis bundles trace and fit") {
  const BoxProblem box = make_box(free_realization(40), 40.0);
  const double lambda = std::pow(3 * std::numbers::pi / 40.0, 2);
  const EigenResult res = analyze_eigenvalue(box, lambda, 1.0);
  CHECK(res.theta_trace.size() == 40);
  CHECK(res.theta_trace.back().theta == doctest::Approx(3 * std::numbers::pi));
}
