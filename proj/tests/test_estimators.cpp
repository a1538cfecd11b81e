#include <cmath>
#include <numbers>
#include <vector>

#include "doctest.h"
#include "heavyloc/error.hpp"
#include "heavyloc/estimators.hpp"
#include "heavyloc/stats.hpp"
#include "oracles.hpp"

using namespace heavyloc;

TEST_CASE("free potential: zero Lyapunov growth and rotation k x / pi") {
  const Realization r = free_realization(100);
  const EnergyFrame frame(4.0);
  const std::vector<std::size_t> cps{10, 100};
  const auto ly = lyapunov_trace(r, frame, cps);
  CHECK(ly[1].log_norm == doctest::Approx(0.5 * std::log(2.0)));
  const auto rot = ids_trace(r, frame, 0.0, cps);
  CHECK(rot[0].theta_over_pi == doctest::Approx(20.0 / std::numbers::pi));
  CHECK(rot[1].x == 100.0);
}

TEST_CASE("Lyapunov trace matches the 50-digit product at each checkpoint") {
  ModelConfig c;
  c.model = Model::IV;
  c.alpha1 = 0.6;
  c.alpha2 = 0.7;
  c.energy = 2.0;
  RngStream s(31);
  const Realization r = generate(c, 200, s);
  const std::vector<std::size_t> cps{50, 200};
  const auto ly = lyapunov_trace(r, EnergyFrame(c.energy), cps);
  const Realization head = truncate(r, r.bump_ends[49]);
  CHECK(ly[0].log_norm == doctest::Approx(oracle::big_log_norm(head, 2.0, std::sqrt(2.0))).epsilon(1e-10));
  CHECK(ly[1].log_norm == doctest::Approx(oracle::big_log_norm(r, 2.0, std::sqrt(2.0))).epsilon(1e-10));
  CHECK(ly[0].x == r.bump_ends[49]);
  const std::vector<std::size_t> bad{0};
  CHECK_THROWS_AS(lyapunov_trace(r, EnergyFrame(2.0), bad), ParameterError);
}

TEST_CASE("config-level traces are reproducible") {
  ModelConfig c;
  c.model = Model::III;
  const std::vector<std::size_t> cps{5, 20};
  RngStream a(3), b(3);
  CHECK(ids_trace(c, 20, cps, a)[1].theta_over_pi == ids_trace(c, 20, cps, b)[1].theta_over_pi);
}

TEST_CASE("nonlinear normalizers") {
  ModelConfig c;
  c.alpha1 = 0.5;
  c.alpha2 = 0.25;
  CHECK(nonlinear_normalizer(c, Functional::lyapunov, 100) == doctest::Approx(1e4));
  c.model = Model::III;
  CHECK(nonlinear_normalizer(c, Functional::ids, 10) == doctest::Approx(1e4));
  c.model = Model::IV;
  CHECK(nonlinear_normalizer(c, Functional::lyapunov, 100) == doctest::Approx(1e4));
  CHECK(nonlinear_normalizer(c, Functional::ids, 10) == doctest::Approx(1e4));
}

TEST_CASE("nonlinear samples use one substream per seed") {
  ModelConfig c;
  RngStream root(5);
  const auto v = nonlinear_samples(c, 50, 4, Functional::ids, root);
  REQUIRE(v.size() == 4);
  RngStream s2 = split_stream(root, 2);
  CHECK(v[2] == nonlinear_value(c, generate(c, 50, s2), Functional::ids));
  CHECK_THROWS_AS(nonlinear_samples(c, 50, 1, Functional::ids, root), ParameterError);
}

TEST_CASE("darling ratio") {
  const std::vector<double> v{1.0, 3.0, 4.0};
  CHECK(darling_ratio(v) == doctest::Approx(0.5));
  const std::vector<double> bad{1.0, -1.0};
  CHECK_THROWS_AS(darling_ratio(bad), ParameterError);
  const auto d = darling_samples(0.5, 1000, 4000, RngStream(2));
  double inverse = 0.0;
  for (double x : d) {
    CHECK((x > 0.0 && x <= 1.0));
    inverse += 1.0 / x;
  }
  // E[sum/max] -> 1/(1 - alpha)
  CHECK(inverse / d.size() == doctest::Approx(2.0).epsilon(0.03));
}

TEST_CASE("stable sums are positive and heavy") {
  const auto v = stable_sum_samples(0.5, 200, 500, RngStream(7));
  CHECK(v.size() == 500);
  for (double x : v) CHECK(x > 0.0);
}

TEST_CASE("phase chain mixing output shape and contraction") {
  ModelConfig c;
  const std::vector<double> pts{-10.0, 0.0, 10.0};
  const MixingResult m = chain_mixing(c, 30, pts, 2000, RngStream(9));
  CHECK(m.pairs.size() == 3);
  CHECK(m.ks[0].size() == 31);
  CHECK(m.ks[0][0] == 1.0);
  CHECK(m.ks[0][30] < 0.05);
  c.model = Model::II;
  CHECK_THROWS_AS(chain_mixing(c, 5, pts, 10, RngStream(1)), ParameterError);
}

TEST_CASE("Model III joint sample") {
  ModelConfig c;
  c.model = Model::III;
  const auto j = model3_joint_samples(c, 100, 5, RngStream(4));
  REQUIRE(j.size() == 5);
  for (const auto& s : j) {
    CHECK(s.lyap_per_bump >= 0.0);
    CHECK(s.scaled_length > 0.0);
    // ln||M||/L^alpha = (ln||M||/n) / (L/n^{1/alpha})^alpha
    CHECK(s.lyap_over_length_alpha == doctest::Approx(s.lyap_per_bump / std::pow(s.scaled_length, 0.5)));
  }
}
