#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "doctest.h"
#include "heavyloc/error.hpp"
#include "heavyloc/stats.hpp"

using namespace heavyloc;

TEST_CASE("ecdf is right-continuous") {
  Ecdf f(std::vector<double>{3.0, 1.0, 2.0, 2.0});
  CHECK(f(0.5) == 0.0);
  CHECK(f(1.0) == 0.25);
  CHECK(f(2.0) == 0.75);
  CHECK(f(2.5) == 0.75);
  CHECK(f(3.0) == 1.0);
}

TEST_CASE("ecdf rejects empty and NaN samples") {
  CHECK_THROWS(Ecdf(std::vector<double>{}));
  CHECK_THROWS(Ecdf(std::vector<double>{1.0, std::numeric_limits<double>::quiet_NaN()}));
}

TEST_CASE("two-sample KS") {
  Ecdf a(std::vector<double>{1, 2, 3, 4});
  CHECK(ks_distance(a, a) == 0.0);
  Ecdf b(std::vector<double>{5, 6, 7, 8});
  CHECK(ks_distance(a, b) == 1.0);
  Ecdf c(std::vector<double>{1, 2, 5, 6});
  CHECK(ks_distance(a, c) == doctest::Approx(0.5));
  // ties across samples are resolved at the shared jump
  Ecdf d(std::vector<double>{1, 1, 2, 2});
  Ecdf e(std::vector<double>{1, 2, 2, 2});
  CHECK(ks_distance(d, e) == doctest::Approx(0.25));
}

TEST_CASE("one-sample KS against a uniform cdf") {
  Ecdf a(std::vector<double>{0.25, 0.5, 0.75, 1.0});
  auto cdf = [](double x) { return std::clamp(x, 0.0, 1.0); };
  CHECK(ks_distance(a, cdf) == doctest::Approx(0.25));
}

TEST_CASE("KS critical value shrinks with sample size") {
  CHECK(ks_critical_value(100, 100) == doctest::Approx(1.358 * std::sqrt(0.02)).epsilon(0.01));
  CHECK(ks_critical_value(10000, 10000) < ks_critical_value(100, 100));
}

TEST_CASE("linear fit recovers an exact line") {
  std::vector<double> x{0, 1, 2, 3}, y{1, 3, 5, 7};
  const LinearFit f = linear_fit(x, y);
  CHECK(f.slope == doctest::Approx(2.0));
  CHECK(f.intercept == doctest::Approx(1.0));
  CHECK(f.r_squared == doctest::Approx(1.0));
  std::vector<double> y2{1, -1, 1, -1};
  CHECK(linear_fit(x, y2).r_squared < 0.3);
}

TEST_CASE("mean confidence interval") {
  std::vector<double> v{1, 2, 3, 4, 5};
  const MeanCi ci = mean_ci(v);
  CHECK(ci.mean == doctest::Approx(3.0));
  CHECK(ci.half_width == doctest::Approx(1.959964 * std::sqrt(2.5 / 5)).epsilon(1e-4));
}

TEST_CASE("median and quantiles") {
  CHECK(median({3, 1, 2}) == 2.0);
  CHECK(median({4, 1, 3, 2}) == 2.5);
  CHECK(quantile({0, 10}, 0.25) == doctest::Approx(2.5));
  CHECK(quantile({5}, 0.9) == 5.0);
}
