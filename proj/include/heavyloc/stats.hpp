#pragma once

#include <functional>
#include <span>
#include <vector>

namespace heavyloc {

// Empirical CDF over a sorted copy of the sample.
class Ecdf {
 public:
  explicit Ecdf(std::vector<double> values);
  explicit Ecdf(std::span<const double> values) : Ecdf(std::vector<double>(values.begin(), values.end())) {}

  const std::vector<double>& sorted_values() const { return sorted_; }
  std::size_t size() const { return sorted_.size(); }
  // Right-continuous: fraction of the sample <= x.
  double operator()(double x) const;

 private:
  std::vector<double> sorted_;
};

// Two-sample Kolmogorov-Smirnov statistic sup |F_a - F_b| over all jump points.
double ks_distance(const Ecdf& a, const Ecdf& b);
// One-sample statistic against a continuous CDF.
double ks_distance(const Ecdf& a, const std::function<double(double)>& cdf);

// Asymptotic two-sample critical value c(level) sqrt((n+m)/(n m)).
double ks_critical_value(std::size_t n, std::size_t m, double level = 0.95);

struct LinearFit {
  double slope;
  double intercept;
  double r_squared;
};

LinearFit linear_fit(std::span<const double> x, std::span<const double> y);

struct MeanCi {
  double mean;
  double half_width;
};

// Normal-approximation interval; meant for light-tailed per-seed observables only.
MeanCi mean_ci(std::span<const double> values, double level = 0.95);

double median(std::vector<double> values);
double quantile(std::vector<double> values, double p);

}  // namespace heavyloc
