#include "heavyloc/stats.hpp"

#include <algorithm>
#include <boost/math/distributions/normal.hpp>
#include <cmath>
#include <numeric>

#include "heavyloc/error.hpp"

namespace heavyloc {

Ecdf::Ecdf(std::vector<double> values) : sorted_(std::move(values)) {
  if (sorted_.empty()) throw ParameterError("empirical CDF needs at least one value");
  for (double v : sorted_) {
    if (std::isnan(v)) throw ParameterError("empirical CDF of NaN");
  }
  std::sort(sorted_.begin(), sorted_.end());
}

double Ecdf::operator()(double x) const {
  const auto it = std::upper_bound(sorted_.begin(), sorted_.end(), x);
  return static_cast<double>(it - sorted_.begin()) / static_cast<double>(sorted_.size());
}

double ks_distance(const Ecdf& a, const Ecdf& b) {
  const auto& xa = a.sorted_values();
  const auto& xb = b.sorted_values();
  const double na = static_cast<double>(xa.size());
  const double nb = static_cast<double>(xb.size());
  std::size_t i = 0, j = 0;
  double best = 0.0;
  while (i < xa.size() || j < xb.size()) {
    double v;
    if (j == xb.size() || (i < xa.size() && xa[i] <= xb[j])) {
      v = xa[i];
    } else {
      v = xb[j];
    }
    while (i < xa.size() && xa[i] <= v) ++i;
    while (j < xb.size() && xb[j] <= v) ++j;
    best = std::max(best, std::abs(static_cast<double>(i) / na - static_cast<double>(j) / nb));
  }
  return best;
}

double ks_distance(const Ecdf& a, const std::function<double(double)>& cdf) {
  const auto& x = a.sorted_values();
  const double n = static_cast<double>(x.size());
  double best = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double f = cdf(x[i]);
    best = std::max({best, static_cast<double>(i + 1) / n - f, f - static_cast<double>(i) / n});
  }
  return best;
}

double ks_critical_value(std::size_t n, std::size_t m, double level) {
  if (!(level > 0.0 && level < 1.0)) throw ParameterError("level must lie in (0,1)");
  const double c = std::sqrt(-0.5 * std::log((1.0 - level) / 2.0));
  return c * std::sqrt(static_cast<double>(n + m) / (static_cast<double>(n) * static_cast<double>(m)));
}

LinearFit linear_fit(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size() || x.size() < 2) throw ParameterError("linear_fit needs two equal-length series of size >= 2");
  const double n = static_cast<double>(x.size());
  const double mx = std::accumulate(x.begin(), x.end(), 0.0) / n;
  const double my = std::accumulate(y.begin(), y.end(), 0.0) / n;
  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double dx = x[i] - mx, dy = y[i] - my;
    sxx += dx * dx;
    sxy += dx * dy;
    syy += dy * dy;
  }
  if (!(sxx > 0.0)) throw ParameterError("linear_fit: x values are all equal");
  const double slope = sxy / sxx;
  const double r2 = syy > 0.0 ? std::clamp(sxy * sxy / (sxx * syy), 0.0, 1.0) : 1.0;
  return {slope, my - slope * mx, r2};
}

MeanCi mean_ci(std::span<const double> values, double level) {
  if (values.size() < 2) throw ParameterError("mean_ci needs at least two values");
  if (!(level > 0.0 && level < 1.0)) throw ParameterError("level must lie in (0,1)");
  const double n = static_cast<double>(values.size());
  const double mean = std::accumulate(values.begin(), values.end(), 0.0) / n;
  double ss = 0.0;
  for (double v : values) ss += (v - mean) * (v - mean);
  const double sd = std::sqrt(ss / (n - 1.0));
  const double z = boost::math::quantile(boost::math::normal(), 0.5 + level / 2.0);
  return {mean, z * sd / std::sqrt(n)};
}

double quantile(std::vector<double> values, double p) {
  if (values.empty()) throw ParameterError("quantile of an empty sample");
  std::sort(values.begin(), values.end());
  const double pos = p * static_cast<double>(values.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(pos));
  const std::size_t hi = std::min(lo + 1, values.size() - 1);
  return values[lo] + (pos - static_cast<double>(lo)) * (values[hi] - values[lo]);
}

double median(std::vector<double> values) { return quantile(std::move(values), 0.5); }

}  // namespace heavyloc
