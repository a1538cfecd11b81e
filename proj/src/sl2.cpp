#include "heavyloc/sl2.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include "heavyloc/error.hpp"

namespace heavyloc {
namespace {

constexpr double kMaxLogScale = 1e300;

// Rescales by an exact power of two so that ||m||_F lands in [1/2, 1) whenever it leaves [1/2, 2].
ScaledMat normalized(const Mat2& m, double log_scale) {
  const double f = m.frobenius();
  if (!std::isfinite(f) || f == 0.0) throw SaturationError("matrix product left the representable range");
  if (!std::isfinite(log_scale) || std::abs(log_scale) > kMaxLogScale) {
    throw SaturationError("log-scale overflow in matrix product");
  }
  if (f >= 0.5 && f <= 2.0) return {m, log_scale};
  int e = 0;
  std::frexp(f, &e);
  return {{std::ldexp(m.a, -e), std::ldexp(m.b, -e), std::ldexp(m.c, -e), std::ldexp(m.d, -e)},
          log_scale + e * std::numbers::ln2};
}

}  // namespace

double Mat2::det() const {
  // Kahan's fma determinant: accurate even under cancellation.
  const double w = b * c;
  const double e = std::fma(-b, c, w);
  const double f = std::fma(a, d, -w);
  return f + e;
}

double Mat2::frobenius() const {
  const double f = std::sqrt(a * a + b * b + c * c + d * d);
  if (f > 0.0 && std::isfinite(f) && f > 1e-150 && f < 1e150) return f;
  return std::hypot(std::hypot(a, b), std::hypot(c, d));
}

Mat2 Mat2::operator*(const Mat2& r) const {
  return {a * r.a + b * r.c, a * r.b + b * r.d, c * r.a + d * r.c, c * r.b + d * r.d};
}

std::array<double, 2> Mat2::operator*(const std::array<double, 2>& v) const {
  return {a * v[0] + b * v[1], c * v[0] + d * v[1]};
}

EnergyFrame::EnergyFrame(double lambda) : lambda_(lambda), k_(lambda == 0.0 ? 1.0 : std::sqrt(std::abs(lambda))) {
  if (!std::isfinite(lambda)) throw ParameterError("energy must be finite");
}

double ScaledMat::log_det() const { return 2.0 * log_scale + std::log(m.det()); }

ScaledMat transfer_matrix(double potential, double length, const EnergyFrame& frame) {
  if (!std::isfinite(potential)) throw ParameterError("potential value must be finite");
  if (!(length > 0.0) || !std::isfinite(length)) throw ParameterError("piece length must be positive and finite");
  const double k = frame.k();
  const double w2 = frame.lambda() - potential;  // omega^2
  const double l2 = length * length;

  if (std::abs(w2) * l2 < kDegenerateThreshold) {
    // cos(wl), sin(wl)/w, w sin(wl) to second order in w^2 l^2; valid for either sign of w^2.
    const double s = w2 * l2;
    const double cosine = 1.0 - s / 2.0 + s * s / 24.0;
    const double sinc = length * (1.0 - s / 6.0 + s * s / 120.0);
    const double wsin = w2 * length * (1.0 - s / 6.0);
    return normalized({cosine, k * sinc, -wsin / k, cosine}, 0.0);
  }
  if (w2 > 0.0) {
    const double w = std::sqrt(w2);
    const double phase = w * length;
    const double cs = std::cos(phase);
    const double sn = std::sin(phase);
    return normalized({cs, (k / w) * sn, -(w / k) * sn, cs}, 0.0);
  }
  // cosh(x) = e^x (1 + e^{-2x})/2 and sinh(x) = e^x (1 - e^{-2x})/2 with e^x factored out.
  const double b = std::sqrt(-w2);
  const double x = b * length;
  const double em = std::expm1(-2.0 * x);  // e^{-2x} - 1
  const double ch = (2.0 + em) / 2.0;
  const double sh = -em / 2.0;
  return normalized({ch, (k / b) * sh, (b / k) * sh, ch}, x);
}

ScaledMat gap_matrix(double length, const EnergyFrame& frame) {
  if (!(frame.lambda() > 0.0)) throw ParameterError("gap matrices are only defined at positive energy");
  if (!(length > 0.0) || !std::isfinite(length)) throw ParameterError("gap length must be positive and finite");
  const double phase = frame.k() * length;
  const double cs = std::cos(phase);
  const double sn = std::sin(phase);
  return {{cs, sn, -sn, cs}, 0.0};
}

ScaledMat model3_bump_matrix(const EnergyFrame& frame) {
  if (!(frame.lambda() > 0.0)) throw ParameterError("Model III bumps are defined at positive energy");
  return transfer_matrix(1.0, 1.0, frame);
}

ScaledMat accumulate(const ScaledMat& acc, const ScaledMat& next) {
  return normalized(next.m * acc.m, acc.log_scale + next.log_scale);
}

double log_norm(const ScaledMat& acc) { return acc.log_scale + std::log(acc.m.frobenius()); }

DirectedMagnitude apply(const ScaledMat& acc, std::array<double, 2> v) {
  const double norm_in = std::hypot(v[0], v[1]);
  if (!(norm_in > 0.0) || !std::isfinite(norm_in)) throw ParameterError("cannot apply a matrix to a zero vector");
  v[0] /= norm_in;
  v[1] /= norm_in;
  const auto w = acc.m * v;
  const double norm_out = std::hypot(w[0], w[1]);
  if (norm_out == 0.0) throw SaturationError("vector annihilated by the rescaled product");
  return {{w[0] / norm_out, w[1] / norm_out}, acc.log_scale + std::log(norm_out)};
}

}  // namespace heavyloc
