#pragma once

#include <array>

namespace heavyloc {

// Row-major 2x2 real matrix.
struct Mat2 {
  double a = 1.0, b = 0.0, c = 0.0, d = 1.0;

  static Mat2 identity() { return {}; }
  double det() const;
  double frobenius() const;
  Mat2 operator*(const Mat2& rhs) const;
  std::array<double, 2> operator*(const std::array<double, 2>& v) const;
};

// Spectral parameter and the frequency used to normalize (psi, psi'/k).
class EnergyFrame {
 public:
  explicit EnergyFrame(double lambda);
  double lambda() const { return lambda_; }
  double k() const { return k_; }

 private:
  double lambda_;
  double k_;
};

// e^{log_scale} * m, with ||m||_F kept in [1/2, 2].
struct ScaledMat {
  Mat2 m;
  double log_scale = 0.0;

  static ScaledMat identity() { return {}; }
  // ln det of the represented matrix, computed as 2 log_scale + ln det(m).
  double log_det() const;
};

// Pieces with |lambda - V| * length^2 below this use the series form.
inline constexpr double kDegenerateThreshold = 1e-8;

// Monodromy of -psi'' + V psi = lambda psi across a constant piece, acting on (psi, psi'/k).
ScaledMat transfer_matrix(double potential, double length, const EnergyFrame& frame);
// Free rotation across a gap of length y (V = 0, lambda = k^2).
ScaledMat gap_matrix(double length, const EnergyFrame& frame);
// Unit-height, unit-width bump.
ScaledMat model3_bump_matrix(const EnergyFrame& frame);

// next * acc, renormalized.
ScaledMat accumulate(const ScaledMat& acc, const ScaledMat& next);
// ln of the Frobenius norm of the represented matrix.
double log_norm(const ScaledMat& acc);

struct DirectedMagnitude {
  std::array<double, 2> direction;  // unit vector
  double log_gain;                  // ln(|M v| / |v|)
};

DirectedMagnitude apply(const ScaledMat& acc, std::array<double, 2> v);

}  // namespace heavyloc
