#ifndef SPINSIM_TYPES_HPP_
#define SPINSIM_TYPES_HPP_

#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>

#include <Eigen/Dense>

namespace spinsim {

template <typename Scalar>
using Complex = std::complex<Scalar>;

/// Single-spin amplitudes (plus, minus) in the fixed z-basis.
template <typename Scalar>
using Spinor = Eigen::Matrix<Complex<Scalar>, 2, 1>;

/// Two-spin amplitudes indexed (++, +-, -+, --).
template <typename Scalar>
using BiSpinor = Eigen::Matrix<Complex<Scalar>, 4, 1>;

template <typename Scalar>
using Matrix2 = Eigen::Matrix<Scalar, 2, 2>;

template <typename Scalar>
using ComplexMatrix2 = Eigen::Matrix<Complex<Scalar>, 2, 2>;

template <typename Scalar>
using ComplexMatrix4 = Eigen::Matrix<Complex<Scalar>, 4, 4>;

/// Tolerance used for exact-algebra identities on 2x2 and 4x4 matrices.
inline constexpr double kAlgebraTol = 1e-12;

enum class Sign : int { Plus = 1, Minus = -1 };

constexpr int value(Sign s) { return static_cast<int>(s); }
constexpr Sign flip(Sign s) { return s == Sign::Plus ? Sign::Minus : Sign::Plus; }
/// Row/column index of a sign in 2x2 probability tables: plus -> 0, minus -> 1.
constexpr int index(Sign s) { return s == Sign::Plus ? 0 : 1; }

/// Wraps any finite angle into [0, 2pi).
template <typename Scalar>
Scalar wrap_two_pi(Scalar theta) {
  if (!std::isfinite(theta)) {
    throw std::invalid_argument("angle must be finite");
  }
  const Scalar two_pi = 2 * std::numbers::pi_v<Scalar>;
  Scalar r = std::fmod(theta, two_pi);
  if (r < 0) r += two_pi;
  if (r >= two_pi) r = 0;  // fmod rounding of tiny negative inputs
  return r;
}

/// Measurement axis in the xz-plane, stored as its polar angle from +z
/// reduced modulo 2pi. The half angle is derived on demand.
template <typename Scalar>
class Direction {
 public:
  Direction() = default;
  explicit Direction(Scalar theta) : theta_(wrap_two_pi(theta)) {}

  static Direction from_degrees(Scalar degrees) {
    return Direction(degrees * std::numbers::pi_v<Scalar> / 180);
  }

  Scalar theta() const { return theta_; }
  Scalar half() const { return theta_ / 2; }

  friend bool operator==(const Direction&, const Direction&) = default;

 private:
  Scalar theta_ = 0;
};

/// Signed half-angle difference (theta_to - theta_from) / 2, not reduced.
template <typename Scalar>
Scalar half_angle(const Direction<Scalar>& from, const Direction<Scalar>& to) {
  return (to.theta() - from.theta()) / 2;
}

/// Unsigned context angle between two directions folded into [0, pi].
template <typename Scalar>
Scalar context_angle(const Direction<Scalar>& a, const Direction<Scalar>& b) {
  const Scalar d = wrap_two_pi(b.theta() - a.theta());
  const Scalar pi = std::numbers::pi_v<Scalar>;
  return d > pi ? 2 * pi - d : d;
}

template <typename Derived>
bool is_normalized(const Eigen::MatrixBase<Derived>& v, double tol = kAlgebraTol) {
  return std::abs(static_cast<double>(v.squaredNorm()) - 1.0) <= tol;
}

}  // namespace spinsim

#endif  // SPINSIM_TYPES_HPP_
