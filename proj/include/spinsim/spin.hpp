#ifndef SPINSIM_SPIN_HPP_
#define SPINSIM_SPIN_HPP_

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <utility>

#include "spinsim/types.hpp"

namespace spinsim {

/*
 * Single-spin formalism for directions in the xz-plane.
 *
 * The basis along a direction with polar angle theta is
 *   |+> = (cos(theta/2), -sin(theta/2)),  |-> = (sin(theta/2), cos(theta/2)),
 * i.e. the eigenvectors of cos(theta) sigma_z - sin(theta) sigma_x. All
 * context quantities depend on the signed half-angle difference
 * (theta_b - theta_a) / 2.
 */

/// 2x2 matrix of conditional probabilities P_ab(beta | alpha). Rows are the
/// conditioning outcome along a (+, -), columns the outcome along b (+, -).
template <typename Scalar>
class CondProbMatrix {
 public:
  CondProbMatrix() : p_(Matrix2<Scalar>::Identity()) {}
  explicit CondProbMatrix(const Matrix2<Scalar>& p) : p_(p) {}

  const Matrix2<Scalar>& matrix() const { return p_; }

  /// P_ab(outcome_b | given_a)
  Scalar operator()(Sign given_a, Sign outcome_b) const {
    return p_(index(given_a), index(outcome_b));
  }

  /// Largest violation of the row-sum, column-sum and sign-interchange
  /// identities, or of the [0, 1] range.
  Scalar max_defect() const {
    Scalar d = 0;
    for (int i = 0; i < 2; ++i) {
      d = std::max(d, std::abs(p_.row(i).sum() - Scalar(1)));
      d = std::max(d, std::abs(p_.col(i).sum() - Scalar(1)));
    }
    d = std::max(d, std::abs(p_(0, 0) - p_(1, 1)));
    d = std::max(d, std::abs(p_(0, 1) - p_(1, 0)));
    d = std::max(d, -p_.minCoeff());
    d = std::max(d, p_.maxCoeff() - Scalar(1));
    return d;
  }

  bool is_valid(double tol = kAlgebraTol) const { return max_defect() <= tol; }

 private:
  Matrix2<Scalar> p_;
};

/// Real orthogonal 2x2 matrix acting on probability-amplitude tables or
/// on spinor bases.
template <typename Scalar>
struct ContextTransform {
  Matrix2<Scalar> m;

  Scalar orthogonality_defect() const {
    return (m * m.transpose() - Matrix2<Scalar>::Identity()).cwiseAbs().maxCoeff();
  }
  bool is_orthogonal(double tol = kAlgebraTol) const {
    return orthogonality_defect() <= tol;
  }

  ContextTransform operator*(const ContextTransform& rhs) const { return {m * rhs.m}; }
};

template <typename Scalar>
Spinor<Scalar> basis_state(const Direction<Scalar>& dir, Sign s) {
  const Scalar c = std::cos(dir.half());
  const Scalar sn = std::sin(dir.half());
  Spinor<Scalar> v;
  if (s == Sign::Plus) {
    v << Complex<Scalar>(c), Complex<Scalar>(-sn);
  } else {
    v << Complex<Scalar>(sn), Complex<Scalar>(c);
  }
  return v;
}

/// (|+>_dir, |->_dir)
template <typename Scalar>
std::pair<Spinor<Scalar>, Spinor<Scalar>> basis_states(const Direction<Scalar>& dir) {
  return {basis_state(dir, Sign::Plus), basis_state(dir, Sign::Minus)};
}

/// Closed-form <bra_sign|_bra  |ket_sign>_ket with half angle
/// (theta_bra - theta_ket) / 2.
template <typename Scalar>
Scalar overlap(const Direction<Scalar>& bra_dir, Sign bra_sign,
               const Direction<Scalar>& ket_dir, Sign ket_sign) {
  const Scalar h = half_angle(ket_dir, bra_dir);
  if (bra_sign == ket_sign) return std::cos(h);
  return bra_sign == Sign::Plus ? -std::sin(h) : std::sin(h);
}

/// Single-spin conditional probabilities: squared overlaps of the two bases.
template <typename Scalar>
CondProbMatrix<Scalar> cond_prob_matrix(const Direction<Scalar>& a,
                                        const Direction<Scalar>& b) {
  const Scalar c = std::cos(half_angle(a, b));
  const Scalar s = std::sin(half_angle(a, b));
  Matrix2<Scalar> p;
  p << c * c, s * s,
       s * s, c * c;
  return CondProbMatrix<Scalar>(p);
}

template <typename Scalar>
struct JointAndTotal {
  /// joint(i, j) = P_a(i) P_ab(j | i), same indexing as CondProbMatrix.
  Matrix2<Scalar> joint;
  /// Total probability of + along b.
  Scalar p_b_plus;
};

template <typename Scalar>
JointAndTotal<Scalar> joint_and_total(Scalar p_a_plus, const CondProbMatrix<Scalar>& m) {
  if (!(p_a_plus >= 0 && p_a_plus <= 1)) {
    throw std::invalid_argument("p_a_plus must lie in [0, 1]");
  }
  const Scalar p_a_minus = 1 - p_a_plus;
  JointAndTotal<Scalar> out;
  out.joint.row(0) = p_a_plus * m.matrix().row(0);
  out.joint.row(1) = p_a_minus * m.matrix().row(1);
  out.p_b_plus = p_a_plus * m(Sign::Plus, Sign::Plus) + p_a_minus * m(Sign::Minus, Sign::Plus);
  return out;
}

/// Correlation as the ratio of (equal-sign minus opposite-sign) joint
/// probabilities over their total.
template <typename Scalar>
Scalar correlation_from_joint(const Matrix2<Scalar>& joint) {
  const Scalar agree = joint(0, 0) + joint(1, 1);
  const Scalar disagree = joint(0, 1) + joint(1, 0);
  return (agree - disagree) / (agree + disagree);
}

/// Reduced form P_ab(+|+) - P_ab(-|+).
template <typename Scalar>
Scalar correlation_from_conditional(const CondProbMatrix<Scalar>& m) {
  return m(Sign::Plus, Sign::Plus) - m(Sign::Plus, Sign::Minus);
}

/// Quantum single-spin correlation, cos(theta_b - theta_a).
template <typename Scalar>
Scalar correlation_exact(const Direction<Scalar>& a, const Direction<Scalar>& b) {
  return std::cos(b.theta() - a.theta());
}

/// Orthogonal matrix whose element-wise squares are cond_prob_matrix(a, b):
/// cos(h) sigma_z - sin(h) sigma_x with h = (theta_b - theta_a) / 2.
template <typename Scalar>
ContextTransform<Scalar> f_matrix(const Direction<Scalar>& a, const Direction<Scalar>& b) {
  const Scalar c = std::cos(half_angle(a, b));
  const Scalar s = std::sin(half_angle(a, b));
  ContextTransform<Scalar> f;
  f.m << c, -s,
         -s, -c;
  return f;
}

/// Rotation taking context (a, b) to (a, c): U_cb F_ba = F_ca, and
/// U_cb |+-> _b = |+-> _c.
template <typename Scalar>
ContextTransform<Scalar> context_rotation(const Direction<Scalar>& b, const Direction<Scalar>& c) {
  const Scalar co = std::cos(half_angle(b, c));
  const Scalar s = std::sin(half_angle(b, c));
  ContextTransform<Scalar> u;
  u.m << co, s,
         -s, co;
  return u;
}

/// Applies a real context transform to a spinor.
template <typename Scalar>
Spinor<Scalar> apply_transform(const ContextTransform<Scalar>& u, const Spinor<Scalar>& v) {
  return u.m.template cast<Complex<Scalar>>() * v;
}

/// Pauli matrices.
template <typename Scalar>
ComplexMatrix2<Scalar> sigma_x() {
  ComplexMatrix2<Scalar> m;
  m << Scalar(0), Scalar(1), Scalar(1), Scalar(0);
  return m;
}

template <typename Scalar>
ComplexMatrix2<Scalar> sigma_y() {
  ComplexMatrix2<Scalar> m;
  m << Scalar(0), Complex<Scalar>(0, -1), Complex<Scalar>(0, 1), Scalar(0);
  return m;
}

template <typename Scalar>
ComplexMatrix2<Scalar> sigma_z() {
  ComplexMatrix2<Scalar> m;
  m << Scalar(1), Scalar(0), Scalar(0), Scalar(-1);
  return m;
}

/// Spin projection operator along dir, built from Pauli matrices. Its +1/-1
/// eigenvectors are basis_state(dir, Plus/Minus).
template <typename Scalar>
ComplexMatrix2<Scalar> spin_operator(const Direction<Scalar>& dir) {
  return Complex<Scalar>(std::cos(dir.theta())) * sigma_z<Scalar>() -
         Complex<Scalar>(std::sin(dir.theta())) * sigma_x<Scalar>();
}

}  // namespace spinsim

#endif  // SPINSIM_SPIN_HPP_
