#ifndef SPINSIM_BIPARTITE_HPP_
#define SPINSIM_BIPARTITE_HPP_

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "spinsim/spin.hpp"

namespace spinsim {

/// Singlet (|+-> - |-+>) / sqrt(2) with the z-axis as reference direction.
template <typename Scalar>
BiSpinor<Scalar> singlet() {
  const Scalar r = 1 / std::sqrt(Scalar(2));
  BiSpinor<Scalar> v;
  v << Scalar(0), Complex<Scalar>(r), Complex<Scalar>(-r), Scalar(0);
  return v;
}

/// Tensor product in (++, +-, -+, --) order.
template <typename Scalar>
BiSpinor<Scalar> kron(const Spinor<Scalar>& s1, const Spinor<Scalar>& s2) {
  BiSpinor<Scalar> v;
  v << s1(0) * s2(0), s1(0) * s2(1), s1(1) * s2(0), s1(1) * s2(1);
  return v;
}

template <typename Scalar>
ComplexMatrix4<Scalar> kron(const ComplexMatrix2<Scalar>& a, const ComplexMatrix2<Scalar>& b) {
  ComplexMatrix4<Scalar> m;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) m.template block<2, 2>(2 * i, 2 * j) = a(i, j) * b;
  return m;
}

/// Product basis for the context (a, b):
///   phi1 = |+>_a|->_b, phi2 = |->_a|+>_b, phi3 = |+>_a|+>_b, phi4 = |->_a|->_b
/// with eigenvalues of the joint sign product (-1, -1, +1, +1).
template <typename Scalar>
struct ProductBasis {
  std::array<BiSpinor<Scalar>, 4> states;
  std::array<int, 4> eigenvalues{-1, -1, 1, 1};

  ComplexMatrix4<Scalar> projector(int k) const {
    return states[k] * states[k].adjoint();
  }
};

/// Signs (along a, along b) carried by the k-th product state.
inline constexpr std::array<std::array<Sign, 2>, 4> kProductSigns{{
    {Sign::Plus, Sign::Minus},
    {Sign::Minus, Sign::Plus},
    {Sign::Plus, Sign::Plus},
    {Sign::Minus, Sign::Minus},
}};

template <typename Scalar>
ProductBasis<Scalar> product_basis(const Direction<Scalar>& a, const Direction<Scalar>& b) {
  ProductBasis<Scalar> basis;
  for (int k = 0; k < 4; ++k) {
    basis.states[k] = kron(basis_state(a, kProductSigns[k][0]), basis_state(b, kProductSigns[k][1]));
  }
  return basis;
}

template <typename Scalar>
struct ProjectorFamilyCheck {
  Scalar idempotency = 0;   // max |P_k P_k - P_k|
  Scalar orthogonality = 0; // max |P_j P_k| for j != k
  Scalar completeness = 0;  // max |sum_k P_k - I|

  Scalar worst() const { return std::max({idempotency, orthogonality, completeness}); }
  bool ok(double tol = kAlgebraTol) const { return worst() <= tol; }
};

template <typename Scalar>
ProjectorFamilyCheck<Scalar> check_projectors(const ProductBasis<Scalar>& basis) {
  ProjectorFamilyCheck<Scalar> r;
  std::array<ComplexMatrix4<Scalar>, 4> p;
  ComplexMatrix4<Scalar> sum = ComplexMatrix4<Scalar>::Zero();
  for (int k = 0; k < 4; ++k) {
    p[k] = basis.projector(k);
    sum += p[k];
  }
  for (int j = 0; j < 4; ++j) {
    r.idempotency = std::max(r.idempotency, (p[j] * p[j] - p[j]).cwiseAbs().maxCoeff());
    for (int k = 0; k < 4; ++k) {
      if (j != k) r.orthogonality = std::max(r.orthogonality, (p[j] * p[k]).cwiseAbs().maxCoeff());
    }
  }
  r.completeness = (sum - ComplexMatrix4<Scalar>::Identity()).cwiseAbs().maxCoeff();
  return r;
}

/// Born weights C_k = |<phi_k|Psi0>|^2.
template <typename Scalar>
struct SpectralWeights {
  std::array<Scalar, 4> c{};

  Scalar sum() const { return c[0] + c[1] + c[2] + c[3]; }
};

template <typename Scalar>
SpectralWeights<Scalar> spectral_weights(const Direction<Scalar>& a, const Direction<Scalar>& b) {
  const auto basis = product_basis(a, b);
  const auto psi = singlet<Scalar>();
  SpectralWeights<Scalar> w;
  for (int k = 0; k < 4; ++k) w.c[k] = std::norm(basis.states[k].dot(psi));
  return w;
}

/// Singlet correlation through the spectral decomposition sum_k A_k C_k.
template <typename Scalar>
Scalar correlation_singlet(const Direction<Scalar>& a, const Direction<Scalar>& b) {
  const auto basis = product_basis(a, b);
  const auto w = spectral_weights(a, b);
  Scalar e = 0;
  for (int k = 0; k < 4; ++k) e += basis.eigenvalues[k] * w.c[k];
  return e;
}

/// <Psi0| (sigma.a (x) I)(I (x) sigma.b) |Psi0> with explicit 4x4 operators.
template <typename Scalar>
Scalar correlation_singlet_direct(const Direction<Scalar>& a, const Direction<Scalar>& b) {
  const ComplexMatrix2<Scalar> id = ComplexMatrix2<Scalar>::Identity();
  const ComplexMatrix4<Scalar> op =
      kron(spin_operator(a), id) * kron(id, spin_operator(b));
  const auto psi = singlet<Scalar>();
  return std::real(psi.dot(op * psi));
}

/// Same expectation with the resolution of identity sum_k P_k(a, b)
/// inserted between the two single-spin operators.
template <typename Scalar>
Scalar correlation_singlet_resolved(const Direction<Scalar>& a, const Direction<Scalar>& b) {
  const ComplexMatrix2<Scalar> id = ComplexMatrix2<Scalar>::Identity();
  const auto basis = product_basis(a, b);
  ComplexMatrix4<Scalar> resolution = ComplexMatrix4<Scalar>::Zero();
  for (int k = 0; k < 4; ++k) resolution += basis.projector(k);
  const ComplexMatrix4<Scalar> op =
      kron(spin_operator(a), id) * resolution * kron(id, spin_operator(b));
  const auto psi = singlet<Scalar>();
  return std::real(psi.dot(op * psi));
}

/// Singlet conditional probabilities: the single-spin matrix with the
/// entries of each column interchanged.
template <typename Scalar>
CondProbMatrix<Scalar> cond_prob_matrix_singlet(const Direction<Scalar>& a,
                                                const Direction<Scalar>& b) {
  const Scalar c = std::cos(half_angle(a, b));
  const Scalar s = std::sin(half_angle(a, b));
  Matrix2<Scalar> p;
  p << s * s, c * c,
       c * c, s * s;
  return CondProbMatrix<Scalar>(p);
}

template <typename Scalar>
struct PartitionReport {
  ProjectorFamilyCheck<Scalar> family_ab;
  ProjectorFamilyCheck<Scalar> family_ab_alt;
  /// overlap(j, k) = |<phi_j(a,b) | phi_k(a,b_alt)>|^2
  Eigen::Matrix<Scalar, 4, 4> overlap;
  /// max over j, k of ||[P_j(a,b), P_k(a,b_alt)]||_max
  Scalar max_commutator = 0;

  bool complete(double tol = kAlgebraTol) const { return family_ab.ok(tol) && family_ab_alt.ok(tol); }
  /// True when the two partitions cannot be diagonalized together.
  bool distinct(double tol = 1e-9) const { return max_commutator > tol; }
};

inline constexpr double kDegenerateContextTol = 1e-9;

/// Compares the projector partitions of contexts (a, b) and (a, b_alt).
/// Throws when b_alt coincides with b modulo pi (same pair of rays).
template <typename Scalar>
PartitionReport<Scalar> partition_distinctness(const Direction<Scalar>& a,
                                               const Direction<Scalar>& b,
                                               const Direction<Scalar>& b_alt) {
  const Scalar pi = std::numbers::pi_v<Scalar>;
  Scalar d = std::fmod(std::abs(b_alt.theta() - b.theta()), pi);
  d = std::min(d, pi - d);
  if (d <= kDegenerateContextTol) {
    throw std::invalid_argument("b_alt coincides with b modulo pi");
  }
  const auto p1 = product_basis(a, b);
  const auto p2 = product_basis(a, b_alt);
  PartitionReport<Scalar> r;
  r.family_ab = check_projectors(p1);
  r.family_ab_alt = check_projectors(p2);
  for (int j = 0; j < 4; ++j) {
    const ComplexMatrix4<Scalar> pj = p1.projector(j);
    for (int k = 0; k < 4; ++k) {
      r.overlap(j, k) = std::norm(p1.states[j].dot(p2.states[k]));
      const ComplexMatrix4<Scalar> pk = p2.projector(k);
      r.max_commutator = std::max(r.max_commutator, (pj * pk - pk * pj).cwiseAbs().maxCoeff());
    }
  }
  return r;
}

}  // namespace spinsim

#endif  // SPINSIM_BIPARTITE_HPP_
