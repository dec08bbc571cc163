#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <complex>
#include <numbers>

namespace pstforge {

using Complex = std::complex<double>;

template <typename Scalar>
using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
template <typename Scalar>
using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

/// exp(i * t * H) for Hermitian H, through its eigendecomposition V diag(e^{i t eps}) V^dagger.
/// Works for real-symmetric and complex-Hermitian inputs alike.
template <typename Derived>
Matrix<std::complex<typename Derived::RealScalar>> hermitian_exp_i(
    const Eigen::MatrixBase<Derived>& h, typename Derived::RealScalar t) {
  using Real = typename Derived::RealScalar;
  using C = std::complex<Real>;
  const Matrix<C> hc = h.template cast<C>();
  Eigen::SelfAdjointEigenSolver<Matrix<C>> es(hc);
  const Vector<C> phases =
      (es.eigenvalues() * t).unaryExpr([](Real x) { return std::polar(Real(1), x); });
  return es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint();
}

template <typename DerivedA, typename DerivedB>
typename DerivedA::RealScalar max_abs_diff(const Eigen::MatrixBase<DerivedA>& a,
                                           const Eigen::MatrixBase<DerivedB>& b) {
  return (a - b).cwiseAbs().maxCoeff();
}

/// Largest elementwise deviation of U^dagger U from the identity.
template <typename Derived>
typename Derived::RealScalar unitarity_defect(const Eigen::MatrixBase<Derived>& u) {
  using Plain = typename Derived::PlainObject;
  const Plain gram = u.adjoint() * u;
  return (gram - Plain::Identity(u.cols(), u.cols())).cwiseAbs().maxCoeff();
}

/// Principal argument mapped into [0, 2pi).
inline double principal_arg(Complex z) {
  double a = std::arg(z);
  if (a < 0.0) a += kTwoPi;
  if (a >= kTwoPi) a -= kTwoPi;
  return a;
}

}  // namespace pstforge
