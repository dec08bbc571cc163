#pragma once

#include "pstforge/linalg.hpp"
#include "pstforge/permutation.hpp"
#include "pstforge/spectral.hpp"

namespace pstforge {

/// Hermitian single-excitation Hamiltonian with exp(i H tau) equal to a permutation.
struct PstHamiltonian {
  double tau = 1.0;
  Eigen::MatrixXcd matrix;

  int size() const { return static_cast<int>(matrix.rows()); }
  /// E_a, the real diagonal.
  Eigen::VectorXd site_energies() const { return matrix.diagonal().real(); }
  /// G(a, b) for 1-based sites.
  Complex coupling(int a, int b) const { return matrix(a - 1, b - 1); }
};

struct EnergiesCouplings {
  Eigen::VectorXd energies;
  /// Off-diagonal couplings; the diagonal is zero.
  Eigen::MatrixXcd couplings;
};

struct PstReport {
  double residual_max = 0.0;
  bool pass = false;
  double tolerance = 0.0;
};

inline constexpr double kHermitianTol = 1e-12;
inline constexpr double kOrthonormalTol = 1e-10;

/// H = sum_k eps_k |y_k><y_k|. Throws InvalidInput for a non-orthonormal eigensystem.
PstHamiltonian build_hamiltonian(const Eigensystem& es);

/// assemble_eigensystem followed by build_hamiltonian.
PstHamiltonian synthesize(const SitePermutation& p, const SpectralAssignment& a);

/// Throws InvalidInput unless h is square, Hermitian within 1e-12 and tau > 0.
void validate(const PstHamiltonian& h);

EnergiesCouplings extract_energies_couplings(const PstHamiltonian& h);

/// exp(i H tau * periods), computed from the Hermitian eigendecomposition.
Eigen::MatrixXcd evolution_operator(const PstHamiltonian& h, double periods = 1.0);

/// Max-norm distance between exp(i H tau) and the permutation matrix.
PstReport verify_pst(const PstHamiltonian& h, const SitePermutation& p, double tol);

/// True iff |G(a, b)| <= tol whenever |a - b| > 1.
bool is_nearest_neighbour(const PstHamiltonian& h, double tol);

/// Rank and real null space of Lambda(r, j) = lambda_j^(r+2), r = 0..n-3, for the
/// n-th roots of unity: the linear system a one-cycle spectrum must satisfy for the
/// Hamiltonian to be tridiagonal.
struct NoGoCertificate {
  int n = 0;
  Eigen::MatrixXcd lambda_matrix;
  Eigen::VectorXd singular_values;
  int rank = 0;
  /// Orthonormal columns spanning the real x with Lambda x = 0.
  Eigen::MatrixXd real_null_space;

  /// rank == n - 2 and the real null space is the single direction (1, ..., 1).
  bool holds() const;
};

inline constexpr double kRankRelativeTol = 1e-10;

NoGoCertificate no_go_certificate(int n);

}  // namespace pstforge
