#include "pstforge/hamiltonian.hpp"

#include "pstforge/errors.hpp"

#include <string>

namespace pstforge {

namespace {

int numerical_rank(const Eigen::VectorXd& singular_values) {
  if (singular_values.size() == 0) return 0;
  const double cutoff = kRankRelativeTol * singular_values.maxCoeff();
  return static_cast<int>((singular_values.array() > cutoff).count());
}

}  // namespace

PstHamiltonian build_hamiltonian(const Eigensystem& es) {
  const int n = es.size();
  if (es.vectors.rows() != n || es.vectors.cols() != n) {
    throw InvalidInput("eigensystem must hold n vectors of length n");
  }
  if (unitarity_defect(es.vectors) > kOrthonormalTol) {
    throw InvalidInput("eigenvectors are not orthonormal");
  }
  PstHamiltonian h;
  h.tau = es.tau;
  h.matrix = es.vectors * es.energies.cast<Complex>().asDiagonal() * es.vectors.adjoint();
  const double asym = max_abs_diff(h.matrix, Eigen::MatrixXcd(h.matrix.adjoint()));
  const double scale = std::max(1.0, es.energies.cwiseAbs().maxCoeff());
  if (asym > kHermitianTol * scale) throw InvalidInput("assembled matrix is not Hermitian");
  // Remove rounding asymmetry so the stored matrix is exactly Hermitian.
  h.matrix = (0.5 * (h.matrix + h.matrix.adjoint())).eval();
  h.matrix.diagonal() = h.matrix.diagonal().real().cast<Complex>();
  return h;
}

PstHamiltonian synthesize(const SitePermutation& p, const SpectralAssignment& a) {
  return build_hamiltonian(assemble_eigensystem(p, a));
}

void validate(const PstHamiltonian& h) {
  if (h.matrix.rows() != h.matrix.cols() || h.matrix.rows() < 1) {
    throw InvalidInput("Hamiltonian must be a non-empty square matrix");
  }
  if (!(h.tau > 0.0)) throw InvalidInput("tau must be positive");
  if (max_abs_diff(h.matrix, Eigen::MatrixXcd(h.matrix.adjoint())) > kHermitianTol) {
    throw InvalidInput("Hamiltonian is not Hermitian");
  }
}

EnergiesCouplings extract_energies_couplings(const PstHamiltonian& h) {
  EnergiesCouplings out;
  out.energies = h.site_energies();
  out.couplings = h.matrix;
  out.couplings.diagonal().setZero();
  return out;
}

Eigen::MatrixXcd evolution_operator(const PstHamiltonian& h, double periods) {
  return hermitian_exp_i(h.matrix, h.tau * periods);
}

PstReport verify_pst(const PstHamiltonian& h, const SitePermutation& p, double tol) {
  if (!(tol > 0.0)) throw InvalidInput("tolerance must be positive");
  if (h.size() != p.size()) {
    throw InvalidInput("Hamiltonian has " + std::to_string(h.size()) + " sites, permutation has " +
                       std::to_string(p.size()));
  }
  PstReport report;
  report.tolerance = tol;
  report.residual_max = max_abs_diff(evolution_operator(h), p.matrix().cast<Complex>());
  report.pass = report.residual_max <= tol;
  return report;
}

bool is_nearest_neighbour(const PstHamiltonian& h, double tol) {
  if (tol < 0.0) throw InvalidInput("tolerance must be non-negative");
  const int n = h.size();
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) {
      if (std::abs(a - b) > 1 && std::abs(h.matrix(a, b)) > tol) return false;
    }
  }
  return true;
}

bool NoGoCertificate::holds() const {
  if (rank != n - 2 || real_null_space.cols() != 1) return false;
  const Eigen::VectorXd ones = Eigen::VectorXd::Ones(n) / std::sqrt(static_cast<double>(n));
  const Eigen::VectorXd v = real_null_space.col(0);
  return std::abs(std::abs(v.dot(ones)) - 1.0) < 1e-9;
}

NoGoCertificate no_go_certificate(int n) {
  if (n <= 2) throw InvalidInput("the nearest-neighbour no-go statement needs n > 2");
  NoGoCertificate cert;
  cert.n = n;
  cert.lambda_matrix.resize(n - 2, n);
  for (int r = 0; r < n - 2; ++r) {
    const int power = r + 2;
    for (int j = 0; j < n; ++j) cert.lambda_matrix(r, j) = std::polar(1.0, kTwoPi * ((j * power) % n) / n);
  }
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(cert.lambda_matrix);
  cert.singular_values = svd.singularValues();
  cert.rank = numerical_rank(cert.singular_values);

  // Real x with Lambda x = 0  <=>  [Re Lambda; Im Lambda] x = 0.
  Eigen::MatrixXd stacked(2 * (n - 2), n);
  stacked << cert.lambda_matrix.real(), cert.lambda_matrix.imag();
  Eigen::JacobiSVD<Eigen::MatrixXd> real_svd(stacked, Eigen::ComputeFullV);
  const Eigen::VectorXd sv = real_svd.singularValues();
  const double cutoff = kRankRelativeTol * sv.maxCoeff();
  int real_rank = 0;
  for (Eigen::Index k = 0; k < sv.size(); ++k) {
    if (sv(k) > cutoff) ++real_rank;
  }
  cert.real_null_space = real_svd.matrixV().rightCols(n - real_rank);
  return cert;
}

}  // namespace pstforge
