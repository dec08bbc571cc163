#pragma once

#include "pstforge/hamiltonian.hpp"
#include "pstforge/permutation.hpp"
#include "pstforge/spectral.hpp"

#include <unsupported/Eigen/MatrixFunctions>

#include <random>

namespace pstforge::test_support {

// Scaling-and-squaring Pade exponential of the skew-Hermitian generator; an evaluation
// path independent of the eigendecomposition used by the library.
inline Eigen::MatrixXcd pade_exp_i(const Eigen::MatrixXcd& h, double t) {
  const Eigen::MatrixXcd generator = Complex(0.0, t) * h;
  return generator.exp();
}

inline Eigen::MatrixXcd random_unitary(int d, std::mt19937_64& rng) {
  std::normal_distribution<double> normal;
  Eigen::MatrixXcd z(d, d);
  for (int r = 0; r < d; ++r) {
    for (int c = 0; c < d; ++c) z(r, c) = Complex(normal(rng), normal(rng));
  }
  Eigen::HouseholderQR<Eigen::MatrixXcd> qr(z);
  Eigen::MatrixXcd q = qr.householderQ() * Eigen::MatrixXcd::Identity(d, d);
  // One more Gram-Schmidt pass tightens unitarity to a few ulps.
  for (int c = 0; c < d; ++c) {
    for (int k = 0; k < c; ++k) q.col(c) -= q.col(k).dot(q.col(c)) * q.col(k);
    q.col(c).normalize();
  }
  return q;
}

inline Eigen::MatrixXcd random_real_rotation(int d, std::mt19937_64& rng) {
  std::normal_distribution<double> normal;
  Eigen::MatrixXd z(d, d);
  for (int r = 0; r < d; ++r) {
    for (int c = 0; c < d; ++c) z(r, c) = normal(rng);
  }
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(z);
  Eigen::MatrixXd q = qr.householderQ() * Eigen::MatrixXd::Identity(d, d);
  return q.cast<Complex>();
}

inline SitePermutation random_transfer_permutation(int n, std::mt19937_64& rng) {
  std::vector<int> images(n - 1);
  for (int k = 0; k < n - 1; ++k) images[k] = k + 1;
  std::shuffle(images.begin(), images.end(), rng);
  images.resize(n - 2);
  return make_transfer_permutation(n, images);
}

inline SitePermutation random_one_cycle_permutation(int n, std::mt19937_64& rng) {
  std::vector<int> order(n - 2);
  for (int k = 0; k < n - 2; ++k) order[k] = k + 2;
  std::shuffle(order.begin(), order.end(), rng);
  // Walk 1 -> n -> order[0] -> ... -> order.back() -> 1.
  std::vector<int> image(n);
  int from = 1;
  image[0] = n;
  from = n;
  for (int s : order) {
    image[from - 1] = s;
    from = s;
  }
  image[from - 1] = 1;
  return SitePermutation::from_image(image);
}

inline SpectralAssignment random_assignment(const SitePermutation& p, std::mt19937_64& rng, bool real_mixing,
                                            int shift_bound = 5) {
  std::uniform_int_distribution<long> shift(-shift_bound, shift_bound);
  std::uniform_real_distribution<double> tau(0.5, 3.0);
  SpectralAssignment a;
  a.tau = tau(rng);
  for (int k = 0; k < p.size(); ++k) a.shifts.push_back(shift(rng));
  const auto groups = eigenvalue_groups(p);
  for (int g = 0; g < static_cast<int>(groups.size()); ++g) {
    const int d = groups[g].degeneracy();
    if (d > 1) a.mixing.push_back({g, real_mixing ? random_real_rotation(d, rng) : random_unitary(d, rng)});
  }
  return a;
}

}  // namespace pstforge::test_support
