#include "pstforge/errors.hpp"
#include "pstforge/hamiltonian.hpp"

#include "test_support.hpp"

#include <gtest/gtest.h>

#include <algorithm>

using namespace pstforge;

namespace {

// Closed-form one-cycle matrix element (1/n) sum_j eps_j lambda_j^(a-b) for the shift-matrix permutation.
Complex circulant_element(const Eigen::VectorXd& eps, int a, int b) {
  const int n = static_cast<int>(eps.size());
  Complex g = 0.0;
  for (int j = 0; j < n; ++j) g += eps(j) * std::polar(1.0, kTwoPi * j * (a - b) / n);
  return g / static_cast<double>(n);
}

// The 4-site chain written out from its eigenvectors by hand:
// y+1 = nu v+1 + mu v+2, y+2 = mu v+1 - nu v+2, y-1 = xi v-1 + zeta v-2, y-2 = zeta v-1 - xi v-2.
Eigen::MatrixXcd chain_by_hand() {
  const double nu = 0.5, mu = std::sqrt(3.0) / 2.0, xi = std::sqrt(3.0) / 2.0, zeta = 0.5;
  const double r = 1.0 / std::sqrt(2.0);
  const Eigen::Vector4d vp1(r, 0, 0, r), vp2(0, r, r, 0), vm1(r, 0, 0, -r), vm2(0, r, -r, 0);
  const Eigen::Vector4d y[4] = {nu * vp1 + mu * vp2, mu * vp1 - nu * vp2, xi * vm1 + zeta * vm2, zeta * vm1 - xi * vm2};
  const double eps[4] = {0.0, kTwoPi, kPi, 3.0 * kPi};
  Eigen::Matrix4d h = Eigen::Matrix4d::Zero();
  for (int k = 0; k < 4; ++k) h += eps[k] * y[k] * y[k].transpose();
  return h.cast<Complex>();
}

PstHamiltonian chain() {
  const double s3 = std::sqrt(3.0) / 2.0;
  SpectralAssignment a;
  a.shifts = {0, 1, 0, 1};
  Eigen::Matrix2cd plus, minus;
  plus << 0.5, s3, s3, -0.5;
  minus << s3, 0.5, 0.5, -s3;
  a.mixing = {{0, plus}, {1, minus}};
  return synthesize(antidiagonal_permutation(4), a);
}

Eigen::MatrixXcd expected_chain() {
  const double s = std::sqrt(3.0) / 2.0;
  Eigen::Matrix4d m;
  m << 1.5, -s, 0, 0,
       -s, 1.5, -1, 0,
       0, -1, 1.5, -s,
       0, 0, -s, 1.5;
  return (kPi * m).cast<Complex>();
}

}  // namespace

TEST(BuildHamiltonian, TwoSiteSwap) {
  SpectralAssignment a;
  a.shifts = {0, 0};
  const auto h = synthesize(make_transfer_permutation(2, {}), a);
  Eigen::Matrix2d expected;
  expected << 1, -1, -1, 1;
  EXPECT_LT(max_abs_diff(h.matrix, Eigen::MatrixXcd((kPi / 2.0 * expected).cast<Complex>())), 1e-15);
}

TEST(BuildHamiltonian, FourSiteChainMatchesHandExpansion) {
  const auto h = chain();
  EXPECT_LT(max_abs_diff(chain_by_hand(), expected_chain()), 1e-14);
  EXPECT_LT(max_abs_diff(h.matrix, expected_chain()), 1e-14);
  EXPECT_LT(verify_pst(h, antidiagonal_permutation(4), 1e-10).residual_max, 1e-10);
  EXPECT_LT(max_abs_diff(test_support::pade_exp_i(h.matrix, h.tau),
                         Eigen::MatrixXcd(antidiagonal_permutation(4).matrix().cast<Complex>())),
            1e-10);
}

TEST(BuildHamiltonian, OneCycleThreeMatchesCirculantFormula) {
  SpectralAssignment a;
  a.shifts = {0, 0, 0};
  const auto h = synthesize(one_cycle_permutation(3), a);
  const Eigen::Vector3d eps(0.0, kTwoPi / 3.0, 2.0 * kTwoPi / 3.0);
  for (int r = 1; r <= 3; ++r) {
    for (int c = 1; c <= 3; ++c) EXPECT_LT(std::abs(h.coupling(r, c) - circulant_element(eps, r, c)), 1e-14);
  }
}

TEST(BuildHamiltonian, RejectsNonOrthonormalVectors) {
  Eigensystem es;
  es.vectors = Eigen::MatrixXcd::Ones(2, 2);
  es.energies = Eigen::Vector2d(0, 1);
  es.eigenvalues = Eigen::Vector2cd(1, 1);
  EXPECT_THROW(build_hamiltonian(es), InvalidInput);
}

TEST(Extract, ChainEnergiesAndCouplings) {
  const auto ec = extract_energies_couplings(chain());
  for (int a = 0; a < 4; ++a) EXPECT_NEAR(ec.energies(a), 1.5 * kPi, 1e-14);
  EXPECT_NEAR(ec.couplings(0, 1).real(), -std::sqrt(3.0) * kPi / 2.0, 1e-14);
  EXPECT_NEAR(ec.couplings(1, 2).real(), -kPi, 1e-14);
  EXPECT_EQ(ec.couplings.diagonal(), Eigen::Vector4cd::Zero());
}

TEST(Extract, DiagonalHamiltonianHasNoCouplings) {
  PstHamiltonian h;
  h.matrix = Eigen::Vector3d(1, 2, 3).cast<Complex>().asDiagonal();
  const auto ec = extract_energies_couplings(h);
  EXPECT_EQ(ec.couplings, Eigen::MatrixXcd::Zero(3, 3));
  EXPECT_TRUE(is_nearest_neighbour(h, 0.0));
}

TEST(Extract, OneCycleFourHasFlatDiagonal) {
  SpectralAssignment a;
  a.shifts = {0, 0, 0, 0};
  const auto e = extract_energies_couplings(synthesize(one_cycle_permutation(4), a)).energies;
  EXPECT_LT(e.maxCoeff() - e.minCoeff(), 1e-14);
}

TEST(VerifyPst, PerturbedCouplingBreaksTransfer) {
  auto h = chain();
  h.matrix(0, 1) += 0.1;
  h.matrix(1, 0) += 0.1;
  const auto report = verify_pst(h, antidiagonal_permutation(4), 1e-6);
  EXPECT_FALSE(report.pass);
  EXPECT_GT(report.residual_max, 1e-3);
}

TEST(VerifyPst, RejectsSizeMismatchAndBadTolerance) {
  const auto h = chain();
  EXPECT_THROW(verify_pst(h, antidiagonal_permutation(5), 1e-10), InvalidInput);
  EXPECT_THROW(verify_pst(h, antidiagonal_permutation(4), 0.0), InvalidInput);
}

TEST(NearestNeighbour, ChainIsTridiagonal) { EXPECT_TRUE(is_nearest_neighbour(chain(), 1e-12)); }

TEST(NearestNeighbour, OneCycleFourWithLinearShiftsIsNot) {
  SpectralAssignment a;
  a.shifts = {0, 1, 2, 3};
  const auto h = synthesize(one_cycle_permutation(4), a);
  Eigen::Vector4d eps;
  for (int j = 0; j < 4; ++j) eps(j) = kTwoPi * j / 4.0 + kTwoPi * j;
  const Complex g13 = circulant_element(eps, 1, 3);
  EXPECT_NEAR(g13.real(), -5.0 * kPi / 4.0, 1e-12);
  EXPECT_LT(std::abs(h.coupling(1, 3) - g13), 1e-12);
  EXPECT_FALSE(is_nearest_neighbour(h, 1e-12));
}

TEST(NoGo, ThreeSites) {
  const auto cert = no_go_certificate(3);
  EXPECT_EQ(cert.rank, 1);
  ASSERT_EQ(cert.real_null_space.cols(), 1);
  // Null direction of the 2x3 real system [Re; Im] is the cross product of its rows.
  const Eigen::Vector3d re = cert.lambda_matrix.row(0).real().transpose();
  const Eigen::Vector3d im = cert.lambda_matrix.row(0).imag().transpose();
  const Eigen::Vector3d cross = re.cross(im).normalized();
  EXPECT_NEAR(std::abs(cross.dot(cert.real_null_space.col(0))), 1.0, 1e-12);
  EXPECT_NEAR(std::abs(cross.dot(Eigen::Vector3d::Ones().normalized())), 1.0, 1e-12);
  EXPECT_TRUE(cert.holds());
}

TEST(NoGo, RankIsNMinusTwo) {
  for (int n = 3; n <= 10; ++n) {
    const auto cert = no_go_certificate(n);
    EXPECT_EQ(cert.rank, n - 2) << n;
    EXPECT_TRUE(cert.holds()) << n;
  }
}

TEST(NoGo, EightSitesComplexNullSpace) {
  const auto cert = no_go_certificate(8);
  EXPECT_EQ(cert.rank, 6);
  Eigen::VectorXcd conj_roots(8);
  for (int j = 0; j < 8; ++j) conj_roots(j) = std::polar(1.0, -kTwoPi * j / 8.0);
  EXPECT_LT((cert.lambda_matrix * Eigen::VectorXcd::Ones(8)).cwiseAbs().maxCoeff(), 1e-12);
  EXPECT_LT((cert.lambda_matrix * conj_roots).cwiseAbs().maxCoeff(), 1e-12);
  ASSERT_EQ(cert.real_null_space.cols(), 1);
}

TEST(NoGo, RejectsSmallN) {
  EXPECT_THROW(no_go_certificate(2), InvalidInput);
}

TEST(ClassProperties, SpectralRoundTripAndPowers) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 60; ++trial) {
    const int n = 2 + trial % 7;
    const auto p = test_support::random_transfer_permutation(n, rng);
    const auto a = test_support::random_assignment(p, rng, false);
    const auto es = assemble_eigensystem(p, a);
    const auto h = build_hamiltonian(es);

    Eigen::VectorXd recovered = Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd>(h.matrix).eigenvalues();
    Eigen::VectorXd expected = es.energies;
    std::sort(expected.data(), expected.data() + n);
    EXPECT_LT((recovered - expected).cwiseAbs().maxCoeff(), 1e-10);

    const Eigen::MatrixXcd pm = p.matrix().cast<Complex>();
    Eigen::MatrixXcd power = Eigen::MatrixXcd::Identity(n, n);
    for (int q = 1; q <= 3; ++q) {
      power = pm * power;
      EXPECT_LT(max_abs_diff(evolution_operator(h, q), power), 1e-9) << "q=" << q;
    }
  }
}

TEST(ClassProperties, OneCycleDiagonalIsFlat) {
  std::mt19937_64 rng(5);
  for (int n = 3; n <= 9; ++n) {
    const auto p = test_support::random_one_cycle_permutation(n, rng);
    ASSERT_TRUE(p.is_one_cycle());
    const auto e = synthesize(p, test_support::random_assignment(p, rng, false)).site_energies();
    EXPECT_LT(e.maxCoeff() - e.minCoeff(), 1e-10);
  }
}

TEST(ClassProperties, AntidiagonalRealMixingIsPersymmetric) {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 40; ++trial) {
    const int n = 2 + trial % 8;
    const auto p = antidiagonal_permutation(n);
    const auto h = synthesize(p, test_support::random_assignment(p, rng, true));
    for (int a = 0; a < n; ++a) {
      for (int b = 0; b < n; ++b) {
        EXPECT_LT(std::abs(h.matrix(a, b) - h.matrix(n - 1 - b, n - 1 - a)), 1e-10);
        EXPECT_LT(std::abs(h.matrix(a, b) - h.matrix(b, a)), 1e-10);
      }
    }
  }
}

TEST(ClassProperties, OneCycleMembersAreNeverChains) {
  std::mt19937_64 rng(17);
  for (int n = 3; n <= 10; ++n) {
    for (int trial = 0; trial < 50; ++trial) {
      const auto p = test_support::random_one_cycle_permutation(n, rng);
      const auto h = synthesize(p, test_support::random_assignment(p, rng, false));
      const auto couplings = extract_energies_couplings(h).couplings;
      if (couplings.cwiseAbs().maxCoeff() < 1e-8) continue;
      EXPECT_FALSE(is_nearest_neighbour(h, 1e-8)) << "n=" << n;
    }
  }
}
