#pragma once

#include "pstforge/linalg.hpp"
#include "pstforge/permutation.hpp"

#include <vector>

namespace pstforge {

struct CycleEigenpair {
  /// exp(2 pi i branch / d) for a cycle of length d.
  Complex eigenvalue;
  int branch = 0;
  /// Unit vector supported on the cycle's sites.
  Eigen::VectorXcd vector;
};

/// Eigenpairs of the permutation restricted to one cycle, branch j = 0..d-1.
///
/// The amplitude at the k-th site along image order is lambda_j^{-k} / sqrt(d), which
/// makes P v = lambda v; for the shift-matrix one-cycle permutation this is
/// (1, lambda, ..., lambda^{n-1}) / sqrt(n).
std::vector<CycleEigenpair> cycle_spectrum(const Cycle& cycle, int n);

/// Raw cycle eigenvectors sharing one eigenvalue of the permutation.
struct EigenvalueGroup {
  Complex eigenvalue;
  /// Principal argument in [0, 2pi).
  double phase = 0.0;
  /// Columns are the cycle eigenvectors v^(1..delta), ordered by cycle.
  Eigen::MatrixXcd members;

  int degeneracy() const { return static_cast<int>(members.cols()); }
};

/// Eigenvalue groups sorted by phase. Eigenvalues closer than 1e-9 are the same group.
std::vector<EigenvalueGroup> eigenvalue_groups(const SitePermutation& p);

struct DegeneracyEntry {
  Complex eigenvalue;
  double phase = 0.0;
  int degeneracy = 0;
};

std::vector<DegeneracyEntry> degeneracy_table(const SitePermutation& p);

struct MixingBlock {
  /// Index into eigenvalue_groups(p).
  int eigenvalue_index = 0;
  /// Unitary; column k holds the coefficients of y^(k) over the raw members.
  Eigen::MatrixXcd block;
};

/// Parameters selecting one member of the PST class of a permutation.
struct SpectralAssignment {
  double tau = 1.0;
  /// One integer per eigenbasis member, in group order then member order.
  std::vector<long> shifts;
  /// Groups without a block use the raw cycle vectors.
  std::vector<MixingBlock> mixing;
};

struct Eigensystem {
  double tau = 1.0;
  /// Orthonormal columns y_k.
  Eigen::MatrixXcd vectors;
  /// eps_k = (arg(lambda_k) + 2 pi l_k) / tau.
  Eigen::VectorXd energies;
  /// lambda_k of the branch each column came from.
  Eigen::VectorXcd eigenvalues;

  int size() const { return static_cast<int>(energies.size()); }
};

inline constexpr double kEigenvalueGroupingTol = 1e-9;
inline constexpr double kUnitaryTol = 1e-12;

Eigensystem assemble_eigensystem(const SitePermutation& p, const SpectralAssignment& a);

}  // namespace pstforge
