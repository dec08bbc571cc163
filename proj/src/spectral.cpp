#include "pstforge/spectral.hpp"

#include "pstforge/errors.hpp"

#include <algorithm>
#include <string>

namespace pstforge {

std::vector<CycleEigenpair> cycle_spectrum(const Cycle& cycle, int n) {
  const int d = cycle.length();
  const double norm = 1.0 / std::sqrt(static_cast<double>(d));
  std::vector<CycleEigenpair> out;
  out.reserve(d);
  for (int j = 0; j < d; ++j) {
    CycleEigenpair pair;
    pair.branch = j;
    pair.eigenvalue = std::polar(1.0, kTwoPi * j / d);
    pair.vector = Eigen::VectorXcd::Zero(n);
    for (int k = 0; k < d; ++k) {
      // lambda^{-k} with the exponent reduced mod d keeps the phase exact.
      const int e = (d - (j * k) % d) % d;
      pair.vector(cycle.sites[k] - 1) = std::polar(norm, kTwoPi * e / d);
    }
    out.push_back(std::move(pair));
  }
  return out;
}

std::vector<EigenvalueGroup> eigenvalue_groups(const SitePermutation& p) {
  const int n = p.size();
  struct Raw {
    Complex eigenvalue;
    double phase;
    Eigen::VectorXcd vector;
  };
  std::vector<Raw> raw;
  for (const Cycle& c : cycle_decompose(p)) {
    for (auto& pair : cycle_spectrum(c, n)) {
      raw.push_back({pair.eigenvalue, kTwoPi * pair.branch / c.length(), std::move(pair.vector)});
    }
  }
  // Stable sort keeps cycle order inside each group.
  std::stable_sort(raw.begin(), raw.end(),
                   [](const Raw& a, const Raw& b) { return a.phase < b.phase - kEigenvalueGroupingTol; });

  std::vector<EigenvalueGroup> groups;
  std::vector<std::vector<const Eigen::VectorXcd*>> columns;
  for (const Raw& r : raw) {
    if (groups.empty() || std::abs(groups.back().eigenvalue - r.eigenvalue) >= kEigenvalueGroupingTol) {
      groups.push_back({r.eigenvalue, r.phase, {}});
      columns.emplace_back();
    }
    columns.back().push_back(&r.vector);
  }
  for (std::size_t g = 0; g < groups.size(); ++g) {
    groups[g].members.resize(n, static_cast<Eigen::Index>(columns[g].size()));
    for (std::size_t k = 0; k < columns[g].size(); ++k) groups[g].members.col(k) = *columns[g][k];
  }
  return groups;
}

std::vector<DegeneracyEntry> degeneracy_table(const SitePermutation& p) {
  std::vector<DegeneracyEntry> out;
  for (const auto& g : eigenvalue_groups(p)) out.push_back({g.eigenvalue, g.phase, g.degeneracy()});
  return out;
}

Eigensystem assemble_eigensystem(const SitePermutation& p, const SpectralAssignment& a) {
  const int n = p.size();
  if (!(a.tau > 0.0)) throw InvalidInput("tau must be positive");
  if (static_cast<int>(a.shifts.size()) != n) {
    throw InvalidInput("expected " + std::to_string(n) + " shifts, got " + std::to_string(a.shifts.size()));
  }
  const auto groups = eigenvalue_groups(p);

  std::vector<const MixingBlock*> block_for(groups.size(), nullptr);
  for (const MixingBlock& m : a.mixing) {
    if (m.eigenvalue_index < 0 || m.eigenvalue_index >= static_cast<int>(groups.size())) {
      throw InvalidInput("mixing block refers to eigenvalue index " + std::to_string(m.eigenvalue_index) +
                         " but the permutation has " + std::to_string(groups.size()) + " distinct eigenvalues");
    }
    const int delta = groups[m.eigenvalue_index].degeneracy();
    if (m.block.rows() != delta || m.block.cols() != delta) {
      throw InvalidInput("mixing block for eigenvalue index " + std::to_string(m.eigenvalue_index) +
                         " must be " + std::to_string(delta) + "x" + std::to_string(delta));
    }
    if (unitarity_defect(m.block) > kUnitaryTol) {
      throw InvalidInput("mixing block for eigenvalue index " + std::to_string(m.eigenvalue_index) +
                         " is not unitary");
    }
    if (block_for[m.eigenvalue_index] != nullptr) {
      throw InvalidInput("duplicate mixing block for eigenvalue index " + std::to_string(m.eigenvalue_index));
    }
    block_for[m.eigenvalue_index] = &m;
  }

  Eigensystem es;
  es.tau = a.tau;
  es.vectors.resize(n, n);
  es.energies.resize(n);
  es.eigenvalues.resize(n);
  int col = 0;
  for (std::size_t g = 0; g < groups.size(); ++g) {
    const auto& group = groups[g];
    const int delta = group.degeneracy();
    const Eigen::MatrixXcd basis =
        block_for[g] ? Eigen::MatrixXcd(group.members * block_for[g]->block) : group.members;
    es.vectors.middleCols(col, delta) = basis;
    for (int k = 0; k < delta; ++k, ++col) {
      es.energies(col) = (group.phase + kTwoPi * static_cast<double>(a.shifts[col])) / a.tau;
      es.eigenvalues(col) = group.eigenvalue;
    }
  }
  return es;
}

}  // namespace pstforge
