#pragma once

#include "pstforge/hamiltonian.hpp"
#include "pstforge/spectral.hpp"

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace pstforge {

/// Eigendecomposition of a Hamiltonian, reused for many evolution times.
class Propagator {
 public:
  explicit Propagator(const PstHamiltonian& h);

  int size() const { return static_cast<int>(energies_.size()); }

  /// U(m)|site> with U(m) = exp(i H tau m); m counts transfer periods and may be fractional.
  Eigen::VectorXcd apply(int site, double m) const;

 private:
  double tau_;
  Eigen::VectorXd energies_;
  Eigen::MatrixXcd vectors_;
};

Eigen::VectorXcd evolve(const PstHamiltonian& h, int site, double m);

struct DynamicsStep {
  double m = 0.0;
  Eigen::VectorXd probabilities;
  double tangle = 0.0;
};

struct DynamicsTrace {
  int n = 0;
  int initial_site = 1;
  std::vector<DynamicsStep> steps;
};

/// P_f(m) = |<f|U(m)|i>|^2 at m = k / substeps for k = 0..periods*substeps.
DynamicsTrace occupation_trace(const PstHamiltonian& h, int site, int periods, int substeps);

/// C_ij(m) = 2 sqrt(P_i P_j) for every step; sites are 1-based and distinct.
std::vector<double> concurrence(const DynamicsTrace& trace, int i, int j);

/// T = 2 (1 - sum p^2). Throws InvalidInput if p does not sum to 1 within 1e-9.
double total_tangle(const Eigen::VectorXd& p);

enum class SpectrumPreset { kDescending, kInterrupted, kSymmetricDip, kAlternating };

inline constexpr int kPresetSites = 11;

std::string_view to_string(SpectrumPreset preset);
/// Throws InvalidInput for an unknown name.
SpectrumPreset parse_preset(std::string_view name);

/// Shift vector l_j (j = 0..10) of the preset. Rule indices past 10 wrap modulo 11 and
/// the first rule to reach an index keeps it.
std::vector<long> preset_shifts(SpectrumPreset preset);

/// Assignment for the 11-site one-cycle permutation.
SpectralAssignment preset_assignment(SpectrumPreset preset, double tau = 1.0);

}  // namespace pstforge
