#pragma once

#include "pstforge/hamiltonian.hpp"
#include "pstforge/permutation.hpp"

#include <array>
#include <cstdint>
#include <vector>

namespace pstforge {

// ---------------------------------------------------------------------------
// Four-site nearest-neighbour chain for the antidiagonal permutation.
// ---------------------------------------------------------------------------

/// Eigenphases eps*tau of the +1 subspace (even multiples of pi) and of the -1
/// subspace (odd multiples of pi).
struct Nn4Spectrum {
  double plus1 = 0.0;
  double plus2 = 0.0;
  double minus1 = 0.0;
  double minus2 = 0.0;

  /// Spectrum {p1, p2, m1, m2} * pi.
  static Nn4Spectrum from_multiples_of_pi(long p1, long p2, long m1, long m2);

  /// Throws InvalidInput if the parity rule is broken.
  void validate() const;
  bool degenerate() const;
  Nn4Spectrum shifted(double offset) const { return {plus1 + offset, plus2 + offset, minus1 + offset, minus2 + offset}; }
};

/// Closed-form magnitudes as printed for the four-site chain, kept for comparison.
struct Nn4ClosedForm {
  double mu_sq = 0.0;
  double nu_sq = 0.0;
  double xi_sq = 0.0;
  double zeta_sq = 0.0;
  bool matches_direct = false;
  bool matches_with_mu_nu_swapped = false;
};

struct Nn4Amplitudes {
  Complex mu, nu, xi, zeta;
  double phi = 0.0;  ///< arg(mu)
  double chi = 0.0;  ///< arg(zeta)
  int m = 0;         ///< phi - chi = m pi
  Nn4ClosedForm closed_form;
};

/// True iff [min, max] of the +1 pair intersects [min, max] of the -1 pair.
bool check_overlap(const Nn4Spectrum& s);

/// Solves the two tridiagonality constraints with normalisation for nu, xi >= 0.
/// Throws NoSolution (broken network, disjoint intervals, or magnitudes outside [0, 1]).
Nn4Amplitudes solve_nn4(const Nn4Spectrum& s);

/// Largest magnitude among the <1|H|3>, <1|H|4> constraint expressions.
double nn4_constraint_residual(const Nn4Spectrum& s, const Nn4Amplitudes& a);

/// Eigensystem of the antidiagonal 4-site permutation with the amplitudes as mixing.
Eigensystem nn4_eigensystem(const Nn4Spectrum& s, const Nn4Amplitudes& a, double tau = 1.0);

/// Builds the tridiagonal chain. Throws InvalidInput if the constraint residual exceeds 1e-8.
PstHamiltonian nn4_hamiltonian(const Nn4Spectrum& s, const Nn4Amplitudes& a, double tau = 1.0);

/// E1 = <1|H|1>, E2 = <2|H|2>, g1 = <1|H|2>, g2 = <2|H|3>.
struct Nn4Chain {
  double e1 = 0.0;
  double e2 = 0.0;
  double g1 = 0.0;
  double g2 = 0.0;
};

Nn4Chain nn4_chain_parameters(const PstHamiltonian& h);

enum class Nn4Feasibility {
  kFeasible,
  kInfeasibleDecoupled,
  kInfeasibleContradiction,
  kInfeasibleOneCycle,
};

const char* to_string(Nn4Feasibility f);

/// Whether a nearest-neighbour Hamiltonian can realise the given n=4 transfer permutation.
Nn4Feasibility classify_4site_permutation(const SitePermutation& p);

// ---------------------------------------------------------------------------
// Six-site wire with 1/r^gamma couplings, mirror symmetric.
// ---------------------------------------------------------------------------

/// Energies in units pi/tau, distances in units (tau/pi)^(1/gamma).
struct PowerLawParams {
  std::array<double, 3> energies{};
  std::array<double, 3> distances{};
};

/// Six-site Hamiltonian in units of pi/tau: site energies (E1, E2, E3, E3, E2, E1) and
/// couplings 1/|x_a - x_b|^gamma for sites at cumulative distances (r1, r2, r3, r2, r1).
template <typename Scalar>
Matrix<Scalar> power_law_hamiltonian(Scalar gamma, const std::array<Scalar, 3>& energies,
                                     const std::array<Scalar, 3>& distances) {
  const std::array<Scalar, 6> gaps{Scalar(0), distances[0], distances[1], distances[2], distances[1], distances[0]};
  std::array<Scalar, 6> x{};
  for (int a = 1; a < 6; ++a) x[a] = x[a - 1] + gaps[a];
  const std::array<Scalar, 6> diag{energies[0], energies[1], energies[2], energies[2], energies[1], energies[0]};
  Matrix<Scalar> h(6, 6);
  for (int a = 0; a < 6; ++a) {
    for (int b = 0; b < 6; ++b) {
      h(a, b) = a == b ? diag[a] : Scalar(1) / std::pow(std::abs(x[a] - x[b]), gamma);
    }
  }
  return h;
}

Eigen::MatrixXd power_law_hamiltonian(double gamma, const PowerLawParams& p);

/// Sorted eigenvalues (units pi) of the mirror-even block followed by the mirror-odd block.
std::array<double, 6> sector_eigenphases(double gamma, const PowerLawParams& p);

struct SolverOptions {
  int max_starts = 100;
  std::uint64_t seed = 42;
  /// Sum of squared eigenphase errors (units pi^2) counted as converged.
  double tolerance = 1e-8;
  int max_iterations = 200;
  /// 0 means hardware concurrency, further capped by PSTFORGE_THREADS.
  int threads = 0;
  /// Random starts draw energies in [-energy_spread, energy_spread] and distances in [distance_min, distance_max].
  double energy_spread = 2.0;
  double distance_min = 0.5;
  double distance_max = 2.0;
};

struct WireDesign {
  double gamma = 1.0;
  PowerLawParams params;
  /// Target eigenphases in units of pi, as supplied.
  std::array<int, 6> targets{};
  double residual = 0.0;
  bool converged = false;
  int start_index = -1;
  int starts_evaluated = 0;
  int iterations = 0;
};

/// Fits the six free parameters so the even block has the even targets and the odd
/// block the odd targets. Caller guesses are tried first, then seeded random starts.
/// Returns the best design; `converged` tells whether it met the tolerance.
WireDesign solve_power_law(double gamma, const std::array<int, 6>& targets,
                           const std::vector<PowerLawParams>& guesses, const SolverOptions& options = {});

/// The design's Hamiltonian in absolute units for a given tau.
PstHamiltonian wire_hamiltonian(const WireDesign& design, double tau = 1.0);

/// Solver thread count after applying PSTFORGE_THREADS.
int effective_threads(int requested);

}  // namespace pstforge
