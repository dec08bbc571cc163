#include "pstforge/errors.hpp"
#include "pstforge/solver.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace pstforge {

namespace {

constexpr double kParityTol = 1e-9;
constexpr double kMagnitudeSlack = 1e-12;
constexpr double kClosedFormTol = 1e-9;
constexpr double kNn4ResidualLimit = 1e-8;

bool is_multiple_of_pi(double x, bool odd) {
  const double k = x / kPi;
  const double r = std::round(k);
  if (std::abs(k - r) > kParityTol) return false;
  const bool r_odd = std::fmod(std::abs(r), 2.0) == 1.0;
  return r_odd == odd;
}

long shift_index(double phase_times_tau, double base) {
  return std::lround((phase_times_tau - base) / kTwoPi);
}

double clamp_unit(double x, const char* name) {
  if (x < -kMagnitudeSlack || x > 1.0 + kMagnitudeSlack || !std::isfinite(x)) {
    throw NoSolution(NoSolutionReason::kAmplitudeOutOfRange,
                     std::string("squared magnitude |") + name + "|^2 = " + std::to_string(x) + " outside [0, 1]");
  }
  return std::clamp(x, 0.0, 1.0);
}

Nn4ClosedForm closed_form(const Nn4Spectrum& s, double nu_sq, double xi_sq) {
  const double p1 = s.plus1, p2 = s.plus2, m1 = s.minus1, m2 = s.minus2;
  const double d = p1 - m2 - m1 + p2;
  Nn4ClosedForm cf;
  cf.mu_sq = (p2 - m2) * (m1 - p2) / ((p1 - p2) * d);
  cf.nu_sq = (m1 - p1) * (m2 - p1) / ((p1 - p2) * d);
  cf.xi_sq = (m2 - p1) * (m2 - p2) / ((m1 - m2) * d);
  cf.zeta_sq = (m1 - p1) * (m1 - p2) / ((m2 - m1) * d);
  const auto near = [](double a, double b) { return std::abs(a - b) < kClosedFormTol; };
  const bool odd_ok = near(cf.xi_sq, xi_sq) && near(cf.zeta_sq, 1.0 - xi_sq);
  cf.matches_direct = odd_ok && near(cf.nu_sq, nu_sq) && near(cf.mu_sq, 1.0 - nu_sq);
  cf.matches_with_mu_nu_swapped = odd_ok && near(cf.mu_sq, nu_sq) && near(cf.nu_sq, 1.0 - nu_sq);
  return cf;
}

}  // namespace

Nn4Spectrum Nn4Spectrum::from_multiples_of_pi(long p1, long p2, long m1, long m2) {
  Nn4Spectrum s{kPi * p1, kPi * p2, kPi * m1, kPi * m2};
  s.validate();
  return s;
}

void Nn4Spectrum::validate() const {
  if (!is_multiple_of_pi(plus1, false) || !is_multiple_of_pi(plus2, false)) {
    throw InvalidInput("+1 subspace eigenphases must be even multiples of pi");
  }
  if (!is_multiple_of_pi(minus1, true) || !is_multiple_of_pi(minus2, true)) {
    throw InvalidInput("-1 subspace eigenphases must be odd multiples of pi");
  }
}

bool Nn4Spectrum::degenerate() const {
  return std::abs(plus1 - plus2) < kParityTol * kPi || std::abs(minus1 - minus2) < kParityTol * kPi;
}

bool check_overlap(const Nn4Spectrum& s) {
  const double lo_plus = std::min(s.plus1, s.plus2), hi_plus = std::max(s.plus1, s.plus2);
  const double lo_minus = std::min(s.minus1, s.minus2), hi_minus = std::max(s.minus1, s.minus2);
  return std::max(lo_plus, lo_minus) <= std::min(hi_plus, hi_minus);
}

Nn4Amplitudes solve_nn4(const Nn4Spectrum& s) {
  s.validate();
  if (s.degenerate()) {
    throw NoSolution(NoSolutionReason::kBrokenNetwork,
                     "degenerate spectrum only yields vanishing couplings (broken network)");
  }
  if (!check_overlap(s)) {
    throw NoSolution(NoSolutionReason::kIntervalsDisjoint, "+1 and -1 eigenphase intervals do not overlap");
  }
  const double dp = s.plus1 - s.plus2;
  const double dm = s.minus1 - s.minus2;

  // Unknowns a = |nu|^2, b = |xi|^2.
  //   linear:    dp a - dm b + (plus2 - minus2) = 0            =>  a = slope b + offset
  //   quadratic: dp^2 a (1 - a) = dm^2 b (1 - b)
  // Substituting the linear relation cancels the b^2 terms, leaving c1 b = c0.
  const double slope = dm / dp;
  const double offset = (s.minus2 - s.plus2) / dp;
  const double c1 = dp * dp * slope * (1.0 - 2.0 * offset) - dm * dm;
  const double c0 = dp * dp * (offset * offset - offset);
  if (std::abs(c1) < 1e-14 * dp * dp) {
    throw NoSolution(NoSolutionReason::kAmplitudeOutOfRange,
                     "constraint system has no finite solution for this spectrum");
  }
  const double b = clamp_unit(c0 / c1, "xi");
  const double a = clamp_unit(slope * b + offset, "nu");

  Nn4Amplitudes amp;
  amp.m = dp / dm > 0.0 ? 0 : 1;
  amp.phi = amp.m == 0 ? 0.0 : kPi;
  amp.chi = 0.0;
  amp.nu = std::sqrt(a);
  amp.mu = std::polar(std::sqrt(1.0 - a), amp.phi);
  amp.xi = std::sqrt(b);
  amp.zeta = std::polar(std::sqrt(1.0 - b), amp.chi);
  amp.closed_form = closed_form(s, a, b);
  return amp;
}

double nn4_constraint_residual(const Nn4Spectrum& s, const Nn4Amplitudes& a) {
  const double linear = s.plus1 * std::norm(a.nu) + s.plus2 * std::norm(a.mu) - s.minus1 * std::norm(a.xi) -
                        s.minus2 * std::norm(a.zeta);
  const Complex cross = (s.plus1 - s.plus2) * a.nu * std::conj(a.mu) +
                        (s.minus2 - s.minus1) * a.xi * std::conj(a.zeta);
  const double norm_plus = std::norm(a.mu) + std::norm(a.nu) - 1.0;
  const double norm_minus = std::norm(a.xi) + std::norm(a.zeta) - 1.0;
  return std::max({std::abs(linear), std::abs(cross), std::abs(norm_plus), std::abs(norm_minus)});
}

Eigensystem nn4_eigensystem(const Nn4Spectrum& s, const Nn4Amplitudes& a, double tau) {
  s.validate();
  SpectralAssignment assignment;
  assignment.tau = tau;
  assignment.shifts = {shift_index(s.plus1, 0.0), shift_index(s.plus2, 0.0), shift_index(s.minus1, kPi),
                       shift_index(s.minus2, kPi)};
  Eigen::Matrix2cd plus;
  plus << a.nu, std::conj(a.mu), a.mu, -std::conj(a.nu);
  Eigen::Matrix2cd minus;
  minus << a.xi, std::conj(a.zeta), a.zeta, -std::conj(a.xi);
  assignment.mixing = {{0, plus}, {1, minus}};
  return assemble_eigensystem(antidiagonal_permutation(4), assignment);
}

PstHamiltonian nn4_hamiltonian(const Nn4Spectrum& s, const Nn4Amplitudes& a, double tau) {
  const double residual = nn4_constraint_residual(s, a);
  if (residual > kNn4ResidualLimit) {
    throw InvalidInput("amplitudes do not satisfy the nearest-neighbour constraints (residual " +
                       std::to_string(residual) + ")");
  }
  return build_hamiltonian(nn4_eigensystem(s, a, tau));
}

Nn4Chain nn4_chain_parameters(const PstHamiltonian& h) {
  if (h.size() != 4) throw InvalidInput("four-site chain parameters need a 4x4 Hamiltonian");
  return {h.matrix(0, 0).real(), h.matrix(1, 1).real(), h.matrix(0, 1).real(), h.matrix(1, 2).real()};
}

const char* to_string(Nn4Feasibility f) {
  switch (f) {
    case Nn4Feasibility::kFeasible: return "FEASIBLE";
    case Nn4Feasibility::kInfeasibleDecoupled: return "INFEASIBLE_DECOUPLED";
    case Nn4Feasibility::kInfeasibleContradiction: return "INFEASIBLE_CONTRADICTION";
    case Nn4Feasibility::kInfeasibleOneCycle: return "INFEASIBLE";
  }
  return "UNKNOWN";
}

Nn4Feasibility classify_4site_permutation(const SitePermutation& p) {
  if (p.size() != 4) throw InvalidInput("classification is defined for n = 4 only");
  if (p.is_one_cycle()) return Nn4Feasibility::kInfeasibleOneCycle;

  std::vector<int> lengths;
  for (const Cycle& c : cycle_decompose(p)) lengths.push_back(c.length());
  std::sort(lengths.begin(), lengths.end());

  if (lengths == std::vector<int>{1, 1, 2}) {
    // Sites 2 and 3 are fixed points, so the -1 eigenvector is (|1> - |4>)/sqrt(2) alone;
    // killing <4|H|2> and <1|H|3> forces <1|H|2> = <4|H|3> = 0 and cuts the wire.
    return Nn4Feasibility::kInfeasibleDecoupled;
  }
  if (lengths == std::vector<int>{1, 3}) {
    // Tridiagonality needs (eps_x - eps_{x^2})(x - x^2) = 0, but the two complex branches
    // sit at 2pi/3 and 4pi/3 modulo 2pi, so their eigenphases can never coincide.
    return Nn4Feasibility::kInfeasibleContradiction;
  }
  // Only the site reversal has two 2-cycles with image(1) = 4.
  return Nn4Feasibility::kFeasible;
}

}  // namespace pstforge
