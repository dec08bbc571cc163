#include "pstforge/dynamics.hpp"

#include "pstforge/errors.hpp"

#include <array>
#include <cmath>

namespace pstforge {

Propagator::Propagator(const PstHamiltonian& h) : tau_(h.tau) {
  validate(h);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(h.matrix);
  energies_ = es.eigenvalues();
  vectors_ = es.eigenvectors();
}

Eigen::VectorXcd Propagator::apply(int site, double m) const {
  if (site < 1 || site > size()) {
    throw InvalidInput("site " + std::to_string(site) + " outside 1.." + std::to_string(size()));
  }
  if (m == 0.0) return Eigen::VectorXcd::Unit(size(), site - 1);
  const Eigen::VectorXcd overlaps = vectors_.row(site - 1).adjoint();
  const Eigen::VectorXcd phases =
      (energies_ * (tau_ * m)).unaryExpr([](double x) { return std::polar(1.0, x); });
  return vectors_ * phases.cwiseProduct(overlaps);
}

Eigen::VectorXcd evolve(const PstHamiltonian& h, int site, double m) {
  return Propagator(h).apply(site, m);
}

DynamicsTrace occupation_trace(const PstHamiltonian& h, int site, int periods, int substeps) {
  if (substeps < 1) throw InvalidInput("substeps must be at least 1");
  if (periods < 0) throw InvalidInput("periods must be non-negative");
  const Propagator propagator(h);
  DynamicsTrace trace;
  trace.n = propagator.size();
  trace.initial_site = site;
  const int samples = periods * substeps;
  trace.steps.reserve(samples + 1);
  for (int k = 0; k <= samples; ++k) {
    DynamicsStep step;
    step.m = static_cast<double>(k) / substeps;
    step.probabilities = propagator.apply(site, step.m).cwiseAbs2();
    step.tangle = total_tangle(step.probabilities);
    trace.steps.push_back(std::move(step));
  }
  return trace;
}

std::vector<double> concurrence(const DynamicsTrace& trace, int i, int j) {
  if (i == j) throw InvalidInput("concurrence needs two distinct sites");
  if (i < 1 || j < 1 || i > trace.n || j > trace.n) throw InvalidInput("site outside the trace");
  std::vector<double> out;
  out.reserve(trace.steps.size());
  for (const auto& step : trace.steps) {
    out.push_back(2.0 * std::sqrt(step.probabilities(i - 1) * step.probabilities(j - 1)));
  }
  return out;
}

double total_tangle(const Eigen::VectorXd& p) {
  if (std::abs(p.sum() - 1.0) > 1e-9) throw InvalidInput("probabilities must sum to 1");
  return 2.0 * (1.0 - p.squaredNorm());
}

std::string_view to_string(SpectrumPreset preset) {
  switch (preset) {
    case SpectrumPreset::kDescending: return "descending";
    case SpectrumPreset::kInterrupted: return "interrupted";
    case SpectrumPreset::kSymmetricDip: return "symmetric_dip";
    case SpectrumPreset::kAlternating: return "alternating";
  }
  return "unknown";
}

SpectrumPreset parse_preset(std::string_view name) {
  for (auto p : {SpectrumPreset::kDescending, SpectrumPreset::kInterrupted, SpectrumPreset::kSymmetricDip,
                 SpectrumPreset::kAlternating}) {
    if (to_string(p) == name) return p;
  }
  throw InvalidInput("unknown spectrum preset '" + std::string(name) + "'");
}

std::vector<long> preset_shifts(SpectrumPreset preset) {
  constexpr int n = kPresetSites;
  std::vector<long> l(n, 0);
  std::array<bool, n> set{};
  const auto assign = [&](int index, long value) {
    const int j = index % n;
    if (!set[j]) {
      l[j] = value;
      set[j] = true;
    }
  };
  switch (preset) {
    case SpectrumPreset::kDescending:
      for (int j = 0; j < n; ++j) assign(j, n - j);
      break;
    case SpectrumPreset::kInterrupted:
      for (int j = 1; j <= 6; ++j) assign(2 * j - 1, 19 - 3 * j);
      for (int j = 1; j <= 6; ++j) assign(2 * j, 0);
      break;
    case SpectrumPreset::kSymmetricDip:
      for (int j = 0; j < n; ++j) assign(j, std::abs(j - 6));
      break;
    case SpectrumPreset::kAlternating:
      for (int j = 1; j <= 3; ++j) {
        assign(4 * j - 3, 0);
        assign(4 * j - 2, 0);
        assign(4 * j - 1, 5);
        assign(4 * j, 5);
      }
      break;
  }
  return l;
}

SpectralAssignment preset_assignment(SpectrumPreset preset, double tau) {
  SpectralAssignment a;
  a.tau = tau;
  a.shifts = preset_shifts(preset);
  return a;
}

}  // namespace pstforge
