#include "pstforge/errors.hpp"
#include "pstforge/solver.hpp"

#include <algorithm>
#include <cstdlib>
#include <limits>
#include <random>
#include <string>
#include <thread>

namespace pstforge {

namespace {

using Vector6d = Eigen::Matrix<double, 6, 1>;
using Matrix6d = Eigen::Matrix<double, 6, 6>;

Vector6d pack(const PowerLawParams& p) {
  Vector6d x;
  x << p.energies[0], p.energies[1], p.energies[2], p.distances[0], p.distances[1], p.distances[2];
  return x;
}

PowerLawParams unpack(const Vector6d& x) {
  return {{x(0), x(1), x(2)}, {x(3), x(4), x(5)}};
}

bool admissible(const Vector6d& x) {
  return x.allFinite() && (x.tail<3>().array() > 0.0).all();
}

Vector6d eigenphases(double gamma, const Vector6d& x) {
  const auto s = sector_eigenphases(gamma, unpack(x));
  return Eigen::Map<const Vector6d>(s.data());
}

struct Fit {
  Vector6d x;
  double residual = std::numeric_limits<double>::infinity();
  int iterations = 0;
};

// Levenberg-Marquardt on r(x) = eigenphases(x) - target with a central-difference Jacobian.
// Steps leaving the positive-distance region are rejected like uphill steps.
Fit levenberg_marquardt(double gamma, const Vector6d& target, Vector6d x, int max_iterations) {
  Fit fit;
  Vector6d r = eigenphases(gamma, x) - target;
  double cost = r.squaredNorm();
  double damping = 1e-3;
  int it = 0;
  for (; it < max_iterations && cost > 1e-30; ++it) {
    Matrix6d jac;
    for (int k = 0; k < 6; ++k) {
      const double h = 1e-7 * std::max(1.0, std::abs(x(k)));
      Vector6d hi = x, lo = x;
      hi(k) += h;
      lo(k) -= h;
      if (k >= 3 && lo(k) <= 0.0) {
        lo(k) = x(k);
        jac.col(k) = (eigenphases(gamma, hi) - eigenphases(gamma, lo)) / h;
      } else {
        jac.col(k) = (eigenphases(gamma, hi) - eigenphases(gamma, lo)) / (2.0 * h);
      }
    }
    const Matrix6d jtj = jac.transpose() * jac;
    const Vector6d grad = jac.transpose() * r;
    bool accepted = false;
    bool stalled = false;
    while (damping < 1e12) {
      Matrix6d lhs = jtj;
      lhs.diagonal().array() += damping * (jtj.diagonal().array() + 1e-12);
      const Vector6d step = lhs.ldlt().solve(-grad);
      const Vector6d trial = x + step;
      if (admissible(trial)) {
        const Vector6d r_trial = eigenphases(gamma, trial) - target;
        const double cost_trial = r_trial.squaredNorm();
        if (cost_trial < cost) {
          const double shrink = step.norm();
          x = trial;
          r = r_trial;
          cost = cost_trial;
          damping = std::max(damping / 3.0, 1e-12);
          accepted = true;
          stalled = shrink < 1e-15 * (1.0 + x.norm());
          break;
        }
      }
      damping *= 10.0;
    }
    if (!accepted || stalled) {
      ++it;
      break;
    }
  }
  fit.x = x;
  fit.residual = cost;
  fit.iterations = it;
  return fit;
}

}  // namespace

Eigen::MatrixXd power_law_hamiltonian(double gamma, const PowerLawParams& p) {
  return power_law_hamiltonian<double>(gamma, p.energies, p.distances);
}

std::array<double, 6> sector_eigenphases(double gamma, const PowerLawParams& p) {
  const Eigen::MatrixXd h = power_law_hamiltonian(gamma, p);
  // Mirror-even (odd) combinations |a> +- |7-a> block-diagonalise the centrosymmetric matrix.
  Eigen::Matrix3d even, odd;
  for (int a = 0; a < 3; ++a) {
    for (int b = 0; b < 3; ++b) {
      even(a, b) = h(a, b) + h(a, 5 - b);
      odd(a, b) = h(a, b) - h(a, 5 - b);
    }
  }
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> es_even(even, Eigen::EigenvaluesOnly);
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> es_odd(odd, Eigen::EigenvaluesOnly);
  std::array<double, 6> out{};
  for (int k = 0; k < 3; ++k) {
    out[k] = es_even.eigenvalues()(k);
    out[k + 3] = es_odd.eigenvalues()(k);
  }
  return out;
}

int effective_threads(int requested) {
  int threads = requested > 0 ? requested : static_cast<int>(std::thread::hardware_concurrency());
  if (const char* env = std::getenv("PSTFORGE_THREADS")) {
    const int cap = std::atoi(env);
    if (cap > 0) threads = std::min(threads, cap);
  }
  return std::max(threads, 1);
}

WireDesign solve_power_law(double gamma, const std::array<int, 6>& targets,
                           const std::vector<PowerLawParams>& guesses, const SolverOptions& options) {
  if (!(gamma > 0.0)) throw InvalidInput("gamma must be positive");
  if (options.max_starts < 1) throw InvalidInput("max_starts must be at least 1");
  std::vector<int> even, odd;
  for (int t : targets) (t % 2 == 0 ? even : odd).push_back(t);
  if (even.size() != 3 || odd.size() != 3) {
    throw InvalidInput("targets need three even and three odd multiples of pi");
  }
  std::sort(even.begin(), even.end());
  std::sort(odd.begin(), odd.end());
  Vector6d target;
  target << even[0], even[1], even[2], odd[0], odd[1], odd[2];

  std::vector<Vector6d> starts;
  for (const auto& g : guesses) {
    const Vector6d x = pack(g);
    if (!admissible(x)) throw InvalidInput("initial guess distances must be positive");
    starts.push_back(x);
  }
  std::mt19937_64 rng(options.seed);
  std::uniform_real_distribution<double> energy(-options.energy_spread, options.energy_spread);
  std::uniform_real_distribution<double> distance(options.distance_min, options.distance_max);
  while (static_cast<int>(starts.size()) < options.max_starts) {
    Vector6d x;
    for (int k = 0; k < 3; ++k) x(k) = energy(rng);
    for (int k = 3; k < 6; ++k) x(k) = distance(rng);
    starts.push_back(x);
  }
  starts.resize(std::min<std::size_t>(starts.size(), static_cast<std::size_t>(options.max_starts)));

  const int threads = effective_threads(options.threads);
  const int total = static_cast<int>(starts.size());
  std::vector<Fit> fits(total);
  int evaluated = 0;
  int chosen = -1;
  for (int begin = 0; begin < total && chosen < 0; begin += threads) {
    const int end = std::min(total, begin + threads);
    {
      std::vector<std::jthread> pool;
      for (int i = begin; i < end; ++i) {
        pool.emplace_back([&, i] { fits[i] = levenberg_marquardt(gamma, target, starts[i], options.max_iterations); });
      }
    }
    evaluated = end;
    for (int i = begin; i < end; ++i) {
      if (fits[i].residual < options.tolerance) {
        chosen = i;
        break;
      }
    }
  }
  if (chosen < 0) {
    chosen = 0;
    for (int i = 1; i < evaluated; ++i) {
      if (fits[i].residual < fits[chosen].residual) chosen = i;
    }
  }

  WireDesign design;
  design.gamma = gamma;
  design.params = unpack(fits[chosen].x);
  design.targets = targets;
  design.residual = fits[chosen].residual;
  design.converged = design.residual < options.tolerance;
  design.start_index = chosen;
  design.starts_evaluated = evaluated;
  design.iterations = fits[chosen].iterations;
  return design;
}

PstHamiltonian wire_hamiltonian(const WireDesign& design, double tau) {
  if (!(tau > 0.0)) throw InvalidInput("tau must be positive");
  PstHamiltonian h;
  h.tau = tau;
  h.matrix = (power_law_hamiltonian(design.gamma, design.params) * (kPi / tau)).cast<Complex>();
  return h;
}

}  // namespace pstforge
