#include "lct/schrodinger.hpp"

#include <cmath>
#include <sstream>
#include <vector>

#include "lct/errors.hpp"

namespace lct {

namespace {

constexpr complexd kI(0.0, 1.0);
constexpr double kBoundaryFraction = 0.05;

// Factorized constant tridiagonal system (sub = super = off, main = diag_j).
class TridiagonalSolver {
 public:
  TridiagonalSolver(const Eigen::VectorXcd& diag, complexd off)
      : off_(off), inv_pivot_(diag.size()), upper_(diag.size()) {
    const Eigen::Index n = diag.size();
    complexd pivot = diag[0];
    for (Eigen::Index i = 0; i < n; ++i) {
      if (i > 0) pivot = diag[i] - off_ * upper_[i - 1];
      inv_pivot_[i] = 1.0 / pivot;
      upper_[i] = off_ * inv_pivot_[i];
    }
  }

  // Solves in place.
  void solve(Eigen::VectorXcd& x) const {
    const Eigen::Index n = x.size();
    x[0] *= inv_pivot_[0];
    for (Eigen::Index i = 1; i < n; ++i) x[i] = (x[i] - off_ * x[i - 1]) * inv_pivot_[i];
    for (Eigen::Index i = n - 2; i >= 0; --i) x[i] -= upper_[i] * x[i + 1];
  }

 private:
  complexd off_;
  Eigen::VectorXcd inv_pivot_;
  Eigen::VectorXcd upper_;
};

void check_boundary(const Eigen::VectorXcd& psi, double tol, double t) {
  const Eigen::Index n = psi.size();
  const Eigen::Index edge = std::max<Eigen::Index>(1, static_cast<Eigen::Index>(kBoundaryFraction * n));
  const double total = psi.squaredNorm();
  if (total == 0.0) return;
  const double outer = (psi.head(edge).squaredNorm() + psi.tail(edge).squaredNorm()) / total;
  if (outer > tol) {
    std::ostringstream os;
    os << "wavefunction reached the boundary at t = " << t << ": " << outer
       << " of the norm lies in the outer 5% of the grid";
    throw GridError(os.str());
  }
}

}  // namespace

WaveFunction evolve_cn(const WaveFunction& psi0, const EvolutionSpec& spec,
                       const PhysicalConstants& constants) {
  if (spec.steps < 1) throw ConfigError("evolve_cn needs at least one time step");
  if (!(spec.padding_factor >= 1.0)) throw ConfigError("padding factor must be >= 1");
  if (psi0.grid.size != spec.grid.size ||
      std::abs(psi0.grid.spacing - spec.grid.spacing) > 1e-12 * spec.grid.spacing ||
      std::abs(psi0.grid.origin - spec.grid.origin) > 1e-9 * spec.grid.spacing) {
    throw ConfigError("initial state is not on the evolution grid");
  }

  const double dx = spec.grid.spacing;
  const double dt = spec.t_final / static_cast<double>(spec.steps);
  const double hbar = constants.hbar, m = constants.mass;
  if (spec.enforce_guard && std::abs(dt) > spec.guard_safety * m * dx * dx / hbar) {
    std::ostringstream os;
    os << "time step " << dt << " exceeds the resolution guard " << spec.guard_safety
       << " m dq^2 / hbar = " << spec.guard_safety * m * dx * dx / hbar
       << "; increase steps";
    throw ResolutionError(os.str());
  }

  // Embed into the padded solver grid.
  const Eigen::Index n0 = spec.grid.size;
  const Eigen::Index pad =
      static_cast<Eigen::Index>(std::llround(0.5 * (spec.padding_factor - 1.0) * n0));
  const Eigen::Index n = n0 + 2 * pad;
  const double origin = spec.grid.origin - dx * static_cast<double>(pad);
  Eigen::VectorXcd psi = Eigen::VectorXcd::Zero(n);
  psi.segment(pad, n0) = psi0.samples;

  // H = T + V, T = -(hbar^2 / 2m) D2.
  const double kinetic = hbar * hbar / (2.0 * m * dx * dx);
  Eigen::VectorXd h_diag(n);
  for (Eigen::Index j = 0; j < n; ++j) {
    h_diag[j] = 2.0 * kinetic + spec.potential(origin + dx * static_cast<double>(j));
  }
  const double h_off = -kinetic;
  const complexd lambda = kI * dt / (2.0 * hbar);

  const Eigen::VectorXcd lhs_diag = (1.0 + lambda * h_diag.array().cast<complexd>()).matrix();
  const Eigen::VectorXcd rhs_diag = (1.0 - lambda * h_diag.array().cast<complexd>()).matrix();
  const complexd lhs_off = lambda * h_off;
  const complexd rhs_off = -lambda * h_off;
  const TridiagonalSolver solver(lhs_diag, lhs_off);

  check_boundary(psi, spec.boundary_tol, 0.0);
  const long check_every = std::max(1L, spec.steps / 16);
  Eigen::VectorXcd rhs(n);
  for (long step = 1; step <= spec.steps; ++step) {
    rhs[0] = rhs_diag[0] * psi[0] + rhs_off * psi[1];
    for (Eigen::Index j = 1; j < n - 1; ++j) {
      rhs[j] = rhs_diag[j] * psi[j] + rhs_off * (psi[j - 1] + psi[j + 1]);
    }
    rhs[n - 1] = rhs_diag[n - 1] * psi[n - 1] + rhs_off * psi[n - 2];
    solver.solve(rhs);
    psi.swap(rhs);
    if (step % check_every == 0 || step == spec.steps) {
      check_boundary(psi, spec.boundary_tol, dt * static_cast<double>(step));
    }
  }

  return WaveFunction(psi.segment(pad, n0), spec.grid, psi0.label);
}

std::function<complexd(double)> gaussian_free_closed_form(double sigma0, double center,
                                                          double momentum, double t,
                                                          const PhysicalConstants& constants) {
  if (!(sigma0 > 0.0)) throw ConfigError("sigma0 must be positive");
  const double hbar = constants.hbar, m = constants.mass;
  const double amplitude = std::pow(2.0 * kPi * sigma0 * sigma0, -0.25);
  const complexd spread(1.0, hbar * t / (2.0 * m * sigma0 * sigma0));
  const complexd scale = amplitude / std::sqrt(spread);
  const double velocity = momentum / m;
  return [=](double q) {
    const double shifted = q - center - velocity * t;
    const complexd exponent = -shifted * shifted / (4.0 * sigma0 * sigma0 * spread) +
                              kI * momentum * (q - 0.5 * velocity * t) / hbar;
    return scale * std::exp(exponent);
  };
}

std::function<complexd(double)> gaussian_packet(double sigma0, double center, double momentum,
                                                const PhysicalConstants& constants) {
  return gaussian_free_closed_form(sigma0, center, momentum, 0.0, constants);
}

std::function<complexd(double)> harmonic_ground_state(double omega,
                                                      const PhysicalConstants& constants) {
  const double k = constants.mass * omega / constants.hbar;
  const double amplitude = std::pow(k / kPi, 0.25);
  return [=](double q) { return complexd(amplitude * std::exp(-0.5 * k * q * q), 0.0); };
}

}  // namespace lct
