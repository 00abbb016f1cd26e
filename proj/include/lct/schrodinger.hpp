#pragma once

#include <functional>

#include "lct/constants.hpp"
#include "lct/potential.hpp"
#include "lct/wavefunction.hpp"

namespace lct {

// Time-dependent Schrodinger equation on a hard-walled uniform grid.
struct EvolutionSpec {
  QuadraticPotential potential;
  double t_final = 0.0;
  long steps = 0;
  Grid grid;
  // The solver grid is `padding_factor` times wider than `grid` (zeros
  // outside), and the result is cropped back.
  double padding_factor = 1.0;
  // Accuracy guard: dt <= guard_safety * m dq^2 / hbar.
  double guard_safety = 0.5;
  bool enforce_guard = true;
  // Fraction of the norm allowed in the outer 5% of the solver grid.
  double boundary_tol = 1e-6;
};

// Crank-Nicolson:
//   (1 + i dt H / 2 hbar) psi_{n+1} = (1 - i dt H / 2 hbar) psi_n
// with a 3-point Laplacian and a direct tridiagonal solve.
WaveFunction evolve_cn(const WaveFunction& psi0, const EvolutionSpec& spec,
                       const PhysicalConstants& constants);

// Free Gaussian packet, exact for all t:
//
//   psi(q, 0) = (2 pi s0^2)^(-1/4) exp(-(q - c)^2 / (4 s0^2) + i p0 q / hbar)
//
//   psi(q, t) = (2 pi s0^2)^(-1/4) (1 + i tau)^(-1/2)
//               exp(-(q - c - v t)^2 / (4 s0^2 (1 + i tau))
//                   + i p0 (q - v t / 2) / hbar)
//
// with tau = hbar t / (2 m s0^2) and v = p0 / m. The position variance is
// s0^2 (1 + tau^2), i.e. s0^2 + (hbar t / (2 m s0))^2.
std::function<complexd(double)> gaussian_free_closed_form(double sigma0, double center,
                                                          double momentum, double t,
                                                          const PhysicalConstants& constants);

// Initial Gaussian (t = 0 of the above).
std::function<complexd(double)> gaussian_packet(double sigma0, double center, double momentum,
                                                const PhysicalConstants& constants);

// Oscillator ground state (m w / (pi hbar))^(1/4) exp(-m w q^2 / (2 hbar)).
std::function<complexd(double)> harmonic_ground_state(double omega,
                                                      const PhysicalConstants& constants);

}  // namespace lct
