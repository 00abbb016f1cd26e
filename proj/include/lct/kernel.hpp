#pragma once

#include <complex>
#include <string>

#include "lct/constants.hpp"
#include "lct/families.hpp"
#include "lct/generating_function.hpp"
#include "lct/symplectic.hpp"
#include "lct/wavefunction.hpp"

namespace lct {

// Which pair of bases the kernel connects: <q|Q>, <q|P>, <p|Q>, <p|P>.
enum class Representation { qQ, qP, pQ, pP };

const char* to_string(Representation r);
GeneratorKind generator_kind(Representation r);

// K(x, y) = prefactor * exp(i W(x, y) / hbar).
//
// For qQ the prefactor is sqrt(-1 / (2 pi i hbar b)) taken on the principal
// branch, i.e. (2 pi hbar |b|)^(-1/2) exp(i pi/4 sign(b)). This gives the
// free-particle propagator its exp(-i pi/4) for t > 0. Kernels built from a
// family are continued through caustics instead: each sign change of b since
// t = 0 subtracts pi/2 from the prefactor phase (Maslov index).
struct PropagatorKernel {
  Representation representation = Representation::qQ;
  complexd prefactor;
  QuadraticGeneratingFunctiond phase;
  PhysicalConstants constants;
  double time = 0.0;
  int maslov_index = 0;

  complexd operator()(double x, double y) const {
    return prefactor * std::polar(1.0, phase(x, y) / constants.hbar);
  }

  bool caustic_crossed() const { return maslov_index != 0; }
};

// Principal-branch kernel for a single matrix. Throws SingularRepresentation
// when the representation's coefficient (b, d, a, c for qQ, qP, pQ, pP)
// vanishes.
PropagatorKernel build_kernel(const SymplecticMatrixd& m, Representation representation,
                              double t, const PhysicalConstants& constants);

// Position kernel of a family at time t, phase-continued through caustics.
PropagatorKernel build_kernel(const TransformFamily& family, double t,
                              const PhysicalConstants& constants);

struct ApplyOptions {
  // Output must keep at least (1 - grid_tol) of the input norm.
  double grid_tol = 1e-6;
  // Minimum samples per local period of the integrand, checked over the
  // supports of input and output.
  double samples_per_period = 8.0;
  // Support = samples with |psi| >= support_threshold * max |psi|.
  double support_threshold = 1e-5;
  bool check_resolution = true;
};

// psi_out(x_i) = sum_j w_j K(x_i, y_j) psi_in(y_j) dy with trapezoid end
// weights. O(N_in N_out). Parallel over output samples. Any representation:
// the input must be labeled with the kernel's second variable (Q or P), the
// output carries the first (q or p).
WaveFunction apply_kernel_direct(const PropagatorKernel& kernel, const WaveFunction& psi_in,
                                 const Grid& output_grid, const ApplyOptions& options = {});

// The same sum as apply_kernel_direct, factored as chirp * Fourier * chirp.
// When N_in = N_out = N is a power of two and dq dQ N = 2 pi hbar |b| the
// middle factor is a plain FFT; otherwise it is evaluated exactly as a
// chirp-z transform (Bluestein convolution on a power-of-two FFT).
// qQ kernels only.
WaveFunction apply_kernel_fast(const PropagatorKernel& kernel, const WaveFunction& psi_in,
                               const Grid& output_grid, const ApplyOptions& options = {});

enum class FastPath { matched_fft, chirp_z };

const char* to_string(FastPath path);

FastPath fast_path_for(const PropagatorKernel& kernel, const Grid& input_grid,
                       const Grid& output_grid);

// Output grid of the same size as `input_grid`, centered, with spacing chosen
// so that dq dQ N = 2 pi hbar |b|.
Grid matched_output_grid(const PropagatorKernel& kernel, const Grid& input_grid);

// Centered grid of size n with dq = dQ = sqrt(2 pi hbar |b| / n).
Grid matched_grid(const PropagatorKernel& kernel, Eigen::Index n);

// max over probe columns j and all j' of
//   | sum_i conj(K(q_i, Q_j)) K(q_i, Q_j') dq - delta_jj' / dQ | * dQ,
// i.e. the deviation from <Q|Q'> = delta(Q - Q') relative to 1/dQ.
double kernel_unitarity_check(const PropagatorKernel& kernel, const Grid& q_grid,
                              const Grid& Q_grid, int probes = 16);

// max |a - b| / max |b|.
double relative_deviation(const WaveFunction& a, const WaveFunction& b);

}  // namespace lct
