#include "lct/kernel.hpp"

#include <unsupported/Eigen/FFT>

#include <algorithm>
#include <cmath>
#include <sstream>
#include <thread>
#include <vector>

namespace lct {

const char* to_string(Representation r) {
  switch (r) {
    case Representation::qQ: return "qQ";
    case Representation::qP: return "qP";
    case Representation::pQ: return "pQ";
    case Representation::pP: return "pP";
  }
  return "?";
}

GeneratorKind generator_kind(Representation r) {
  switch (r) {
    case Representation::qQ: return GeneratorKind::W1;
    case Representation::qP: return GeneratorKind::W2;
    case Representation::pQ: return GeneratorKind::W3;
    case Representation::pP: return GeneratorKind::W4;
  }
  return GeneratorKind::W1;
}

const char* to_string(FastPath path) {
  return path == FastPath::matched_fft ? "matched_fft" : "chirp_z";
}

namespace {

constexpr complexd kI(0.0, 1.0);

// Same floor as the generating functions so that build_kernel fails exactly
// when the phase cannot be formed.
double representation_coefficient(const SymplecticMatrixd& m, Representation r) {
  switch (r) {
    case Representation::qQ: return m.b();
    case Representation::qP: return m.d();
    case Representation::pQ: return m.a();
    case Representation::pP: return m.c();
  }
  return 0.0;
}

bool is_power_of_two(Eigen::Index n) { return n > 0 && (n & (n - 1)) == 0; }

Eigen::Index next_power_of_two(Eigen::Index n) {
  Eigen::Index p = 1;
  while (p < n) p <<= 1;
  return p;
}

// exp(i * alpha * k^2 / 2) with the argument reduced in extended precision;
// k^2 grows like N^2 and would otherwise cost digits.
complexd chirp(double alpha, Eigen::Index k) {
  const long double two_pi = 6.283185307179586476925286766559005768L;
  const long double kk = static_cast<long double>(k) * static_cast<long double>(k);
  const long double arg = std::fmod(static_cast<long double>(alpha) * kk / 2.0L, two_pi);
  return std::polar(1.0, static_cast<double>(arg));
}

template <typename Body>
void parallel_for(Eigen::Index n, Body body) {
  const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
  const Eigen::Index workers = std::min<Eigen::Index>(hw, std::max<Eigen::Index>(1, n / 64));
  if (workers <= 1) {
    body(Eigen::Index(0), n);
    return;
  }
  std::vector<std::thread> pool;
  const Eigen::Index chunk = (n + workers - 1) / workers;
  for (Eigen::Index w = 0; w < workers; ++w) {
    const Eigen::Index lo = w * chunk, hi = std::min(n, lo + chunk);
    if (lo < hi) pool.emplace_back([=] { body(lo, hi); });
  }
  for (auto& t : pool) t.join();
}

// (input, output) spaces of a kernel: K(x, y) maps functions of y to x.
std::pair<SpaceLabel, SpaceLabel> kernel_spaces(Representation r) {
  switch (r) {
    case Representation::qQ: return {SpaceLabel::Q, SpaceLabel::q};
    case Representation::qP: return {SpaceLabel::P, SpaceLabel::q};
    case Representation::pQ: return {SpaceLabel::Q, SpaceLabel::p};
    case Representation::pP: return {SpaceLabel::P, SpaceLabel::p};
  }
  return {SpaceLabel::Q, SpaceLabel::q};
}

void require_input_space(const PropagatorKernel& kernel, const WaveFunction& psi_in) {
  const SpaceLabel expected = kernel_spaces(kernel.representation).first;
  if (psi_in.label != expected) {
    throw ConfigError(std::string("the ") + to_string(kernel.representation) +
                      " kernel acts on wavefunctions in the " + to_string(expected) +
                      " representation, got " + to_string(psi_in.label));
  }
}

double trapezoid_weight(Eigen::Index j, Eigen::Index n) {
  return (j == 0 || j == n - 1) ? 0.5 : 1.0;
}

std::pair<Eigen::Index, Eigen::Index> support(const Eigen::VectorXcd& v, double threshold) {
  const double cut = threshold * v.cwiseAbs().maxCoeff();
  Eigen::Index lo = 0, hi = v.size() - 1;
  while (lo < hi && std::abs(v[lo]) < cut) ++lo;
  while (hi > lo && std::abs(v[hi]) < cut) --hi;
  return {lo, hi};
}

void check_result(const PropagatorKernel& kernel, const WaveFunction& in, const WaveFunction& out,
                  const ApplyOptions& options) {
  const double in_norm = in.norm();
  if (in_norm == 0.0) return;

  if (options.check_resolution) {
    const auto [qlo, qhi] = support(out.samples, options.support_threshold);
    const auto [jlo, jhi] = support(in.samples, options.support_threshold);
    const double dQ = in.grid.spacing;
    const double hbar = kernel.constants.hbar;
    const auto& w = kernel.phase;
    // Local frequency of K(q, Q) psi(Q) in Q: kernel part is linear in q, so
    // its extremes sit at the ends of the output support.
    double worst = 0.0;
    for (Eigen::Index j = jlo; j < jhi; ++j) {
      const complexd step = in.samples[j + 1] * std::conj(in.samples[j]);
      const double own = step == 0.0 ? 0.0 : std::arg(step) / dQ;
      const double Q = in.grid[j] + 0.5 * dQ;
      for (const double q : {out.grid[qlo], out.grid[qhi]}) {
        worst = std::max(worst, std::abs(w.d_second(q, Q) / hbar + own));
      }
    }
    const double limit = 2.0 * kPi / (options.samples_per_period * dQ);
    if (worst > limit) {
      std::ostringstream os;
      os << "integrand oscillates at " << worst << " rad per unit length but dQ = " << dQ
         << " resolves only " << limit << " (" << options.samples_per_period
         << " samples per period); refine the input grid";
      throw ResolutionError(os.str());
    }
  }

  const double ratio = out.norm() / in_norm;
  if (ratio < 1.0 - options.grid_tol) {
    std::ostringstream os;
    os << "output grid captures only " << ratio << " of the input norm; widen the output grid";
    throw GridError(os.str());
  }
  if (ratio > 1.0 + options.grid_tol) {
    std::ostringstream os;
    os << "output norm exceeds input norm by a factor " << ratio << "; grids are under-resolved";
    throw ResolutionError(os.str());
  }
}

}  // namespace

PropagatorKernel build_kernel(const SymplecticMatrixd& m, Representation representation,
                              double t, const PhysicalConstants& constants) {
  PropagatorKernel k;
  k.representation = representation;
  k.constants = constants;
  k.time = t;
  k.phase = generating_function(generator_kind(representation), m);

  const double beta = representation_coefficient(m, representation);
  const double two_pi_hbar = 2.0 * kPi * constants.hbar;
  switch (representation) {
    case Representation::qQ:
      k.prefactor = std::sqrt(complexd(-1.0, 0.0) / (kI * two_pi_hbar * beta));
      break;
    case Representation::qP:
    case Representation::pQ:
      k.prefactor = std::sqrt(complexd(1.0 / (two_pi_hbar * beta), 0.0));
      break;
    case Representation::pP:
      k.prefactor = std::sqrt(complexd(1.0, 0.0) / (kI * two_pi_hbar * beta));
      break;
  }
  return k;
}

PropagatorKernel build_kernel(const TransformFamily& family, double t,
                              const PhysicalConstants& constants) {
  family.require_regular(t);
  const auto m = family.at(t);
  PropagatorKernel k = build_kernel(m, Representation::qQ, t, constants);
  const CausticCount caustics = count_caustics(family, t);
  if (caustics.crossings > 0) {
    const double phase =
        caustics.initial_sign * kPi / 4.0 - caustics.crossings * kPi / 2.0;
    k.prefactor = std::polar(std::abs(k.prefactor), phase);
    k.maslov_index = caustics.crossings;
  }
  return k;
}

WaveFunction apply_kernel_direct(const PropagatorKernel& kernel, const WaveFunction& psi_in,
                                 const Grid& output_grid, const ApplyOptions& options) {
  require_input_space(kernel, psi_in);
  const Eigen::Index n_in = psi_in.size();
  const double dQ = psi_in.grid.spacing;
  const double hbar = kernel.constants.hbar;

  Eigen::VectorXcd weighted(n_in);
  for (Eigen::Index j = 0; j < n_in; ++j) {
    weighted[j] = psi_in.samples[j] * (trapezoid_weight(j, n_in) * dQ);
  }

  Eigen::VectorXcd out(output_grid.size);
  parallel_for(output_grid.size, [&](Eigen::Index lo, Eigen::Index hi) {
    for (Eigen::Index i = lo; i < hi; ++i) {
      const double q = output_grid[i];
      complexd sum(0.0, 0.0);
      for (Eigen::Index j = 0; j < n_in; ++j) {
        sum += std::polar(1.0, kernel.phase(q, psi_in.grid[j]) / hbar) * weighted[j];
      }
      out[i] = kernel.prefactor * sum;
    }
  });

  WaveFunction result(std::move(out), output_grid, kernel_spaces(kernel.representation).second);
  check_result(kernel, psi_in, result, options);
  return result;
}

FastPath fast_path_for(const PropagatorKernel& kernel, const Grid& input_grid,
                       const Grid& output_grid) {
  const double target = 2.0 * kPi * kernel.constants.hbar / std::abs(kernel.phase.cross);
  const double product =
      input_grid.spacing * output_grid.spacing * static_cast<double>(input_grid.size);
  if (input_grid.size == output_grid.size && is_power_of_two(input_grid.size) &&
      std::abs(product - target) <= 1e-12 * target) {
    return FastPath::matched_fft;
  }
  return FastPath::chirp_z;
}

WaveFunction apply_kernel_fast(const PropagatorKernel& kernel, const WaveFunction& psi_in,
                               const Grid& output_grid, const ApplyOptions& options) {
  if (kernel.representation != Representation::qQ) {
    throw ConfigError(std::string("the fast path handles only the qQ kernel, got ") +
                      to_string(kernel.representation) + "; use apply_kernel_direct");
  }
  require_input_space(kernel, psi_in);
  const Eigen::Index n_in = psi_in.size();
  const Eigen::Index n_out = output_grid.size;
  const double hbar = kernel.constants.hbar;
  const double dQ = psi_in.grid.spacing;
  const double dq = output_grid.spacing;
  const double q0 = output_grid.origin;
  const double Q0 = psi_in.grid.origin;
  const auto& w = kernel.phase;

  // Input chirp, including the part of the cross term linear in j.
  std::vector<complexd> v(static_cast<size_t>(n_in));
  for (Eigen::Index j = 0; j < n_in; ++j) {
    const double Q = psi_in.grid[j];
    v[static_cast<size_t>(j)] = psi_in.samples[j] * (trapezoid_weight(j, n_in) * dQ) *
                                std::polar(1.0, (w.yy * Q * Q + w.cross * q0 * Q) / hbar);
  }

  // y_i = sum_j v_j exp(i alpha i j)
  const double alpha = w.cross * dq * dQ / hbar;
  std::vector<complexd> y(static_cast<size_t>(n_out));
  Eigen::FFT<double> fft;

  if (fast_path_for(kernel, psi_in.grid, output_grid) == FastPath::matched_fft) {
    // alpha = +-2 pi / N: exp(-2 pi i ij/N) is the forward transform.
    if (alpha < 0.0) {
      fft.fwd(y, v);
    } else {
      fft.SetFlag(Eigen::FFT<double>::Unscaled);
      fft.inv(y, v);
    }
  } else {
    // i j = (i^2 + j^2 - (i - j)^2) / 2 turns the sum into a convolution with
    // exp(-i alpha k^2 / 2), k = i - j in [-(n_in - 1), n_out - 1].
    const Eigen::Index len = next_power_of_two(n_in + n_out - 1);
    std::vector<complexd> a(static_cast<size_t>(len), 0.0), h(static_cast<size_t>(len), 0.0);
    for (Eigen::Index j = 0; j < n_in; ++j) {
      a[static_cast<size_t>(j)] = v[static_cast<size_t>(j)] * chirp(alpha, j);
    }
    for (Eigen::Index k = 0; k < n_out; ++k) h[static_cast<size_t>(k)] = std::conj(chirp(alpha, k));
    for (Eigen::Index k = 1; k < n_in; ++k) {
      h[static_cast<size_t>(len - k)] = std::conj(chirp(alpha, k));
    }
    std::vector<complexd> fa, fh, conv;
    fft.fwd(fa, a);
    fft.fwd(fh, h);
    for (size_t k = 0; k < fa.size(); ++k) fa[k] *= fh[k];
    fft.inv(conv, fa);
    for (Eigen::Index i = 0; i < n_out; ++i) {
      y[static_cast<size_t>(i)] = conv[static_cast<size_t>(i)] * chirp(alpha, i);
    }
  }

  // Output chirp and the remaining part of the cross term.
  Eigen::VectorXcd out(n_out);
  for (Eigen::Index i = 0; i < n_out; ++i) {
    const double q = output_grid[i];
    const double di = dq * static_cast<double>(i);
    out[i] = kernel.prefactor * std::polar(1.0, (w.xx * q * q + w.cross * di * Q0) / hbar) *
             y[static_cast<size_t>(i)];
  }

  WaveFunction result(std::move(out), output_grid, SpaceLabel::q);
  check_result(kernel, psi_in, result, options);
  return result;
}

Grid matched_output_grid(const PropagatorKernel& kernel, const Grid& input_grid) {
  const double spacing = 2.0 * kPi * kernel.constants.hbar /
                         (std::abs(kernel.phase.cross) * input_grid.spacing *
                          static_cast<double>(input_grid.size));
  return Grid::centered(input_grid.size, spacing);
}

Grid matched_grid(const PropagatorKernel& kernel, Eigen::Index n) {
  const double spacing = std::sqrt(2.0 * kPi * kernel.constants.hbar /
                                   (std::abs(kernel.phase.cross) * static_cast<double>(n)));
  return Grid::centered(n, spacing);
}

double kernel_unitarity_check(const PropagatorKernel& kernel, const Grid& q_grid,
                              const Grid& Q_grid, int probes) {
  const Eigen::Index nq = q_grid.size, nQ = Q_grid.size;
  Eigen::MatrixXcd columns(nq, nQ);
  for (Eigen::Index j = 0; j < nQ; ++j) {
    for (Eigen::Index i = 0; i < nq; ++i) columns(i, j) = kernel(q_grid[i], Q_grid[j]);
  }
  const int count = std::max(1, std::min<int>(probes, static_cast<int>(nQ)));
  double worst = 0.0;
  for (int p = 0; p < count; ++p) {
    const Eigen::Index j = (static_cast<Eigen::Index>(p) * (nQ - 1)) / std::max(1, count - 1);
    const Eigen::VectorXcd gram =
        columns.adjoint() * columns.col(j) * q_grid.spacing;  // <K_j'|K_j>
    for (Eigen::Index jp = 0; jp < nQ; ++jp) {
      const double expected = jp == j ? 1.0 / Q_grid.spacing : 0.0;
      worst = std::max(worst, std::abs(gram[jp] - expected) * Q_grid.spacing);
    }
  }
  return worst;
}

double relative_deviation(const WaveFunction& a, const WaveFunction& b) {
  const double scale = b.samples.cwiseAbs().maxCoeff();
  const double diff = (a.samples - b.samples).cwiseAbs().maxCoeff();
  return scale == 0.0 ? diff : diff / scale;
}

}  // namespace lct
