#pragma once

#include <Eigen/Dense>
#include <complex>
#include <filesystem>
#include <functional>
#include <string>

#include "lct/constants.hpp"

namespace lct {

using complexd = std::complex<double>;

// Uniform 1-D grid: x_i = origin + i * spacing, i = 0..size-1.
struct Grid {
  double origin = 0.0;
  double spacing = 1.0;
  Eigen::Index size = 0;

  Grid() = default;
  Grid(double origin_, double spacing_, Eigen::Index size_);

  // Centered grid of `size` points, symmetric about zero.
  static Grid centered(Eigen::Index size, double spacing);

  double operator[](Eigen::Index i) const { return origin + spacing * static_cast<double>(i); }
  double back() const { return (*this)[size - 1]; }
  double extent() const { return spacing * static_cast<double>(size); }
  Eigen::VectorXd coordinates() const;

  bool operator==(const Grid&) const = default;
};

enum class SpaceLabel { q, Q, p, P };

const char* to_string(SpaceLabel label);
SpaceLabel space_label_from_string(const std::string& text);

struct WaveFunction {
  Eigen::VectorXcd samples;
  Grid grid;
  SpaceLabel label = SpaceLabel::q;

  WaveFunction() = default;
  WaveFunction(Eigen::VectorXcd samples_, Grid grid_, SpaceLabel label_ = SpaceLabel::q);

  // Samples f(x_i) on the grid.
  static WaveFunction sample(const std::function<complexd(double)>& f, const Grid& grid,
                             SpaceLabel label = SpaceLabel::q);

  Eigen::Index size() const { return samples.size(); }

  // sum |psi_i|^2 dx
  double norm_squared() const;
  double norm() const;
  double mean() const;
  double variance() const;
};

// <a|b> = sum conj(a_i) b_i dx. Grids must match.
complexd inner_product(const WaveFunction& a, const WaveFunction& b);

// sqrt(sum |a_i - b_i|^2 dx). Grids must match.
double l2_distance(const WaveFunction& a, const WaveFunction& b);

double max_abs_difference(const WaveFunction& a, const WaveFunction& b);

// Fraction of the total norm carried by the outer `fraction` of the grid on
// each side.
double edge_norm_fraction(const WaveFunction& psi, double fraction);

// File format: CSV `index,coordinate,re,im` with 17 significant digits, plus
// a JSON sidecar `<csv>.meta.json` holding
// {space_label, origin, spacing, N, hbar, mass, norm}.
std::filesystem::path sidecar_path(const std::filesystem::path& csv_path);

void write_wavefunction(const std::filesystem::path& csv_path, const WaveFunction& psi,
                        const PhysicalConstants& constants);

// Reads the CSV and, if present, its JSON sidecar. Without a sidecar the grid
// is inferred from the coordinates and the label defaults to q.
WaveFunction read_wavefunction(const std::filesystem::path& csv_path,
                               PhysicalConstants* constants = nullptr);

}  // namespace lct
