#include "lct/wavefunction.hpp"

#include <cmath>
#include <fstream>
#include <iomanip>
#include <sstream>

#include "json.hpp"
#include "lct/errors.hpp"

namespace lct {

Grid::Grid(double origin_, double spacing_, Eigen::Index size_)
    : origin(origin_), spacing(spacing_), size(size_) {
  if (!(spacing > 0.0) || !std::isfinite(spacing) || !std::isfinite(origin)) {
    throw ConfigError("grid spacing must be positive and finite");
  }
  if (size < 2) throw ConfigError("grid needs at least 2 points");
}

Grid Grid::centered(Eigen::Index size, double spacing) {
  return Grid(-0.5 * spacing * static_cast<double>(size), spacing, size);
}

Eigen::VectorXd Grid::coordinates() const {
  return Eigen::VectorXd::LinSpaced(size, origin, back());
}

const char* to_string(SpaceLabel label) {
  switch (label) {
    case SpaceLabel::q: return "q";
    case SpaceLabel::Q: return "Q";
    case SpaceLabel::p: return "p";
    case SpaceLabel::P: return "P";
  }
  return "?";
}

SpaceLabel space_label_from_string(const std::string& text) {
  if (text == "q") return SpaceLabel::q;
  if (text == "Q") return SpaceLabel::Q;
  if (text == "p") return SpaceLabel::p;
  if (text == "P") return SpaceLabel::P;
  throw ConfigError("unknown space label '" + text + "'");
}

WaveFunction::WaveFunction(Eigen::VectorXcd samples_, Grid grid_, SpaceLabel label_)
    : samples(std::move(samples_)), grid(grid_), label(label_) {
  if (samples.size() != grid.size) {
    throw ConfigError("wavefunction sample count does not match its grid");
  }
}

WaveFunction WaveFunction::sample(const std::function<complexd(double)>& f, const Grid& grid,
                                  SpaceLabel label) {
  Eigen::VectorXcd v(grid.size);
  for (Eigen::Index i = 0; i < grid.size; ++i) v[i] = f(grid[i]);
  return WaveFunction(std::move(v), grid, label);
}

double WaveFunction::norm_squared() const { return samples.squaredNorm() * grid.spacing; }

double WaveFunction::norm() const { return std::sqrt(norm_squared()); }

double WaveFunction::mean() const {
  const Eigen::ArrayXd density = samples.cwiseAbs2().array();
  return (density * grid.coordinates().array()).sum() / density.sum();
}

double WaveFunction::variance() const {
  const Eigen::ArrayXd density = samples.cwiseAbs2().array();
  const double mu = mean();
  const Eigen::ArrayXd dx = grid.coordinates().array() - mu;
  return (density * dx * dx).sum() / density.sum();
}

namespace {
void require_same_grid(const WaveFunction& a, const WaveFunction& b) {
  if (a.size() != b.size() || std::abs(a.grid.spacing - b.grid.spacing) > 1e-12 * a.grid.spacing ||
      std::abs(a.grid.origin - b.grid.origin) > 1e-9 * a.grid.spacing) {
    throw ConfigError("wavefunctions live on different grids");
  }
}
}  // namespace

complexd inner_product(const WaveFunction& a, const WaveFunction& b) {
  require_same_grid(a, b);
  return a.samples.dot(b.samples) * a.grid.spacing;
}

double l2_distance(const WaveFunction& a, const WaveFunction& b) {
  require_same_grid(a, b);
  return std::sqrt((a.samples - b.samples).squaredNorm() * a.grid.spacing);
}

double max_abs_difference(const WaveFunction& a, const WaveFunction& b) {
  require_same_grid(a, b);
  return (a.samples - b.samples).cwiseAbs().maxCoeff();
}

double edge_norm_fraction(const WaveFunction& psi, double fraction) {
  const Eigen::Index n = psi.size();
  const Eigen::Index edge = std::max<Eigen::Index>(1, static_cast<Eigen::Index>(fraction * n));
  const double total = psi.samples.squaredNorm();
  if (total == 0.0) return 0.0;
  const double outer =
      psi.samples.head(edge).squaredNorm() + psi.samples.tail(edge).squaredNorm();
  return outer / total;
}

std::filesystem::path sidecar_path(const std::filesystem::path& csv_path) {
  auto p = csv_path;
  p += ".meta.json";
  return p;
}

void write_wavefunction(const std::filesystem::path& csv_path, const WaveFunction& psi,
                        const PhysicalConstants& constants) {
  std::ofstream out(csv_path);
  if (!out) throw ConfigError("cannot open " + csv_path.string() + " for writing");
  out << std::setprecision(17);
  out << "index,coordinate,re,im\n";
  for (Eigen::Index i = 0; i < psi.size(); ++i) {
    out << i << ',' << psi.grid[i] << ',' << psi.samples[i].real() << ','
        << psi.samples[i].imag() << '\n';
  }

  nlohmann::json meta = {{"space_label", to_string(psi.label)},
                         {"origin", psi.grid.origin},
                         {"spacing", psi.grid.spacing},
                         {"N", psi.grid.size},
                         {"hbar", constants.hbar},
                         {"mass", constants.mass},
                         {"norm", psi.norm()}};
  std::ofstream side(sidecar_path(csv_path));
  if (!side) throw ConfigError("cannot write sidecar for " + csv_path.string());
  side << std::setprecision(17) << meta.dump(2) << '\n';
}

WaveFunction read_wavefunction(const std::filesystem::path& csv_path,
                               PhysicalConstants* constants) {
  std::ifstream in(csv_path);
  if (!in) throw ConfigError("cannot open " + csv_path.string());
  std::string line;
  std::getline(in, line);
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != "index,coordinate,re,im") {
    throw ConfigError(csv_path.string() + ": expected header 'index,coordinate,re,im'");
  }

  std::vector<double> coords;
  std::vector<complexd> values;
  long expected = 0;
  while (std::getline(in, line)) {
    if (line.empty() || line == "\r") continue;
    std::istringstream row(line);
    std::string field[4];
    for (auto& f : field) {
      if (!std::getline(row, f, ',')) {
        throw ConfigError(csv_path.string() + ": malformed row '" + line + "'");
      }
    }
    try {
      if (std::stol(field[0]) != expected) {
        throw ConfigError(csv_path.string() + ": indices must be consecutive from 0");
      }
      coords.push_back(std::stod(field[1]));
      values.emplace_back(std::stod(field[2]), std::stod(field[3]));
    } catch (const std::logic_error&) {
      throw ConfigError(csv_path.string() + ": non-numeric field in row '" + line + "'");
    }
    ++expected;
  }
  if (values.size() < 2) throw ConfigError(csv_path.string() + ": need at least 2 samples");

  const auto n = static_cast<Eigen::Index>(values.size());
  Grid grid(coords.front(), (coords.back() - coords.front()) / static_cast<double>(n - 1), n);
  SpaceLabel label = SpaceLabel::q;

  const auto side = sidecar_path(csv_path);
  if (std::filesystem::exists(side)) {
    std::ifstream sf(side);
    nlohmann::json meta;
    try {
      sf >> meta;
      grid = Grid(meta.at("origin").get<double>(), meta.at("spacing").get<double>(),
                  meta.at("N").get<Eigen::Index>());
      label = space_label_from_string(meta.at("space_label").get<std::string>());
      if (constants) {
        *constants = PhysicalConstants(meta.at("hbar").get<double>(), meta.at("mass").get<double>());
      }
    } catch (const nlohmann::json::exception& e) {
      throw ConfigError(side.string() + ": " + e.what());
    }
    if (grid.size != n) throw ConfigError(side.string() + ": N does not match the CSV row count");
  }
  for (Eigen::Index i = 0; i < n; ++i) {
    if (std::abs(coords[static_cast<size_t>(i)] - grid[i]) > 1e-9 * std::max(1.0, std::abs(grid[i]))) {
      throw ConfigError(csv_path.string() + ": coordinates are not on a uniform grid");
    }
  }
  Eigen::VectorXcd samples = Eigen::Map<Eigen::VectorXcd>(values.data(), n);
  return WaveFunction(std::move(samples), grid, label);
}

}  // namespace lct
