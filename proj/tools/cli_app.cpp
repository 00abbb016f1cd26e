#include "cli_app.hpp"

#include <chrono>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"

namespace lct::cli {

using nlohmann::json;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

Representation parse_representation(const std::string& text) {
  if (text == "qQ") return Representation::qQ;
  if (text == "qP") return Representation::qP;
  if (text == "pQ") return Representation::pQ;
  if (text == "pP") return Representation::pP;
  throw ConfigError("unknown representation '" + text + "' (expected qQ, qP, pQ or pP)");
}

Grid parse_grid(const std::string& text) {
  std::istringstream in(text);
  std::string field[3];
  for (auto& f : field) {
    if (!std::getline(in, f, ',')) throw ConfigError("--grid expects N,origin,spacing");
  }
  try {
    return Grid(std::stod(field[1]), std::stod(field[2]), std::stol(field[0]));
  } catch (const std::logic_error&) {
    throw ConfigError("--grid expects N,origin,spacing, got '" + text + "'");
  }
}

InitialState parse_initial(const std::string& text) {
  InitialState s;
  const auto colon = text.find(':');
  const std::string kind = text.substr(0, colon);
  const std::string rest = colon == std::string::npos ? "" : text.substr(colon + 1);
  if (kind == "file") {
    if (rest.empty()) throw ConfigError("--initial file:PATH needs a path");
    s.type = "file";
    s.path = rest;
    return s;
  }
  if (kind != "gaussian") throw ConfigError("--initial expects gaussian:s0,center,momentum or file:PATH");
  std::istringstream in(rest);
  std::string f;
  double* targets[] = {&s.sigma0, &s.center, &s.momentum};
  for (double* target : targets) {
    if (!std::getline(in, f, ',')) break;
    try {
      *target = std::stod(f);
    } catch (const std::logic_error&) {
      throw ConfigError("--initial: bad number '" + f + "'");
    }
  }
  return s;
}

template <typename T>
T get_as(const json& j, const char* key) {
  try {
    return j.at(key).get<T>();
  } catch (const json::exception& e) {
    throw ConfigError(std::string("config key '") + key + "': " + e.what());
  }
}

void reject_unknown(const json& j, std::initializer_list<const char*> known, const char* where) {
  for (auto it = j.begin(); it != j.end(); ++it) {
    bool ok = false;
    for (const char* k : known) ok = ok || it.key() == k;
    if (!ok) throw ConfigError(std::string("unknown key '") + it.key() + "' in " + where);
  }
}

json grid_json(const Grid& g) {
  return {{"N", g.size}, {"origin", g.origin}, {"spacing", g.spacing}};
}

}  // namespace

json RunConfig::to_json() const {
  json j;
  j["system"] = system;
  j["constants"] = {{"hbar", hbar}, {"mass", mass}, {"omega", omega}};
  j["custom"] = {{"a", custom[0]}, {"b", custom[1]}, {"c", custom[2]}, {"d", custom[3]}};
  j["potential"] = potential ? json{{"k0", potential->k0}, {"k1", potential->k1}, {"k2", potential->k2}}
                             : json(nullptr);
  j["t"] = t;
  j["grid"] = grid_json(grid);
  j["initial"] = initial.type == "file"
                     ? json{{"type", "file"}, {"path", initial.path}}
                     : json{{"type", "gaussian"},
                            {"sigma0", initial.sigma0},
                            {"center", initial.center},
                            {"momentum", initial.momentum}};
  j["method"] = method;
  j["representation"] = representation;
  j["oracle_system"] = oracle_system;
  j["cn_steps"] = cn_steps;
  j["sweep_samples"] = sweep_samples;
  j["kernel_samples"] = kernel_samples;
  j["bench_sizes"] = bench_sizes;
  j["tolerances"] = {{"det_tol", tolerances.det_tol},
                     {"hj_tol", tolerances.hj_tol ? json(*tolerances.hj_tol) : json(nullptr)},
                     {"compare_l2", tolerances.compare_l2},
                     {"grid_tol", tolerances.grid_tol},
                     {"samples_per_period", tolerances.samples_per_period}};
  j["out"] = out;
  return j;
}

RunConfig RunConfig::from_json(const json& j, RunConfig c) {
  if (!j.is_object()) throw ConfigError("config must be a JSON object");
  reject_unknown(j,
                 {"system", "constants", "custom", "potential", "t", "grid", "initial", "method",
                  "representation", "oracle_system", "cn_steps", "sweep_samples", "kernel_samples",
                  "bench_sizes", "tolerances", "out"},
                 "config");
  if (j.contains("system")) c.system = get_as<std::string>(j, "system");
  if (j.contains("constants")) {
    const json& k = j.at("constants");
    reject_unknown(k, {"hbar", "mass", "omega"}, "constants");
    if (k.contains("hbar")) c.hbar = get_as<double>(k, "hbar");
    if (k.contains("mass")) c.mass = get_as<double>(k, "mass");
    if (k.contains("omega")) c.omega = get_as<double>(k, "omega");
  }
  if (j.contains("custom")) {
    const json& k = j.at("custom");
    reject_unknown(k, {"a", "b", "c", "d"}, "custom");
    const char* names[] = {"a", "b", "c", "d"};
    for (int i = 0; i < 4; ++i) {
      if (k.contains(names[i])) c.custom[i] = get_as<std::string>(k, names[i]);
    }
  }
  if (j.contains("potential")) {
    const json& k = j.at("potential");
    if (k.is_null()) {
      c.potential.reset();
    } else {
      reject_unknown(k, {"k0", "k1", "k2"}, "potential");
      c.potential = QuadraticPotential(k.value("k0", 0.0), k.value("k1", 0.0), k.value("k2", 0.0));
    }
  }
  if (j.contains("t")) c.t = get_as<double>(j, "t");
  if (j.contains("grid")) {
    const json& g = j.at("grid");
    reject_unknown(g, {"N", "origin", "spacing"}, "grid");
    const auto n = get_as<Eigen::Index>(g, "N");
    const double spacing = get_as<double>(g, "spacing");
    const double origin =
        g.contains("origin") ? get_as<double>(g, "origin") : -0.5 * spacing * static_cast<double>(n);
    c.grid = Grid(origin, spacing, n);
  }
  if (j.contains("initial")) {
    const json& s = j.at("initial");
    reject_unknown(s, {"type", "sigma0", "center", "momentum", "path"}, "initial");
    if (s.contains("type")) c.initial.type = get_as<std::string>(s, "type");
    if (s.contains("sigma0")) c.initial.sigma0 = get_as<double>(s, "sigma0");
    if (s.contains("center")) c.initial.center = get_as<double>(s, "center");
    if (s.contains("momentum")) c.initial.momentum = get_as<double>(s, "momentum");
    if (s.contains("path")) c.initial.path = get_as<std::string>(s, "path");
    if (c.initial.type != "gaussian" && c.initial.type != "file") {
      throw ConfigError("initial.type must be 'gaussian' or 'file'");
    }
  }
  if (j.contains("method")) c.method = get_as<std::string>(j, "method");
  if (j.contains("representation")) c.representation = get_as<std::string>(j, "representation");
  if (j.contains("oracle_system")) c.oracle_system = get_as<std::string>(j, "oracle_system");
  if (j.contains("cn_steps")) c.cn_steps = get_as<long>(j, "cn_steps");
  if (j.contains("sweep_samples")) c.sweep_samples = get_as<int>(j, "sweep_samples");
  if (j.contains("kernel_samples")) c.kernel_samples = get_as<int>(j, "kernel_samples");
  if (j.contains("bench_sizes")) c.bench_sizes = get_as<std::vector<long>>(j, "bench_sizes");
  if (j.contains("tolerances")) {
    const json& k = j.at("tolerances");
    reject_unknown(k, {"det_tol", "hj_tol", "compare_l2", "grid_tol", "samples_per_period"},
                   "tolerances");
    if (k.contains("det_tol")) c.tolerances.det_tol = get_as<double>(k, "det_tol");
    if (k.contains("hj_tol")) {
      if (k.at("hj_tol").is_null()) c.tolerances.hj_tol.reset();
      else c.tolerances.hj_tol = get_as<double>(k, "hj_tol");
    }
    if (k.contains("compare_l2")) c.tolerances.compare_l2 = get_as<double>(k, "compare_l2");
    if (k.contains("grid_tol")) c.tolerances.grid_tol = get_as<double>(k, "grid_tol");
    if (k.contains("samples_per_period")) {
      c.tolerances.samples_per_period = get_as<double>(k, "samples_per_period");
    }
  }
  if (j.contains("out")) c.out = get_as<std::string>(j, "out");
  return c;
}

namespace {

TransformFamily custom_family(const RunConfig& config, bool require_symplectic) {
  std::array<Expression, 4> e;
  for (int i = 0; i < 4; ++i) e[i] = Expression::parse(config.custom[i]);
  const double m = config.mass, w = config.omega;
  TransformFamily f;
  f.label = "custom";
  f.evaluate = [e, m, w](double t) {
    return SymplecticMatrixd(e[0](t, m, w), e[1](t, m, w), e[2](t, m, w), e[3](t, m, w));
  };
  if (require_symplectic) {
    for (int k = 1; k <= 32; ++k) {
      const double t = config.t * k / 32.0;
      const auto report = validate(f.at(t), config.tolerances.det_tol);
      if (!report.ok) {
        std::ostringstream os;
        os << "custom coefficients are not symplectic at t = " << t
           << ": |ad - bc - 1| = " << report.det_error;
        throw ConfigError(os.str());
      }
    }
  }
  return f;
}

TransformFamily family_for(const RunConfig& config, const std::string& system,
                           bool require_symplectic) {
  const auto c = config.constants();
  if (system == "free") return free_particle_family(c);
  if (system == "harmonic") return harmonic_oscillator_family(c, config.omega);
  if (system == "custom") return custom_family(config, require_symplectic);
  throw ConfigError("unknown system '" + system + "' (expected free, harmonic or custom)");
}

}  // namespace

TransformFamily make_family(const RunConfig& config, const std::string& system) {
  return family_for(config, system, true);
}

QuadraticPotential make_potential(const RunConfig& config, const std::string& system) {
  if (config.potential && system == config.system) return *config.potential;
  if (system == "free") return QuadraticPotential::free();
  if (system == "harmonic") return QuadraticPotential::harmonic(config.mass, config.omega);
  if (system == "custom") {
    if (config.potential) return *config.potential;
    throw ConfigError("system 'custom' needs a \"potential\" {k0, k1, k2} for the oracle");
  }
  throw ConfigError("unknown system '" + system + "'");
}

namespace {

void emit(const json& report, const RunConfig& config, std::ostream& out) {
  if (config.out.empty()) {
    out << std::setprecision(17) << report.dump(2) << '\n';
    return;
  }
  std::ofstream file(config.out);
  if (!file) throw ConfigError("cannot write " + config.out);
  file << std::setprecision(17) << report.dump(2) << '\n';
}

WaveFunction initial_state(const RunConfig& config) {
  if (config.initial.type == "file") {
    auto psi = read_wavefunction(config.initial.path);
    psi.label = SpaceLabel::Q;
    return psi;
  }
  const auto& s = config.initial;
  return WaveFunction::sample(gaussian_packet(s.sigma0, s.center, s.momentum, config.constants()),
                              config.grid, SpaceLabel::Q);
}

ApplyOptions apply_options(const RunConfig& config) {
  ApplyOptions o;
  o.grid_tol = config.tolerances.grid_tol;
  o.samples_per_period = config.tolerances.samples_per_period;
  return o;
}

WaveFunction propagate_with(const RunConfig& config, const PropagatorKernel& k,
                            const WaveFunction& in, const Grid& out_grid) {
  if (config.method == "direct") return apply_kernel_direct(k, in, out_grid, apply_options(config));
  if (config.method == "fast") return apply_kernel_fast(k, in, out_grid, apply_options(config));
  throw ConfigError("unknown method '" + config.method + "' (expected direct or fast)");
}

// Singular coefficient reported before any phase continuation.
PropagatorKernel position_kernel(const TransformFamily& family, const RunConfig& config) {
  build_kernel(family.at(config.t), Representation::qQ, config.t, config.constants());
  return build_kernel(family, config.t, config.constants());
}

json wavefunction_metrics(const WaveFunction& psi) {
  return {{"norm", psi.norm()}, {"mean", psi.mean()}, {"variance", psi.variance()}};
}

int cmd_validate(const RunConfig& config, std::ostream& out) {
  const auto family = family_for(config, config.system, false);
  const auto c = config.constants();
  json rows = json::array();
  bool all_ok = true;
  double worst_det = 0.0, worst_hj = 0.0;
  const int n = std::max(1, config.sweep_samples);
  for (int k = 1; k <= n; ++k) {
    const double t = config.t * k / n;
    const auto det = validate(family.at(t), config.tolerances.det_tol);
    json row = {{"t", t}, {"det_error", det.det_error}, {"det_ok", det.ok}};
    all_ok = all_ok && det.ok;
    worst_det = std::max(worst_det, det.det_error);
    if (family.is_singular(t)) {
      row["hj"] = "skipped (singular time)";
    } else {
      const auto hj = hj_compatibility(family, t, c, config.tolerances.hj_tol);
      row["hj_residual"] = hj.residual;
      row["hj_ok"] = hj.ok;
      all_ok = all_ok && hj.ok;
      worst_hj = std::max(worst_hj, hj.residual);
    }
    rows.push_back(row);
  }
  const json report = {{"command", "validate"},
                       {"system", config.system},
                       {"max_det_error", worst_det},
                       {"max_hj_residual", worst_hj},
                       {"ok", all_ok},
                       {"sweep", rows}};
  if (!config.out.empty()) emit(report, config, out);
  out << "validate " << config.system << ": max |ad-bc-1| = " << worst_det
      << ", max |a + m b'| = " << worst_hj << " -> " << (all_ok ? "PASS" : "FAIL") << '\n';
  return all_ok ? kSuccess : kCheckFailed;
}

int cmd_kernel(const RunConfig& config, std::ostream& out) {
  const auto family = make_family(config, config.system);
  const auto rep = parse_representation(config.representation);
  const auto c = config.constants();
  const auto m = family.at(config.t);
  PropagatorKernel k = build_kernel(m, rep, config.t, c);
  if (rep == Representation::qQ) k = build_kernel(family, config.t, c);

  json report = {{"command", "kernel"},
                 {"system", config.system},
                 {"t", config.t},
                 {"representation", to_string(rep)},
                 {"matrix", {{"a", m.a()}, {"b", m.b()}, {"c", m.c()}, {"d", m.d()}}},
                 {"prefactor",
                  {{"re", k.prefactor.real()},
                   {"im", k.prefactor.imag()},
                   {"modulus", std::abs(k.prefactor)},
                   {"arg", std::arg(k.prefactor)}}},
                 {"phase",
                  {{"kind", to_string(k.phase.kind)},
                   {"cross", k.phase.cross},
                   {"xx", k.phase.xx},
                   {"yy", k.phase.yy}}},
                 {"maslov_index", k.maslov_index},
                 {"caustic_crossed", k.caustic_crossed()}};

  if (!config.out.empty()) {
    const std::string samples_path = config.out + ".samples.csv";
    std::ofstream csv(samples_path);
    if (!csv) throw ConfigError("cannot write " + samples_path);
    csv << std::setprecision(17) << "i,j,x,y,abs,arg\n";
    const int n = std::max(2, config.kernel_samples);
    const Eigen::VectorXd axis = Eigen::VectorXd::LinSpaced(n, config.grid.origin, config.grid.back());
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        const complexd v = k(axis[i], axis[j]);
        csv << i << ',' << j << ',' << axis[i] << ',' << axis[j] << ',' << std::abs(v) << ','
            << std::arg(v) << '\n';
      }
    }
    report["samples"] = samples_path;
    emit(report, config, out);
  } else {
    emit(report, config, out);
  }
  return kSuccess;
}

int cmd_propagate(const RunConfig& config, std::ostream& out) {
  const auto family = make_family(config, config.system);
  const auto k = position_kernel(family, config);
  const auto in = initial_state(config);
  const auto start = Clock::now();
  const auto result = propagate_with(config, k, in, in.grid);
  const double runtime = seconds_since(start);

  const std::string path = config.out.empty() ? "propagated.csv" : config.out;
  write_wavefunction(path, result, config.constants());
  json metrics = wavefunction_metrics(result);
  metrics["runtime_s"] = runtime;
  metrics["method"] = config.method;
  if (config.method == "fast") metrics["fast_path"] = to_string(fast_path_for(k, in.grid, in.grid));
  metrics["maslov_index"] = k.maslov_index;
  metrics["t"] = config.t;
  metrics["system"] = config.system;
  metrics["output"] = path;
  std::ofstream(path + ".metrics.json") << std::setprecision(17) << metrics.dump(2) << '\n';
  out << std::setprecision(17) << metrics.dump(2) << '\n';
  return kSuccess;
}

int cmd_compare(const RunConfig& config, std::ostream& out) {
  const std::string oracle_system = config.oracle_system.empty() ? config.system : config.oracle_system;
  const auto family = make_family(config, config.system);
  const auto c = config.constants();
  const auto k = position_kernel(family, config);
  const auto in = initial_state(config);

  const auto start = Clock::now();
  const auto kernel_result = propagate_with(config, k, in, in.grid);
  const double kernel_time = seconds_since(start);

  EvolutionSpec spec;
  spec.potential = make_potential(config, oracle_system);
  spec.grid = in.grid;
  spec.t_final = config.t;
  const double guard_dt = spec.guard_safety * c.mass * in.grid.spacing * in.grid.spacing / c.hbar;
  spec.steps = config.cn_steps > 0 ? config.cn_steps
                                   : static_cast<long>(std::ceil(std::abs(config.t) / guard_dt));
  WaveFunction start_state = in;
  start_state.label = SpaceLabel::q;
  const auto cn_start = Clock::now();
  const auto cn = evolve_cn(start_state, spec, c);
  const double cn_time = seconds_since(cn_start);

  const double l2 = l2_distance(kernel_result, cn);
  const bool agree = l2 <= config.tolerances.compare_l2;
  json report = {{"command", "compare"},
                 {"system", config.system},
                 {"oracle_system", oracle_system},
                 {"t", config.t},
                 {"method", config.method},
                 {"cn_steps", spec.steps},
                 {"l2_deviation", l2},
                 {"max_pointwise_deviation", max_abs_difference(kernel_result, cn)},
                 {"overlap", std::abs(inner_product(kernel_result, cn))},
                 {"tolerance", config.tolerances.compare_l2},
                 {"agree", agree},
                 {"mismatch", !agree},
                 {"kernel_runtime_s", kernel_time},
                 {"cn_runtime_s", cn_time}};
  if (config.system == "free" && oracle_system == "free" && config.initial.type == "gaussian") {
    const auto& s = config.initial;
    const auto exact = WaveFunction::sample(
        gaussian_free_closed_form(s.sigma0, s.center, s.momentum, config.t, c), in.grid);
    report["closed_form_l2_kernel"] = l2_distance(kernel_result, exact);
    report["closed_form_l2_cn"] = l2_distance(cn, exact);
  }
  emit(report, config, out);
  if (!config.out.empty()) {
    out << "compare " << config.system << " vs " << oracle_system << ": L2 = " << l2 << " -> "
        << (agree ? "agree" : "MISMATCH") << '\n';
  }
  return agree ? kSuccess : kCheckFailed;
}

int cmd_bench(const RunConfig& config, std::ostream& out) {
  const auto family = make_family(config, config.system);
  const auto c = config.constants();
  const auto k = position_kernel(family, config);
  // Timing harness only: grids are matched but not checked for resolution.
  ApplyOptions unchecked;
  unchecked.check_resolution = false;
  unchecked.grid_tol = 1e300;

  std::ostringstream csv;
  csv << std::setprecision(6) << "N,t_direct,t_fast,ratio,deviation\n";
  for (const long n : config.bench_sizes) {
    if (n < 2) throw ConfigError("bench sizes must be >= 2");
    const Grid grid = matched_grid(k, n);
    const auto& s = config.initial;
    const auto in = WaveFunction::sample(gaussian_packet(s.sigma0, s.center, s.momentum, c), grid,
                                         SpaceLabel::Q);
    auto start = Clock::now();
    const auto direct = apply_kernel_direct(k, in, grid, unchecked);
    const double t_direct = seconds_since(start);

    int reps = 0;
    WaveFunction fast;
    start = Clock::now();
    do {
      fast = apply_kernel_fast(k, in, grid, unchecked);
      ++reps;
    } while (seconds_since(start) < 0.05);
    const double t_fast = seconds_since(start) / reps;
    csv << n << ',' << t_direct << ',' << t_fast << ',' << t_direct / t_fast << ','
        << relative_deviation(fast, direct) << '\n';
  }
  if (config.out.empty()) {
    out << csv.str();
  } else {
    std::ofstream file(config.out);
    if (!file) throw ConfigError("cannot write " + config.out);
    file << csv.str();
    out << csv.str();
  }
  return kSuccess;
}

// Flag values; applied on top of the file config only when given.
struct Flags {
  std::string config_path, system, grid, out, method, initial, oracle_system, representation;
  double t = 0, hbar = 0, mass = 0, omega = 0;
  std::string a, b, c, d;
  long steps = 0;
  std::vector<long> sizes;
  bool dump = false;
};

struct FlagOptions {
  std::vector<std::pair<CLI::Option*, std::function<void(RunConfig&)>>> setters;
};

void add_common(CLI::App* sub, Flags& f, FlagOptions& opts) {
  sub->add_option("--config", f.config_path, "JSON config file");
  auto bind = [&](CLI::Option* o, std::function<void(RunConfig&)> set) {
    opts.setters.emplace_back(o, std::move(set));
  };
  bind(sub->add_option("--system", f.system, "free | harmonic | custom"),
       [&f](RunConfig& c) { c.system = f.system; });
  bind(sub->add_option("--t", f.t, "time"), [&f](RunConfig& c) { c.t = f.t; });
  bind(sub->add_option("--grid", f.grid, "N,origin,spacing"),
       [&f](RunConfig& c) { c.grid = parse_grid(f.grid); });
  bind(sub->add_option("--out", f.out, "output path"), [&f](RunConfig& c) { c.out = f.out; });
  bind(sub->add_option("--method", f.method, "direct | fast"),
       [&f](RunConfig& c) { c.method = f.method; });
  bind(sub->add_option("--hbar", f.hbar, "reduced Planck constant"),
       [&f](RunConfig& c) { c.hbar = f.hbar; });
  bind(sub->add_option("--mass", f.mass, "particle mass"), [&f](RunConfig& c) { c.mass = f.mass; });
  bind(sub->add_option("--omega", f.omega, "oscillator frequency"),
       [&f](RunConfig& c) { c.omega = f.omega; });
  bind(sub->add_option("--a", f.a, "custom a(t)"), [&f](RunConfig& c) { c.custom[0] = f.a; });
  bind(sub->add_option("--b", f.b, "custom b(t)"), [&f](RunConfig& c) { c.custom[1] = f.b; });
  bind(sub->add_option("--c", f.c, "custom c(t)"), [&f](RunConfig& c) { c.custom[2] = f.c; });
  bind(sub->add_option("--d", f.d, "custom d(t)"), [&f](RunConfig& c) { c.custom[3] = f.d; });
  bind(sub->add_option("--initial", f.initial, "gaussian:s0,center,momentum | file:PATH"),
       [&f](RunConfig& c) { c.initial = parse_initial(f.initial); });
  bind(sub->add_option("--oracle-system", f.oracle_system, "compare: system driving the oracle"),
       [&f](RunConfig& c) { c.oracle_system = f.oracle_system; });
  bind(sub->add_option("--representation", f.representation, "kernel: qQ | qP | pQ | pP"),
       [&f](RunConfig& c) { c.representation = f.representation; });
  bind(sub->add_option("--steps", f.steps, "compare: Crank-Nicolson steps (0 = auto)"),
       [&f](RunConfig& c) { c.cn_steps = f.steps; });
  bind(sub->add_option("--sizes", f.sizes, "bench: grid sizes")->delimiter(','),
       [&f](RunConfig& c) { c.bench_sizes = f.sizes; });
  sub->add_flag("--dump-config", f.dump, "print the effective config as JSON and exit");
}

RunConfig resolve(const Flags& f, const FlagOptions& opts) {
  RunConfig config;
  if (!f.config_path.empty()) {
    std::ifstream in(f.config_path);
    if (!in) throw ConfigError("cannot open config " + f.config_path);
    json j;
    try {
      in >> j;
    } catch (const json::exception& e) {
      throw ConfigError(f.config_path + ": " + e.what());
    }
    config = RunConfig::from_json(j, config);
  }
  for (const auto& [option, set] : opts.setters) {
    if (option->count() > 0) set(config);
  }
  return config;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Quantum propagators from linear canonical transformations"};
  app.require_subcommand(1);
  Flags flags;
  FlagOptions opts;
  const std::pair<const char*, const char*> commands[] = {
      {"validate", "check ad - bc = 1 and a = -m b' over a time sweep"},
      {"kernel", "build a transformation kernel and dump it"},
      {"propagate", "apply the position kernel to an initial state"},
      {"compare", "kernel propagation against Crank-Nicolson"},
      {"bench", "direct vs fast application timings"}};
  std::vector<CLI::App*> subs;
  for (const auto& [name, help] : commands) {
    subs.push_back(app.add_subcommand(name, help));
    add_common(subs.back(), flags, opts);
  }

  std::vector<std::string> argv_storage = {"lct"};
  argv_storage.insert(argv_storage.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (auto& s : argv_storage) argv.push_back(s.data());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kSuccess : kConfigError;
  }

  std::string command;
  for (auto* s : subs) {
    if (s->parsed()) command = s->get_name();
  }

  try {
    const RunConfig config = resolve(flags, opts);
    if (flags.dump) {
      out << std::setprecision(17) << config.to_json().dump(2) << '\n';
      return kSuccess;
    }
    if (command == "validate") return cmd_validate(config, out);
    if (command == "kernel") return cmd_kernel(config, out);
    if (command == "propagate") return cmd_propagate(config, out);
    if (command == "compare") return cmd_compare(config, out);
    if (command == "bench") return cmd_bench(config, out);
  } catch (const SingularRepresentation& e) {
    err << command << ": " << e.what() << '\n';
    return kSingular;
  } catch (const DomainError& e) {
    err << command << ": " << e.what() << '\n';
    return kSingular;
  } catch (const ResolutionError& e) {
    err << command << ": " << e.what() << '\n';
    return kResolution;
  } catch (const GridError& e) {
    err << command << ": " << e.what() << '\n';
    return kResolution;
  } catch (const HJIncompatible& e) {
    err << command << ": " << e.what() << '\n';
    return kCheckFailed;
  } catch (const Error& e) {
    err << command << ": " << e.what() << '\n';
    return kConfigError;
  }
  return kConfigError;
}

}  // namespace lct::cli
