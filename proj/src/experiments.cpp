#include "dqd/experiments.hpp"

#include <cmath>
#include <cstdio>
#include <functional>
#include <map>

#include "dqd/noise.hpp"
#include "dqd/parallel.hpp"
#include "dqd/potential.hpp"
#include "dqd/validate.hpp"

namespace dqd {

namespace {

std::string num(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

std::string exact(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

struct Row {
  std::vector<double> values;
  std::string error;
};

/// Writes rows in order; failed rows become comments. Returns the count of failures.
int write_rows(std::ostream& out, std::ostream& log, const std::vector<Row>& rows,
               const std::string& prefix = {}) {
  int failures = 0;
  for (const auto& r : rows) {
    if (!r.error.empty()) {
      ++failures;
      out << "# error: " << r.error << '\n';
      log << "error: " << r.error << '\n';
      continue;
    }
    out << prefix;
    for (std::size_t k = 0; k < r.values.size(); ++k) out << (k ? "," : "") << num(r.values[k]);
    out << '\n';
  }
  return failures;
}

/// J0 = clean J at eps = 0 and the configured xi, followed by the multiples
/// of j_step above J0 up to j_max.
std::vector<double> matched_grid(const ResolvedSpec& r) {
  DeviceParams start = r.spec.device;
  start.epsilon_mev = 0.0;
  const double j0 = solve_point(start, std::nullopt, r.spec.mode).j_ghz();
  std::vector<double> grid{j0};
  const double step = r.spec.quick ? 2.0 * r.spec.j_step_ghz : r.spec.j_step_ghz;
  for (int k = 1; k * step <= r.spec.j_max_ghz + 1e-12; ++k)
    if (k * step > j0) grid.push_back(k * step);
  return grid;
}

DeviceParams start_point(const ResolvedSpec& r) {
  DeviceParams p = r.spec.device;
  p.epsilon_mev = 0.0;
  return p;
}

std::vector<Row> chi_rows(const ResolvedSpec& r, const std::vector<double>& grid) {
  const auto base = start_point(r);
  return parallel_map<Row>(grid.size(), [&](std::size_t k) {
    Row row;
    try {
      const auto c = improvement_factor(grid[k], base, r.impurity, r.spec.mode);
      row.values = {grid[k], c.tilt_noise.rel_noise, c.barrier_noise.rel_noise, c.chi};
    } catch (const std::exception& e) {
      row.error = "J=" + num(grid[k]) + " GHz: " + e.what();
    }
    return row;
  });
}

std::vector<Row> noise_rows(const std::vector<NoiseRecord>& recs) {
  std::vector<Row> rows;
  for (const auto& n : recs) {
    Row row;
    if (!n.ok()) row.error = n.scheme + " control=" + num(n.control_mev) + " meV: " + n.error;
    row.values = {n.control_mev, n.j_clean_ghz, n.j_imp_ghz, n.delta_j_ghz, n.rel_noise};
    rows.push_back(row);
  }
  return rows;
}

constexpr const char* kNoiseHeader = "scheme,control_mev,J_clean_ghz,J_imp_ghz,delta_J_ghz,rel_noise";
constexpr const char* kChiHeader = "J_ghz,rel_tilt,rel_barrier,chi";

int cmd_spectrum(const ResolvedSpec& r, std::ostream& out, std::ostream& log) {
  struct Point {
    double eps, xi;
  };
  std::vector<Point> pts;
  if (r.spec.scheme == "tilt") {
    const std::vector<double> xis =
        r.spec.xi_range ? control_grid(r.xi_range.lo, r.xi_range.hi, r.xi_range.step)
                        : std::vector<double>{1.3, 1.0};
    for (double xi : xis)
      for (double eps : control_grid(r.eps_range.lo, r.eps_range.hi, r.eps_range.step))
        pts.push_back({eps, xi});
  } else {
    for (double xi : control_grid(r.xi_range.lo, r.xi_range.hi, r.xi_range.step))
      pts.push_back({0.0, xi});
  }
  const auto rows = parallel_map<Row>(pts.size(), [&](std::size_t k) {
    Row row;
    DeviceParams p = r.spec.device;
    p.epsilon_mev = pts[k].eps;
    p.xi_mev = pts[k].xi;
    try {
      const auto s = solve_point(p, std::nullopt, r.spec.mode);
      row.values = {pts[k].eps, pts[k].xi, s.spectrum.eigenvalues[0], s.spectrum.eigenvalues[1],
                    s.j_mev(), s.j_ghz()};
    } catch (const std::exception& e) {
      row.error = "eps=" + num(pts[k].eps) + " xi=" + num(pts[k].xi) + ": " + e.what();
    }
    return row;
  });
  out << "epsilon_mev,xi_mev,E0_mev,E1_mev,J_mev,J_ghz\n";
  return write_rows(out, log, rows) ? 3 : 0;
}

int run_sweep_block(const ResolvedSpec& r, const ControlScheme& scheme, const Range& range,
                    std::ostream& out, std::ostream& log) {
  SweepSpec s;
  s.base = r.spec.device;
  s.scheme = scheme;
  s.lo = range.lo;
  s.hi = range.hi;
  s.step = range.step;
  s.impurity = r.impurity;
  s.mode = r.spec.mode;
  out << kNoiseHeader << '\n';
  return write_rows(out, log, noise_rows(sweep(s)), std::string(scheme_name(scheme)) + ",");
}

int cmd_exchange_tilt(const ResolvedSpec& r, std::ostream& out, std::ostream& log) {
  return run_sweep_block(r, TiltControl{r.spec.device.xi_mev}, r.eps_range, out, log) ? 3 : 0;
}

int cmd_exchange_barrier(const ResolvedSpec& r, std::ostream& out, std::ostream& log) {
  int failures = 0;
  out << "# block: main\n";
  failures += run_sweep_block(r, BarrierControl{}, r.xi_range, out, log);
  if (!r.spec.xi_range) {
    out << "# block: zoom\n";
    const Range zoom{0.5, 0.6, r.spec.quick ? 0.01 : 0.001};
    failures += run_sweep_block(r, BarrierControl{}, zoom, out, log);
  }
  return failures ? 3 : 0;
}

int cmd_chi(const ResolvedSpec& r, std::ostream& out, std::ostream& log) {
  const auto rows = chi_rows(r, matched_grid(r));
  out << kChiHeader << '\n';
  return write_rows(out, log, rows) ? 3 : 0;
}

int cmd_qfactor(const ResolvedSpec& r, std::ostream& out, std::ostream& log) {
  const auto base = start_point(r);
  const double j0 = solve_point(base, std::nullopt, r.spec.mode).j_ghz();
  const auto start = improvement_factor(j0, base, r.impurity, r.spec.mode);
  const QualityModel constant{std::abs(start.tilt_noise.rel_noise), r.spec.sigma_floor_ghz};
  const auto grid = control_grid(0.15, 0.30 + 1e-12, r.spec.quick ? 0.05 : 0.01);
  const auto rows = parallel_map<Row>(grid.size(), [&](std::size_t k) {
    Row row;
    try {
      const auto c = improvement_factor(grid[k], base, r.impurity, r.spec.mode);
      const QualityModel tilt{std::abs(c.tilt_noise.rel_noise), r.spec.sigma_floor_ghz};
      const QualityModel barrier{std::abs(c.barrier_noise.rel_noise), r.spec.sigma_floor_ghz};
      row.values = {grid[k], quality_factor(grid[k], tilt).q, quality_factor(grid[k], barrier).q,
                    quality_factor(grid[k], constant).q};
    } catch (const std::exception& e) {
      row.error = "J=" + num(grid[k]) + " GHz: " + e.what();
    }
    return row;
  });
  out << "J_ghz,Q_tilt,Q_barrier,Q_constmodel\n";
  return write_rows(out, log, rows) ? 3 : 0;
}

int cmd_impurity_scan(const ResolvedSpec& r, std::ostream& out, std::ostream& log) {
  const std::vector<double> radii =
      r.spec.quick ? std::vector<double>{3, 6, 9, 12} : control_grid(3.0, 12.0, 1.0);
  const std::vector<ScanDirection> dirs{ScanDirection::x, ScanDirection::y, ScanDirection::xy};
  const auto pts = impurity_scan(r.j_mhz / 1000.0, start_point(r), dirs, radii,
                                 r.impurity.charge_e, r.spec.mode);
  (void)log;
  for (auto d : dirs) {
    out << "# block: " << direction_tag(d) << '\n';
    out << "direction,Rc_over_a,rel_tilt,rel_barrier\n";
    for (const auto& p : pts) {
      if (p.direction != d) continue;
      out << direction_tag(d) << ',' << num(p.r_over_a) << ',' << num(p.tilt.rel_noise) << ','
          << num(p.barrier.rel_noise) << '\n';
    }
  }
  return 0;
}

int cmd_potential_profile(const ResolvedSpec& r, std::ostream& out, std::ostream&) {
  const ConfinementPotential v(r.spec.device);
  const double a = r.spec.device.a_nm;
  const int n = r.spec.quick ? 121 : 601;
  out << "x_nm,y_nm,V_meV\n";
  for (int k = 0; k < n; ++k) {
    const double x = -3.0 * a + 6.0 * a * k / (n - 1);
    out << num(x) << ",0," << num(v(x, 0.0)) << '\n';
  }
  return 0;
}

int cmd_validate(const ResolvedSpec& r, std::ostream& out, std::ostream& log) {
  ValidateOptions opt;
  opt.quick = r.spec.quick;
  opt.corrupt_bessel = r.spec.corrupt_bessel;
  opt.seed = r.spec.seed;
  opt.mode = r.spec.mode;
  DeviceParams base = r.spec.device;
  base.epsilon_mev = 0.0;
  base.xi_mev = 1.3;
  const auto suites = run_validation(base, opt);
  for (const auto& s : suites) {
    char buf[96];
    std::snprintf(buf, sizeof buf, "%s: %.2f s\n", s.name.c_str(), s.seconds);
    log << buf;
  }
  return print_report(out, suites) ? 0 : 1;
}

using Command = std::function<int(const ResolvedSpec&, std::ostream&, std::ostream&)>;

const std::map<std::string, Command>& commands() {
  static const std::map<std::string, Command> table{
      {"spectrum", cmd_spectrum},
      {"exchange-tilt", cmd_exchange_tilt},
      {"exchange-barrier", cmd_exchange_barrier},
      {"noise-compare", cmd_chi},
      {"qfactor", cmd_qfactor},
      {"impurity-scan", cmd_impurity_scan},
      {"near-impurity", cmd_chi},
      {"potential-profile", cmd_potential_profile},
      {"validate", cmd_validate},
  };
  return table;
}

}  // namespace

const std::vector<std::string>& experiment_names() {
  static const std::vector<std::string> names{
      "spectrum", "exchange-tilt", "exchange-barrier", "noise-compare",    "qfactor",
      "impurity-scan", "near-impurity", "potential-profile", "validate"};
  return names;
}

ResolvedSpec resolve_spec(const ExperimentSpec& spec) {
  if (!commands().count(spec.command))
    throw ConfigError("unknown command '" + spec.command + "'");
  if (spec.scheme != "tilt" && spec.scheme != "barrier")
    throw ConfigError("scheme must be tilt or barrier");
  ResolvedSpec r;
  r.spec = spec;
  const double a = spec.device.a_nm;
  const bool near = spec.command == "near-impurity";
  r.impurity = near ? Impurity{{-1.5 * a, 0.5 * a}, -0.01} : Impurity{{-6.0 * a, 6.0 * a}, -1.0};
  if (spec.impurity_x_nm) r.impurity.position_nm.x = *spec.impurity_x_nm;
  if (spec.impurity_y_nm) r.impurity.position_nm.y = *spec.impurity_y_nm;
  if (spec.charge_e) r.impurity.charge_e = *spec.charge_e;

  const bool spectrum = spec.command == "spectrum";
  r.eps_range = spec.eps_range.value_or(spectrum ? Range{-1.0, 1.0, spec.quick ? 0.1 : 0.01}
                                                 : Range{0.0, 1.0, spec.quick ? 0.1 : 0.01});
  r.xi_range = spec.xi_range.value_or(Range{0.5, 1.3, spec.quick ? 0.1 : 0.01});
  r.j_mhz = spec.j_mhz.value_or(242.0);
  if (!(r.j_mhz > 0.0)) throw ConfigError("--J-mhz must be positive");
  if (!(spec.j_step_ghz > 0.0)) throw ConfigError("noise.j_step_ghz must be positive");
  derive_constants(spec.device);
  return r;
}

void write_provenance(std::ostream& out, const ResolvedSpec& r) {
  const auto& s = r.spec;
  const auto& d = s.device;
  out << "# dqdsim " << DQD_VERSION << '\n'
      << "# command = " << s.command << '\n'
      << "# device.a_nm = " << exact(d.a_nm) << '\n'
      << "# device.hbar_omega0_mev = " << exact(d.hbar_omega0_mev) << '\n'
      << "# device.m_eff = " << exact(d.m_eff) << '\n'
      << "# device.eps_r = " << exact(d.eps_r) << '\n'
      << "# control.scheme = " << s.scheme << '\n'
      << "# control.epsilon_mev = " << exact(d.epsilon_mev) << '\n'
      << "# control.xi_mev = " << exact(d.xi_mev) << '\n'
      << "# control.eps_range = " << format_range(r.eps_range) << '\n'
      << "# control.xi_range = " << format_range(r.xi_range) << '\n'
      << "# impurity.x_nm = " << exact(r.impurity.position_nm.x) << '\n'
      << "# impurity.y_nm = " << exact(r.impurity.position_nm.y) << '\n'
      << "# impurity.charge_e = " << exact(r.impurity.charge_e) << '\n'
      << "# run.mode = " << mode_name(s.mode) << '\n'
      << "# run.j_mhz = " << exact(r.j_mhz) << '\n'
      << "# run.seed = " << s.seed << '\n'
      << "# run.quick = " << (s.quick ? "true" : "false") << '\n'
      << "# noise.sigma_floor_ghz = " << exact(s.sigma_floor_ghz) << '\n'
      << "# noise.j_max_ghz = " << exact(s.j_max_ghz) << '\n'
      << "# noise.j_step_ghz = " << exact(s.j_step_ghz) << '\n';
  if (s.corrupt_bessel) out << "# validate.corrupt_bessel = true\n";
}

int run_experiment(const ExperimentSpec& spec, std::ostream& out, std::ostream& log) {
  const ResolvedSpec r = resolve_spec(spec);
  write_provenance(out, r);
  return commands().at(r.spec.command)(r, out, log);
}

}  // namespace dqd
