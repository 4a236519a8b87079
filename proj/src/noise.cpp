#include "dqd/noise.hpp"

#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <random>
#include <sstream>

#include <boost/math/tools/toms748_solve.hpp>

#include "dqd/parallel.hpp"
#include "dqd/quadrature.hpp"

namespace dqd {

namespace {

constexpr std::uintmax_t kMaxIterations = 200;
constexpr double kCalibrationTolerance = 1e-8;

double clean_j_ghz(const DeviceParams& p, AssemblyMode mode) {
  return solve_point(p, std::nullopt, mode).j_ghz();
}

/// Root of J(control) = target on [lo, hi]; J is evaluated by `j_of`.
template <class F>
Calibration solve_bracketed(F&& j_of, double target, double lo, double hi, const char* what) {
  if (!(target > 0.0) || !std::isfinite(target))
    throw std::invalid_argument(std::string(what) + ": target J must be positive");
  auto f = [&](double c) { return j_of(c) - target; };
  const double f_lo = f(lo);
  const double f_hi = f(hi);
  if (f_lo == 0.0) return {lo, target, 0};
  if (f_hi == 0.0) return {hi, target, 0};
  if ((f_lo > 0.0) == (f_hi > 0.0)) {
    std::ostringstream msg;
    msg.precision(10);
    msg << what << ": target " << target << " GHz outside reachable range [" << f_lo + target
        << ", " << f_hi + target << "] GHz";
    throw CalibrationRangeError(msg.str());
  }
  std::uintmax_t iterations = kMaxIterations;
  auto stop = [](double a, double b) {
    return std::abs(b - a) <= 1e-15 * std::max(std::abs(a), std::abs(b)) + 1e-17;
  };
  const auto [a, b] =
      boost::math::tools::toms748_solve(f, lo, hi, f_lo, f_hi, stop, iterations);
  const double fa = f(a), fb = f(b);
  const double root = std::abs(fa) <= std::abs(fb) ? a : b;
  const double residual = std::min(std::abs(fa), std::abs(fb));
  if (residual > kCalibrationTolerance * target) {
    std::ostringstream msg;
    msg << what << ": did not converge (residual " << residual << " GHz after " << iterations
        << " iterations)";
    throw std::runtime_error(msg.str());
  }
  return {root, target + (std::abs(fa) <= std::abs(fb) ? fa : fb), static_cast<int>(iterations)};
}

}  // namespace

NoiseRecord delta_J(const DeviceParams& base, const ControlScheme& scheme, double control_mev,
                    const Impurity& impurity, AssemblyMode mode) {
  NoiseRecord r;
  r.scheme = std::string(scheme_name(scheme));
  r.control_mev = control_mev;
  r.impurity = impurity;
  const DeviceParams p = apply_control(base, scheme, control_mev);
  r.j_clean_ghz = solve_point(p, std::nullopt, mode).j_ghz();
  r.j_imp_ghz = solve_point(p, impurity, mode).j_ghz();
  r.delta_j_ghz = r.j_imp_ghz - r.j_clean_ghz;
  r.rel_noise = r.delta_j_ghz / r.j_clean_ghz;
  return r;
}

Calibration calibrate_tilt(double j_target_ghz, double xi_fixed, const DeviceParams& base,
                           AssemblyMode mode) {
  const ControlScheme scheme = TiltControl{xi_fixed};
  return solve_bracketed(
      [&](double eps) { return clean_j_ghz(apply_control(base, scheme, eps), mode); },
      j_target_ghz, 0.0, kTiltMaxEpsilon, "calibrate_tilt");
}

Calibration calibrate_barrier(double j_target_ghz, const DeviceParams& base, AssemblyMode mode) {
  const ControlScheme scheme = BarrierControl{};
  return solve_bracketed(
      [&](double xi) { return clean_j_ghz(apply_control(base, scheme, xi), mode); },
      j_target_ghz, kBarrierMinXi, kBarrierMaxXi, "calibrate_barrier");
}

ChiPoint improvement_factor(double j_target_ghz, const DeviceParams& base,
                            const Impurity& impurity, AssemblyMode mode) {
  ChiPoint c;
  c.j_target_ghz = j_target_ghz;
  c.tilt = calibrate_tilt(j_target_ghz, base.xi_mev, base, mode);
  c.barrier = calibrate_barrier(j_target_ghz, base, mode);
  c.tilt_noise = delta_J(base, TiltControl{base.xi_mev}, c.tilt.control_mev, impurity, mode);
  c.barrier_noise = delta_J(base, BarrierControl{}, c.barrier.control_mev, impurity, mode);
  if (c.barrier_noise.rel_noise == 0.0) {
    c.chi_infinite = true;
    c.chi = std::numeric_limits<double>::infinity();
  } else {
    c.chi = std::abs(c.tilt_noise.rel_noise) / std::abs(c.barrier_noise.rel_noise);
  }
  return c;
}

HubbardNoiseEstimate hubbard_noise_estimate(const DeviceParams& params, const Impurity& impurity) {
  require_valid(params);
  const OrbitalBasis basis = make_basis(params);
  const IntegralTables tables = build_tables(params, basis, impurity);
  const HubbardParams hp = hubbard_parameters(params, tables, basis.orthogonalizer, true);

  HubbardNoiseEstimate e;
  e.t = hp.t;
  e.delta_u = hp.delta_u();
  e.epsilon = hp.detuning();
  e.delta_t = -hp.z12;
  e.delta_epsilon = hp.z2 - hp.z1;
  const double gap = e.delta_u * e.delta_u - e.epsilon * e.epsilon;
  if (!(std::abs(e.epsilon) < e.delta_u) || gap <= 0.0)
    throw std::domain_error("hubbard_noise_estimate: |epsilon| reaches the Delta U pole");
  if (e.t == 0.0) throw std::domain_error("hubbard_noise_estimate: hopping vanishes");
  e.hopping_term = 2.0 * e.delta_t / e.t;
  e.detuning_term = 2.0 * e.epsilon * e.delta_epsilon / gap;
  e.rel_noise = e.hopping_term + e.detuning_term;
  return e;
}

double sigma_total_ghz(double j_ghz, const QualityModel& m) {
  return std::hypot(m.sigma_rel * j_ghz, m.sigma_floor_ghz);
}

QualityFactor quality_factor(double j_ghz, const QualityModel& model) {
  if (!(j_ghz > 0.0)) throw std::invalid_argument("quality_factor: J must be positive");
  const double sigma = sigma_total_ghz(j_ghz, model);
  if (sigma == 0.0) return {std::numeric_limits<double>::infinity(), true};
  return {j_ghz / (std::numbers::sqrt2 * std::numbers::pi * sigma), false};
}

double dephasing_envelope(double sigma_ghz, double t_ns) {
  if (sigma_ghz == 0.0) return 1.0;
  static const quadrature::Rule rule = [] {
    std::vector<double> edges;
    for (int k = 0; k <= 80; ++k) edges.push_back(-10.0 + 0.25 * k);
    return quadrature::composite(edges, 20);
  }();
  // Standard-normal variable z, J' - J = sigma z.
  std::complex<double> sum = 0.0;
  const double norm = 1.0 / std::sqrt(2.0 * std::numbers::pi);
  for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
    const double z = rule.nodes[i];
    const double phase = 2.0 * std::numbers::pi * sigma_ghz * z * t_ns;
    sum += rule.weights[i] * norm * std::exp(-0.5 * z * z) *
           std::complex<double>(std::cos(phase), std::sin(phase));
  }
  return std::abs(sum);
}

namespace {

template <class Envelope>
double one_over_e_time(Envelope&& env, double t_hi) {
  auto f = [&](double t) { return env(t) - std::exp(-1.0); };
  std::uintmax_t iterations = kMaxIterations;
  auto stop = [](double a, double b) { return std::abs(b - a) <= 1e-14 * std::abs(a + b); };
  const auto [a, b] = boost::math::tools::toms748_solve(f, 0.0, t_hi, stop, iterations);
  return 0.5 * (a + b);
}

}  // namespace

double numeric_quality_factor(double j_ghz, const QualityModel& model) {
  if (!(j_ghz > 0.0)) throw std::invalid_argument("numeric_quality_factor: J must be positive");
  const double sigma = sigma_total_ghz(j_ghz, model);
  if (sigma == 0.0) return std::numeric_limits<double>::infinity();
  return j_ghz * one_over_e_time([&](double t) { return dephasing_envelope(sigma, t); },
                                 1.0 / sigma);
}

double monte_carlo_quality_factor(double j_ghz, const QualityModel& model, std::uint64_t seed,
                                  std::size_t samples) {
  if (!(j_ghz > 0.0)) throw std::invalid_argument("monte_carlo_quality_factor: J must be positive");
  const double sigma = sigma_total_ghz(j_ghz, model);
  if (sigma == 0.0) return std::numeric_limits<double>::infinity();
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, sigma);
  std::vector<double> offsets(samples);
  for (double& x : offsets) x = normal(rng);
  auto envelope = [&](double t) {
    std::complex<double> sum = 0.0;
    for (double dj : offsets) {
      const double phase = 2.0 * std::numbers::pi * dj * t;
      sum += std::complex<double>(std::cos(phase), std::sin(phase));
    }
    return std::abs(sum) / static_cast<double>(offsets.size());
  };
  return j_ghz * one_over_e_time(envelope, 0.5 / sigma);
}

std::vector<double> control_grid(double lo, double hi, double step) {
  if (!(step > 0.0)) throw std::invalid_argument("control grid: step must be positive");
  if (!(hi >= lo)) throw std::invalid_argument("control grid: hi must not be below lo");
  const auto n = static_cast<std::size_t>(std::floor((hi - lo) / step + 1e-9)) + 1;
  std::vector<double> g(n);
  for (std::size_t k = 0; k < n; ++k) g[k] = lo + static_cast<double>(k) * step;
  return g;
}

std::vector<NoiseRecord> sweep(const SweepSpec& spec) {
  const auto grid = control_grid(spec.lo, spec.hi, spec.step);
  return parallel_map<NoiseRecord>(grid.size(), [&](std::size_t k) {
    NoiseRecord r;
    r.scheme = std::string(scheme_name(spec.scheme));
    r.control_mev = grid[k];
    try {
      if (spec.impurity) {
        r = delta_J(spec.base, spec.scheme, grid[k], *spec.impurity, spec.mode);
      } else {
        const auto p = apply_control(spec.base, spec.scheme, grid[k]);
        r.j_clean_ghz = clean_j_ghz(p, spec.mode);
        r.j_imp_ghz = r.delta_j_ghz = r.rel_noise = std::numeric_limits<double>::quiet_NaN();
      }
    } catch (const std::exception& e) {
      r.error = e.what();
    }
    return r;
  });
}

std::string_view direction_tag(ScanDirection d) {
  switch (d) {
    case ScanDirection::x: return "x";
    case ScanDirection::y: return "y";
    case ScanDirection::xy: return "xy";
  }
  return "?";
}

Vec2 scan_position(ScanDirection d, double r, double a) {
  switch (d) {
    case ScanDirection::x: return {-r * a, 0.0};
    case ScanDirection::y: return {0.0, r * a};
    case ScanDirection::xy: return {-r * a, r * a};
  }
  return {};
}

std::vector<ScanPoint> impurity_scan(double j_target_ghz, const DeviceParams& base,
                                     const std::vector<ScanDirection>& directions,
                                     const std::vector<double>& r_over_a, double charge_e,
                                     AssemblyMode mode) {
  const auto tilt = calibrate_tilt(j_target_ghz, base.xi_mev, base, mode);
  const auto barrier = calibrate_barrier(j_target_ghz, base, mode);
  const std::size_t n = directions.size() * r_over_a.size();
  return parallel_map<ScanPoint>(n, [&](std::size_t k) {
    ScanPoint s;
    s.direction = directions[k / r_over_a.size()];
    s.r_over_a = r_over_a[k % r_over_a.size()];
    const Impurity imp{scan_position(s.direction, s.r_over_a, base.a_nm), charge_e};
    s.tilt = delta_J(base, TiltControl{base.xi_mev}, tilt.control_mev, imp, mode);
    s.barrier = delta_J(base, BarrierControl{}, barrier.control_mev, imp, mode);
    return s;
  });
}

SweetSpot sweet_spot_check(double xi_mev, const DeviceParams& base, AssemblyMode mode,
                           double h) {
  const ControlScheme scheme = TiltControl{xi_mev};
  auto j = [&](double eps) { return clean_j_ghz(apply_control(base, scheme, eps), mode); };
  auto central = [&](double step) { return (j(step) - j(-step)) / (2.0 * step); };
  const double coarse = central(h);
  const double fine = central(0.5 * h);
  SweetSpot s;
  s.derivative_ghz_per_mev = (4.0 * fine - coarse) / 3.0;
  s.truncation_error = std::abs(s.derivative_ghz_per_mev - fine);
  s.j_ghz = j(0.0);
  s.step_mev = h;
  return s;
}

}  // namespace dqd
