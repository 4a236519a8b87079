#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "dqd/hamiltonian.hpp"
#include "dqd/model.hpp"

namespace dqd {

/// Impurity-induced shift of J at one control point. The clean J is the
/// denominator of the relative noise.
struct NoiseRecord {
  std::string scheme;
  double control_mev = 0.0;  ///< epsilon for tilt, xi for barrier
  double j_clean_ghz = 0.0;
  double j_imp_ghz = 0.0;
  double delta_j_ghz = 0.0;
  double rel_noise = 0.0;    ///< (J_imp - J_clean) / J_clean
  Impurity impurity;
  std::string error;         ///< non-empty if the point failed

  bool ok() const { return error.empty(); }
};

NoiseRecord delta_J(const DeviceParams& base, const ControlScheme& scheme, double control_mev,
                    const Impurity& impurity, AssemblyMode mode);

/// Raised when a calibration target lies outside the reachable J range.
class CalibrationRangeError : public std::out_of_range {
 public:
  using std::out_of_range::out_of_range;
};

struct Calibration {
  double control_mev = 0.0;
  double j_ghz = 0.0;  ///< clean J reached at control_mev
  int iterations = 0;
};

inline constexpr double kTiltMaxEpsilon = 1.5;   ///< meV
inline constexpr double kBarrierMinXi = 0.3;     ///< meV
inline constexpr double kBarrierMaxXi = 1.3;     ///< meV

/// Detuning in [0, 1.5] meV at which the clean J equals the target, with
/// base.xi_mev replaced by xi_fixed. Bracketed TOMS 748 search.
Calibration calibrate_tilt(double j_target_ghz, double xi_fixed, const DeviceParams& base,
                           AssemblyMode mode);

/// Barrier amplitude in [0.3, 1.3] meV at epsilon = 0 giving the target J.
Calibration calibrate_barrier(double j_target_ghz, const DeviceParams& base, AssemblyMode mode);

/// Tilt and barrier noise compared at the same clean J.
struct ChiPoint {
  double j_target_ghz = 0.0;
  Calibration tilt;
  Calibration barrier;
  NoiseRecord tilt_noise;
  NoiseRecord barrier_noise;
  /// |rel_tilt| / |rel_barrier|; meaningless when chi_infinite.
  double chi = 0.0;
  bool chi_infinite = false;  ///< barrier relative noise is exactly zero
};

/// base.xi_mev is the fixed barrier of the tilt scheme.
ChiPoint improvement_factor(double j_target_ghz, const DeviceParams& base,
                            const Impurity& impurity, AssemblyMode mode);

/// First-order Hubbard estimate of the relative noise,
///   dJ/J = 2 dt/t + 2 eps dEps / (dU^2 - eps^2),
/// with dt = -z12, dEps = z2 - z1, eps = mu1 - mu2 and dU = U1 - U12 taken
/// from the clean parameters.
struct HubbardNoiseEstimate {
  double rel_noise = 0.0;
  double hopping_term = 0.0;   ///< 2 dt / t
  double detuning_term = 0.0;  ///< 2 eps dEps / (dU^2 - eps^2)
  double t = 0.0;
  double delta_u = 0.0;
  double epsilon = 0.0;
  double delta_t = 0.0;
  double delta_epsilon = 0.0;
};

/// Throws std::domain_error when |eps| >= dU (outside the expansion).
HubbardNoiseEstimate hubbard_noise_estimate(const DeviceParams& params, const Impurity& impurity);

/// Quasi-static Gaussian dephasing: J' ~ Normal(J, sigma_tot),
/// sigma_tot^2 = (sigma_rel J)^2 + sigma_floor^2.
struct QualityModel {
  double sigma_rel = 0.0;
  double sigma_floor_ghz = 0.0;
};

double sigma_total_ghz(double j_ghz, const QualityModel& model);

struct QualityFactor {
  double q = 0.0;
  bool infinite = false;  ///< no noise channel; q is +inf
};

/// Q = J / (sqrt(2) pi sigma_tot). Throws std::invalid_argument for J <= 0.
QualityFactor quality_factor(double j_ghz, const QualityModel& model);

/// |E[exp(2 pi i J' t)]| by Gauss-Legendre over J +- 10 sigma; t in ns.
double dephasing_envelope(double sigma_ghz, double t_ns);

/// Q from the 1/e point of the numerically averaged envelope.
double numeric_quality_factor(double j_ghz, const QualityModel& model);

/// Q from a sampled ensemble of J' (seeded, deterministic per platform).
double monte_carlo_quality_factor(double j_ghz, const QualityModel& model, std::uint64_t seed,
                                  std::size_t samples = 200000);

struct SweepSpec {
  DeviceParams base;
  ControlScheme scheme = TiltControl{};
  double lo = 0.0;
  double hi = 1.0;
  double step = 0.01;
  std::optional<Impurity> impurity;  ///< clean-only records when absent
  AssemblyMode mode = AssemblyMode::paper_literal;
};

/// Inclusive grid lo, lo + step, ... <= hi (with a 1e-9 step slack).
/// Throws std::invalid_argument for step <= 0 or hi < lo.
std::vector<double> control_grid(double lo, double hi, double step);

/// One record per grid point in input order. Failed points carry an error
/// message and do not stop the sweep.
std::vector<NoiseRecord> sweep(const SweepSpec& spec);

enum class ScanDirection { x, y, xy };

std::string_view direction_tag(ScanDirection d);

/// Impurity position at distance parameter r (units of a) along a
/// direction: x -> (-r a, 0), y -> (0, r a), xy -> (-r a, r a).
Vec2 scan_position(ScanDirection d, double r_over_a, double a_nm);

struct ScanPoint {
  ScanDirection direction = ScanDirection::x;
  double r_over_a = 0.0;
  NoiseRecord tilt;
  NoiseRecord barrier;
};

/// Relative noise of both schemes at a fixed matched J for impurities along
/// each direction. Calibration happens once, without impurity.
std::vector<ScanPoint> impurity_scan(double j_target_ghz, const DeviceParams& base,
                                     const std::vector<ScanDirection>& directions,
                                     const std::vector<double>& r_over_a, double charge_e,
                                     AssemblyMode mode);

/// Clean-device dJ/deps at eps = 0 by central differences with one
/// Richardson step.
struct SweetSpot {
  double derivative_ghz_per_mev = 0.0;
  double truncation_error = 0.0;
  double j_ghz = 0.0;
  double step_mev = 0.0;
};

SweetSpot sweet_spot_check(double xi_mev, const DeviceParams& base, AssemblyMode mode,
                           double step_mev = 1e-3);

}  // namespace dqd
