#pragma once

#include <cmath>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace dqd {

// Internal unit system: energies in meV, lengths in nm.
namespace units {
/// hbar^2 / (2 m_e) in meV nm^2.
inline constexpr double hbar2_over_2me = 38.0998212;
/// e^2 / (4 pi eps_0) in meV nm.
inline constexpr double coulomb_vacuum = 1439.964548;
/// 1 meV / h in GHz.
inline constexpr double ghz_per_mev = 241.798924;
}  // namespace units

struct Vec2 {
  double x = 0.0;
  double y = 0.0;

  friend constexpr Vec2 operator+(Vec2 a, Vec2 b) { return {a.x + b.x, a.y + b.y}; }
  friend constexpr Vec2 operator-(Vec2 a, Vec2 b) { return {a.x - b.x, a.y - b.y}; }
  friend constexpr Vec2 operator*(double s, Vec2 a) { return {s * a.x, s * a.y}; }
  friend constexpr bool operator==(Vec2, Vec2) = default;
};

inline constexpr double norm2(Vec2 v) { return v.x * v.x + v.y * v.y; }
inline double norm(Vec2 v) { return std::hypot(v.x, v.y); }

/// One simulation point: geometry, material and the two control knobs.
/// Detuning splits the well depths as mu1 = +epsilon/2 (dot at -a) and
/// mu2 = -epsilon/2 (dot at +a).
struct DeviceParams {
  double a_nm = 100.0;            ///< half inter-dot separation
  double hbar_omega0_mev = 0.1;   ///< confinement energy
  double m_eff = 0.067;           ///< effective mass / m_e (GaAs)
  double eps_r = 13.1;            ///< relative permittivity (GaAs)
  double epsilon_mev = 0.0;       ///< detuning mu1 - mu2
  double xi_mev = 1.3;            ///< Gaussian barrier amplitude

  double mu1() const { return 0.5 * epsilon_mev; }
  double mu2() const { return -0.5 * epsilon_mev; }
  Vec2 center1() const { return {-a_nm, 0.0}; }
  Vec2 center2() const { return {a_nm, 0.0}; }
};

struct DerivedConstants {
  double fock_darwin_radius_nm = 0.0;  ///< a_B = sqrt(hbar / (m* w0))
  double barrier_height_mev = 0.0;     ///< C = a^2 m* w0^2 / 12
  double kinetic_scale_mev_nm2 = 0.0;  ///< hbar^2 / (2 m*)
  double coulomb_scale_mev_nm = 0.0;   ///< e^2 / (4 pi kappa)
  double curvature_mev_nm2 = 0.0;      ///< m* w0^2
  double ghz_per_mev = units::ghz_per_mev;
};

/// Throws std::invalid_argument on non-positive geometry or material inputs.
DerivedConstants derive_constants(const DeviceParams& params);

struct ValidationCheck {
  std::string name;
  double value = 0.0;  ///< quantity compared against the bound
  double bound = 0.0;
  bool passed = false;
};

struct ValidationReport {
  std::vector<ValidationCheck> checks;
  bool ok = true;
};

/// Never throws. Positivity checks plus the barrier-existence condition:
/// the curvature of V along x at x = 0, approached from either well, must
/// not be positive. In meV (curvature times a^2) this reads
///   a^2 m* w0^2 - 12 mu_i - 12 C - 16 xi <= 0,
/// the last term being the Gaussian barrier's own curvature.
ValidationReport validate_params(const DeviceParams& params);

/// Throws std::invalid_argument listing the failed checks.
void require_valid(const DeviceParams& params);

struct Impurity {
  Vec2 position_nm{-600.0, 600.0};
  double charge_e = -1.0;  ///< in units of e; -1 repels the dot electrons
};

/// Detuning is swept at a fixed barrier.
struct TiltControl {
  double xi_mev = 1.3;
};

/// Barrier amplitude is swept with the wells kept level (epsilon = 0).
struct BarrierControl {};

using ControlScheme = std::variant<TiltControl, BarrierControl>;

std::string_view scheme_name(const ControlScheme& scheme);

/// Returns `base` with the scheme's control variable set to `control_mev`.
DeviceParams apply_control(const DeviceParams& base, const ControlScheme& scheme,
                           double control_mev);

}  // namespace dqd
