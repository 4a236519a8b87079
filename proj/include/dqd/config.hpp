#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

#include "dqd/hamiltonian.hpp"
#include "dqd/model.hpp"

namespace dqd {

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Inclusive sweep range lo:hi:step in meV (or GHz where noted).
struct Range {
  double lo = 0.0;
  double hi = 0.0;
  double step = 0.0;
};

/// Parses "lo:hi:step"; throws ConfigError on malformed text, step <= 0 or hi < lo.
Range parse_range(std::string_view text);
std::string format_range(const Range& r);

/// Parses a finite decimal number; throws ConfigError naming `what`.
double parse_number(std::string_view text, std::string_view what);

/// Everything one CLI invocation needs. Unset optionals are filled with
/// per-command defaults by resolve_spec.
struct ExperimentSpec {
  std::string command;
  DeviceParams device;
  std::string scheme = "tilt";
  std::optional<Range> eps_range;
  std::optional<Range> xi_range;
  std::optional<double> impurity_x_nm;
  std::optional<double> impurity_y_nm;
  std::optional<double> charge_e;
  AssemblyMode mode = AssemblyMode::paper_literal;
  std::optional<double> j_mhz;
  std::uint64_t seed = 2017;
  double sigma_floor_ghz = 0.0;  ///< J-independent dephasing channel for qfactor
  double j_max_ghz = 1.0;        ///< upper end of matched-J grids
  double j_step_ghz = 0.05;      ///< spacing of matched-J grids
  std::string out_path;          ///< empty writes to stdout
  bool quick = false;
  bool corrupt_bessel = false;   ///< validation negative control
};

/// Applies `key = value` lines ('#' starts a comment) onto spec.
/// Recognised keys: device.a_nm, device.hbar_omega0_mev, device.m_eff,
/// device.eps_r, control.scheme, control.epsilon_mev, control.xi_mev,
/// control.eps_range, control.xi_range, impurity.x_nm, impurity.y_nm,
/// impurity.charge_e, run.mode, run.j_mhz, run.seed, noise.sigma_floor_ghz,
/// noise.j_max_ghz, noise.j_step_ghz. Throws ConfigError with the line
/// number for unknown keys or bad values.
void apply_config_text(std::string_view text, ExperimentSpec& spec,
                       std::string_view source = "config");

/// Reads and applies a config file; throws ConfigError if unreadable.
void load_config_file(const std::string& path, ExperimentSpec& spec);

}  // namespace dqd
