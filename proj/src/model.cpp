#include "dqd/model.hpp"

#include <sstream>
#include <stdexcept>

namespace dqd {

DerivedConstants derive_constants(const DeviceParams& p) {
  if (!(p.a_nm > 0.0) || !(p.hbar_omega0_mev > 0.0) || !(p.m_eff > 0.0) || !(p.eps_r > 0.0)) {
    throw std::invalid_argument(
        "derive_constants: a, hbar_omega0, m_eff and eps_r must be positive");
  }
  DerivedConstants d;
  d.kinetic_scale_mev_nm2 = units::hbar2_over_2me / p.m_eff;
  const double hbar2_over_m = 2.0 * d.kinetic_scale_mev_nm2;
  d.fock_darwin_radius_nm = std::sqrt(hbar2_over_m / p.hbar_omega0_mev);
  d.curvature_mev_nm2 = p.hbar_omega0_mev * p.hbar_omega0_mev / hbar2_over_m;
  d.barrier_height_mev = p.a_nm * p.a_nm * d.curvature_mev_nm2 / 12.0;
  d.coulomb_scale_mev_nm = units::coulomb_vacuum / p.eps_r;
  return d;
}

ValidationReport validate_params(const DeviceParams& p) {
  ValidationReport report;
  auto add = [&](std::string name, double value, double bound, bool passed) {
    report.checks.push_back({std::move(name), value, bound, passed});
    report.ok = report.ok && passed;
  };
  add("a_nm > 0", p.a_nm, 0.0, p.a_nm > 0.0);
  add("hbar_omega0_mev > 0", p.hbar_omega0_mev, 0.0, p.hbar_omega0_mev > 0.0);
  add("m_eff > 0", p.m_eff, 0.0, p.m_eff > 0.0);
  add("eps_r > 0", p.eps_r, 0.0, p.eps_r > 0.0);
  if (!report.ok) return report;

  const auto d = derive_constants(p);
  const double k = p.a_nm * p.a_nm * d.curvature_mev_nm2;
  const double c = d.barrier_height_mev;
  const double mus[2] = {p.mu1(), p.mu2()};
  for (int i = 0; i < 2; ++i) {
    const double curvature = k - 12.0 * mus[i] - 12.0 * c - 16.0 * p.xi_mev;
    add("barrier curvature at x=0 (well " + std::to_string(i + 1) + ") <= 0", curvature, 0.0,
        curvature <= 0.0);
  }
  return report;
}

void require_valid(const DeviceParams& params) {
  const auto report = validate_params(params);
  if (report.ok) return;
  std::ostringstream msg;
  msg << "invalid device parameters:";
  for (const auto& c : report.checks) {
    if (!c.passed) msg << " [" << c.name << ": " << c.value << "]";
  }
  throw std::invalid_argument(msg.str());
}

std::string_view scheme_name(const ControlScheme& scheme) {
  return std::holds_alternative<TiltControl>(scheme) ? "tilt" : "barrier";
}

DeviceParams apply_control(const DeviceParams& base, const ControlScheme& scheme,
                           double control_mev) {
  DeviceParams p = base;
  if (const auto* tilt = std::get_if<TiltControl>(&scheme)) {
    p.xi_mev = tilt->xi_mev;
    p.epsilon_mev = control_mev;
  } else {
    p.xi_mev = control_mev;
    p.epsilon_mev = 0.0;
  }
  return p;
}

}  // namespace dqd
