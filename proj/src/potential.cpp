#include "dqd/potential.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace dqd {

double PotentialPiece::derivative(double x, int order) const {
  if (order < 0 || order > 4) throw std::out_of_range("PotentialPiece: derivative order");
  // Horner on the differentiated coefficients b_k k!/(k-order)!.
  const double u = x - center_nm;
  double acc = 0.0;
  for (int k = 4; k >= order; --k) {
    double falling = 1.0;
    for (int j = 0; j < order; ++j) falling *= static_cast<double>(k - j);
    acc = acc * u + coefficients[k] * falling;
  }
  return acc;
}

ConfinementPotential::ConfinementPotential(const DeviceParams& p) {
  const auto d = derive_constants(p);
  const double a = p.a_nm;
  const double k = a * a * d.curvature_mev_nm2;
  const double c = d.barrier_height_mev;
  const double a3 = a * a * a;
  const double a4 = a3 * a;

  transverse_ = 0.5 * d.curvature_mev_nm2;
  xi_ = p.xi_mev;
  barrier_exponent_ = 8.0 / (a * a);

  const double mu1 = p.mu1();
  left_.center_nm = -a;
  left_.coefficients = {-mu1, 0.0, transverse_, (4.0 * c + 4.0 * mu1 - k) / a3,
                        (-6.0 * c - 6.0 * mu1 + k) / (2.0 * a4)};

  const double mu2 = p.mu2();
  right_.center_nm = a;
  right_.coefficients = {-mu2, 0.0, transverse_, -(4.0 * c + 4.0 * mu2 - k) / a3,
                         (-6.0 * c - 6.0 * mu2 + k) / (2.0 * a4)};
}

double ConfinementPotential::barrier(double x, double y) const {
  return xi_ * std::exp(-barrier_exponent_ * (x * x + y * y));
}

double ConfinementPotential::operator()(double x, double y) const {
  return longitudinal(x) + transverse_ * y * y + barrier(x, y);
}

double eval_potential(double x_nm, double y_nm, const DeviceParams& params) {
  return ConfinementPotential(params)(x_nm, y_nm);
}

ConstraintReport potential_constraint_report(const DeviceParams& p) {
  const auto d = derive_constants(p);
  const ConfinementPotential v(p);
  const double a = p.a_nm;
  const double k = a * a * d.curvature_mev_nm2;
  const double c = d.barrier_height_mev;

  // Natural scales: energies by the largest energy in play, slopes by that
  // over a, curvatures by m* w0^2.
  const double energy_scale = std::max({k, c, std::abs(p.mu1()), std::abs(p.mu2())});
  const double slope_scale = energy_scale / a;
  const double curvature_scale = d.curvature_mev_nm2;

  ConstraintReport report;
  auto add = [&](std::string name, double value, double target, double scale) {
    const double rel = std::abs(value - target) / scale;
    report.items.push_back({std::move(name), value, target, rel});
    report.max_relative_residual = std::max(report.max_relative_residual, rel);
  };
  const auto& l = v.left();
  const auto& r = v.right();
  add("V_x(0-) = C", l.value(0.0), c, energy_scale);
  add("V_x(0+) = C", r.value(0.0), c, energy_scale);
  add("V_x(-a) = -mu1", l.value(-a), -p.mu1(), energy_scale);
  add("V_x(a) = -mu2", r.value(a), -p.mu2(), energy_scale);
  add("V_x'(0-) = 0", l.derivative(0.0, 1), 0.0, slope_scale);
  add("V_x'(0+) = 0", r.derivative(0.0, 1), 0.0, slope_scale);
  add("V_x'(-a) = 0", l.derivative(-a, 1), 0.0, slope_scale);
  add("V_x'(a) = 0", r.derivative(a, 1), 0.0, slope_scale);
  add("V_x''(-a) = m w0^2", l.derivative(-a, 2), d.curvature_mev_nm2, curvature_scale);
  add("V_x''(a) = m w0^2", r.derivative(a, 2), d.curvature_mev_nm2, curvature_scale);
  report.curvature_at_barrier_left = l.derivative(0.0, 2);
  report.curvature_at_barrier_right = r.derivative(0.0, 2);
  return report;
}

}  // namespace dqd
