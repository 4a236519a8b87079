#include "dqd/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <vector>

#include "dqd/potential.hpp"
#include "dqd/quadrature.hpp"

namespace dqd::oracle {

namespace {

namespace q = dqd::quadrature;

struct Resolution {
  int gl_order;         ///< Gauss-Legendre points per panel
  int cheb_points;      ///< Chebyshev points per interpolation panel
  double arc_spacing;   ///< target arc length between angular nodes, in a_B
};

constexpr Resolution kCoarse{15, 16, 1.0 / 2.5};
constexpr Resolution kFine{20, 24, 1.0 / 3.5};

/// Support half-width of a Gaussian product density, in a_B.
constexpr double kSupport = 10.0;
constexpr double kPanel = 0.5;  // panel width in a_B

/// Orbital setup built straight from the device geometry.
struct Orbitals {
  std::array<Vec2, 2> centers;
  double radius;

  /// One Cartesian factor of phi: phi(x, y) = factor(x, X_i) factor(y, Y_i).
  double factor(double x, double c) const {
    const double d = x - c;
    return std::exp(-d * d / (2.0 * radius * radius)) /
           std::sqrt(radius * std::sqrt(std::numbers::pi));
  }
  Vec2 at(int i) const { return centers[i - 1]; }
};

Orbitals orbitals_for(const DeviceParams& p) {
  const auto d = derive_constants(p);
  return {{p.center1(), p.center2()}, d.fock_darwin_radius_nm};
}

/// Panel edges over [c - W, c + W] refined around x = 0 and the barrier.
std::vector<double> axis_breakpoints(double c, double radius, double a, bool split_at_zero) {
  std::vector<double> forced;
  for (int k = -12; k <= 12; ++k) forced.push_back(k * a / 8.0);
  if (split_at_zero) forced.push_back(0.0);
  return q::breakpoints(c - kSupport * radius, c + kSupport * radius, kPanel * radius, forced);
}

template <class F>
double one_body(const Orbitals& orb, int i, int j, double a, const Resolution& res, F&& field) {
  const Vec2 ri = orb.at(i), rj = orb.at(j);
  const Vec2 c = 0.5 * (ri + rj);
  const auto bx = axis_breakpoints(c.x, orb.radius, a, true);
  const auto by = axis_breakpoints(c.y, orb.radius, a, false);
  const auto rx = q::composite(bx, res.gl_order);
  const auto ry = q::composite(by, res.gl_order);

  std::vector<double> wy(ry.nodes.size());
  for (std::size_t m = 0; m < ry.nodes.size(); ++m) {
    const double y = ry.nodes[m];
    wy[m] = ry.weights[m] * orb.factor(y, ri.y) * orb.factor(y, rj.y);
  }
  double total = 0.0;
  for (std::size_t n = 0; n < rx.nodes.size(); ++n) {
    const double x = rx.nodes[n];
    const double wx = rx.weights[n] * orb.factor(x, ri.x) * orb.factor(x, rj.x);
    if (wx == 0.0) continue;
    double row = 0.0;
    for (std::size_t m = 0; m < ry.nodes.size(); ++m) row += wy[m] * field(x, ry.nodes[m]);
    total += wx * row;
  }
  return total;
}

double impurity_polar(const Orbitals& orb, int i, int j, const Impurity& imp, double scale,
                      const Resolution& res) {
  const Vec2 ri = orb.at(i), rj = orb.at(j);
  const Vec2 c = 0.5 * (ri + rj);
  const Vec2 rc = imp.position_nm;
  const double radius = orb.radius;
  const double w = kSupport * radius;
  const double dist = norm(c - rc);

  const double r_lo = std::max(0.0, dist - w);
  const double r_hi = dist + w;
  const auto radial = q::composite(q::breakpoints(r_lo, r_hi, kPanel * radius), res.gl_order);

  q::Rule angular;
  const double spacing = res.arc_spacing * radius;
  if (dist > w) {
    // Density lies inside a wedge seen from the impurity.
    const double theta0 = std::atan2(c.y - rc.y, c.x - rc.x);
    const double half = std::asin(w / dist);
    const double panel = kPanel * radius / r_hi;
    angular = q::composite(q::breakpoints(theta0 - half, theta0 + half, panel), res.gl_order);
  } else {
    const int n = std::max(64, static_cast<int>(std::ceil(2.0 * std::numbers::pi * r_hi / spacing)));
    angular = q::periodic_trapezoid(0.0, 2.0 * std::numbers::pi, n);
  }

  double total = 0.0;
  for (std::size_t a = 0; a < angular.nodes.size(); ++a) {
    const double ct = std::cos(angular.nodes[a]);
    const double st = std::sin(angular.nodes[a]);
    double ray = 0.0;
    for (std::size_t r = 0; r < radial.nodes.size(); ++r) {
      const double x = rc.x + radial.nodes[r] * ct;
      const double y = rc.y + radial.nodes[r] * st;
      // r dr dtheta * (1/r): the Jacobian cancels the Coulomb singularity.
      ray += radial.weights[r] * orb.factor(x, ri.x) * orb.factor(y, ri.y) *
             orb.factor(x, rj.x) * orb.factor(y, rj.y);
    }
    total += angular.weights[a] * ray;
  }
  return -imp.charge_e * scale * total;
}

/// Piecewise Chebyshev interpolant on uniform panels; zero outside [lo, hi].
class PanelInterpolant {
 public:
  template <class F>
  PanelInterpolant(double lo, double hi, int panels, int points, F&& f)
      : lo_(lo), hi_(hi), width_((hi - lo) / panels), panels_(panels), points_(points) {
    nodes_.resize(static_cast<std::size_t>(panels) * points);
    values_.resize(nodes_.size());
    for (int p = 0; p < panels; ++p) {
      const double mid = lo + (p + 0.5) * width_;
      for (int j = 0; j < points; ++j) {
        const double x = mid + 0.5 * width_ * std::cos(std::numbers::pi * j / (points - 1));
        nodes_[p * points + j] = x;
        values_[p * points + j] = f(x);
      }
    }
    weights_.resize(points);
    for (int j = 0; j < points; ++j) {
      weights_[j] = (j % 2 == 0 ? 1.0 : -1.0) * ((j == 0 || j == points - 1) ? 0.5 : 1.0);
    }
  }

  double operator()(double x) const {
    if (x < lo_ || x > hi_) return 0.0;
    const int p = std::min(panels_ - 1, static_cast<int>((x - lo_) / width_));
    const double* xs = &nodes_[p * points_];
    const double* fs = &values_[p * points_];
    double num = 0.0, den = 0.0;
    for (int j = 0; j < points_; ++j) {
      const double dx = x - xs[j];
      if (dx == 0.0) return fs[j];
      const double t = weights_[j] / dx;
      num += t * fs[j];
      den += t;
    }
    return num / den;
  }

 private:
  double lo_, hi_, width_;
  int panels_, points_;
  std::vector<double> nodes_, values_, weights_;
};

/// 1D convolution C(u) = \int f(X + u) g(X) dX for Gaussian-product factors,
/// tabulated around its centre.
PanelInterpolant convolution_axis(const Orbitals& orb, double fi, double fk, double gj,
                                  double gl, const Resolution& res) {
  const double radius = orb.radius;
  const double gc = 0.5 * (gj + gl);
  const double u0 = 0.5 * (fi + fk) - gc;
  const auto rule = q::composite(
      q::breakpoints(gc - kSupport * radius, gc + kSupport * radius, kPanel * radius),
      res.gl_order);
  std::vector<double> gw(rule.nodes.size());
  for (std::size_t n = 0; n < rule.nodes.size(); ++n) {
    const double x = rule.nodes[n];
    gw[n] = rule.weights[n] * orb.factor(x, gj) * orb.factor(x, gl);
  }
  auto conv = [&](double u) {
    double s = 0.0;
    for (std::size_t n = 0; n < rule.nodes.size(); ++n) {
      const double x = rule.nodes[n] + u;
      s += gw[n] * orb.factor(x, fi) * orb.factor(x, fk);
    }
    return s;
  };
  const double span = 12.0 * radius;
  const int panels = static_cast<int>(std::ceil(2.0 * span / (kPanel * radius)));
  return PanelInterpolant(u0 - span, u0 + span, panels, res.cheb_points, conv);
}

double coulomb_relative(const Orbitals& orb, std::array<int, 4> idx, double scale,
                        const Resolution& res) {
  const Vec2 ri = orb.at(idx[0]), rj = orb.at(idx[1]), rk = orb.at(idx[2]), rl = orb.at(idx[3]);
  const auto cx = convolution_axis(orb, ri.x, rk.x, rj.x, rl.x, res);
  const auto cy = convolution_axis(orb, ri.y, rk.y, rj.y, rl.y, res);

  const double radius = orb.radius;
  const Vec2 u0 = 0.5 * (ri + rk) - 0.5 * (rj + rl);
  const double rho_max = norm(u0) + 12.0 * radius;
  const auto radial = q::composite(q::breakpoints(0.0, rho_max, kPanel * radius), res.gl_order);
  const int n_theta = std::max(
      64, static_cast<int>(std::ceil(2.0 * std::numbers::pi * rho_max / (res.arc_spacing * radius))));
  const auto angular = q::periodic_trapezoid(0.0, 2.0 * std::numbers::pi, n_theta);

  double total = 0.0;
  for (std::size_t a = 0; a < angular.nodes.size(); ++a) {
    const double ct = std::cos(angular.nodes[a]);
    const double st = std::sin(angular.nodes[a]);
    double ray = 0.0;
    for (std::size_t r = 0; r < radial.nodes.size(); ++r) {
      const double rho = radial.nodes[r];
      ray += radial.weights[r] * cx(rho * ct) * cy(rho * st);
    }
    total += angular.weights[a] * ray;
  }
  return scale * total;
}

double evaluate(const Request& req, const DeviceParams& p, const Resolution& res) {
  const auto orb = orbitals_for(p);
  const auto dc = derive_constants(p);
  const int i = req.indices[0], j = req.indices[1];
  switch (req.kind) {
    case ElementKind::overlap:
      return one_body(orb, i, j, p.a_nm, res, [](double, double) { return 1.0; });
    case ElementKind::kinetic: {
      // -hbar^2/(2m) nabla^2 phi_j = hbar^2/(2m) (2/a_B^2 - |r-R_j|^2/a_B^4) phi_j
      const Vec2 rj = orb.at(j);
      const double ab2 = orb.radius * orb.radius;
      const double ks = dc.kinetic_scale_mev_nm2;
      return one_body(orb, i, j, p.a_nm, res, [&](double x, double y) {
        const double d2 = (x - rj.x) * (x - rj.x) + (y - rj.y) * (y - rj.y);
        return ks * (2.0 / ab2 - d2 / (ab2 * ab2));
      });
    }
    case ElementKind::potential: {
      const ConfinementPotential v(p);
      return one_body(orb, i, j, p.a_nm, res, [&](double x, double y) { return v(x, y); });
    }
    case ElementKind::impurity:
      if (!req.impurity) throw std::invalid_argument("quadrature_oracle: impurity missing");
      return impurity_polar(orb, i, j, *req.impurity, dc.coulomb_scale_mev_nm, res);
    case ElementKind::coulomb:
      return coulomb_relative(orb, req.indices, dc.coulomb_scale_mev_nm, res);
  }
  throw std::logic_error("quadrature_oracle: unknown kind");
}

}  // namespace

std::string_view kind_name(ElementKind kind) {
  switch (kind) {
    case ElementKind::overlap: return "overlap";
    case ElementKind::kinetic: return "kinetic";
    case ElementKind::potential: return "potential";
    case ElementKind::impurity: return "impurity";
    case ElementKind::coulomb: return "coulomb";
  }
  return "unknown";
}

Result quadrature_oracle(const Request& req, const DeviceParams& params) {
  for (int idx : req.indices) {
    if (idx != 1 && idx != 2) throw std::out_of_range("quadrature_oracle: index must be 1 or 2");
  }
  const double fine = evaluate(req, params, kFine);
  const double coarse = evaluate(req, params, kCoarse);
  Result r{fine, std::abs(fine - coarse)};
  const double allowed = std::max(req.relative_tolerance * std::abs(fine), req.absolute_floor);
  if (r.error_estimate > allowed) {
    std::ostringstream msg;
    msg << "quadrature_oracle(" << kind_name(req.kind) << "): error estimate "
        << r.error_estimate << " exceeds tolerance " << allowed;
    throw Refused(msg.str());
  }
  return r;
}

}  // namespace dqd::oracle
