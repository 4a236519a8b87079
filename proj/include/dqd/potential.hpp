#pragma once

#include <array>
#include <string>
#include <vector>

#include "dqd/model.hpp"

namespace dqd {

/// Quartic sum_k b_k (x - center)^k for one half of the double well.
struct PotentialPiece {
  double center_nm = 0.0;
  std::array<double, 5> coefficients{};  ///< b0 .. b4, meV / nm^k

  /// `order`-th derivative at x (order 0..4), from the coefficients.
  double derivative(double x, int order) const;
  double value(double x) const { return derivative(x, 0); }
};

/// Double-well confinement
///   V(x, y) = V_x(x) + (m* w0^2 / 2) y^2 + xi exp(-8 (x^2 + y^2) / a^2),
/// with V_x the well-1 quartic (centered at -a) for x < 0 and the well-2
/// quartic (centered at +a) for x >= 0. The pieces meet at x = 0 with value C
/// and zero slope; the second derivative jumps there.
class ConfinementPotential {
 public:
  explicit ConfinementPotential(const DeviceParams& params);

  const PotentialPiece& left() const { return left_; }
  const PotentialPiece& right() const { return right_; }
  const PotentialPiece& piece_at(double x) const { return x < 0.0 ? left_ : right_; }

  double transverse_coefficient() const { return transverse_; }  ///< m* w0^2 / 2
  double barrier_amplitude() const { return xi_; }
  double barrier_exponent() const { return barrier_exponent_; }  ///< 8 / a^2

  double longitudinal(double x) const { return piece_at(x).value(x); }
  double barrier(double x, double y) const;
  double operator()(double x, double y) const;

 private:
  PotentialPiece left_;
  PotentialPiece right_;
  double transverse_ = 0.0;
  double xi_ = 0.0;
  double barrier_exponent_ = 0.0;
};

double eval_potential(double x_nm, double y_nm, const DeviceParams& params);

struct ConstraintResidual {
  std::string name;
  double value = 0.0;
  double target = 0.0;
  double relative_residual = 0.0;  ///< |value - target| / natural scale
};

struct ConstraintReport {
  std::vector<ConstraintResidual> items;
  double max_relative_residual = 0.0;
  /// One-sided V_x'' at x = 0 from the well-1 and well-2 sides (xi excluded).
  double curvature_at_barrier_left = 0.0;
  double curvature_at_barrier_right = 0.0;
};

/// Residuals of the construction constraints on V_x (Gaussian excluded):
/// V_x(0)=C, V_x(-a)=-mu1, V_x(a)=-mu2, V_x'(0)=0, V_x'(+-a)=0,
/// V_x''(+-a)=m* w0^2. Derivatives come from the coefficients; x = 0 is
/// checked from both sides.
ConstraintReport potential_constraint_report(const DeviceParams& params);

}  // namespace dqd
