#pragma once

#include <array>
#include <optional>
#include <stdexcept>
#include <string_view>

#include "dqd/model.hpp"

// Brute-force numeric integration of the same matrix elements the closed
// forms produce. Everything here is built from the orbital definition and
// the potential as black boxes; no closed-form integral, no Bessel function.
//
// One-body elements: tensor composite Gauss-Legendre in (x, y) with panel
// edges forced onto x = 0 (kink of V) and onto the barrier region.
//
// Impurity element: polar coordinates centred on R_c, where the Jacobian r
// cancels the 1/r singularity.
//
// Two-body elements: with u = r1 - r2 the integral becomes
//   \int d^2u C(u) / |u|,  C(u) = \int d^2R rho_1(R + u) rho_2(R),
// and rho_1 = phi_i phi_k, rho_2 = phi_j phi_l factorize in x and y, so C is
// a product of two 1D convolutions, each computed by Gauss-Legendre and
// tabulated on Chebyshev panels. The outer integral is done in polar
// coordinates around u = 0, which again removes the singularity.
//
// Each result is computed at two resolutions; their difference is the
// reported error estimate.

namespace dqd::oracle {

enum class ElementKind { overlap, kinetic, potential, impurity, coulomb };

std::string_view kind_name(ElementKind kind);

struct Result {
  double value = 0.0;          ///< meV (dimensionless for overlap)
  double error_estimate = 0.0; ///< |fine - coarse|
};

/// Thrown when the error estimate exceeds the requested tolerance.
class Refused : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Request {
  ElementKind kind = ElementKind::overlap;
  std::array<int, 4> indices{1, 1, 1, 1};  ///< 1-based; one-body kinds use the first two
  std::optional<Impurity> impurity;        ///< required for ElementKind::impurity
  double relative_tolerance = 1e-9;
  /// Absolute floor (in result units) under which the relative test is
  /// replaced by an absolute one; for elements that vanish identically.
  double absolute_floor = 1e-14;
};

Result quadrature_oracle(const Request& request, const DeviceParams& params);

}  // namespace dqd::oracle
