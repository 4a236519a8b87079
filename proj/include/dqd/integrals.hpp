#pragma once

#include <array>
#include <optional>

#include "dqd/linalg.hpp"
#include "dqd/model.hpp"
#include "dqd/orbitals.hpp"

namespace dqd {

/// Scaled Bessel used by the Coulomb closed forms. Replaceable so the
/// validation suite can run a negative control with a corrupted function.
using ScaledBessel = double (*)(double);

/// Two-body tensor <ij|kl> = \int\int phi_i(r1) phi_j(r2) e^2/(4 pi kappa |r1-r2|)
/// phi_k(r1) phi_l(r2), stored with 0-based indices.
struct CoulombTensor {
  std::array<double, 16> values{};

  double& operator()(int i, int j, int k, int l) { return values[((i * 2 + j) * 2 + k) * 2 + l]; }
  double operator()(int i, int j, int k, int l) const {
    return values[((i * 2 + j) * 2 + k) * 2 + l];
  }
};

/// One-body and two-body matrix elements in the non-orthogonal phi basis
/// (0-based indices; entry [0] is dot 1).
struct IntegralTables {
  Mat2 kinetic{};
  Mat2 potential{};
  Mat2 impurity{};  ///< zero when no impurity is present
  CoulombTensor coulomb{};
};

/// <phi_i| V |phi_j> split by origin so each piece can be checked alone.
struct PotentialElementTerms {
  double longitudinal_left = 0.0;   ///< well-1 quartic over x < 0
  double longitudinal_right = 0.0;  ///< well-2 quartic over x >= 0
  double transverse = 0.0;          ///< (m* w0^2 / 2) y^2
  double barrier = 0.0;             ///< xi exp(-8 r^2 / a^2)

  double total() const { return longitudinal_left + longitudinal_right + transverse + barrier; }
};

/// Dot indices below are 1-based (i, j, k, l in {1, 2}).

/// <phi_i| -hbar^2/(2m*) nabla^2 |phi_j>
///   = (hbar w0 / 2) S_ij (1 - |R_i - R_j|^2 / (4 a_B^2)).
double kinetic_element(int i, int j, const OrbitalBasis& basis, const DerivedConstants& dc);

/// Closed form of <phi_i|V|phi_j>. The quartic halves use half-line Gaussian
/// moments up to fourth order (error-function based), the barrier uses the
/// Gaussian product rule, the transverse term the second moment.
PotentialElementTerms potential_element_terms(int i, int j, const DeviceParams& params,
                                              const OrbitalBasis& basis);
double potential_element(int i, int j, const DeviceParams& params, const OrbitalBasis& basis);

/// <ij|kl> in closed form. Densities phi_i phi_k (electron 1) and
/// phi_j phi_l (electron 2) are Gaussians, so
///   <ij|kl> = e^2/(4 sqrt(2 pi) kappa a_B)
///             exp(-|R_i-R_k|^2/(4a_B^2) - |R_j-R_l|^2/(4a_B^2)) i0e(A),
///   A = |R_i + R_k - R_j - R_l|^2 / (16 a_B^2).
/// Only the scaled Bessel is ever formed.
double coulomb_element(int i, int j, int k, int l, const OrbitalBasis& basis,
                       double coulomb_scale, ScaledBessel bessel = nullptr);

/// <phi_i| -q e^2/(4 pi kappa |r - R_c|) |phi_j>
///   = -q e^2/(4 sqrt(pi) kappa a_B) S_ij i0e(A),  A = |R_i + R_j - 2R_c|^2/(8 a_B^2).
/// Positive (repulsive) for q < 0.
double impurity_element(int i, int j, const Impurity& impurity, const OrbitalBasis& basis,
                        double coulomb_scale, ScaledBessel bessel = nullptr);

IntegralTables build_tables(const DeviceParams& params, const OrbitalBasis& basis,
                            const std::optional<Impurity>& impurity,
                            ScaledBessel bessel = nullptr);

}  // namespace dqd
