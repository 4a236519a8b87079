#pragma once

#include <array>

#include "dqd/linalg.hpp"
#include "dqd/model.hpp"

namespace dqd {

/// Fock-Darwin ground orbitals phi_1, phi_2 centred on the two wells, and
/// the symmetric orthogonalizer M = O^{-1/2} giving psi = M phi.
/// Depends only on geometry and a_B, never on the control knobs.
struct OrbitalBasis {
  std::array<Vec2, 2> centers{};
  double radius_nm = 0.0;  ///< a_B
  double overlap = 0.0;    ///< s = <phi_1|phi_2>
  Mat2 orthogonalizer{};   ///< M = O^{-1/2}
};

/// Throws std::domain_error when the two orbitals are linearly dependent.
OrbitalBasis make_basis(const DeviceParams& params);
OrbitalBasis make_basis(std::array<Vec2, 2> centers, double radius_nm);

/// phi_i(r) = exp(-|r - R_i|^2 / (2 a_B^2)) / (a_B sqrt(pi)), i in {1, 2}.
double fock_darwin_eval(int dot, Vec2 r, const OrbitalBasis& basis);

/// psi_i(r) = sum_j M_ij phi_j(r).
double orthonormal_eval(int dot, Vec2 r, const OrbitalBasis& basis);

/// Unit diagonal, off-diagonal exp(-|R_1 - R_2|^2 / (4 a_B^2)).
Mat2 overlap_matrix(const OrbitalBasis& basis);

/// O^{-1/2} for O = [[1, s], [s, 1]] in closed form:
///   alpha = (1/sqrt(1+s) + 1/sqrt(1-s)) / 2,
///   beta  = (1/sqrt(1+s) - 1/sqrt(1-s)) / 2.
/// Throws std::domain_error if |s| >= 1 or the diagonal is not unity.
Mat2 orthonormalize(const Mat2& overlap);

}  // namespace dqd
