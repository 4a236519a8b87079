#include "dqd/orbitals.hpp"

#include <numbers>
#include <stdexcept>
#include <string>

namespace dqd {

OrbitalBasis make_basis(std::array<Vec2, 2> centers, double radius_nm) {
  if (!(radius_nm > 0.0)) throw std::invalid_argument("make_basis: a_B must be positive");
  OrbitalBasis b;
  b.centers = centers;
  b.radius_nm = radius_nm;
  b.overlap = std::exp(-norm2(centers[0] - centers[1]) / (4.0 * radius_nm * radius_nm));
  b.orthogonalizer = orthonormalize(overlap_matrix(b));
  return b;
}

OrbitalBasis make_basis(const DeviceParams& params) {
  const auto d = derive_constants(params);
  return make_basis({params.center1(), params.center2()}, d.fock_darwin_radius_nm);
}

double fock_darwin_eval(int dot, Vec2 r, const OrbitalBasis& basis) {
  if (dot != 1 && dot != 2) throw std::out_of_range("fock_darwin_eval: dot index must be 1 or 2");
  const double ab = basis.radius_nm;
  const double d2 = norm2(r - basis.centers[dot - 1]);
  return std::exp(-d2 / (2.0 * ab * ab)) / (ab * std::sqrt(std::numbers::pi));
}

double orthonormal_eval(int dot, Vec2 r, const OrbitalBasis& basis) {
  if (dot != 1 && dot != 2) throw std::out_of_range("orthonormal_eval: dot index must be 1 or 2");
  const auto& m = basis.orthogonalizer;
  return m[dot - 1][0] * fock_darwin_eval(1, r, basis) +
         m[dot - 1][1] * fock_darwin_eval(2, r, basis);
}

Mat2 overlap_matrix(const OrbitalBasis& basis) {
  return {{{1.0, basis.overlap}, {basis.overlap, 1.0}}};
}

Mat2 orthonormalize(const Mat2& o) {
  if (o[0][0] != 1.0 || o[1][1] != 1.0 || o[0][1] != o[1][0]) {
    throw std::domain_error("orthonormalize: expected a symmetric overlap with unit diagonal");
  }
  const double s = o[0][1];
  if (!(std::abs(s) < 1.0)) {
    throw std::domain_error("orthonormalize: overlap |s| = " + std::to_string(std::abs(s)) +
                            " >= 1, orbitals are linearly dependent");
  }
  const double plus = 1.0 / std::sqrt(1.0 + s);
  const double minus = 1.0 / std::sqrt(1.0 - s);
  const double alpha = 0.5 * (plus + minus);
  const double beta = 0.5 * (plus - minus);
  return {{{alpha, beta}, {beta, alpha}}};
}

}  // namespace dqd
