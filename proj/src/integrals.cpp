#include "dqd/integrals.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "dqd/potential.hpp"
#include "dqd/special.hpp"

namespace dqd {

namespace {

void check_index(int i) {
  if (i != 1 && i != 2) throw std::out_of_range("integrals: dot index must be 1 or 2");
}

Vec2 center(const OrbitalBasis& b, int i) { return b.centers[i - 1]; }

/// exp(-|R_i - R_j|^2 / (4 a_B^2)): overlap of phi_i and phi_j.
double pair_overlap(const OrbitalBasis& b, int i, int j) {
  return std::exp(-norm2(center(b, i) - center(b, j)) / (4.0 * b.radius_nm * b.radius_nm));
}

/// Upper-tail moments M_m = \int_L^\infty z^m n(z) dz, m = 0..4, for the
/// centred normal density n with variance sigma2.
std::array<double, 5> upper_moments(double lower, double sigma2) {
  const double sigma = std::sqrt(sigma2);
  const double density =
      std::exp(-lower * lower / (2.0 * sigma2)) / (sigma * std::sqrt(2.0 * std::numbers::pi));
  std::array<double, 5> m{};
  m[0] = 0.5 * std::erfc(lower / (sigma * std::numbers::sqrt2));
  m[1] = sigma2 * density;
  double lpow = 1.0;  // L^{n-1}
  for (int n = 2; n <= 4; ++n) {
    lpow *= lower;
    m[n] = sigma2 * (lpow * density + (n - 1) * m[n - 2]);
  }
  return m;
}

/// \int over a half line of sum_k b_k (z + shift)^k n(z) dz, given the
/// half-line moments of z.
double polynomial_expectation(const PotentialPiece& piece, double shift,
                              const std::array<double, 5>& moments) {
  static constexpr double binom[5][5] = {
      {1, 0, 0, 0, 0}, {1, 1, 0, 0, 0}, {1, 2, 1, 0, 0}, {1, 3, 3, 1, 0}, {1, 4, 6, 4, 1}};
  double total = 0.0;
  for (int k = 0; k <= 4; ++k) {
    double sum = 0.0;
    for (int m = 0; m <= k; ++m) sum += binom[k][m] * std::pow(shift, k - m) * moments[m];
    total += piece.coefficients[k] * sum;
  }
  return total;
}

/// E[exp(-b u^2)] for u ~ Normal(mean, sigma2).
double gaussian_expectation(double b, double mean, double sigma2) {
  const double g = 1.0 + 2.0 * b * sigma2;
  return std::exp(-b * mean * mean / g) / std::sqrt(g);
}

}  // namespace

double kinetic_element(int i, int j, const OrbitalBasis& b, const DerivedConstants& dc) {
  check_index(i);
  check_index(j);
  const double ab2 = b.radius_nm * b.radius_nm;
  const double d2 = norm2(center(b, i) - center(b, j));
  return dc.kinetic_scale_mev_nm2 / ab2 * pair_overlap(b, i, j) * (1.0 - d2 / (4.0 * ab2));
}

PotentialElementTerms potential_element_terms(int i, int j, const DeviceParams& params,
                                              const OrbitalBasis& b) {
  check_index(i);
  check_index(j);
  const ConfinementPotential v(params);
  // phi_i phi_j = S_ij * (2D normal density, mean c, variance a_B^2/2 per axis).
  const double s_ij = pair_overlap(b, i, j);
  const Vec2 c = 0.5 * (center(b, i) + center(b, j));
  const double sigma2 = 0.5 * b.radius_nm * b.radius_nm;

  // With z = x - c.x the split point x = 0 sits at z = -c.x.
  const double split = -c.x;
  const auto upper = upper_moments(split, sigma2);
  auto lower = upper_moments(-split, sigma2);
  for (int m = 1; m <= 4; m += 2) lower[m] = -lower[m];

  PotentialElementTerms t;
  t.longitudinal_left = s_ij * polynomial_expectation(v.left(), c.x - v.left().center_nm, lower);
  t.longitudinal_right =
      s_ij * polynomial_expectation(v.right(), c.x - v.right().center_nm, upper);
  t.transverse = s_ij * v.transverse_coefficient() * (c.y * c.y + sigma2);
  const double bx = gaussian_expectation(v.barrier_exponent(), c.x, sigma2);
  const double by = gaussian_expectation(v.barrier_exponent(), c.y, sigma2);
  t.barrier = s_ij * v.barrier_amplitude() * bx * by;
  return t;
}

double potential_element(int i, int j, const DeviceParams& params, const OrbitalBasis& basis) {
  return potential_element_terms(i, j, params, basis).total();
}

double coulomb_element(int i, int j, int k, int l, const OrbitalBasis& b, double coulomb_scale,
                       ScaledBessel bessel) {
  for (int idx : {i, j, k, l}) check_index(idx);
  if (bessel == nullptr) bessel = &i0e;
  const double ab2 = b.radius_nm * b.radius_nm;
  const Vec2 ri = center(b, i), rj = center(b, j), rk = center(b, k), rl = center(b, l);
  const double prefactor = coulomb_scale * std::sqrt(std::numbers::pi / 2.0) / b.radius_nm;
  const double damping = std::exp(-(norm2(ri - rk) + norm2(rj - rl)) / (4.0 * ab2));
  const double arg = norm2(ri + rk - rj - rl) / (16.0 * ab2);
  return prefactor * damping * bessel(arg);
}

double impurity_element(int i, int j, const Impurity& impurity, const OrbitalBasis& b,
                        double coulomb_scale, ScaledBessel bessel) {
  check_index(i);
  check_index(j);
  if (bessel == nullptr) bessel = &i0e;
  const double ab2 = b.radius_nm * b.radius_nm;
  const double prefactor =
      -impurity.charge_e * coulomb_scale * std::sqrt(std::numbers::pi) / b.radius_nm;
  const double arg =
      norm2(center(b, i) + center(b, j) - 2.0 * impurity.position_nm) / (8.0 * ab2);
  return prefactor * pair_overlap(b, i, j) * bessel(arg);
}

IntegralTables build_tables(const DeviceParams& params, const OrbitalBasis& basis,
                            const std::optional<Impurity>& impurity, ScaledBessel bessel) {
  const auto dc = derive_constants(params);
  IntegralTables t;
  for (int i = 1; i <= 2; ++i) {
    for (int j = i; j <= 2; ++j) {
      t.kinetic[i - 1][j - 1] = t.kinetic[j - 1][i - 1] = kinetic_element(i, j, basis, dc);
      t.potential[i - 1][j - 1] = t.potential[j - 1][i - 1] =
          potential_element(i, j, params, basis);
      if (impurity) {
        t.impurity[i - 1][j - 1] = t.impurity[j - 1][i - 1] =
            impurity_element(i, j, *impurity, basis, dc.coulomb_scale_mev_nm, bessel);
      }
    }
  }
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      for (int k = 0; k < 2; ++k)
        for (int l = 0; l < 2; ++l)
          t.coulomb(i, j, k, l) = coulomb_element(i + 1, j + 1, k + 1, l + 1, basis,
                                                  dc.coulomb_scale_mev_nm, bessel);
  return t;
}

}  // namespace dqd
