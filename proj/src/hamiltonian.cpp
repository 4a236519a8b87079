#include "dqd/hamiltonian.hpp"

#include <bit>
#include <stdexcept>
#include <string>
#include <utility>

namespace dqd {

namespace {

/// Spin orbital index: 2 * orbital + spin, orbital 0 = dot 1, spin 0 = up.
constexpr int mode(int orbital, int spin) { return 2 * orbital + spin; }

/// Each basis state as the ordered creation pair (p, q) in c+_p c+_q |0>.
constexpr std::array<std::pair<int, int>, 4> kBasis{{
    {mode(1, 0), mode(1, 1)},  // |S2>
    {mode(1, 0), mode(0, 1)},  // |A>
    {mode(0, 0), mode(1, 1)},  // |B>
    {mode(0, 0), mode(0, 1)},  // |S1>
}};

/// Determinant c+_{m1} c+_{m2} ... |0> with m1 < m2 < ..., times amplitude.
struct Determinant {
  unsigned mask = 0;
  double amplitude = 0.0;
};

int ordering_sign(unsigned mask, int p) {
  return (std::popcount(mask & ((1u << p) - 1u)) % 2 == 0) ? 1 : -1;
}

bool annihilate(Determinant& d, int p) {
  if (!(d.mask & (1u << p))) return false;
  d.amplitude *= ordering_sign(d.mask, p);
  d.mask ^= 1u << p;
  return true;
}

bool create(Determinant& d, int p) {
  if (d.mask & (1u << p)) return false;
  d.amplitude *= ordering_sign(d.mask, p);
  d.mask |= 1u << p;
  return true;
}

Determinant basis_state(int index) {
  const auto [p, q] = kBasis[index];
  return {(1u << p) | (1u << q), p < q ? 1.0 : -1.0};
}

double project(const Determinant& bra, const Determinant& ket) {
  return bra.mask == ket.mask ? bra.amplitude * ket.amplitude : 0.0;
}

}  // namespace

std::string_view mode_name(AssemblyMode mode) {
  return mode == AssemblyMode::paper_literal ? "paper" : "full";
}

AssemblyMode parse_mode(std::string_view text) {
  if (text == "paper") return AssemblyMode::paper_literal;
  if (text == "full") return AssemblyMode::full_slater_condon;
  throw std::invalid_argument("unknown assembly mode '" + std::string(text) +
                              "' (expected paper or full)");
}

HubbardParams hubbard_parameters(const DeviceParams& params, const IntegralTables& tables,
                                 const Mat2& m, bool with_impurity) {
  const Mat2 h = m * (tables.kinetic + tables.potential) * m;
  const Mat2 w = with_impurity ? m * tables.impurity * m : Mat2{};

  HubbardParams hp;
  hp.t = -h[0][1];
  hp.mu1 = params.hbar_omega0_mev - h[0][0];
  hp.mu2 = params.hbar_omega0_mev - h[1][1];
  hp.z1 = w[0][0];
  hp.z2 = w[1][1];
  hp.z12 = w[0][1];

  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      hp.one_body[i][j] = h[i][j] + w[i][j] - (i == j ? params.hbar_omega0_mev : 0.0);

  // Transform one index at a time.
  CoulombTensor a = tables.coulomb, b;
  for (int pass = 0; pass < 4; ++pass) {
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j)
        for (int k = 0; k < 2; ++k)
          for (int l = 0; l < 2; ++l) {
            std::array<int, 4> idx{i, j, k, l};
            double s = 0.0;
            for (int r = 0; r < 2; ++r) {
              auto src = idx;
              src[pass] = r;
              s += m[idx[pass]][r] * a(src[0], src[1], src[2], src[3]);
            }
            b(i, j, k, l) = s;
          }
    a = b;
  }
  hp.coulomb = a;
  hp.u1 = a(0, 0, 0, 0);
  hp.u2 = a(1, 1, 1, 1);
  hp.u12 = a(0, 1, 0, 1);
  hp.exchange = a(0, 1, 1, 0);
  hp.correlated1 = a(0, 0, 0, 1);
  hp.correlated2 = a(1, 1, 1, 0);
  return hp;
}

Mat4 slater_condon_matrix(const Mat2& h, const CoulombTensor& v) {
  Mat4 out{};
  for (int b = 0; b < 4; ++b) {
    const Determinant ket = basis_state(b);
    for (int a = 0; a < 4; ++a) {
      const Determinant bra = basis_state(a);
      double e = 0.0;
      for (int p = 0; p < 2; ++p)
        for (int q = 0; q < 2; ++q)
          for (int s = 0; s < 2; ++s) {
            Determinant d = ket;
            if (annihilate(d, mode(q, s)) && create(d, mode(p, s))) e += h[p][q] * project(bra, d);
          }
      for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
          for (int k = 0; k < 2; ++k)
            for (int l = 0; l < 2; ++l)
              for (int s = 0; s < 2; ++s)
                for (int r = 0; r < 2; ++r) {
                  Determinant d = ket;
                  if (annihilate(d, mode(k, s)) && annihilate(d, mode(l, r)) &&
                      create(d, mode(j, r)) && create(d, mode(i, s)))
                    e += 0.5 * v(i, j, k, l) * project(bra, d);
                }
      out[a][b] = e;
    }
  }
  return out;
}

Mat4 assemble_matrix(const HubbardParams& hp, AssemblyMode mode) {
  if (mode == AssemblyMode::full_slater_condon) return slater_condon_matrix(hp.one_body, hp.coulomb);
  Mat4 h{};
  const double hop = -hp.t + hp.z12;
  const double mid = hp.u12 - hp.mu1 - hp.mu2 + hp.z1 + hp.z2;
  h[0][0] = hp.u2 - 2.0 * hp.mu2 + 2.0 * hp.z2;
  h[1][1] = mid;
  h[2][2] = mid;
  h[3][3] = hp.u1 - 2.0 * hp.mu1 + 2.0 * hp.z1;
  h[0][1] = h[1][0] = hop;
  h[0][2] = h[2][0] = hop;
  h[1][3] = h[3][1] = hop;
  h[2][3] = h[3][2] = hop;
  return h;
}

PointResult solve_point(const DeviceParams& params, const std::optional<Impurity>& impurity,
                        AssemblyMode mode, ScaledBessel bessel) {
  require_valid(params);
  const OrbitalBasis basis = make_basis(params);
  const IntegralTables tables = build_tables(params, basis, impurity, bessel);
  PointResult r;
  r.hubbard = hubbard_parameters(params, tables, basis.orthogonalizer, impurity.has_value());
  r.hamiltonian = assemble_matrix(r.hubbard, mode);
  r.spectrum = eigensolve(r.hamiltonian);
  return r;
}

ExchangeValue exchange_J(const DeviceParams& params, const std::optional<Impurity>& impurity,
                         AssemblyMode mode) {
  const auto r = solve_point(params, impurity, mode);
  return {r.j_mev(), r.j_ghz()};
}

}  // namespace dqd
