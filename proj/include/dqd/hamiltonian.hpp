#pragma once

#include <array>
#include <optional>
#include <string_view>

#include "dqd/eigensolver.hpp"
#include "dqd/integrals.hpp"
#include "dqd/linalg.hpp"
#include "dqd/model.hpp"
#include "dqd/orbitals.hpp"

namespace dqd {

/// Two-electron basis order: |S2> = c+_{2up} c+_{2dn}|0>, |A> = c+_{2up} c+_{1dn}|0>,
/// |B> = c+_{1up} c+_{2dn}|0>, |S1> = c+_{1up} c+_{1dn}|0>.
/// The S_z = 0 triplet is (0, 1, -1, 0)/sqrt(2).
enum class AssemblyMode {
  paper_literal,      ///< on-site, inter-site and hopping entries only
  full_slater_condon  ///< every one- and two-body matrix element
};

std::string_view mode_name(AssemblyMode mode);
/// Accepts "paper" or "full"; throws std::invalid_argument otherwise.
AssemblyMode parse_mode(std::string_view text);

/// Hubbard-model parameters in the orthonormal psi basis.
struct HubbardParams {
  double t = 0.0;    ///< hopping, -h12 of the clean one-body matrix
  double u1 = 0.0;   ///< <11|11>
  double u2 = 0.0;   ///< <22|22>
  double u12 = 0.0;  ///< direct <12|12>
  double mu1 = 0.0;  ///< hbar w0 - h11
  double mu2 = 0.0;  ///< hbar w0 - h22
  double z1 = 0.0;   ///< impurity W11
  double z2 = 0.0;   ///< impurity W22
  double z12 = 0.0;  ///< impurity W12

  double exchange = 0.0;      ///< <12|21>
  double correlated1 = 0.0;   ///< <11|12>
  double correlated2 = 0.0;   ///< <22|21>

  /// Clean one-body matrix h = M (T + V) M shifted by -hbar w0, plus W;
  /// its diagonal is -mu_i + z_i and its off-diagonal -t + z12.
  Mat2 one_body{};
  /// Two-body tensor transformed by M on all four indices (0-based).
  CoulombTensor coulomb{};

  double delta_u() const { return u1 - u12; }
  /// Effective detuning mu1 - mu2 read off the well depths.
  double detuning() const { return mu1 - mu2; }
};

/// Transforms the tables to the orthonormal basis and reads off the
/// Hubbard parameters. `with_impurity` selects whether tables.impurity is
/// used for the z terms.
HubbardParams hubbard_parameters(const DeviceParams& params, const IntegralTables& tables,
                                 const Mat2& orthogonalizer, bool with_impurity);

/// paper_literal: diagonal {U2 - 2mu2 + 2z2, U12 - mu1 - mu2 + z1 + z2 (twice),
/// U1 - 2mu1 + 2z1}, all four hopping entries -t + z12, zeros elsewhere.
/// full_slater_condon: second-quantized Hamiltonian with hp.one_body and
/// hp.coulomb evaluated between the basis states.
Mat4 assemble_matrix(const HubbardParams& hp, AssemblyMode mode);

/// <a|H|b> over the basis above for
///   H = sum h_pq c+_{p s} c_{q s} + 1/2 sum <ij|kl> c+_{i s} c+_{j r} c_{l r} c_{k s}.
Mat4 slater_condon_matrix(const Mat2& one_body, const CoulombTensor& coulomb);

struct PointResult {
  HubbardParams hubbard;
  Mat4 hamiltonian{};
  SpectrumResult spectrum;

  double j_mev() const { return spectrum.exchange_mev(); }
  double j_ghz() const { return spectrum.exchange_ghz(); }
};

/// Full pipeline for one device point. Validates params first
/// (std::invalid_argument on failure).
PointResult solve_point(const DeviceParams& params, const std::optional<Impurity>& impurity,
                        AssemblyMode mode, ScaledBessel bessel = nullptr);

struct ExchangeValue {
  double mev = 0.0;
  double ghz = 0.0;
};

ExchangeValue exchange_J(const DeviceParams& params, const std::optional<Impurity>& impurity,
                         AssemblyMode mode);

}  // namespace dqd
