#pragma once

#include <array>

#include "dqd/linalg.hpp"

namespace dqd {

/// Sorted eigen-decomposition of a real symmetric 4x4 matrix.
struct SpectrumResult {
  Vector<4> eigenvalues{};                ///< ascending, meV
  std::array<Vector<4>, 4> eigenvectors{};  ///< eigenvectors[k] belongs to eigenvalues[k]
  int sweeps = 0;

  /// J = E1 - E0.
  double exchange_mev() const { return eigenvalues[1] - eigenvalues[0]; }
  double exchange_ghz() const;
};

/// Cyclic Jacobi rotations until the off-diagonal Frobenius norm is at most
/// 1e-14 of the matrix norm. Eigenvectors are normalized with their first
/// nonzero component positive; equal eigenvalues are ordered by the
/// lexicographically larger eigenvector first.
/// Throws std::invalid_argument for a non-symmetric or non-finite input.
SpectrumResult eigensolve(const Mat4& h);

/// max_k |H v_k - E_k v_k| / |H|_F.
double max_relative_residual(const Mat4& h, const SpectrumResult& spectrum);

/// max |V^T V - I| over the eigenvector matrix.
double orthonormality_defect(const SpectrumResult& spectrum);

}  // namespace dqd
