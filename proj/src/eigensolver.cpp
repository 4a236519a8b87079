#include "dqd/eigensolver.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "dqd/model.hpp"

namespace dqd {

namespace {

constexpr double kTolerance = 1e-14;
constexpr int kMaxSweeps = 64;

double off_diagonal_norm(const Mat4& a) {
  double s = 0.0;
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j)
      if (i != j) s += a[i][j] * a[i][j];
  return std::sqrt(s);
}

void fix_sign(Vector<4>& v) {
  for (double x : v) {
    if (x == 0.0) continue;
    if (x < 0.0)
      for (double& y : v) y = -y;
    return;
  }
}

}  // namespace

double SpectrumResult::exchange_ghz() const { return exchange_mev() * units::ghz_per_mev; }

SpectrumResult eigensolve(const Mat4& h) {
  const double scale = frobenius_norm(h);
  if (!std::isfinite(scale)) throw std::invalid_argument("eigensolve: non-finite matrix");
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < i; ++j)
      if (std::abs(h[i][j] - h[j][i]) > 1e-13 * std::max(scale, 1e-300))
        throw std::invalid_argument("eigensolve: matrix is not symmetric");

  Mat4 a = h;
  Mat4 v = identity<4>();
  int sweeps = 0;
  while (sweeps < kMaxSweeps && off_diagonal_norm(a) > kTolerance * scale) {
    ++sweeps;
    for (std::size_t p = 0; p < 3; ++p) {
      for (std::size_t q = p + 1; q < 4; ++q) {
        if (a[p][q] == 0.0) continue;
        const double theta = (a[q][q] - a[p][p]) / (2.0 * a[p][q]);
        const double t = (theta >= 0.0 ? 1.0 : -1.0) /
                         (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        for (std::size_t k = 0; k < 4; ++k) {
          const double akp = a[k][p], akq = a[k][q];
          a[k][p] = c * akp - s * akq;
          a[k][q] = s * akp + c * akq;
        }
        for (std::size_t k = 0; k < 4; ++k) {
          const double apk = a[p][k], aqk = a[q][k];
          a[p][k] = c * apk - s * aqk;
          a[q][k] = s * apk + c * aqk;
        }
        for (std::size_t k = 0; k < 4; ++k) {
          const double vkp = v[k][p], vkq = v[k][q];
          v[k][p] = c * vkp - s * vkq;
          v[k][q] = s * vkp + c * vkq;
        }
      }
    }
  }

  std::array<Vector<4>, 4> vecs{};
  Vector<4> vals{};
  for (std::size_t k = 0; k < 4; ++k) {
    vals[k] = a[k][k];
    for (std::size_t i = 0; i < 4; ++i) vecs[k][i] = v[i][k];
    fix_sign(vecs[k]);
  }
  std::array<std::size_t, 4> order{0, 1, 2, 3};
  std::sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
    if (vals[x] != vals[y]) return vals[x] < vals[y];
    return vecs[x] > vecs[y];
  });

  SpectrumResult r;
  r.sweeps = sweeps;
  for (std::size_t k = 0; k < 4; ++k) {
    r.eigenvalues[k] = vals[order[k]];
    r.eigenvectors[k] = vecs[order[k]];
  }
  return r;
}

double max_relative_residual(const Mat4& h, const SpectrumResult& s) {
  const double scale = std::max(frobenius_norm(h), 1e-300);
  double worst = 0.0;
  for (std::size_t k = 0; k < 4; ++k) {
    const auto hv = h * s.eigenvectors[k];
    double r2 = 0.0;
    for (std::size_t i = 0; i < 4; ++i) {
      const double d = hv[i] - s.eigenvalues[k] * s.eigenvectors[k][i];
      r2 += d * d;
    }
    worst = std::max(worst, std::sqrt(r2) / scale);
  }
  return worst;
}

double orthonormality_defect(const SpectrumResult& s) {
  double worst = 0.0;
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j)
      worst = std::max(worst, std::abs(dot(s.eigenvectors[i], s.eigenvectors[j]) -
                                       (i == j ? 1.0 : 0.0)));
  return worst;
}

}  // namespace dqd
