#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>

namespace dqd {

template <std::size_t N>
using Vector = std::array<double, N>;

template <std::size_t N>
using Matrix = std::array<std::array<double, N>, N>;

using Mat2 = Matrix<2>;
using Mat4 = Matrix<4>;

template <std::size_t N>
constexpr Matrix<N> identity() {
  Matrix<N> m{};
  for (std::size_t i = 0; i < N; ++i) m[i][i] = 1.0;
  return m;
}

template <std::size_t N>
constexpr Matrix<N> operator*(const Matrix<N>& a, const Matrix<N>& b) {
  Matrix<N> c{};
  for (std::size_t i = 0; i < N; ++i)
    for (std::size_t k = 0; k < N; ++k)
      for (std::size_t j = 0; j < N; ++j) c[i][j] += a[i][k] * b[k][j];
  return c;
}

template <std::size_t N>
constexpr Vector<N> operator*(const Matrix<N>& a, const Vector<N>& v) {
  Vector<N> r{};
  for (std::size_t i = 0; i < N; ++i)
    for (std::size_t j = 0; j < N; ++j) r[i] += a[i][j] * v[j];
  return r;
}

template <std::size_t N>
constexpr Matrix<N> operator+(const Matrix<N>& a, const Matrix<N>& b) {
  Matrix<N> c = a;
  for (std::size_t i = 0; i < N; ++i)
    for (std::size_t j = 0; j < N; ++j) c[i][j] += b[i][j];
  return c;
}

template <std::size_t N>
constexpr Matrix<N> operator*(double s, const Matrix<N>& a) {
  Matrix<N> c = a;
  for (auto& row : c)
    for (auto& x : row) x *= s;
  return c;
}

template <std::size_t N>
constexpr Matrix<N> transpose(const Matrix<N>& a) {
  Matrix<N> t{};
  for (std::size_t i = 0; i < N; ++i)
    for (std::size_t j = 0; j < N; ++j) t[j][i] = a[i][j];
  return t;
}

template <std::size_t N>
double max_abs(const Matrix<N>& a) {
  double m = 0.0;
  for (const auto& row : a)
    for (double x : row) m = std::max(m, std::abs(x));
  return m;
}

template <std::size_t N>
double frobenius_norm(const Matrix<N>& a) {
  double s = 0.0;
  for (const auto& row : a)
    for (double x : row) s += x * x;
  return std::sqrt(s);
}

template <std::size_t N>
double dot(const Vector<N>& a, const Vector<N>& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < N; ++i) s += a[i] * b[i];
  return s;
}

}  // namespace dqd
