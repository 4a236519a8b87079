#include "dqd/special.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace dqd {

namespace {

constexpr double kSeriesLimit = 25.0;

double i0e_series(double x) {
  const double q = 0.25 * x * x;
  double term = 1.0;
  double sum = 1.0;
  for (int k = 1; k < 500; ++k) {
    term *= q / (static_cast<double>(k) * k);
    sum += term;
    if (term < 1e-17 * sum) break;
  }
  return sum * std::exp(-x);
}

double i0e_asymptotic(double x) {
  double term = 1.0;
  double sum = 1.0;
  for (int k = 1; k < 200; ++k) {
    const double odd = 2.0 * k - 1.0;
    const double next = term * odd * odd / (8.0 * k * x);
    if (next >= term) break;  // series has started to diverge
    term = next;
    sum += term;
    if (term < 1e-17 * sum) break;
  }
  return sum / std::sqrt(2.0 * std::numbers::pi * x);
}

}  // namespace

double i0e(double x) {
  if (!(x >= 0.0)) throw std::domain_error("i0e: argument must be non-negative");
  if (std::isinf(x)) return 0.0;
  return x < kSeriesLimit ? i0e_series(x) : i0e_asymptotic(x);
}

}  // namespace dqd
