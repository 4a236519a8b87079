#pragma once

#include <span>
#include <vector>

namespace dqd::quadrature {

struct Rule {
  std::vector<double> nodes;
  std::vector<double> weights;

  template <class F>
  double integrate(F&& f) const {
    double s = 0.0;
    for (std::size_t i = 0; i < nodes.size(); ++i) s += weights[i] * f(nodes[i]);
    return s;
  }
};

/// n-point Gauss-Legendre rule on [-1, 1]; n in {10, 15, 20, 30, 40}.
Rule gauss_legendre(int n);

/// Gauss-Legendre with `n` points on every interval [b_k, b_{k+1}] of the
/// sorted breakpoint list. Duplicate breakpoints are ignored.
Rule composite(std::span<const double> breakpoints, int n);

/// Breakpoints covering [lo, hi] with every interval at most `max_width`
/// long, always including each value in `forced` that lies inside.
std::vector<double> breakpoints(double lo, double hi, double max_width,
                                std::span<const double> forced = {});

/// Trapezoid rule for a periodic integrand on [lo, lo + period).
Rule periodic_trapezoid(double lo, double period, int n);

}  // namespace dqd::quadrature
