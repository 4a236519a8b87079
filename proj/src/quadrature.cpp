#include "dqd/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <boost/math/quadrature/gauss.hpp>

namespace dqd::quadrature {

namespace {

template <unsigned N>
Rule expand_boost_rule() {
  // Boost stores the non-negative half of a symmetric rule.
  using G = boost::math::quadrature::gauss<double, N>;
  const auto& x = G::abscissa();
  const auto& w = G::weights();
  Rule r;
  for (std::size_t i = x.size(); i-- > 0;) {
    if (x[i] == 0.0) continue;
    r.nodes.push_back(-x[i]);
    r.weights.push_back(w[i]);
  }
  for (std::size_t i = 0; i < x.size(); ++i) {
    r.nodes.push_back(x[i]);
    r.weights.push_back(w[i]);
  }
  return r;
}

}  // namespace

Rule gauss_legendre(int n) {
  switch (n) {
    case 10: return expand_boost_rule<10>();
    case 15: return expand_boost_rule<15>();
    case 20: return expand_boost_rule<20>();
    case 30: return expand_boost_rule<30>();
    case 40: return expand_boost_rule<40>();
    default: throw std::invalid_argument("gauss_legendre: unsupported order");
  }
}

Rule composite(std::span<const double> bps, int n) {
  std::vector<double> b(bps.begin(), bps.end());
  std::sort(b.begin(), b.end());
  b.erase(std::unique(b.begin(), b.end()), b.end());
  const Rule base = gauss_legendre(n);
  Rule r;
  r.nodes.reserve(base.nodes.size() * b.size());
  r.weights.reserve(base.nodes.size() * b.size());
  for (std::size_t k = 0; k + 1 < b.size(); ++k) {
    const double half = 0.5 * (b[k + 1] - b[k]);
    const double mid = 0.5 * (b[k + 1] + b[k]);
    for (std::size_t i = 0; i < base.nodes.size(); ++i) {
      r.nodes.push_back(mid + half * base.nodes[i]);
      r.weights.push_back(half * base.weights[i]);
    }
  }
  return r;
}

std::vector<double> breakpoints(double lo, double hi, double max_width,
                                std::span<const double> forced) {
  if (!(hi > lo) || !(max_width > 0.0)) throw std::invalid_argument("breakpoints: bad interval");
  std::vector<double> anchors{lo, hi};
  for (double f : forced)
    if (f > lo && f < hi) anchors.push_back(f);
  std::sort(anchors.begin(), anchors.end());
  std::vector<double> out{anchors.front()};
  for (std::size_t k = 0; k + 1 < anchors.size(); ++k) {
    const double len = anchors[k + 1] - anchors[k];
    const int pieces = std::max(1, static_cast<int>(std::ceil(len / max_width)));
    for (int j = 1; j <= pieces; ++j) out.push_back(anchors[k] + len * j / pieces);
  }
  out.back() = hi;
  return out;
}

Rule periodic_trapezoid(double lo, double period, int n) {
  if (n < 1) throw std::invalid_argument("periodic_trapezoid: n must be positive");
  Rule r;
  const double h = period / n;
  for (int i = 0; i < n; ++i) {
    r.nodes.push_back(lo + h * i);
    r.weights.push_back(h);
  }
  return r;
}

}  // namespace dqd::quadrature
