#pragma once

namespace dqd {

/// Exponentially scaled modified Bessel function exp(-x) I_0(x), x >= 0.
///
/// Ascending power series below x = 25 (all terms positive), asymptotic
/// Hankel series above, truncated at its smallest term. Relative accuracy is
/// better than 1e-13 everywhere. The scaled form never overflows, unlike
/// I_0 itself which leaves double range near x = 713.
///
/// Throws std::domain_error for negative or NaN input.
double i0e(double x);

}  // namespace dqd
