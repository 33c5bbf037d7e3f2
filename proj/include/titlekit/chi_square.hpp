#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace titlekit::stats {

namespace detail {

constexpr double kEps = 1e-16;
constexpr int kMaxIter = 10000;

inline double log_prefix(double a, double x) { return a * std::log(x) - x - std::lgamma(a); }

// P(a, x) by series; converges fast for x < a + 1.
inline double gamma_p_series(double a, double x) {
  double term = 1.0 / a, sum = term;
  for (int n = 1; n < kMaxIter; ++n) {
    term *= x / (a + n);
    sum += term;
    if (std::abs(term) < std::abs(sum) * kEps) break;
  }
  return sum * std::exp(log_prefix(a, x));
}

// Q(a, x) by modified Lentz continued fraction; for x >= a + 1.
inline double gamma_q_fraction(double a, double x) {
  constexpr double tiny = std::numeric_limits<double>::min() / kEps;
  double b = x + 1.0 - a, c = 1.0 / tiny, d = 1.0 / b, h = d;
  for (int i = 1; i < kMaxIter; ++i) {
    double an = -i * (i - a);
    b += 2.0;
    d = an * d + b;
    if (std::abs(d) < tiny) d = tiny;
    c = b + an / c;
    if (std::abs(c) < tiny) c = tiny;
    d = 1.0 / d;
    double delta = d * c;
    h *= delta;
    if (std::abs(delta - 1.0) < kEps) break;
  }
  return std::exp(log_prefix(a, x)) * h;
}

inline void check_domain(double a, double x) {
  if (!(a > 0.0) || !(x >= 0.0)) throw std::domain_error("incomplete gamma: need a > 0, x >= 0");
}

}  // namespace detail

/// Regularized lower incomplete gamma P(a, x).
inline double regularized_gamma_p(double a, double x) {
  detail::check_domain(a, x);
  if (x == 0.0) return 0.0;
  return x < a + 1.0 ? detail::gamma_p_series(a, x) : 1.0 - detail::gamma_q_fraction(a, x);
}

/// Regularized upper incomplete gamma Q(a, x) = 1 - P(a, x).
inline double regularized_gamma_q(double a, double x) {
  detail::check_domain(a, x);
  if (x == 0.0) return 1.0;
  return x < a + 1.0 ? 1.0 - detail::gamma_p_series(a, x) : detail::gamma_q_fraction(a, x);
}

inline double chi_square_cdf(double x, double df) { return x <= 0.0 ? 0.0 : regularized_gamma_p(df / 2.0, x / 2.0); }

/// Upper-tail probability, i.e. the p-value of a statistic x.
inline double chi_square_sf(double x, double df) { return x <= 0.0 ? 1.0 : regularized_gamma_q(df / 2.0, x / 2.0); }

/// Inverse CDF by bisection.
inline double chi_square_quantile(double p, double df) {
  if (!(p > 0.0 && p < 1.0) || !(df > 0.0)) throw std::domain_error("chi_square_quantile: need 0 < p < 1, df > 0");
  double lo = 0.0, hi = std::max(1.0, df);
  while (chi_square_cdf(hi, df) < p) hi *= 2.0;
  for (int i = 0; i < 200 && hi - lo > 1e-14 * hi; ++i) {
    double mid = 0.5 * (lo + hi);
    (chi_square_cdf(mid, df) < p ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace titlekit::stats
