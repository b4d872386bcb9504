#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <vector>

namespace bf {

// Two-sided Kolmogorov-Smirnov statistic of `sample` against a continuous CDF.
inline double ks_statistic(std::vector<double> sample, const std::function<double(double)>& cdf) {
  std::sort(sample.begin(), sample.end());
  const double n = static_cast<double>(sample.size());
  double d = 0.0;
  for (std::size_t i = 0; i < sample.size(); ++i) {
    const double f = cdf(sample[i]);
    d = std::max({d, (static_cast<double>(i) + 1.0) / n - f, f - static_cast<double>(i) / n});
  }
  return d;
}

// Survival function of the Kolmogorov distribution, Q(t) = 2 sum (-1)^(k-1) exp(-2 k^2 t^2).
inline double kolmogorov_q(double t) {
  if (t < 0.2) return 1.0;
  double sum = 0.0;
  for (int k = 1; k <= 100; ++k) {
    const double term = std::exp(-2.0 * k * k * t * t);
    sum += (k % 2 ? 1.0 : -1.0) * term;
    if (term < 1e-17) break;
  }
  return std::clamp(2.0 * sum, 0.0, 1.0);
}

// Asymptotic p-value with Stephens' small-sample correction.
inline double ks_pvalue(double d, std::size_t n) {
  const double sn = std::sqrt(static_cast<double>(n));
  return kolmogorov_q((sn + 0.12 + 0.11 / sn) * d);
}

inline double exponential_cdf(double x, double lambda) { return x <= 0.0 ? 0.0 : -std::expm1(-lambda * x); }

// P(X <= x) for X ~ Erlang(2, lambda).
inline double erlang2_cdf(double x, double lambda) {
  if (x <= 0.0) return 0.0;
  return 1.0 - (1.0 + lambda * x) * std::exp(-lambda * x);
}

// Upper bound on P(d(B, B') > eps) for n bars when B' keeps the class of B.
inline double bottleneck_exceedance_bound(double eps, double lambda, std::size_t n) {
  return 1.0 - std::pow(erlang2_cdf(eps, lambda), static_cast<double>(n));
}

// E[max of n i.i.d. Erlang(2, lambda)] = integral of 1 - F^n, by Simpson's rule.
inline double expected_max_erlang2(double lambda, std::size_t n) {
  const double upper = 80.0 / lambda;
  const int steps = 20000;
  const double h = upper / steps;
  double s = 0.0;
  for (int i = 0; i <= steps; ++i) {
    const double w = (i == 0 || i == steps) ? 1.0 : (i % 2 ? 4.0 : 2.0);
    s += w * bottleneck_exceedance_bound(i * h, lambda, n);
  }
  return s * h / 3.0;
}

// Quantile with linear interpolation between order statistics.
inline double quantile(std::vector<double> v, double q) {
  if (v.empty()) return std::nan("");
  std::sort(v.begin(), v.end());
  const double pos = q * static_cast<double>(v.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(pos));
  const auto hi = std::min(lo + 1, v.size() - 1);
  return v[lo] + (pos - static_cast<double>(lo)) * (v[hi] - v[lo]);
}

}  // namespace bf
