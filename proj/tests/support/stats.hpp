#pragma once

// Test-only statistical helpers (Monte Carlo error bars, KS tests).

#include <algorithm>
#include <cmath>
#include <span>
#include <vector>

namespace oracle {

struct MomentCheck {
  double sample;  // sample statistic
  double target;  // analytic value
  double se;      // Monte Carlo standard error of the statistic
  bool within(double n_se) const { return std::fabs(sample - target) <= n_se * se; }
};

inline double mean(std::span<const double> v) {
  double s = 0.0;
  for (double x : v) s += x;
  return s / static_cast<double>(v.size());
}

inline double variance(std::span<const double> v) {
  const double m = mean(v);
  double s = 0.0;
  for (double x : v) s += (x - m) * (x - m);
  return s / static_cast<double>(v.size() - 1);
}

// Sample mean of f(x) vs target with plug-in standard error.
inline MomentCheck check_mean(std::span<const double> values, double target) {
  const double m = mean(values);
  const double se = std::sqrt(variance(values) / static_cast<double>(values.size()));
  return {m, target, se};
}

// Sample variance vs target; SE via the fourth central moment.
inline MomentCheck check_variance(std::span<const double> values, double target) {
  const double m = mean(values);
  const double n = static_cast<double>(values.size());
  double m2 = 0.0, m4 = 0.0;
  for (double x : values) {
    const double d = x - m;
    m2 += d * d;
    m4 += d * d * d * d;
  }
  m2 /= n;
  m4 /= n;
  const double se = std::sqrt(std::max(m4 - m2 * m2, 0.0) / n);
  return {m2 * n / (n - 1.0), target, se};
}

// Asymptotic two-sample Kolmogorov-Smirnov p-value. Effective sample sizes
// may be passed for serially dependent draws (n_eff = n / inefficiency);
// KS treats its inputs as independent and over-rejects otherwise.
inline double ks_two_sample_pvalue(std::vector<double> a, std::vector<double> b,
                                   double n_eff_a = 0.0, double n_eff_b = 0.0) {
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  const std::size_t n = a.size(), m = b.size();
  double d = 0.0;
  std::size_t i = 0, j = 0;
  while (i < n && j < m) {
    const double x = std::min(a[i], b[j]);
    while (i < n && a[i] <= x) ++i;
    while (j < m && b[j] <= x) ++j;
    d = std::max(d, std::fabs(double(i) / n - double(j) / m));
  }
  const double ne = n_eff_a > 0.0 ? n_eff_a : double(n);
  const double me = n_eff_b > 0.0 ? n_eff_b : double(m);
  const double en = std::sqrt(ne * me / (ne + me));
  const double z = (en + 0.12 + 0.11 / en) * d;
  double p = 0.0;
  double sign = 1.0;
  for (int k = 1; k <= 100; ++k) {
    const double term = std::exp(-2.0 * k * k * z * z);
    p += 2.0 * sign * term;
    sign = -sign;
    if (term < 1e-12) break;
  }
  return std::clamp(p, 0.0, 1.0);
}

}  // namespace oracle
