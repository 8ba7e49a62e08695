#pragma once

// Test-only numerical integration oracles, independent of the library's
// evaluation paths.

#include <cmath>
#include <functional>
#include <limits>

namespace oracle {

inline double simpson(const std::function<double(double)>& f, double a, double b, double fa,
                      double fm, double fb, double tol, int depth) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  const double flm = f(lm), frm = f(rm);
  const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  if (depth <= 0 || std::fabs(left + right - whole) < 15.0 * tol)
    return left + right + (left + right - whole) / 15.0;
  return simpson(f, a, m, fa, flm, fm, 0.5 * tol, depth - 1) +
         simpson(f, m, b, fm, frm, fb, 0.5 * tol, depth - 1);
}

inline double integrate(const std::function<double(double)>& f, double a, double b,
                        double tol = 1e-12, int depth = 18) {
  // Panelled adaptive Simpson: a localized integrand on a wide interval must
  // not fool the top-level error estimate. Depth is capped; smooth unimodal
  // oracle integrands converge far earlier.
  const int panels = 128;
  double total = 0.0;
  for (int k = 0; k < panels; ++k) {
    const double lo = a + (b - a) * k / panels;
    const double hi = a + (b - a) * (k + 1) / panels;
    const double m = 0.5 * (lo + hi);
    total += simpson(f, lo, hi, f(lo), f(m), f(hi), std::max(tol / panels, 2e-15), depth);
  }
  return total;
}

// Integral of exp(logf(u)) du over [a, b], factoring out the maximum of logf
// on a scan grid so the integrand stays in range. Returns the log of the
// integral.
inline double log_integrate_exp(const std::function<double(double)>& logf, double a, double b,
                                double tol = 1e-12, int scan = 2048) {
  double mx = -std::numeric_limits<double>::infinity();
  for (int i = 0; i <= scan; ++i) {
    const double u = a + (b - a) * i / scan;
    mx = std::max(mx, logf(u));
  }
  if (!std::isfinite(mx)) return mx;
  const auto g = [&](double u) {
    const double lv = logf(u);
    return std::isfinite(lv) ? std::exp(lv - mx) : 0.0;
  };
  return mx + std::log(integrate(g, a, b, tol));
}

}  // namespace oracle
