#include "tvp/gig.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "tvp/bessel.hpp"

namespace tvp {
namespace {

constexpr double kZeroCut = 1e-300;
constexpr int kMaxReject = 1 << 24;

[[noreturn]] void gig_fail(const char* what, double p, double a, double b) {
  std::ostringstream os;
  os << "gig_draw: " << what << " (p=" << p << ", a=" << a << ", b=" << b << ")";
  throw std::runtime_error(os.str());
}

// log of the standardized two-parameter density kernel,
// g(x) = x^(lam-1) exp(-(omega/2)(x + 1/x)).
inline double log_kernel(double lam, double omega, double x) {
  return (lam - 1.0) * std::log(x) - 0.5 * omega * (x + 1.0 / x);
}

inline double dlog_kernel(double lam, double omega, double x) {
  return (lam - 1.0) / x - 0.5 * omega * (1.0 - 1.0 / (x * x));
}

// Mode of g for lam >= 1 (plain form) and lam < 1 (rationalized form).
inline double gig_mode(double lam, double omega) {
  if (lam >= 1.0)
    return ((lam - 1.0) + std::sqrt((lam - 1.0) * (lam - 1.0) + omega * omega)) / omega;
  const double om1 = 1.0 - lam;
  return omega / (std::sqrt(om1 * om1 + omega * omega) + om1);
}

// Stationarity condition of (x - m) sqrt(g(x)): h(x) = 2 + (x - m) dlog g(x).
// Has exactly one root in (0, m) and one in (m, inf).
double rou_extremum(double lam, double omega, double m, bool upper) {
  auto h = [&](double x) { return 2.0 + (x - m) * dlog_kernel(lam, omega, x); };
  double lo, hi;
  if (upper) {
    lo = m;
    hi = m > 1.0 ? 2.0 * m : m + 1.0;
    for (int i = 0; i < 4200 && h(hi) > 0.0; ++i) hi *= 2.0;
  } else {
    hi = m;
    lo = 0.5 * m;
    for (int i = 0; i < 4200 && h(lo) > 0.0; ++i) lo *= 0.5;
  }
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (mid == lo || mid == hi) break;
    const double hm = h(mid);
    if (upper ? (hm > 0.0) : (hm <= 0.0))
      lo = mid;
    else
      hi = mid;
  }
  return 0.5 * (lo + hi);
}

// Ratio-of-uniforms with shift by the mode; valid for any lam >= 0, omega > 0.
double draw_rou_shift(double lam, double omega, Rng& rng) {
  const double m = gig_mode(lam, omega);
  const double lgm = log_kernel(lam, omega, m);
  auto rel = [&](double x) { return log_kernel(lam, omega, x) - lgm; };

  const double xlo = rou_extremum(lam, omega, m, false);
  const double xhi = rou_extremum(lam, omega, m, true);
  // Hat bounds; the root solve is bisection-tight, inflate a touch so the
  // computed envelope always covers the true extremum.
  double u_minus = (xlo - m) * std::exp(0.5 * rel(xlo));
  double u_plus = (xhi - m) * std::exp(0.5 * rel(xhi));
  const double pad = 1e-9 * (u_plus - u_minus) + 1e-300;
  u_minus -= pad;
  u_plus += pad;

  for (int it = 0; it < kMaxReject; ++it) {
    const double u = u_minus + (u_plus - u_minus) * draw_uniform(rng);
    const double v = draw_uniform(rng);
    const double x = u / v + m;
    if (x <= 0.0) continue;
    if (2.0 * std::log(v) <= rel(x)) return x;
  }
  gig_fail("ratio-of-uniforms did not accept", lam, omega, omega);
}

// Three-piece hat rejection for 0 <= lam < 1 and small omega
// (the regime where shrinkage drives sqrt(ab) toward zero).
double draw_small_omega(double lam, double omega, Rng& rng) {
  const double m = gig_mode(lam, omega);
  const double x0 = omega / (1.0 - lam);
  const double k0 = std::exp(log_kernel(lam, omega, m));
  const double area0 = k0 * x0;

  double k1 = 0.0, k2, area1 = 0.0, area2;
  double split2;  // left edge of the exponential tail piece
  if (x0 >= 2.0 / omega) {
    split2 = x0;
    k2 = std::pow(x0, lam - 1.0);
    area2 = k2 * 2.0 * std::exp(-0.5 * omega * x0) / omega;
  } else {
    split2 = 2.0 / omega;
    k1 = std::exp(-omega);
    const double lx0 = std::log(x0);
    area1 = (lam == 0.0)
                ? k1 * (std::log(2.0 / omega) - lx0)
                : k1 / lam * std::exp(lam * lx0) * std::expm1(lam * (std::log(2.0 / omega) - lx0));
    k2 = std::pow(2.0 / omega, lam - 1.0);
    area2 = k2 * 2.0 * std::exp(-1.0) / omega;
  }
  const double total = area0 + area1 + area2;

  for (int it = 0; it < kMaxReject; ++it) {
    double v = total * draw_uniform(rng);
    double x, hx;
    if (v <= area0) {
      x = x0 * v / area0;
      hx = k0;
      if (x <= 0.0) continue;
    } else if ((v -= area0) <= area1) {
      if (lam == 0.0) {
        x = x0 * std::exp(v / k1);
        hx = k1 / x;
      } else {
        // Invert the x^(lam-1) piece; log1p form stays exact for tiny lam.
        const double u = std::expm1(lam * std::log(x0)) + lam * v / k1;
        x = std::exp(std::log1p(u) / lam);
        hx = k1 * std::pow(x, lam - 1.0);
      }
    } else {
      v -= area1;
      const double arg = std::exp(-0.5 * omega * split2) - 0.5 * omega * v / k2;
      if (arg <= 0.0) continue;
      x = -2.0 / omega * std::log(arg);
      hx = k2 * std::exp(-0.5 * omega * x);
    }
    const double u = draw_uniform(rng) * hx;
    if (std::log(u) <= log_kernel(lam, omega, x)) return x;
  }
  gig_fail("small-omega hat did not accept", lam, omega, omega);
}

}  // namespace

double inverse_gaussian_draw(double mu, double lambda, Rng& rng) {
  for (int it = 0; it < 64; ++it) {
    const double nu = draw_normal(rng);
    const double z = mu * nu * nu / lambda;
    const double c = 1.0 + 0.5 * z;
    const double w = 1.0 / (c + std::sqrt(c * c - 1.0));  // stable root
    const double x = (draw_uniform(rng) <= 1.0 / (1.0 + w)) ? mu * w : mu / w;
    if (x > 0.0 && std::isfinite(x)) return x;
  }
  gig_fail("inverse gaussian draw degenerate", -0.5, lambda / (mu * mu), lambda);
}

double gig_draw(double p, double a, double b, Rng& rng) {
  return gig_draw(GigParams{p, a, b}, rng);
}

double gig_draw(const GigParams& params, Rng& rng) {
  double p = params.p, a = params.a, b = params.b;
  if (!std::isfinite(p) || !std::isfinite(a) || !std::isfinite(b) || a < 0.0 || b < 0.0)
    gig_fail("invalid parameters", p, a, b);

  // Distributional limits under extreme shrinkage.
  if (b <= kZeroCut && p > 0.0) return draw_gamma(rng, p, 0.5 * a);
  if (a <= kZeroCut && p < 0.0) return 1.0 / draw_gamma(rng, -p, 0.5 * b);
  a = std::max(a, kZeroCut);
  b = std::max(b, kZeroCut);

  if (p == -0.5) return inverse_gaussian_draw(std::sqrt(b / a), b, rng);
  if (p == 0.5) return 1.0 / inverse_gaussian_draw(std::sqrt(a / b), a, rng);

  // Standardize: for p >= 0 draw X with kernel x^(p-1) e^{-(omega/2)(x+1/x)}
  // and return sqrt(b/a) X; for p < 0 use 1/Y ~ GIG(-p, b, a).
  const bool invert = p < 0.0;
  const double lam = invert ? -p : p;
  const double omega = std::exp(0.5 * (std::log(a) + std::log(b)));
  const double alpha = std::exp(0.5 * (std::log(b) - std::log(a)));

  double x;
  if (lam < 1.0 && omega < 0.5 && omega <= (2.0 / 3.0) * std::sqrt(1.0 - lam))
    x = draw_small_omega(lam, omega, rng);
  else
    x = draw_rou_shift(lam, omega, rng);

  double y = invert ? alpha / x : alpha * x;
  if (!(y > 0.0) || !std::isfinite(y)) y = std::max(y, kZeroCut);
  if (!std::isfinite(y)) gig_fail("draw not finite", p, a, b);
  return y;
}

double log_gig_moment(const GigParams& params, int k) {
  const double s = std::exp(0.5 * (std::log(params.a) + std::log(params.b)));
  return log_bessel_k(params.p + k, s) - log_bessel_k(params.p, s) +
         0.5 * k * (std::log(params.b) - std::log(params.a));
}

double gig_moment(const GigParams& params, int k) {
  if (!(params.a > 0.0) || !(params.b > 0.0) || !std::isfinite(params.p))
    throw std::invalid_argument("gig_moment: requires a > 0, b > 0");
  return std::exp(log_gig_moment(params, k));
}

}  // namespace tvp
