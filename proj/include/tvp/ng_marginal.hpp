#pragma once

#include <utility>

#include "tvp/rng.hpp"

namespace tvp {

// Log marginal density of the signed scale under the normal-gamma
// (double gamma) prior with local shape `a` and global level `global2`:
//
//   p(x | a, g2) = (sqrt(a g2))^(a+1/2) / (sqrt(pi) 2^(a-1/2) Gamma(a))
//                  * |x|^(a-1/2) K_{a-1/2}(sqrt(a g2) |x|).
//
// Used for sqrt(theta_j) with (a_xi, kappa2) and for beta_j with
// (a_tau, lambda2). At x = 0 the density diverges for a <= 1/2; the
// function returns +infinity there and the finite limit for a > 1/2.
double log_ng_marginal(double x, double a, double global2);

// Forward draw from the double gamma prior: xi2 ~ Gamma(a, a*global2/2),
// then theta ~ Gamma(1/2, 1/(2 xi2)). Returns {theta, xi2}.
std::pair<double, double> draw_double_gamma_theta(double a, double global2, Rng& rng);

}  // namespace tvp
