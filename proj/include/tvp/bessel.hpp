#pragma once

namespace tvp {

// log K_p(x), the modified Bessel function of the second kind in log scale.
// Valid for x > 0 (down to ~1e-300) and any real order p (|p| up to ~1e4 and
// beyond); never forms K itself, so no overflow for tiny x or large |p|.
// Throws std::invalid_argument for x <= 0 or non-finite arguments.
double log_bessel_k(double p, double x);

}  // namespace tvp
