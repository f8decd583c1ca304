#include "spinstar/faddeeva.hpp"

#include <cmath>
#include <numbers>

namespace spinstar {

namespace {

using cd = std::complex<double>;

// Trapezoid sampling of the Cauchy integral
//   w(z) = (i/pi) Integral exp(-t^2) / (z - t) dt   (Im z > 0)
// over nodes t_k = (k+s)h.  Poisson summation makes the quadrature error
// explicit: Gaussian tail images of order exp(-pi^2 m^2/h^2) ~ 5e-69 at
// h = 1/4, plus, when the pole at z sits below the first image contour
// (Im z < pi/h), one alias term that is known in closed form:
//   s = 0:   w = T - 2 exp(-z^2) q / (1 - q),   q = exp(2 pi i z / h),
//   s = 1/2: w = T + 2 exp(-z^2) q / (1 + q).
// Above Im z = pi/h the alias is below 1e-34 and is skipped, which also
// keeps exp(-z^2) from overflowing.  The node grid is chosen so Re z is
// at least h/4 from every node, so terms stay O(1) down to the real
// axis.  Uniform absolute accuracy ~1e-14 over the upper half plane.
cd w_upper(cd z) {
    constexpr double h = 0.25;
    const double x = z.real();
    const double y = z.imag();
    const bool shifted = std::abs(x / h - std::round(x / h)) < 0.25;
    const double s = shifted ? 0.5 : 0.0;
    // nodes must cover the Gaussian mass: e^{-t^2} < 1e-21 past |t| = 7
    cd sum{0.0, 0.0};
    for (int k = -29; k <= 29; ++k) {
        const double t = (k + s) * h;
        sum += std::exp(-t * t) / (z - t);
    }
    cd w = cd{0.0, h / std::numbers::pi} * sum;
    if (y < std::numbers::pi / h) {
        const cd q = std::exp(cd{0.0, 2.0 * std::numbers::pi / h} * z);
        w += 2.0 * std::exp(-z * z) * (shifted ? q / (1.0 + q) : -q / (1.0 - q));
    }
    return w;
}

} // namespace

cd faddeeva_w(cd z) {
    if (z.imag() >= 0.0) return w_upper(z);
    // reflection w(z) = 2 exp(-z^2) - w(-z); exp(-z^2) may overflow, which
    // is genuine: w itself overflows in the lower half plane
    return 2.0 * std::exp(-z * z) - w_upper(-z);
}

cd erfc_c(cd z) {
    if (z.real() >= 0.0) return std::exp(-z * z) * faddeeva_w(cd{-z.imag(), z.real()});
    return 2.0 - erfc_c(-z);
}

cd erf_c(cd z) {
    return 1.0 - erfc_c(z);
}

} // namespace spinstar
