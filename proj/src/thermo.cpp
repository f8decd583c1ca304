#include "spinstar/thermo.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "spinstar/errors.hpp"
#include "spinstar/faddeeva.hpp"
#include "spinstar/util.hpp"

namespace spinstar {

namespace {

constexpr double kImagResidueBound = 1e-10;

void require_coupled(const ModelParams& params) {
    params.validate();
    if (params.alpha == 0.0)
        throw DegenerateAlpha("infinite-bath limit needs alpha > 0");
}

// adaptive Simpson with explicit error control
double simpson_rec(const std::function<double(double)>& fn, double a, double b,
                   double fa, double fm, double fb, double whole, double tol,
                   int depth) {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m);
    const double rm = 0.5 * (m + b);
    const double flm = fn(lm);
    const double frm = fn(rm);
    const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    const double delta = left + right - whole;
    if (depth <= 0 || std::abs(delta) <= 15.0 * tol)
        return left + right + delta / 15.0;
    return simpson_rec(fn, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
           simpson_rec(fn, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

double adaptive_simpson(const std::function<double(double)>& fn, double a,
                        double b, double tol) {
    const double fa = fn(a);
    const double m = 0.5 * (a + b);
    const double fm = fn(m);
    const double fb = fn(b);
    const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    return simpson_rec(fn, a, b, fa, fm, fb, whole, tol, 28);
}

} // namespace

double f_series(double t, const ModelParams& params, double tol,
                int* terms_used, double* truncation_residual) {
    require_coupled(params);
    const double a_ratio = params.gamma * params.gamma / (params.alpha * params.alpha);
    const double x2 = params.gamma * t * params.gamma * t;
    if (terms_used) *terms_used = 0;
    if (truncation_residual) *truncation_residual = 0.0;
    if (x2 == 0.0) return 0.0;

    double sum = 0.0;
    double max_term = 0.0;
    // outer coefficient c_n = (gamma t)^{2n} / (2^{n+2} (2n)!)
    double c = x2 / 16.0;
    int quiet = 0;
    bool converged = false;
    double last_rel = 0.0;
    int n = 1;
    for (; n <= 700; ++n) {
        // inner polynomial E_{n-1}(A): same-sign sum with an alternating
        // overall sign, so only the outer series cancels
        const int k = n - 1;
        double ti = std::ldexp(1.0, -k) / a_ratio;
        double inner = ti;
        for (int i = 0; i < k; ++i) {
            ti *= 2.0 * double(k - i) / a_ratio;
            inner += ti;
        }
        const double term = a_ratio * c * ((k & 1) ? -inner : inner);
        sum += term;
        max_term = std::max(max_term, std::abs(term));
        if (max_term > 1e280)
            throw NonConvergent("f_series: terms overflow double range");
        c *= x2 / (2.0 * double(2 * n + 1) * double(2 * n + 2));
        last_rel = std::abs(term) / std::max(std::abs(sum), 1e-30);
        if (last_rel <= tol) {
            if (++quiet >= 2) {
                converged = true;
                break;
            }
        } else {
            quiet = 0;
        }
    }
    // the floor is an absolute error estimate; f is bounded by 1, so a
    // near-zero sum (the function does pass through zero) must not be
    // mistaken for catastrophic cancellation
    const double scale = std::max(std::abs(sum), 1.0);
    const double floor_rel = 1e-16 * max_term / scale;
    if (terms_used) *terms_used = n;
    if (truncation_residual)
        *truncation_residual = std::max(last_rel, floor_rel);
    if (!converged)
        throw NonConvergent("f_series: no convergence within 700 terms");
    if (floor_rel > tol)
        throw NonConvergent("f_series: cancellation ate the requested digits");
    return sum;
}

double f_integral(double t, const ModelParams& params, double tol) {
    require_coupled(params);
    const double a_ratio = params.gamma * params.gamma / (params.alpha * params.alpha);
    const double x = params.gamma * t;
    if (x == 0.0) return 0.0;
    // f = (A/2) Integral_1^inf exp(-A(u^2-1)/2) (1 - cos(x u / 2)) / u du;
    // substitution u = sqrt(1+2v) of the Laplace form makes the phase linear
    const double u_max = std::sqrt(1.0 + 90.0 / a_ratio);
    const auto integrand = [&](double u) {
        return std::exp(-0.5 * a_ratio * (u * u - 1.0)) *
               (1.0 - std::cos(0.5 * x * u)) / u;
    };
    // split at oscillation scale, then refine adaptively
    const int panels =
        std::max(8, int(std::ceil((u_max - 1.0) * std::abs(x) / (2.0 * std::numbers::pi))));
    double total = 0.0;
    const double du = (u_max - 1.0) / panels;
    for (int i = 0; i < panels; ++i) {
        const double a = 1.0 + du * i;
        total += adaptive_simpson(integrand, a, a + du, tol / panels);
    }
    return 0.5 * a_ratio * total;
}

LimitFunctions limit_functions(double t, const ModelParams& params, double tol) {
    LimitFunctions lf;
    try {
        lf.f_val = f_series(t, params, tol, &lf.f_terms_used,
                            &lf.f_truncation_residual);
    } catch (const NonConvergent&) {
        lf.f_series_converged = false;
        lf.f_val = f_integral(t, params, tol);
        lf.f_truncation_residual = 0.0; // the integral enforces tol internally
    }
    lf.g_val = g_function(t, params);
    return lf;
}

double g_function(double t, const ModelParams& params) {
    require_coupled(params);
    const double alpha = params.alpha;
    const double gamma = params.gamma;
    constexpr double inv_2sqrt2 = 0.35355339059327373;
    // both arguments sit in the upper half plane where |w| <= 1, and the
    // Gaussian prefactor cancels exactly against erfc's growth
    const cplx zw{-alpha * t * inv_2sqrt2, gamma / (std::numbers::sqrt2 * alpha)};
    const cplx zw_refl{-zw.real(), zw.imag()};
    const cplx rot = std::polar(1.0, -0.5 * gamma * t);
    const cplx diff = rot * faddeeva_w(zw) - std::conj(rot) * faddeeva_w(zw_refl);
    const double pref = 0.25 * (gamma / alpha) * std::sqrt(0.5 * std::numbers::pi);
    const cplx g = cplx{0.0, pref} * diff;
    if (std::abs(g.imag()) > kImagResidueBound * std::max(1.0, std::abs(g.real())))
        throw std::runtime_error("g_function: imaginary residue too large");
    return g.real();
}

double population_limit(double t, const ModelParams& params, const XState& x0) {
    require_coupled(params);
    x0.validate();
    const LimitFunctions lf = limit_functions(t, params);
    const double c = std::cos(0.5 * params.gamma * t);
    const double s = std::sin(0.5 * params.gamma * t);
    const double pc = x0.rho11 + x0.rho22 - x0.rho33 - x0.rho44;
    const double ps = x0.rho11 - x0.rho22 + x0.rho33 - x0.rho44;
    // i(rho23 - rho32) kept as a complex product so an accidental real
    // part would surface in the residue check
    const cplx iq = cplx{0.0, 1.0} * (x0.rho23 - std::conj(x0.rho23));
    const cplx val = 0.5 * (1.0 + pc * c + iq * s) - (pc * c + iq * s) * lf.f_val +
                     (ps * s + iq * c) * lf.g_val;
    if (std::abs(val.imag()) > kImagResidueBound)
        throw std::runtime_error("population_limit: imaginary residue too large");
    return val.real();
}

Trajectory limit_trajectory(const TimeGrid& grid, const ModelParams& params,
                            const XState& x0, const std::string& column_name) {
    Trajectory traj;
    traj.grid = grid;
    Column col;
    col.name = column_name;
    col.values.resize(grid.t.size());
    parallel_for(grid.t.size(), [&](std::size_t i) {
        col.values[i] = population_limit(grid.t[i], params, x0);
    });
    traj.columns.push_back(std::move(col));
    return traj;
}

double f_small_alpha(double t, const ModelParams& params) {
    require_coupled(params);
    const double x = params.gamma * t;
    const double r2 = params.alpha * params.alpha / (params.gamma * params.gamma);
    const double s4 = std::sin(0.25 * x);
    return s4 * s4 + r2 * (-2.0 * s4 * s4 + 0.25 * x * std::sin(0.5 * x));
}

double g_small_alpha(double t, const ModelParams& params) {
    require_coupled(params);
    const double x = params.gamma * t;
    const double r2 = params.alpha * params.alpha / (params.gamma * params.gamma);
    const double envelope = std::exp(-0.125 * params.alpha * params.alpha * t * t);
    const double core = std::sin(0.5 * x) +
                        0.25 * r2 * (x * std::cos(0.5 * x) +
                                     (0.25 * x * x - 2.0) * std::sin(0.5 * x));
    return 0.5 * envelope * core;
}

} // namespace spinstar
