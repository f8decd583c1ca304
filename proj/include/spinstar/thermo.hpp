#pragma once

#include "spinstar/model.hpp"
#include "spinstar/trajectory.hpp"

namespace spinstar {

// Bookkeeping for the infinite-bath memory functions f and g.
struct LimitFunctions {
    double f_val = 0.0;
    double g_val = 0.0;
    bool f_series_converged = true; // false: integral fallback was used
    int f_terms_used = 0;
    // first neglected term relative to the sum, plus the summation
    // roundoff floor measured against max(|f|, 1); below the configured
    // tolerance whenever the series value is returned
    double f_truncation_residual = 0.0;
};

// Memory function f as the alternating series in A = gamma^2/alpha^2.
// Throws NonConvergent when the terms peak so high (they grow like
// exp((alpha t)^2/8) before decaying) that the roundoff floor exceeds
// the requested tolerance.
double f_series(double t, const ModelParams& params, double tol = 1e-12,
                int* terms_used = nullptr,
                double* truncation_residual = nullptr);

// Same function as a one-dimensional integral with uniformly bounded
// integrand; slower but immune to the cancellation blow-up.
double f_integral(double t, const ModelParams& params, double tol = 1e-12);

// Series with automatic integral fallback, plus g.
LimitFunctions limit_functions(double t, const ModelParams& params,
                               double tol = 1e-12);

// Memory function g evaluated through the Faddeeva function in the
// upper half plane; stable for alpha both small and large against gamma.
double g_function(double t, const ModelParams& params);

// Central-spin excited population in the N -> infinity limit.
// Throws DegenerateAlpha at alpha = 0 (the limit degenerates to bare
// Rabi flopping; use the exact solver).
double population_limit(double t, const ModelParams& params, const XState& x0);

Trajectory limit_trajectory(const TimeGrid& grid, const ModelParams& params,
                            const XState& x0, const std::string& column_name = "rho11");

// Leading small-alpha expansions, O((alpha/gamma)^4) accurate
double f_small_alpha(double t, const ModelParams& params);
double g_small_alpha(double t, const ModelParams& params);

} // namespace spinstar
