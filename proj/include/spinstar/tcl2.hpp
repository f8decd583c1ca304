#pragma once

#include "spinstar/model.hpp"
#include "spinstar/trajectory.hpp"

namespace spinstar {

// Which literal coefficients drive the two bath-assisted channels.
// `published` keeps the asymmetric pair (alpha^2/2N, 2 alpha^2/N);
// `symmetric` uses alpha^2/2N for both.
enum class CoeffMode { published, symmetric };

// Scaling of the coherence-driven inhomogeneity.  `published` injects
// -gamma Im(rho23) / 2^N identically in every sector; `degeneracy_weighted`
// scales it by the sector weight nu_j/2^N, which reproduces the exact
// t = 0 slope of the population.
enum class InhomMode { published, degeneracy_weighted };

struct Tcl2Options {
    double step = 0.0; // integrator step; 0 picks 1e-3/gamma, cap 1e-2/gamma
    CoeffMode coeff_mode = CoeffMode::published;
    InhomMode inhom_mode = InhomMode::degeneracy_weighted;
    double drift_bound = 1e-6; // probability drift that aborts the run
};

struct Tcl2Result {
    Trajectory trajectory;
    double max_drift = 0.0; // worst |total probability - 1| seen
};

// Second-order time-convolutionless master equation in the correlated
// projection basis: per bath sector j, occupation densities resolved by
// m for the central spin up (R) and down (r) channels, coupled along
// ladder bonds with time-linear rates.  Fixed-step RK4; throws
// StepTooLarge if probability drifts past the bound.
Tcl2Result integrate_tcl2(const TimeGrid& grid, const ModelParams& params,
                          const XState& x0, const Tcl2Options& options = {});

// Uncorrelated-projection (single bath state) counterpart: plain 2x2
// rate equation with rate gamma^2 t / 2 toward equal populations.  Kept
// as the comparison baseline; it misses the sector structure entirely.
Trajectory naive_trajectory(const TimeGrid& grid, const ModelParams& params,
                            const XState& x0, const std::string& column_name = "rho11");

const char* coeff_mode_name(CoeffMode mode);
const char* inhom_mode_name(InhomMode mode);
CoeffMode parse_coeff_mode(const std::string& name);
InhomMode parse_inhom_mode(const std::string& name);

} // namespace spinstar
