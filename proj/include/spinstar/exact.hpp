#pragma once

#include <complex>

#include "spinstar/model.hpp"
#include "spinstar/sectors.hpp"
#include "spinstar/trajectory.hpp"

namespace spinstar {

// Spectral scalars of the excitation block anchored at bath sector
// (j, m).  With a, b the two bath-ladder couplings and g = gamma/2:
//   F   = omega_+^2 - omega_-^2  (always >= gamma^2/4 when gamma > 0)
//   G+- = sqrt(-(a^2+b^2) - g^2 +- F), purely imaginary on physical
//         sectors since G+-^2 = -2 omega_-+^2; the principal branch is
//         pinned by giving the radicand a +0.0 imaginary part
//   C+- = (a^2 - b^2) +- F + g^2
// The mirrored C+- swap a^2 and b^2 (evaluate at -m); the lower-right
// 2x2 propagator entries use them.
struct SectorScalars {
    double f_split = 0.0;
    cplx g_plus{0.0, 0.0};
    cplx g_minus{0.0, 0.0};
    double c_plus = 0.0;
    double c_minus = 0.0;
    double c_plus_mirror = 0.0;
    double c_minus_mirror = 0.0;
};

// Throws SingularSector when F is too small to divide by, which for
// gamma > 0 never happens on physical sectors.
SectorScalars sector_scalars(const SectorLabel& anchor, const ModelParams& params);

// The sixteen closed-form entries of the block propagator, indexed by
// (row, column) in the block basis |++,m-1>, |+-,m>, |-+,m>, |--,m+1>.
enum class UWord {
    u11, u12, u13, u14,
    u21, u22, u23, u24,
    u31, u32, u33, u34,
    u41, u42, u43, u44,
};

struct WordValue {
    cplx amplitude{0.0, 0.0};
    SectorLabel out{0, 0}; // bath sector of the row state
};

// Amplitude <row state | exp(-i H t) | column state>, where the column
// state's bath sector is `source`.  Zero when either end of the
// transition falls off the bath ladder.
WordValue evaluate_u_word(UWord word, const SectorLabel& source,
                          const ModelParams& params, double t);

// Excited-state population of the central spin.  Sums the closed-form
// sector contributions over the unpolarized bath ensemble; accumulation
// runs in complex arithmetic and the imaginary residue (pure roundoff,
// checked < 1e-10) is written to *imag_residue when given.
double exact_population(double t, const ModelParams& params, const XState& x0,
                        double* imag_residue = nullptr);

Trajectory exact_trajectory(const TimeGrid& grid, const ModelParams& params,
                            const XState& x0, const std::string& column_name = "rho11");

} // namespace spinstar
