#include "spinstar/exact.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

#include "spinstar/errors.hpp"
#include "spinstar/oracle.hpp"
#include "spinstar/util.hpp"

namespace spinstar {

namespace {

constexpr double kSqrt2 = 1.4142135623730951;
constexpr double kImagResidueBound = 1e-10;

// entire helpers: h1(w) = sinh(w)/w, h2(w) = (cosh(w) - 1)/w^2.
// Series below |w| = 1/2 (terms fall under 1e-18 by k = 7), direct above.
cplx h1_sinh(cplx w) {
    const cplx w2 = w * w;
    if (std::abs(w2) < 0.25) {
        cplx term{1.0, 0.0};
        cplx sum = term;
        for (int k = 1; k <= 8; ++k) {
            term *= w2 / double((2 * k) * (2 * k + 1));
            sum += term;
        }
        return sum;
    }
    return std::sinh(w) / w;
}

cplx h2_cosh(cplx w) {
    const cplx w2 = w * w;
    if (std::abs(w2) < 0.25) {
        cplx term{0.5, 0.0};
        cplx sum = term;
        for (int k = 1; k <= 8; ++k) {
            term *= w2 / double((2 * k + 1) * (2 * k + 2));
            sum += term;
        }
        return sum;
    }
    return (std::cosh(w) - 1.0) / w2;
}

// All sixteen block-propagator amplitudes at one anchor, rows and
// columns ordered |++,m-1>, |+-,m>, |-+,m>, |--,m+1>.  Absent edge
// states get zero rows and columns.
struct AnchorAmplitudes {
    cplx u[4][4]{};
    bool present[4]{};
};

AnchorAmplitudes anchor_amplitudes(const SectorLabel& anchor,
                                   const ModelParams& params, double t,
                                   const SectorScalars& sc) {
    const int two_j = anchor.two_j;
    const int two_m = anchor.two_m;
    const double n = params.bath_size;
    const double alpha = params.alpha;
    const double gamma = params.gamma;

    AnchorAmplitudes amps;
    amps.present[0] = two_m - 2 >= -two_j;
    amps.present[1] = amps.present[2] = true;
    amps.present[3] = two_m + 2 <= two_j;

    // ladder coefficients into the anchor from either side; both equal
    // their left-acting counterparts out of the anchor
    const double lm = amps.present[0] ? std::sqrt(jpjm_value(anchor)) : 0.0;
    const double lp = amps.present[3] ? std::sqrt(jmjp_value(anchor)) : 0.0;

    const double f = sc.f_split;
    const cplx a_plus = sc.g_plus * (t / kSqrt2);
    const cplx a_minus = sc.g_minus * (t / kSqrt2);
    const cplx ch_p = std::cosh(a_plus);
    const cplx ch_m = std::cosh(a_minus);
    // sinh(A)/G and (cosh(A) - 1)/G^2 without dividing by G
    const cplx sg_p = (t / kSqrt2) * h1_sinh(a_plus);
    const cplx sg_m = (t / kSqrt2) * h1_sinh(a_minus);
    const cplx cg2_p = (0.5 * t * t) * h2_cosh(a_plus);
    const cplx cg2_m = (0.5 * t * t) * h2_cosh(a_minus);
    const cplx sh_g = std::sinh(a_minus) * sc.g_minus - std::sinh(a_plus) * sc.g_plus;

    const cplx pref_ladder{0.0, alpha / (2.0 * std::sqrt(2.0 * n))};
    const double pref_cosh = alpha * gamma / (4.0 * std::sqrt(n));
    const cplx pref_outer{0.0, kSqrt2 * alpha * alpha * gamma / (8.0 * n)};
    const cplx pref_inner{0.0, gamma / (2.0 * kSqrt2)};
    const double q_one = alpha * alpha / (4.0 * n);

    const cplx one_brace = (cg2_m * sc.c_plus - cg2_p * sc.c_minus) / f;
    const cplx one_brace_mir = (cg2_m * sc.c_plus_mirror - cg2_p * sc.c_minus_mirror) / f;
    const cplx ladder_brace = (sg_p * sc.c_minus - sg_m * sc.c_plus) / f;
    const cplx ladder_brace_mir =
        (sg_p * sc.c_minus_mirror - sg_m * sc.c_plus_mirror) / f;
    const cplx cosh_diff = (ch_m - ch_p) / f;
    const cplx outer_brace = (sg_p - sg_m) / f;

    auto one_minus = [](cplx correction) {
        // the subtraction from 1 is exact for |correction| in [1/2, 2]
        // (Sterbenz), but keep the compensated form once cancellation is
        // possible at all
        if (std::abs(correction) > 0.999) {
            const TwoSum s = two_sum(1.0, -correction.real());
            return cplx{s.value + s.err, -correction.imag()};
        }
        return 1.0 - correction;
    };

    if (amps.present[0]) {
        amps.u[0][0] = one_minus(q_one * (lm * lm) * one_brace);
        amps.u[0][1] = amps.u[1][0] = pref_ladder * lm * ladder_brace;
        amps.u[0][2] = amps.u[2][0] = pref_cosh * lm * cosh_diff;
    }
    amps.u[1][1] = 0.5 * (ch_m * sc.c_plus - ch_p * sc.c_minus) / f;
    amps.u[2][2] = 0.5 * (ch_m * sc.c_plus_mirror - ch_p * sc.c_minus_mirror) / f;
    amps.u[1][2] = amps.u[2][1] = pref_inner * sh_g / f;
    if (amps.present[3]) {
        amps.u[3][3] = one_minus(q_one * (lp * lp) * one_brace_mir);
        amps.u[2][3] = amps.u[3][2] = pref_ladder * lp * ladder_brace_mir;
        amps.u[1][3] = amps.u[3][1] = pref_cosh * lp * cosh_diff;
    }
    if (amps.present[0] && amps.present[3])
        amps.u[0][3] = amps.u[3][0] = pref_outer * lm * lp * outer_brace;
    return amps;
}

// same amplitudes from the 4x4 eigensolver; used when F is singular
AnchorAmplitudes anchor_amplitudes_fallback(const SectorLabel& anchor,
                                            const ModelParams& params, double t) {
    const ExcitationBlock block = build_excitation_block(anchor, params);
    const Eigen::Matrix4cd e = block_propagator(block, t);
    AnchorAmplitudes amps;
    for (int i = 0; i < 4; ++i) amps.present[i] = block.present[i];
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) amps.u[i][j] = e(i, j);
    return amps;
}

AnchorAmplitudes anchor_amplitudes_checked(const SectorLabel& anchor,
                                           const ModelParams& params, double t) {
    try {
        return anchor_amplitudes(anchor, params, t, sector_scalars(anchor, params));
    } catch (const SingularSector&) {
        return anchor_amplitudes_fallback(anchor, params, t);
    }
}

// population routed into S-up states by one anchor block
cplx anchor_population_term(const AnchorAmplitudes& amps, const XState& x0) {
    const cplx* u0 = amps.u[0];
    const cplx* u1 = amps.u[1];
    cplx term{0.0, 0.0};
    if (amps.present[0])
        term += x0.rho11 * (std::norm(u0[0]) + std::norm(u1[0]));
    term += x0.rho22 * (std::norm(u0[1]) + std::norm(u1[1]));
    term += x0.rho33 * (std::norm(u0[2]) + std::norm(u1[2]));
    const cplx cross = x0.rho23 * (u0[1] * std::conj(u0[2]) + u1[1] * std::conj(u1[2]));
    term += cross + std::conj(cross);
    if (amps.present[3])
        term += x0.rho44 * (std::norm(u0[3]) + std::norm(u1[3]));
    return term;
}

} // namespace

SectorScalars sector_scalars(const SectorLabel& anchor, const ModelParams& params) {
    params.validate();
    const double n = params.bath_size;
    const double a2 = params.alpha * params.alpha;
    const double g2 = params.gamma * params.gamma;
    const double jz = jz_value(anchor);
    const double jsym = jsym_value(anchor);

    SectorScalars sc;
    sc.f_split = 0.25 * std::sqrt(4.0 * a2 * a2 * jz * jz / (n * n) +
                                  2.0 * a2 * g2 * jsym / n + g2 * g2);
    if (sc.f_split < 1e-12 * std::max(g2, a2 / n))
        throw SingularSector("sector_scalars: eigenvalue splitting collapsed");

    // +0.0 imaginary part keeps the principal branch off the cut
    const double base = -(a2 / n) * jsym - g2;
    sc.g_plus = 0.5 * std::sqrt(cplx{base + 4.0 * sc.f_split, +0.0});
    sc.g_minus = 0.5 * std::sqrt(cplx{base - 4.0 * sc.f_split, +0.0});

    const auto c_of = [&](double jzv, double sign) {
        return (2.0 * a2 * jzv + sign * 4.0 * sc.f_split * n + g2 * n) / (4.0 * n);
    };
    sc.c_plus = c_of(jz, +1.0);
    sc.c_minus = c_of(jz, -1.0);
    sc.c_plus_mirror = c_of(-jz, +1.0);
    sc.c_minus_mirror = c_of(-jz, -1.0);
    return sc;
}

WordValue evaluate_u_word(UWord word, const SectorLabel& source,
                          const ModelParams& params, double t) {
    params.validate();
    if (!valid_sector(params.bath_size, source))
        throw std::invalid_argument("evaluate_u_word: bad source sector");
    const int idx = int(word);
    const int row = idx / 4;
    const int col = idx % 4;

    const int anchor_m = source.two_m + (col == 0 ? 2 : col == 3 ? -2 : 0);
    const SectorLabel anchor{source.two_j, anchor_m};

    WordValue out;
    out.out = {source.two_j,
               anchor_m + (row == 0 ? -2 : row == 3 ? 2 : 0)};
    if (std::abs(anchor_m) > source.two_j) {
        // virtual anchor: only the frozen corner state exists, and it
        // does not move
        out.amplitude = (row == col) ? cplx{1.0, 0.0} : cplx{0.0, 0.0};
        return out;
    }
    const AnchorAmplitudes amps = anchor_amplitudes_checked(anchor, params, t);
    out.amplitude = amps.u[row][col];
    return out;
}

double exact_population(double t, const ModelParams& params, const XState& x0,
                        double* imag_residue) {
    params.validate();
    x0.validate();
    const DegeneracyTable table = build_degeneracy_table(params.bath_size);

    std::vector<cplx> sector_terms;
    sector_terms.reserve(table.two_j.size());
    std::vector<cplx> anchor_terms;
    for (std::size_t jx = 0; jx < table.two_j.size(); ++jx) {
        const int two_j = table.two_j[jx];
        const double w = table.weight[jx];
        if (w < 1e-300) continue; // sector carries no ensemble mass
        anchor_terms.clear();
        // frozen corner |++, j>: never leaves the S-up subspace
        anchor_terms.push_back(cplx{x0.rho11, 0.0});
        for (int two_m = -two_j; two_m <= two_j; two_m += 2) {
            const AnchorAmplitudes amps =
                anchor_amplitudes_checked({two_j, two_m}, params, t);
            anchor_terms.push_back(anchor_population_term(amps, x0));
        }
        sector_terms.push_back(w * pairwise_sum(anchor_terms));
    }
    const cplx total = pairwise_sum(sector_terms);
    if (imag_residue) *imag_residue = std::abs(total.imag());
    if (std::abs(total.imag()) > kImagResidueBound)
        throw std::runtime_error("exact_population: imaginary residue too large");
    return total.real();
}

Trajectory exact_trajectory(const TimeGrid& grid, const ModelParams& params,
                            const XState& x0, const std::string& column_name) {
    Trajectory traj;
    traj.grid = grid;
    Column col;
    col.name = column_name;
    col.values.resize(grid.t.size());
    parallel_for(grid.t.size(), [&](std::size_t i) {
        col.values[i] = exact_population(grid.t[i], params, x0);
    });
    traj.columns.push_back(std::move(col));
    return traj;
}

} // namespace spinstar
