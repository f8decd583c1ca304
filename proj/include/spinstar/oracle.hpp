#pragma once

#include <array>
#include <random>

#include <Eigen/Dense>

#include "spinstar/model.hpp"
#include "spinstar/sectors.hpp"
#include "spinstar/trajectory.hpp"

namespace spinstar {

// The S+I+bath Hamiltonian conserves total excitation number, so within
// bath sector j it splits into blocks of at most four states,
//   |++, m-1>, |+-, m>, |-+, m>, |--, m+1>,
// labeled by the anchor m of the middle pair.  Edge anchors lose the
// states whose bath label falls outside [-j, j].
struct ExcitationBlock {
    SectorLabel anchor;               // (two_j, two_m) of the middle pair
    std::array<bool, 4> present{};    // which of the four basis states exist
    int dim = 0;
    Eigen::Matrix4d h = Eigen::Matrix4d::Zero(); // top-left dim x dim is the block
};

ExcitationBlock build_excitation_block(const SectorLabel& anchor,
                                       const ModelParams& params);

// exp(-i H t) of one block, embedded back into the full 4x4 index space
// (absent rows/columns stay zero).
Eigen::Matrix4cd block_propagator(const ExcitationBlock& block, double t);

// Central-spin excited population by summing every (j, anchor) block,
// weighted by the unpolarized-bath sector weights.  Exact for any N.
double block_population(double t, const ModelParams& params, const XState& x0);
Trajectory block_trajectory(const TimeGrid& grid, const ModelParams& params,
                            const XState& x0, const std::string& column_name = "rho11");

// Full 2^(N+2)-dimensional evolution with no structure assumed beyond
// hermiticity.  Independent cross-check of the block route; N <= 10.
double dense_population(double t, const ModelParams& params, const XState& x0);
Trajectory dense_trajectory(const TimeGrid& grid, const ModelParams& params,
                            const XState& x0, const std::string& column_name = "rho11");

// |rho^S_12(t)| from the dense evolution; vanishes for X-shaped input.
double dense_coherence_magnitude(double t, const ModelParams& params, const XState& x0);

// Random well-formed X state: Dirichlet diagonal, coherences uniform
// within their positivity bounds.
XState random_xstate(std::mt19937_64& rng);

} // namespace spinstar
