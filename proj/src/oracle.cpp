#include "spinstar/oracle.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "spinstar/errors.hpp"

namespace spinstar {

namespace {

constexpr double kImagResidueBound = 1e-10;

int checked_bath(const ModelParams& params) {
    params.validate();
    return params.bath_size;
}

} // namespace

ExcitationBlock build_excitation_block(const SectorLabel& anchor,
                                       const ModelParams& params) {
    params.validate();
    const int two_j = anchor.two_j;
    const int two_m = anchor.two_m;
    if (two_j < 0 || two_j > params.bath_size ||
        ((params.bath_size ^ two_j) & 1) != 0)
        throw std::invalid_argument("block: two_j incompatible with bath");
    if (std::abs(two_m) > two_j + 2 || ((two_j ^ two_m) & 1) != 0)
        throw std::invalid_argument("block: anchor two_m out of range");

    ExcitationBlock block;
    block.anchor = anchor;
    block.present = {two_m - 2 >= -two_j,          // |++, m-1>
                     std::abs(two_m) <= two_j,     // |+-, m>
                     std::abs(two_m) <= two_j,     // |-+, m>
                     two_m + 2 <= two_j};          // |--, m+1>
    for (bool p : block.present) block.dim += p;

    const double scale = params.alpha / (2.0 * std::sqrt(double(params.bath_size)));
    if (block.present[0] && block.present[1]) {
        const double a = scale * ladder_coefficient({two_j, two_m - 2}, Ladder::raise_m);
        block.h(0, 1) = block.h(1, 0) = a;
    }
    if (block.present[1] && block.present[2]) {
        block.h(1, 2) = block.h(2, 1) = 0.5 * params.gamma;
    }
    if (block.present[2] && block.present[3]) {
        const double b = scale * ladder_coefficient({two_j, two_m}, Ladder::raise_m);
        block.h(2, 3) = block.h(3, 2) = b;
    }
    return block;
}

Eigen::Matrix4cd block_propagator(const ExcitationBlock& block, double t) {
    // compact out absent states, exponentiate, re-embed
    int map[4];
    int dim = 0;
    for (int i = 0; i < 4; ++i) map[i] = block.present[i] ? dim++ : -1;
    Eigen::MatrixXd hc(dim, dim);
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
            if (map[i] >= 0 && map[j] >= 0) hc(map[i], map[j]) = block.h(i, j);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(hc);
    Eigen::VectorXcd phase(dim);
    for (int p = 0; p < dim; ++p)
        phase(p) = std::polar(1.0, -es.eigenvalues()(p) * t);
    const Eigen::MatrixXcd vc = es.eigenvectors().cast<cplx>();
    Eigen::MatrixXcd ec = vc * phase.asDiagonal() * vc.transpose();
    Eigen::Matrix4cd out = Eigen::Matrix4cd::Zero();
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
            if (map[i] >= 0 && map[j] >= 0) out(i, j) = ec(map[i], map[j]);
    return out;
}

double block_population(double t, const ModelParams& params, const XState& x0) {
    const int n = checked_bath(params);
    x0.validate();
    const DegeneracyTable table = build_degeneracy_table(n);
    cplx total{0.0, 0.0};
    for (std::size_t jx = 0; jx < table.two_j.size(); ++jx) {
        const int two_j = table.two_j[jx];
        const double w = table.weight[jx];
        for (int two_m = -two_j - 2; two_m <= two_j + 2; two_m += 2) {
            const ExcitationBlock block =
                build_excitation_block({two_j, two_m}, params);
            const Eigen::Matrix4cd e = block_propagator(block, t);
            // rho14 links different anchors, so within a block the initial
            // matrix is the diagonal plus the rho23 pair
            Eigen::Matrix4cd rho = Eigen::Matrix4cd::Zero();
            const double diag[4] = {x0.rho11, x0.rho22, x0.rho33, x0.rho44};
            for (int i = 0; i < 4; ++i)
                if (block.present[i]) rho(i, i) = diag[i];
            if (block.present[1] && block.present[2]) {
                rho(1, 2) = x0.rho23;
                rho(2, 1) = std::conj(x0.rho23);
            }
            const Eigen::Matrix4cd evolved = e * rho * e.adjoint();
            total += w * (evolved(0, 0) + evolved(1, 1));
        }
    }
    if (std::abs(total.imag()) > kImagResidueBound)
        throw std::runtime_error("block oracle: imaginary residue too large");
    return total.real();
}

Trajectory block_trajectory(const TimeGrid& grid, const ModelParams& params,
                            const XState& x0, const std::string& column_name) {
    Trajectory traj;
    traj.grid = grid;
    Column col;
    col.name = column_name;
    col.values.resize(grid.t.size());
    for (std::size_t i = 0; i < grid.t.size(); ++i)
        col.values[i] = block_population(grid.t[i], params, x0);
    traj.columns.push_back(std::move(col));
    return traj;
}

// ---- dense route ----

namespace {

// basis index = s * 2^(N+1) + i * 2^N + bath_bits, bit value 0 meaning up
struct DenseContext {
    Eigen::VectorXd eigenvalues;
    Eigen::MatrixXd w_pop;   // V^T P_+ V, symmetric
    Eigen::MatrixXd w_coh;   // V^T (|+><-|_S x 1) V
    Eigen::MatrixXd m1_re, m1_im; // V^T rho0 V
};

DenseContext build_dense_context(const ModelParams& params, const XState& x0) {
    const int n = checked_bath(params);
    x0.validate();
    if (n > 10)
        throw BathTooLarge("dense oracle: bath_size > 10");
    const int nb = 1 << n;
    const int dim = 4 * nb;
    const double site = params.alpha / (2.0 * std::sqrt(double(n)));
    const double g = 0.5 * params.gamma;

    Eigen::MatrixXd h = Eigen::MatrixXd::Zero(dim, dim);
    for (int v = 0; v < dim; ++v) {
        const int s = (v >> (n + 1)) & 1;
        const int ispin = (v >> n) & 1;
        const int bath = v & (nb - 1);
        // (gamma/2)(sigma+ tau- + sigma- tau+): flips s and ispin together
        if (s != ispin) {
            const int u = (v ^ (1 << (n + 1))) ^ (1 << n);
            h(u, v) += g;
        }
        // (alpha/(2 sqrt N)) sum_k (tau+ sigma-_k + tau- sigma+_k):
        // tau+ needs ispin down (1) and a bath site up (0); tau- the reverse
        for (int k = 0; k < n; ++k) {
            const int bit = (bath >> k) & 1;
            if (ispin != bit) continue; // tau and site flip in opposite senses
            const int u = (v ^ (1 << n)) ^ (1 << k);
            h(u, v) += site;
        }
    }

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(h);
    const Eigen::MatrixXd& vec = es.eigenvectors();

    DenseContext ctx;
    ctx.eigenvalues = es.eigenvalues();
    const int half = dim / 2;
    ctx.w_pop = vec.topRows(half).transpose() * vec.topRows(half);
    ctx.w_coh = vec.topRows(half).transpose() * vec.bottomRows(half);

    const cplx rho_si[4][4] = {
        {x0.rho11, 0.0, 0.0, x0.rho14},
        {0.0, x0.rho22, x0.rho23, 0.0},
        {0.0, std::conj(x0.rho23), x0.rho33, 0.0},
        {std::conj(x0.rho14), 0.0, 0.0, x0.rho44},
    };
    Eigen::MatrixXd b_re = Eigen::MatrixXd::Zero(dim, dim);
    Eigen::MatrixXd b_im = Eigen::MatrixXd::Zero(dim, dim);
    const double norm = 1.0 / nb;
    for (int a = 0; a < 4; ++a)
        for (int ap = 0; ap < 4; ++ap) {
            const cplx c = rho_si[a][ap] * norm;
            if (c == cplx{0.0, 0.0}) continue;
            b_re.middleRows(a * nb, nb) += c.real() * vec.middleRows(ap * nb, nb);
            b_im.middleRows(a * nb, nb) += c.imag() * vec.middleRows(ap * nb, nb);
        }
    ctx.m1_re = vec.transpose() * b_re;
    ctx.m1_im = vec.transpose() * b_im;
    return ctx;
}

// tr[O U rho U*] = sum_qp W_pq M1_qp e^{i(l_p - l_q)t} with W = V^T O V
cplx dense_trace(const DenseContext& ctx, const Eigen::MatrixXd& w, double t) {
    const Eigen::Index dim = ctx.eigenvalues.size();
    Eigen::VectorXd phi_re(dim), phi_im(dim);
    for (Eigen::Index p = 0; p < dim; ++p) {
        phi_re(p) = std::cos(ctx.eigenvalues(p) * t);
        phi_im(p) = std::sin(ctx.eigenvalues(p) * t);
    }
    const Eigen::MatrixXd z_re = w.transpose().cwiseProduct(ctx.m1_re);
    const Eigen::MatrixXd z_im = w.transpose().cwiseProduct(ctx.m1_im);
    const Eigen::VectorXd u_re = z_re * phi_re - z_im * phi_im;
    const Eigen::VectorXd u_im = z_re * phi_im + z_im * phi_re;
    // sum_q conj(phi_q) (Z phi)_q
    const double re = phi_re.dot(u_re) + phi_im.dot(u_im);
    const double im = phi_re.dot(u_im) - phi_im.dot(u_re);
    return {re, im};
}

double dense_population_from(const DenseContext& ctx, double t) {
    const cplx v = dense_trace(ctx, ctx.w_pop, t);
    if (std::abs(v.imag()) > 1e-12)
        throw std::runtime_error("dense oracle: imaginary residue too large");
    return v.real();
}

} // namespace

double dense_population(double t, const ModelParams& params, const XState& x0) {
    return dense_population_from(build_dense_context(params, x0), t);
}

Trajectory dense_trajectory(const TimeGrid& grid, const ModelParams& params,
                            const XState& x0, const std::string& column_name) {
    const DenseContext ctx = build_dense_context(params, x0);
    Trajectory traj;
    traj.grid = grid;
    Column col;
    col.name = column_name;
    col.values.resize(grid.t.size());
    for (std::size_t i = 0; i < grid.t.size(); ++i)
        col.values[i] = dense_population_from(ctx, grid.t[i]);
    traj.columns.push_back(std::move(col));
    return traj;
}

double dense_coherence_magnitude(double t, const ModelParams& params,
                                 const XState& x0) {
    const DenseContext ctx = build_dense_context(params, x0);
    return std::abs(dense_trace(ctx, ctx.w_coh, t));
}

XState random_xstate(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    double d[4];
    double sum = 0.0;
    for (double& x : d) {
        // Dirichlet(1,1,1,1) via exponentials
        x = -std::log1p(-unit(rng));
        sum += x;
    }
    for (double& x : d) x /= sum;
    XState x0;
    x0.rho11 = d[0];
    x0.rho22 = d[1];
    x0.rho33 = d[2];
    x0.rho44 = d[3];
    const double f23 = 0.999 * unit(rng);
    const double f14 = 0.999 * unit(rng);
    x0.rho23 = std::polar(f23 * std::sqrt(d[1] * d[2]), 2.0 * std::numbers::pi * unit(rng));
    x0.rho14 = std::polar(f14 * std::sqrt(d[0] * d[3]), 2.0 * std::numbers::pi * unit(rng));
    x0.validate();
    return x0;
}

} // namespace spinstar
