#include "spinstar/tcl2.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "spinstar/errors.hpp"
#include "spinstar/sectors.hpp"

namespace spinstar {

namespace {

// state layout: per sector, four contiguous blocks of length 2j+1:
// [R11 | r11 | R22 | r22]; R carries S up, r carries S down, channel 1
// pairs (|++>,|+->) and channel 2 pairs (|-+>,|-->)
struct SectorLayout {
    int two_j;
    int offset;
    int len;
    double weight;
    std::vector<double> bond; // (j - m)(j + m + 1) for m = -j .. j-1
};

struct Workspace {
    std::vector<SectorLayout> sectors;
    int size = 0;
    double k11 = 0.0, k22 = 0.0;
    double gamma2_half = 0.0;
    double lam_base = 0.0; // -gamma Im(rho23)
    InhomMode inhom = InhomMode::degeneracy_weighted;
    int bath_size = 0;
};

Workspace make_workspace(const ModelParams& params, const XState& x0,
                         const Tcl2Options& options) {
    Workspace ws;
    ws.bath_size = params.bath_size;
    const double n = params.bath_size;
    ws.k11 = params.alpha * params.alpha / (2.0 * n);
    ws.k22 = options.coeff_mode == CoeffMode::published
                 ? 2.0 * params.alpha * params.alpha / n
                 : ws.k11;
    ws.gamma2_half = 0.5 * params.gamma * params.gamma;
    ws.lam_base = -params.gamma * x0.rho23.imag();
    ws.inhom = options.inhom_mode;

    const DegeneracyTable table = build_degeneracy_table(params.bath_size);
    for (std::size_t jx = 0; jx < table.two_j.size(); ++jx) {
        SectorLayout s;
        s.two_j = table.two_j[jx];
        s.len = s.two_j + 1;
        s.offset = ws.size;
        s.weight = table.weight[jx];
        const double j = 0.5 * s.two_j;
        for (int i = 0; i + 1 < s.len; ++i) {
            const double m = -j + i;
            s.bond.push_back((j - m) * (j + m + 1.0));
        }
        ws.sectors.push_back(std::move(s));
        ws.size += 4 * s.len;
    }
    return ws;
}

std::vector<double> initial_state(const Workspace& ws, const XState& x0) {
    std::vector<double> y(ws.size);
    for (const auto& s : ws.sectors) {
        double* base = y.data() + s.offset;
        for (int i = 0; i < s.len; ++i) {
            base[i] = s.weight * x0.rho11;              // R11
            base[s.len + i] = s.weight * x0.rho22;      // r11
            base[2 * s.len + i] = s.weight * x0.rho33;  // R22
            base[3 * s.len + i] = s.weight * x0.rho44;  // r22
        }
    }
    return y;
}

void rhs(const Workspace& ws, double t, const std::vector<double>& y,
         std::vector<double>& dy) {
    std::fill(dy.begin(), dy.end(), 0.0);
    const double pub_lam = ws.lam_base * std::ldexp(1.0, -ws.bath_size);
    for (const auto& s : ws.sectors) {
        const double* R11 = y.data() + s.offset;
        const double* r11 = R11 + s.len;
        const double* R22 = r11 + s.len;
        const double* r22 = R22 + s.len;
        double* dR11 = dy.data() + s.offset;
        double* dr11 = dR11 + s.len;
        double* dR22 = dr11 + s.len;
        double* dr22 = dR22 + s.len;

        // ladder bonds (m, m+1): excitation hops between the channels'
        // opposite ends with time-linear rates
        for (int i = 0; i + 1 < s.len; ++i) {
            const double c = s.bond[i];
            const double f11 = ws.k11 * c * (r11[i + 1] - R11[i]) * t;
            dR11[i] += f11;
            dr11[i + 1] -= f11;
            const double f22 = ws.k22 * c * (r22[i + 1] - R22[i]) * t;
            dR22[i] += f22;
            dr22[i + 1] -= f22;
        }
        // direct S <-> I exchange and the coherence-fed inhomogeneity
        const double lam = ws.inhom == InhomMode::published
                               ? pub_lam
                               : ws.lam_base * s.weight;
        for (int i = 0; i < s.len; ++i) {
            const double ex = ws.gamma2_half * (R22[i] - r11[i]) * t;
            dr11[i] += ex + lam;
            dR22[i] -= ex + lam;
        }
    }
}

double population(const Workspace& ws, const std::vector<double>& y) {
    double sum = 0.0;
    for (const auto& s : ws.sectors)
        for (int i = 0; i < 2 * s.len; ++i) sum += y[s.offset + i];
    return sum;
}

double total_probability(const std::vector<double>& y) {
    double sum = 0.0;
    for (double v : y) sum += v;
    return sum;
}

} // namespace

Tcl2Result integrate_tcl2(const TimeGrid& grid, const ModelParams& params,
                          const XState& x0, const Tcl2Options& options) {
    params.validate();
    x0.validate();
    if (grid.t.empty() || grid.t.front() < 0.0)
        throw std::invalid_argument("tcl2: grid must start at t >= 0");
    for (std::size_t i = 1; i < grid.t.size(); ++i)
        if (grid.t[i] <= grid.t[i - 1])
            throw std::invalid_argument("tcl2: grid must be strictly increasing");
    if (params.gamma > 0.0 && options.step > 1e-2 / params.gamma)
        throw std::invalid_argument("tcl2: step exceeds 1e-2/gamma");

    Workspace ws = make_workspace(params, x0, options);
    double h_max = options.step;
    if (h_max <= 0.0) {
        h_max = params.gamma > 0.0 ? 1e-3 / params.gamma : 1e-3;
        // rates grow linearly in t, so the stiffest point is the end of
        // the grid; keep h inside the RK4 stability interval there
        double c_max = 0.0;
        for (const auto& s : ws.sectors)
            for (double b : s.bond) c_max = std::max(c_max, b);
        const double rate_end =
            (std::max(ws.k11, ws.k22) * c_max + ws.gamma2_half) * grid.t.back();
        if (rate_end > 0.0) h_max = std::min(h_max, 1.5 / rate_end);
    }
    std::vector<double> y = initial_state(ws, x0);
    std::vector<double> k1(ws.size), k2(ws.size), k3(ws.size), k4(ws.size),
        tmp(ws.size);

    Tcl2Result result;
    result.trajectory.grid = grid;
    Column col;
    col.name = "rho11";
    col.values.reserve(grid.t.size());

    const double total0 = total_probability(y);
    double t = 0.0;
    for (double target : grid.t) {
        const double span = target - t;
        if (span > 0.0) {
            const int steps = std::max(1, int(std::ceil(span / h_max - 1e-12)));
            const double h = span / steps;
            for (int s = 0; s < steps; ++s) {
                rhs(ws, t, y, k1);
                for (int i = 0; i < ws.size; ++i) tmp[i] = y[i] + 0.5 * h * k1[i];
                rhs(ws, t + 0.5 * h, tmp, k2);
                for (int i = 0; i < ws.size; ++i) tmp[i] = y[i] + 0.5 * h * k2[i];
                rhs(ws, t + 0.5 * h, tmp, k3);
                for (int i = 0; i < ws.size; ++i) tmp[i] = y[i] + h * k3[i];
                rhs(ws, t + h, tmp, k4);
                for (int i = 0; i < ws.size; ++i)
                    y[i] += h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
                t += h;
            }
            t = target; // kill accumulated roundoff in the clock
        }
        const double drift = std::abs(total_probability(y) - total0);
        result.max_drift = std::max(result.max_drift, drift);
        if (drift > options.drift_bound)
            throw StepTooLarge("tcl2: probability drift exceeds bound");
        col.values.push_back(population(ws, y));
    }
    result.trajectory.columns.push_back(std::move(col));
    result.trajectory.metadata["coeff_mode"] =
        coeff_mode_name(options.coeff_mode);
    result.trajectory.metadata["inhom_mode"] = inhom_mode_name(options.inhom_mode);
    return result;
}

Trajectory naive_trajectory(const TimeGrid& grid, const ModelParams& params,
                            const XState& x0, const std::string& column_name) {
    params.validate();
    x0.validate();
    // d(p - q)/dt = -gamma^2 t (p - q) integrates in closed form; RK4 is
    // used anyway so this solver exercises the same machinery as tcl2
    double h_max = params.gamma > 0.0 ? 1e-3 / params.gamma : 1e-3;
    const double rate_end =
        params.gamma * params.gamma * (grid.t.empty() ? 0.0 : grid.t.back());
    if (rate_end > 0.0) h_max = std::min(h_max, 1.5 / rate_end);
    double p = x0.rho11 + x0.rho22;
    double q = x0.rho33 + x0.rho44;
    const double g2 = params.gamma * params.gamma;
    const auto dp = [g2](double time, double pv, double qv) {
        return -0.5 * g2 * time * (pv - qv);
    };
    Trajectory traj;
    traj.grid = grid;
    Column col;
    col.name = column_name;
    col.values.reserve(grid.t.size());
    double t = 0.0;
    for (double target : grid.t) {
        const double span = target - t;
        if (span > 0.0) {
            const int steps = std::max(1, int(std::ceil(span / h_max - 1e-12)));
            const double h = span / steps;
            for (int s = 0; s < steps; ++s) {
                const double k1 = dp(t, p, q);
                const double k2 = dp(t + 0.5 * h, p + 0.5 * h * k1, q - 0.5 * h * k1);
                const double k3 = dp(t + 0.5 * h, p + 0.5 * h * k2, q - 0.5 * h * k2);
                const double k4 = dp(t + h, p + h * k3, q - h * k3);
                const double dpv = h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
                p += dpv;
                q -= dpv;
                t += h;
            }
            t = target;
        }
        col.values.push_back(p);
    }
    traj.columns.push_back(std::move(col));
    return traj;
}

const char* coeff_mode_name(CoeffMode mode) {
    return mode == CoeffMode::published ? "published" : "symmetric";
}

const char* inhom_mode_name(InhomMode mode) {
    return mode == InhomMode::published ? "published" : "degeneracy_weighted";
}

CoeffMode parse_coeff_mode(const std::string& name) {
    if (name == "published") return CoeffMode::published;
    if (name == "symmetric") return CoeffMode::symmetric;
    throw std::invalid_argument("unknown coeff mode: " + name);
}

InhomMode parse_inhom_mode(const std::string& name) {
    if (name == "published") return InhomMode::published;
    if (name == "degeneracy_weighted") return InhomMode::degeneracy_weighted;
    throw std::invalid_argument("unknown inhom mode: " + name);
}

} // namespace spinstar
