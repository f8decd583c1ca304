#include "doctest.h"

#include <cmath>
#include <complex>
#include <random>

#include "spinstar/errors.hpp"
#include "spinstar/oracle.hpp"
#include "spinstar/states.hpp"
#include "spinstar/thermo.hpp"

using namespace spinstar;

namespace {

using ld = long double;
using cld = std::complex<ld>;

// Independent oracle for the infinite-bath population, kept in extended
// precision.  The bath enters only through the integration variable
// s = j^2/N of the collective-spin magnitude, with density 2 e^{-2s}.
// At fixed s the register sees the symmetric 4x4 block
//   [[0,a,0,0],[a,0,g,0],[0,g,0,a],[0,0,a,0]],  a = (alpha/2) sqrt(s),
// which splits into even/odd parity 2x2 pieces [[0,a],[a,+-g]].
struct LimitRows {
    cld e0[4];
    cld e1[4];
};

LimitRows limit_rows(ld s, ld t, ld alpha, ld gamma) {
    const ld a = 0.5L * alpha * std::sqrt(s);
    const ld h = 0.25L * gamma; // half of g = gamma/2
    const ld w = std::sqrt(h * h + a * a);
    const ld ct = std::cos(w * t);
    const ld snc = w > 0.0L ? std::sin(w * t) / w : t;
    const cld i{0.0L, 1.0L};
    const cld pe = std::polar<ld>(1.0L, -h * t);
    const cld po = std::polar<ld>(1.0L, h * t);
    const cld ee00 = pe * (ct + i * (snc * h));
    const cld ee01 = pe * (-i * (snc * a));
    const cld ee11 = pe * (ct - i * (snc * h));
    const cld eo00 = po * (ct - i * (snc * h));
    const cld eo01 = po * (-i * (snc * a));
    const cld eo11 = po * (ct + i * (snc * h));
    LimitRows r;
    r.e0[0] = 0.5L * (ee00 + eo00);
    r.e0[1] = 0.5L * (ee01 + eo01);
    r.e0[2] = 0.5L * (ee01 - eo01);
    r.e0[3] = 0.5L * (ee00 - eo00);
    r.e1[0] = r.e0[1];
    r.e1[1] = 0.5L * (ee11 + eo11);
    r.e1[2] = 0.5L * (ee11 - eo11);
    r.e1[3] = r.e0[2];
    return r;
}

ld limit_phi(ld s, ld t, ld alpha, ld gamma, const XState& x) {
    const LimitRows r = limit_rows(s, t, alpha, gamma);
    const ld pops[4] = {(ld)x.rho11, (ld)x.rho22, (ld)x.rho33, (ld)x.rho44};
    ld tot = 0.0L;
    for (int k = 0; k < 4; ++k)
        tot += pops[k] * (std::norm(r.e0[k]) + std::norm(r.e1[k]));
    const cld r23{(ld)x.rho23.real(), (ld)x.rho23.imag()};
    const cld cross = r23 * (r.e0[1] * std::conj(r.e0[2]) +
                             r.e1[1] * std::conj(r.e1[2]));
    return tot + 2.0L * cross.real();
}

template <typename F>
ld simpson_rec(const F& f, ld a, ld b, ld fa, ld fm, ld fb, ld whole, ld tol,
               int depth) {
    const ld m = 0.5L * (a + b);
    const ld fl = f(0.5L * (a + m));
    const ld fr = f(0.5L * (m + b));
    const ld left = (m - a) / 6.0L * (fa + 4.0L * fl + fm);
    const ld right = (b - m) / 6.0L * (fm + 4.0L * fr + fb);
    if (depth <= 0 || std::abs(left + right - whole) <= 15.0L * tol)
        return left + right + (left + right - whole) / 15.0L;
    return simpson_rec(f, a, m, fa, fl, fm, left, 0.5L * tol, depth - 1) +
           simpson_rec(f, m, b, fm, fr, fb, right, 0.5L * tol, depth - 1);
}

// rho11(t) = 2 int_0^inf e^{-2s} Phi(s) ds, computed with s = u^2 so the
// integrand oscillates at a uniform rate in u
ld limit_population_quad(ld t, ld alpha, ld gamma, const XState& x) {
    const auto f = [&](ld u) {
        const ld s = u * u;
        return 4.0L * u * std::exp(-2.0L * s) * limit_phi(s, t, alpha, gamma, x);
    };
    const ld umax = 6.0L;
    const int panels =
        std::max(16, int(std::ceil(umax * (double)(alpha * gamma * t) / 3.0)) + 16);
    ld total = 0.0L;
    for (int p = 0; p < panels; ++p) {
        const ld a = umax * (ld)p / panels;
        const ld b = umax * (ld)(p + 1) / panels;
        const ld fa = f(a), fb = f(b), fm = f(0.5L * (a + b));
        const ld whole = (b - a) / 6.0L * (fa + 4.0L * fm + fb);
        total += simpson_rec(f, a, b, fa, fm, fb, whole, 1e-15L / panels, 30);
    }
    return total;
}

constexpr double kPi = 3.14159265358979323846;

} // namespace

TEST_CASE("memory-function series reproduces frozen references") {
    // independently computed in 50-digit arithmetic
    struct Ref { double alpha, t, f; };
    const Ref refs[] = {
        {1.0, 1.0, 0.05873106580788388792525},
        {0.5, 1.9, 0.2014096540084338176282},
        {0.7, 2.4, 0.283815884096377683742},
        {0.25, 3.3, 0.5238870645910749939643},
    };
    for (const auto& r : refs) {
        const ModelParams params{1.0, r.alpha, 1};
        CHECK(std::abs(f_series(r.t, params) - r.f) < 1e-13);
    }
}

TEST_CASE("oscillation function reproduces frozen references") {
    struct Ref { double alpha, t, g; };
    const Ref refs[] = {
        {1.0, 1.0, 0.220383144919654685744},
        {0.5, 1.9, 0.3755681929044570398867},
        {0.7, 2.4, 0.3604361145021725481711},
        {0.25, 3.3, 0.4644734745255174438189},
    };
    for (const auto& r : refs) {
        const ModelParams params{1.0, r.alpha, 1};
        CHECK(std::abs(g_function(r.t, params) - r.g) < 1e-12);
    }
}

TEST_CASE("series and integral forms of f agree") {
    for (double alpha : {0.25, 0.5, 1.0}) {
        const ModelParams params{1.0, alpha, 1};
        for (double t : {0.5, 1.7, 3.0, 6.0})
            CHECK(std::abs(f_series(t, params) - f_integral(t, params)) < 1e-11);
    }
}

TEST_CASE("both limit functions vanish at t = 0") {
    const ModelParams params{1.0, 0.8, 1};
    const auto lf = limit_functions(0.0, params);
    CHECK(lf.f_val == 0.0);
    CHECK(lf.g_val == 0.0);
    CHECK(lf.f_series_converged);
}

TEST_CASE("decoupled intermediate spin is rejected") {
    const ModelParams params{1.0, 0.0, 1};
    CHECK_THROWS_AS((void)limit_functions(1.0, params), DegenerateAlpha);
    CHECK_THROWS_AS((void)population_limit(1.0, params,
                                           build_state(StateFamily::phi_plus, 1.0, 0.0)),
                    DegenerateAlpha);
}

TEST_CASE("strong coupling: series overflow is reported, integral takes over") {
    const ModelParams params{1.0, 100.0, 1};
    CHECK_THROWS_AS((void)f_series(1.0, params), NonConvergent);
    const auto lf = limit_functions(1.0, params);
    CHECK_FALSE(lf.f_series_converged);
    CHECK(std::abs(lf.f_val) < 1e-2);
    CHECK(std::abs(lf.g_val) < 1e-2);
}

TEST_CASE("weak-coupling expansions track the full functions") {
    // the quoted second-order coefficients are themselves approximate, so
    // the agreement saturates at O(alpha^2/gamma^2), not O(alpha^4)
    const ModelParams params{1.0, 0.01, 1};
    for (int k = 1; k <= 24; ++k) {
        const double t = k * (4.0 * kPi / 24.0);
        const auto lf = limit_functions(t, params);
        CHECK(lf.f_truncation_residual < 1e-12);
        CHECK(std::abs(lf.f_val - f_small_alpha(t, params)) < 5e-4);
        CHECK(std::abs(lf.g_val - g_small_alpha(t, params)) < 5e-4);
    }
}

TEST_CASE("vanishing coupling collapses the limit onto bare Rabi flopping") {
    const ModelParams params{1.0, 1e-6, 1};
    std::mt19937_64 rng(909);
    const XState x = random_xstate(rng);
    for (int k = 0; k <= 20; ++k) {
        const double t = k * (4.0 * kPi / 20.0);
        const double c = std::cos(0.5 * t), s = std::sin(0.5 * t);
        const double rabi = x.rho11 + c * c * x.rho22 + s * s * x.rho33 -
                            2.0 * s * c * x.rho23.imag();
        CHECK(std::abs(population_limit(t, params, x) - rabi) < 1e-6);
    }
}

TEST_CASE("limit population matches extended-precision quadrature") {
    std::mt19937_64 rng(160914);
    const XState states[] = {
        build_state(StateFamily::phi_plus, kPi / 3.0, kPi / 2.0),
        build_state(StateFamily::psi_minus, 0.9, 0.3),
        random_xstate(rng),
    };
    double worst = 0.0;
    for (double alpha : {0.3, 0.7, 1.2}) {
        const ModelParams params{1.0, alpha, 1};
        for (double t : {0.8, 2.1, 4.4})
            for (const auto& x : states) {
                const double quad = (double)limit_population_quad(t, alpha, 1.0L, x);
                worst = std::max(worst, std::abs(population_limit(t, params, x) - quad));
            }
    }
    CHECK(worst < 2e-9);
}

TEST_CASE("limit trajectory metadata records series health") {
    const ModelParams params{1.0, 0.5, 1};
    const XState x = build_state(StateFamily::phi_plus, kPi / 3.0, 0.0);
    const auto traj = limit_trajectory(make_grid(10.0, 41), params, x);
    CHECK(traj.has_column("rho11"));
    CHECK(traj.column("rho11").values.size() == 41);
    // population stays a probability along the whole curve
    for (double v : traj.column("rho11").values) {
        CHECK(v >= -1e-12);
        CHECK(v <= 1.0 + 1e-12);
    }
}
