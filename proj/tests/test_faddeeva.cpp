#include "doctest.h"

#include <cmath>
#include <complex>

#include "spinstar/faddeeva.hpp"

using namespace spinstar;
using cd = std::complex<double>;

namespace {

// reference values computed with 40-digit arithmetic
struct Ref {
    double re_z, im_z, re_w, im_w;
};

constexpr Ref kFaddeevaRefs[] = {
    {0.1, 0.2, 0.80256668732089966487, 0.080028603551524777209},
    {1.0, 1.0, 0.30474420525691259246, 0.20821893820283162729},
    {2.5, 0.3, 0.038226506260685208947, 0.2430420085309775812},
    {0.0, 0.5, 0.61569034419292587487, 0.0},
    {3.0, 4.0, 0.09093390419476534246, 0.065592330527914277737},
    {5.9, 0.1, 0.001695662926305428064, 0.09703269289893519785},
    {-5.9, 0.1, 0.001695662926305428064, -0.09703269289893519785},
    {0.0, 6.1, 0.091294300368683835006, 0.0},
    {6.5, 0.0, 4.477732441718301199e-19, 0.087864424731045661897},
    {-3.7, 2.2, 0.070615441259688975882, -0.11223366438495623439},
    {10.0, 1.0, 0.0056699425669021785245, 0.056129645315951261317},
    {-15.0, 0.5, 0.0012607842007182067061, -0.03765447550731251696},
    {0.5, 25.0, 0.022540592037561068949, 0.00045009369435597436451},
    {30.0, 0.001, 6.2792502343067086033e-7, 0.018816784847694872542},
    {-0.3536, 1.4142, 0.32578969459580911875, -0.061104452483828621734},
    {-35.36, 0.00707, 3.1940498834991042545e-6, -0.01596197535329507908},
    {1.0e-8, 1.0e-8, 0.99999998871620832904, 1.128379147095512748e-8},
    {0.0, 0.0, 1.0, 0.0},
    {4.2, 4.2, 0.068074292502746475622, 0.066176175739786067332},
    {-2.0, 0.001, 0.018547236370405552682, -0.33995283120737862535},
};

constexpr Ref kErfRefs[] = {
    {0.5, 0.5, 0.64261291485482052832, 0.45788139443519221584},
    {2.0, -1.0, 1.0036063427256517509, 0.011259006028815025076},
    {-1.5, 2.5, -7.2546886934779263446, 8.7859672933704554608},
    {3.0, 0.0, 0.99997790950300141456, 0.0},
};

} // namespace

TEST_CASE("faddeeva function against high-precision references") {
    for (const Ref& r : kFaddeevaRefs) {
        const cd w = faddeeva_w({r.re_z, r.im_z});
        const cd expect{r.re_w, r.im_w};
        // |w| <= 1 in the upper half plane, so absolute error is the
        // right yardstick; allow relative slack for the graded cases
        const double tol = 1e-14 * std::max(1.0, std::abs(expect));
        CHECK(std::abs(w - expect) < 5.0 * tol);
    }
}

TEST_CASE("faddeeva symmetries") {
    const cd zs[] = {{0.3, 0.7}, {2.0, 0.1}, {7.3, 2.0}, {0.0, 3.0}, {1.5, 0.0}};
    for (cd z : zs) {
        // w(-conj z) = conj(w(z)) exactly mirrors the sampling grid
        const cd a = faddeeva_w(cd{-z.real(), z.imag()});
        const cd b = std::conj(faddeeva_w(z));
        CHECK(std::abs(a - b) < 1e-15);

        // lower half plane via reflection: w(z) + w(-z) = 2 exp(-z^2)
        const cd lower = faddeeva_w(-z);
        const cd expect = 2.0 * std::exp(-z * z) - faddeeva_w(z);
        CHECK(std::abs(lower - expect) <= 1e-13 * std::max(1.0, std::abs(expect)));
    }

    // the grid choice switches near quarter-node offsets; w stays smooth
    for (double x : {0.0620, 0.0630, 3.1870, 3.1880, 0.1245, 0.1255}) {
        const cd a = faddeeva_w({x - 5e-5, 0.3});
        const cd b = faddeeva_w({x + 5e-5, 0.3});
        CHECK(std::abs(a - b) < 1e-3 * std::abs(a));
    }
}

TEST_CASE("complex error function") {
    for (const Ref& r : kErfRefs) {
        const cd v = erf_c({r.re_z, r.im_z});
        const cd expect{r.re_w, r.im_w};
        CHECK(std::abs(v - expect) < 1e-13 * std::max(1.0, std::abs(expect)));
    }
    // real axis agrees with std::erf
    for (double x : {-2.5, -0.4, 0.0, 0.3, 1.0, 4.0}) {
        CHECK(erf_c({x, 0.0}).real() == doctest::Approx(std::erf(x)).epsilon(1e-14));
        CHECK(std::abs(erf_c({x, 0.0}).imag()) < 1e-16);
    }
    // complements
    const cd z{1.2, -0.8};
    CHECK(std::abs(erf_c(z) + erfc_c(z) - 1.0) < 1e-14);
}
