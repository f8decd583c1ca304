#include "doctest.h"

#include <cmath>
#include <cstdint>
#include <stdexcept>

#include "spinstar/sectors.hpp"

using namespace spinstar;

TEST_CASE("sector enumeration covers the bath Hilbert space in order") {
    // two_j descending, two_m ascending inside each j
    const auto sectors = enumerate_sectors(4);
    REQUIRE(sectors.size() == 9);
    CHECK(sectors.front() == SectorLabel{4, -4});
    CHECK(sectors[4] == SectorLabel{4, 4});
    CHECK(sectors[5] == SectorLabel{2, -2});
    CHECK(sectors.back() == SectorLabel{0, 0});

    // odd bath: half-integer j, two_j odd
    for (const auto& s : enumerate_sectors(5)) {
        CHECK((s.two_j & 1) == 1);
        CHECK(((s.two_j ^ s.two_m) & 1) == 0);
        CHECK(valid_sector(5, s));
    }

    // state count sum_j nu (2j+1) = 2^N, checked via exact degeneracies
    for (int n : {1, 2, 3, 4, 5, 6, 10}) {
        std::uint64_t states = 0;
        for (int two_j = n; two_j >= 0; two_j -= 2)
            states += degeneracy_count_exact(n, two_j) * (two_j + 1);
        CHECK(states == (std::uint64_t(1) << n));
    }
}

TEST_CASE("spectral values and ladder coefficients") {
    const SectorLabel s{4, 2}; // j = 2, m = 1
    CHECK(jsq_value(s) == doctest::Approx(6.0).epsilon(1e-15));
    CHECK(jz_value(s) == doctest::Approx(1.0));
    CHECK(jpjm_value(s) == doctest::Approx(6.0)); // j(j+1) - m(m-1)
    CHECK(jmjp_value(s) == doctest::Approx(4.0));
    CHECK(jsym_value(s) == doctest::Approx(10.0));
    CHECK(ladder_coefficient(s, Ladder::raise_m) == doctest::Approx(2.0));
    CHECK(ladder_coefficient(s, Ladder::lower_m) ==
          doctest::Approx(std::sqrt(6.0)));

    // edges terminate
    CHECK(ladder_coefficient({4, 4}, Ladder::raise_m) == 0.0);
    CHECK(ladder_coefficient({4, -4}, Ladder::lower_m) == 0.0);
    // j = 0 is inert
    CHECK(ladder_coefficient({0, 0}, Ladder::raise_m) == 0.0);

    // half-integers: j = 3/2, m = 1/2: J+ coefficient sqrt(3)
    CHECK(ladder_coefficient({3, 1}, Ladder::raise_m) ==
          doctest::Approx(std::sqrt(3.0)));

    CHECK_THROWS_AS(((void)jz_value(SectorLabel{2, 3})), std::invalid_argument);
    CHECK_THROWS_AS(((void)jz_value(SectorLabel{2, -4})), std::invalid_argument);
}

TEST_CASE("degeneracy weights: known counts and the log form") {
    // N = 4: nu = 1 (j=2), 3 (j=1), 2 (j=0)
    CHECK(degeneracy_count_exact(4, 4) == 1);
    CHECK(degeneracy_count_exact(4, 2) == 3);
    CHECK(degeneracy_count_exact(4, 0) == 2);
    // N = 2: singlet + triplet
    CHECK(degeneracy_count_exact(2, 2) == 1);
    CHECK(degeneracy_count_exact(2, 0) == 1);
    CHECK(degeneracy_count_exact(1, 1) == 1);

    // log-space weight agrees with the exact integer count up to N = 60
    for (int n : {1, 2, 3, 7, 12, 29, 44, 60}) {
        for (int two_j = n % 2; two_j <= n; two_j += 2) {
            const double exact =
                std::ldexp(double(degeneracy_count_exact(n, two_j)), -n);
            const double w = degeneracy_weight(n, two_j);
            CHECK(w == doctest::Approx(exact).epsilon(1e-13));
        }
    }
}

TEST_CASE("degeneracy weights: sum rule and extreme sizes") {
    for (int n : {1, 2, 5, 10, 50, 137, 500, 1000}) {
        double sum = 0.0;
        const auto table = build_degeneracy_table(n);
        for (std::size_t i = 0; i < table.two_j.size(); ++i)
            sum += table.weight[i] * (table.two_j[i] + 1);
        CHECK(std::abs(sum - 1.0) < 1e-12);
    }

    // no overflow or underflow surprises at N = 10^4
    const int n = 10000;
    const double peak = degeneracy_weight(n, 200); // j of order sqrt(N)
    CHECK(std::isfinite(peak));
    CHECK(peak > 0.0);
    CHECK(std::isfinite(log_degeneracy_weight(n, n))); // fully stretched j = N/2
    CHECK(degeneracy_weight(n, n) >= 0.0);
}
