#include "spinstar/sectors.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace spinstar {

namespace {

void check_label(const SectorLabel& s) {
    if (s.two_j < 0)
        throw std::invalid_argument("sector: two_j must be >= 0");
    if (std::abs(s.two_m) > s.two_j)
        throw std::invalid_argument("sector: |two_m| exceeds two_j");
    if (((s.two_j ^ s.two_m) & 1) != 0)
        throw std::invalid_argument("sector: two_j and two_m must share parity");
}

void check_bath(int bath_size) {
    if (bath_size < 1)
        throw std::invalid_argument("bath_size must be >= 1");
}

} // namespace

double jsq_value(const SectorLabel& s) {
    check_label(s);
    return 0.25 * double(s.two_j) * double(s.two_j + 2);
}

double jz_value(const SectorLabel& s) {
    check_label(s);
    return 0.5 * double(s.two_m);
}

double jpjm_value(const SectorLabel& s) {
    check_label(s);
    // j(j+1) - m(m-1) = (two_j(two_j+2) - two_m(two_m-2)) / 4
    return 0.25 * (double(s.two_j) * double(s.two_j + 2) -
                   double(s.two_m) * double(s.two_m - 2));
}

double jmjp_value(const SectorLabel& s) {
    check_label(s);
    return 0.25 * (double(s.two_j) * double(s.two_j + 2) -
                   double(s.two_m) * double(s.two_m + 2));
}

double jsym_value(const SectorLabel& s) {
    return jpjm_value(s) + jmjp_value(s);
}

double ladder_coefficient(const SectorLabel& s, Ladder dir) {
    check_label(s);
    if (dir == Ladder::raise_m) {
        if (s.two_m >= s.two_j) return 0.0;
        return std::sqrt(jmjp_value(s));
    }
    if (s.two_m <= -s.two_j) return 0.0;
    return std::sqrt(jpjm_value(s));
}

bool valid_sector(int bath_size, const SectorLabel& s) {
    if (bath_size < 1) return false;
    if (s.two_j < 0 || s.two_j > bath_size) return false;
    if (((bath_size ^ s.two_j) & 1) != 0) return false;
    if (std::abs(s.two_m) > s.two_j) return false;
    if (((s.two_j ^ s.two_m) & 1) != 0) return false;
    return true;
}

std::vector<SectorLabel> enumerate_sectors(int bath_size) {
    check_bath(bath_size);
    std::vector<SectorLabel> out;
    for (int two_j = bath_size; two_j >= 0; two_j -= 2)
        for (int two_m = -two_j; two_m <= two_j; two_m += 2)
            out.push_back({two_j, two_m});
    return out;
}

double log_degeneracy_weight(int bath_size, int two_j) {
    check_bath(bath_size);
    if (two_j < 0 || two_j > bath_size || (((bath_size ^ two_j) & 1) != 0))
        throw std::invalid_argument("degeneracy: two_j incompatible with bath_size");
    const double n = bath_size;
    const double k = 0.5 * (bath_size + two_j);
    const double log_binom = std::lgamma(n + 1.0) - std::lgamma(k + 1.0) -
                             std::lgamma(n - k + 1.0);
    return log_binom + std::log(2.0 * (two_j + 1)) -
           std::log(double(bath_size + two_j + 2)) - n * std::numbers::ln2;
}

double degeneracy_weight(int bath_size, int two_j) {
    return std::exp(log_degeneracy_weight(bath_size, two_j));
}

std::uint64_t degeneracy_count_exact(int bath_size, int two_j) {
    check_bath(bath_size);
    if (bath_size > 60)
        throw std::invalid_argument("degeneracy_count_exact: 64-bit safe only to N = 60");
    if (two_j < 0 || two_j > bath_size || (((bath_size ^ two_j) & 1) != 0))
        throw std::invalid_argument("degeneracy: two_j incompatible with bath_size");
    // nu = C(N, k) - C(N, k+1) with k = (N + 2j)/2; evaluate C(N, .) by the
    // exact multiplicative recurrence (each prefix product is an integer).
    const int n = bath_size;
    const int k = (bath_size + two_j) / 2;
    auto binom = [n](int r) -> unsigned __int128 {
        if (r < 0 || r > n) return 0;
        unsigned __int128 c = 1;
        for (int i = 0; i < r; ++i) {
            c = c * (unsigned __int128)(n - i);
            c /= (unsigned __int128)(i + 1);
        }
        return c;
    };
    return (std::uint64_t)(binom(k) - binom(k + 1));
}

DegeneracyTable build_degeneracy_table(int bath_size) {
    check_bath(bath_size);
    DegeneracyTable table;
    table.bath_size = bath_size;
    // Downward ratio recurrence instead of per-entry exp(lgamma ...): the
    // top multiplet has weight exactly 2^-N, and each step multiplies by
    // nu(N,j)/nu(N,j+1) = (2j+1)(N+2j+4) / ((N-2j)(2j+3)), a handful of
    // rounding errors per entry.  The lgamma route drifts by
    // ~log(binom) * eps ~ 1e-13 near N = 1000, which is too coarse for
    // the unit sum rule.
    double w = std::ldexp(1.0, -bath_size);
    for (int two_j = bath_size; two_j >= 0; two_j -= 2) {
        table.two_j.push_back(two_j);
        table.weight.push_back(w);
        if (two_j >= 2) {
            const int tj = two_j - 2;
            w *= double(tj + 1) * double(bath_size + tj + 4) /
                 (double(bath_size - tj) * double(tj + 3));
        }
    }
    return table;
}

} // namespace spinstar
