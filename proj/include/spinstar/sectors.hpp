#pragma once

#include <cstdint>
#include <vector>

namespace spinstar {

// Collective bath sector |j, m>.  Angular momenta are stored doubled so
// half-integer values stay exact: two_j = 2j, two_m = 2m.
struct SectorLabel {
    int two_j = 0;
    int two_m = 0;

    friend bool operator==(const SectorLabel&, const SectorLabel&) = default;
};

// j(j+1)
double jsq_value(const SectorLabel& s);
// m
double jz_value(const SectorLabel& s);
// <j,m| J+ J- |j,m> = j(j+1) - m(m-1)
double jpjm_value(const SectorLabel& s);
// <j,m| J- J+ |j,m> = j(j+1) - m(m+1)
double jmjp_value(const SectorLabel& s);
// J+J- + J-J+ = 2(j(j+1) - m^2)
double jsym_value(const SectorLabel& s);

enum class Ladder { raise_m, lower_m };

// Matrix element <j, m+/-1 | J+/- | j, m>; zero past the edge of the ladder.
double ladder_coefficient(const SectorLabel& s, Ladder dir);

bool valid_sector(int bath_size, const SectorLabel& s);

// All (j, m) sectors of an N-spin bath: two_j runs N, N-2, ..., (N mod 2),
// and within each j the two_m runs -two_j, -two_j+2, ..., two_j.
std::vector<SectorLabel> enumerate_sectors(int bath_size);

// log of nu(N, j) / 2^N, the fraction of the unpolarized bath ensemble in
// one (j, m) multiplet copy.  Evaluated as a single factored ratio,
// log C(N, (N+2j)/2) + log(2(2j+1)) - log(N+2j+2) - N log 2,
// so there is no large-term cancellation at any N.
double log_degeneracy_weight(int bath_size, int two_j);
double degeneracy_weight(int bath_size, int two_j);

// nu(N, j) exactly, for cross-checking the log form.  Fits in 64 bits
// up to N = 60.
std::uint64_t degeneracy_count_exact(int bath_size, int two_j);

struct DegeneracyTable {
    int bath_size = 0;
    std::vector<int> two_j;        // descending, same order as enumerate_sectors
    std::vector<double> weight;    // nu(N, j) / 2^N
};

DegeneracyTable build_degeneracy_table(int bath_size);

} // namespace spinstar
