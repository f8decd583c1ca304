#pragma once

#include <complex>
#include <cstddef>
#include <functional>
#include <string>
#include <vector>

namespace spinstar {

// Worker count: SPINSTAR_THREADS if set (>= 1), else hardware concurrency.
int worker_count();

// Runs fn(i) for i in [0, n).  Each index writes only its own slot, so
// results are bitwise identical for any worker count.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn);

// Pairwise (tree) reduction; error grows like log n instead of n.
double pairwise_sum(const std::vector<double>& v);
std::complex<double> pairwise_sum(const std::vector<std::complex<double>>& v);

// a + b with the exact roundoff residual (Knuth two-sum).
struct TwoSum {
    double value;
    double err;
};
TwoSum two_sum(double a, double b);

// Shortest round-trip decimal: 17 significant digits, C locale, LF only.
std::string fmt17(double x);

} // namespace spinstar
