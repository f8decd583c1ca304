#include "spinstar/util.hpp"

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <thread>

namespace spinstar {

int worker_count() {
    if (const char* env = std::getenv("SPINSTAR_THREADS")) {
        const int n = std::atoi(env);
        if (n >= 1) return n;
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw ? int(hw) : 1;
}

void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn) {
    const std::size_t workers = std::min<std::size_t>(worker_count(), n ? n : 1);
    if (workers <= 1) {
        for (std::size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(workers);
    std::exception_ptr first_error;
    std::mutex error_mutex;
    for (std::size_t w = 0; w < workers; ++w) {
        pool.emplace_back([&, w] {
            try {
                // static stride partition keeps slot ownership deterministic
                for (std::size_t i = w; i < n; i += workers) fn(i);
            } catch (...) {
                std::lock_guard<std::mutex> lock(error_mutex);
                if (!first_error) first_error = std::current_exception();
            }
        });
    }
    for (auto& th : pool) th.join();
    if (first_error) std::rethrow_exception(first_error);
}

namespace {

template <typename T>
T pairwise_impl(const T* v, std::size_t n) {
    if (n == 0) return T{};
    if (n <= 8) {
        T s = v[0];
        for (std::size_t i = 1; i < n; ++i) s += v[i];
        return s;
    }
    const std::size_t half = n / 2;
    return pairwise_impl(v, half) + pairwise_impl(v + half, n - half);
}

} // namespace

double pairwise_sum(const std::vector<double>& v) {
    return pairwise_impl(v.data(), v.size());
}

std::complex<double> pairwise_sum(const std::vector<std::complex<double>>& v) {
    return pairwise_impl(v.data(), v.size());
}

TwoSum two_sum(double a, double b) {
    const double s = a + b;
    const double ap = s - b;
    const double bp = s - ap;
    return {s, (a - ap) + (b - bp)};
}

std::string fmt17(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.16e", x);
    return buf;
}

} // namespace spinstar
