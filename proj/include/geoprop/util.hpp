#pragma once

#include <cmath>
#include <complex>
#include <cstdlib>
#include <functional>
#include <thread>
#include <vector>

namespace geoprop {

using cplx = std::complex<double>;

inline constexpr double kPi = 3.141592653589793238462643383279502884;

/// Reduce an angle to (-pi, pi].
inline double reduce_angle(double g) {
    double r = std::remainder(g, 2.0 * kPi);
    if (r <= -kPi) r += 2.0 * kPi;
    return r;
}

/// exp(i*phi) without going through std::polar's magnitude argument.
inline cplx cis(double phi) { return {std::cos(phi), std::sin(phi)}; }

/// Default worker count: GEOPROP_THREADS if set, else 1. Results are
/// per-output-sample independent, so any thread count gives identical bits.
inline int default_thread_count() {
    static const int n = [] {
        if (const char* env = std::getenv("GEOPROP_THREADS")) {
            int v = std::atoi(env);
            if (v >= 1) return v;
        }
        return 1;
    }();
    return n;
}

/// Run fn(i) for i in [0, n), split across default_thread_count() threads.
inline void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn) {
    int threads = default_thread_count();
    if (threads <= 1 || n < 2) {
        for (std::size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    std::size_t chunk = (n + threads - 1) / static_cast<std::size_t>(threads);
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(threads));
    for (int t = 0; t < threads; ++t) {
        std::size_t lo = static_cast<std::size_t>(t) * chunk;
        std::size_t hi = std::min(n, lo + chunk);
        if (lo >= hi) break;
        pool.emplace_back([lo, hi, &fn] {
            for (std::size_t i = lo; i < hi; ++i) fn(i);
        });
    }
    for (auto& th : pool) th.join();
}

}  // namespace geoprop
