#include "geoprop/fft.hpp"

#include <fftw3.h>

#include <mutex>

namespace geoprop {

namespace {

std::mutex& planner_mutex() {
    static std::mutex m;
    return m;
}

void run_fftw(std::vector<cplx>& v, int sign) {
    const int n = static_cast<int>(v.size());
    fftw_complex* buf = reinterpret_cast<fftw_complex*>(v.data());
    fftw_plan plan;
    {
        // FFTW's planner is not thread-safe; FFTW_ESTIMATE keeps results
        // independent of runtime measurements.
        std::lock_guard<std::mutex> lock(planner_mutex());
        plan = fftw_plan_dft_1d(n, buf, buf, sign, FFTW_ESTIMATE);
    }
    fftw_execute(plan);
    {
        std::lock_guard<std::mutex> lock(planner_mutex());
        fftw_destroy_plan(plan);
    }
}

}  // namespace

void dft(std::vector<cplx>& v) {
    if (v.empty()) return;
    run_fftw(v, FFTW_FORWARD);
}

void idft(std::vector<cplx>& v) {
    if (v.empty()) return;
    run_fftw(v, FFTW_BACKWARD);
    const double inv = 1.0 / static_cast<double>(v.size());
    for (auto& z : v) z *= inv;
}

}  // namespace geoprop
