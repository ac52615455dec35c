#pragma once

#include <vector>

#include "geoprop/phasespace.hpp"
#include "geoprop/waves.hpp"

namespace geoprop {

/// V(x) = c0 + c1 x + c2 x^2, energy units.
struct PotentialSpec {
    double c0 = 0.0, c1 = 0.0, c2 = 0.0;

    static PotentialSpec zero() { return {}; }
    static PotentialSpec linear_force(double eE) { return PotentialSpec{0.0, -eE, 0.0}; }  // V = -eE x
    static PotentialSpec harmonic(double m, double omega) {
        return PotentialSpec{0.0, 0.0, 0.5 * m * omega * omega};
    }
    double operator()(double x) const { return c0 + x * (c1 + x * c2); }
};

/// Strang-split kinetic/potential evolution over time t in `steps` steps.
/// Second order in t/steps; norm-preserving to rounding. Verification oracle
/// only; knows nothing about the closed-form kernels.
WaveFunction1D split_step(const WaveFunction1D& psi, const PotentialSpec& V, double m, double hbar, double t,
                          int steps);

/// Exact free Gaussian packet at time t on the given grid:
/// initial width sigma0, centroid x0bar, momentum p0bar.
WaveFunction1D gaussian_free_solution(double sigma0, double x0bar, double p0bar, double m, double hbar,
                                      double t, const Grid1D& grid);

/// RMS over interior frames of || i hbar d_t Psi - H Psi || with a central
/// time stencil and spectral space derivatives. frames are equally spaced by
/// dt. The magnetic H uses the symmetric gauge A = B/2 (-y, x).
double pde_residual(const std::vector<WaveFunction1D>& frames, double dt, const SystemSpec& sys);
double pde_residual(const std::vector<WaveFunction2D>& frames, double dt, const SystemSpec& sys);

}  // namespace geoprop
