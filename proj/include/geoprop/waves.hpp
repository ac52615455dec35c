#pragma once

#include <complex>
#include <vector>

#include "geoprop/errors.hpp"
#include "geoprop/util.hpp"

namespace geoprop {

/// Uniform 1D sample grid: points x_j = x0 + j*dx, j = 0..n-1.
struct Grid1D {
    double x0 = 0.0;
    double dx = 1.0;
    int n = 2;

    Grid1D() = default;
    Grid1D(double x0_, double dx_, int n_) : x0(x0_), dx(dx_), n(n_) {
        if (!(dx > 0.0)) throw ValidationError("Grid1D: dx must be > 0");
        if (n < 2) throw EmptyTargetGrid("Grid1D: need at least 2 samples");
    }

    double x(int j) const { return x0 + j * dx; }
    double x_last() const { return x0 + (n - 1) * dx; }
    double length() const { return n * dx; }
    /// Largest |x| over the sampled window.
    double abs_max() const { return std::max(std::abs(x0), std::abs(x_last())); }

    bool operator==(const Grid1D& o) const { return x0 == o.x0 && dx == o.dx && n == o.n; }
};

/// Grids equal up to floating-point noise (1 part in 1e12 of the window).
bool grids_close(const Grid1D& a, const Grid1D& b);

/// Window [-half, half) sampled at n points, x0 = -half. With this placement
/// fourier(fourier(psi)) lands back on the same grid.
Grid1D symmetric_grid(double half_width, int n);

/// One-dimensional wavefunction: scalar samples psi(x_j) on a uniform grid
/// plus the hbar the phases are measured in. Half-density behavior lives in
/// the transforms (Jacobian factors), not in the storage.
struct WaveFunction1D {
    Grid1D grid;
    std::vector<cplx> values;
    double hbar = 1.0;

    WaveFunction1D() = default;
    WaveFunction1D(Grid1D g, std::vector<cplx> v, double hb) : grid(g), values(std::move(v)), hbar(hb) {
        if (static_cast<int>(values.size()) != grid.n)
            throw ValidationError("WaveFunction1D: values length != grid.n");
        if (!(hbar > 0.0)) throw ValidationError("WaveFunction1D: hbar must be > 0");
    }
};

/// Two-dimensional wavefunction, values row-major over (x, y):
/// values[ix * grid_y.n + iy].
struct WaveFunction2D {
    Grid1D grid_x;
    Grid1D grid_y;
    std::vector<cplx> values;
    double hbar = 1.0;

    WaveFunction2D() = default;
    WaveFunction2D(Grid1D gx, Grid1D gy, std::vector<cplx> v, double hb)
        : grid_x(gx), grid_y(gy), values(std::move(v)), hbar(hb) {
        if (values.size() != static_cast<std::size_t>(grid_x.n) * static_cast<std::size_t>(grid_y.n))
            throw ValidationError("WaveFunction2D: values length != nx*ny");
        if (!(hbar > 0.0)) throw ValidationError("WaveFunction2D: hbar must be > 0");
    }

    cplx& at(int ix, int iy) { return values[static_cast<std::size_t>(ix) * grid_y.n + iy]; }
    cplx at(int ix, int iy) const { return values[static_cast<std::size_t>(ix) * grid_y.n + iy]; }
};

double norm(const WaveFunction1D& psi);
double norm(const WaveFunction2D& psi);

/// <a|b> = sum conj(a_j) b_j * dx. Grids and hbar must match.
cplx inner_product(const WaveFunction1D& a, const WaveFunction1D& b);
cplx inner_product(const WaveFunction2D& a, const WaveFunction2D& b);

/// |<a|b>| / (|a||b|), in [0,1]. Throws GridMismatch / ZeroNorm.
double fidelity(const WaveFunction1D& a, const WaveFunction1D& b);
double fidelity(const WaveFunction2D& a, const WaveFunction2D& b);

/// Unit-norm dimensionless Hermite-Gauss mode, ground mode 2^{1/4} e^{-pi x^2}
/// (the eigenbasis of the e^{-2pi i x x'} transform). k capped at 20.
WaveFunction1D hermite_gauss(int k, const Grid1D& grid, double hbar = 1.0);

struct ResampleInfo {
    bool edge_warning = false;  // support not contained in the target window
};

/// Band-limited (periodic-sinc / Dirichlet) interpolation onto newgrid.
/// newgrid == psi.grid returns the samples unchanged bit-for-bit.
WaveFunction1D resample(const WaveFunction1D& psi, const Grid1D& newgrid, ResampleInfo* info = nullptr);

/// Evaluate the periodic-sinc interpolant of (grid, values) at arbitrary x.
cplx sample_interpolant(const Grid1D& grid, const std::vector<cplx>& values, double x);

/// Sample a 2D wavefunction at the affine image points
/// (x,y) = M [X_a, Y_b]^T + off over the tensor grid (gx_out, gy_out),
/// using the separable periodic-sinc interpolant of psi.
WaveFunction2D resample_affine(const WaveFunction2D& psi, const double M[2][2], const double off[2],
                               const Grid1D& gx_out, const Grid1D& gy_out);

/// First moments <x> and <p> (p spectrally, via the conjugate grid).
struct Moments1D {
    double x = 0.0;
    double p = 0.0;
};
Moments1D first_moments(const WaveFunction1D& psi);

struct Moments2D {
    double x = 0.0, y = 0.0, px = 0.0, py = 0.0;
};
Moments2D first_moments(const WaveFunction2D& psi);

}  // namespace geoprop
