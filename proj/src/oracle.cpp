#include "geoprop/oracle.hpp"

#include <cmath>

#include "geoprop/fft.hpp"

namespace geoprop {

namespace {

double grid_momentum(int k, int n, double dx, double hbar) {
    return 2.0 * kPi * hbar * dft_freq(k, n) / (n * dx);
}

void check_bandlimit(const WaveFunction1D& psi) {
    // outer 10% of momentum bins must be empty, else the periodic kinetic
    // factor wraps the state around
    std::vector<cplx> c(psi.values);
    dft(c);
    const int n = psi.grid.n;
    double total = 0.0, outer = 0.0;
    for (int k = 0; k < n; ++k) {
        double w = std::norm(c[k]);
        total += w;
        if (std::abs(static_cast<double>(dft_freq(k, n))) > 0.45 * n) outer += w;
    }
    if (total > 0.0 && outer / total > 1e-8)
        throw AliasingRisk("split_step: input not band-limited on this grid");
}

}  // namespace

WaveFunction1D split_step(const WaveFunction1D& psi, const PotentialSpec& V, double m, double hbar, double t,
                          int steps) {
    if (steps < 1) throw ValidationError("split_step: steps must be >= 1");
    check_bandlimit(psi);

    const int n = psi.grid.n;
    const double dt = t / steps;

    std::vector<cplx> half_v(n), full_v(n), kin(n);
    for (int j = 0; j < n; ++j) {
        double v = V(psi.grid.x(j));
        half_v[j] = cis(-0.5 * v * dt / hbar);
        full_v[j] = cis(-v * dt / hbar);
    }
    for (int k = 0; k < n; ++k) {
        double p = grid_momentum(k, n, psi.grid.dx, hbar);
        kin[k] = cis(-p * p * dt / (2.0 * m * hbar));
    }

    std::vector<cplx> v(psi.values);
    for (int j = 0; j < n; ++j) v[j] *= half_v[j];
    for (int s = 0; s < steps; ++s) {
        dft(v);
        for (int k = 0; k < n; ++k) v[k] *= kin[k];
        idft(v);
        if (s + 1 < steps)
            for (int j = 0; j < n; ++j) v[j] *= full_v[j];
        else
            for (int j = 0; j < n; ++j) v[j] *= half_v[j];
    }
    return WaveFunction1D(psi.grid, std::move(v), psi.hbar);
}

WaveFunction1D gaussian_free_solution(double sigma0, double x0bar, double p0bar, double m, double hbar,
                                      double t, const Grid1D& grid) {
    if (!(sigma0 > 0.0)) throw ValidationError("gaussian_free_solution: sigma0 must be > 0");
    const double alpha = hbar * t / (2.0 * m * sigma0 * sigma0);
    const cplx one_ia(1.0, alpha);
    const cplx norm_c = std::pow(2.0 * kPi * sigma0 * sigma0, -0.25) / std::sqrt(one_ia);
    const double xc = x0bar + p0bar * t / m;

    std::vector<cplx> v(grid.n);
    for (int j = 0; j < grid.n; ++j) {
        double x = grid.x(j);
        double u = x - xc;
        cplx gauss = -u * u / (4.0 * sigma0 * sigma0 * one_ia);
        cplx plane(0.0, (p0bar * (x - x0bar) - 0.5 * p0bar * p0bar * t / m) / hbar);
        v[j] = norm_c * std::exp(gauss + plane);
    }
    return WaveFunction1D(grid, std::move(v), hbar);
}

namespace {

// i hbar d_t - H applied with the central stencil at frame k.
template <class WF, class ApplyH>
double residual_at(const std::vector<WF>& fr, std::size_t k, double dt, double hbar, ApplyH&& applyH) {
    WF h = applyH(fr[k]);
    double s = 0.0;
    for (std::size_t j = 0; j < h.values.size(); ++j) {
        cplx dt_term = cplx(0.0, hbar) * (fr[k + 1].values[j] - fr[k - 1].values[j]) / (2.0 * dt);
        s += std::norm(dt_term - h.values[j]);
    }
    return s;
}

std::vector<cplx> spectral_apply_1d(const std::vector<cplx>& v, int n, double dx, double hbar,
                                    double m) {
    // kinetic term p^2/2m
    std::vector<cplx> c(v);
    dft(c);
    for (int k = 0; k < n; ++k) {
        double p = grid_momentum(k, n, dx, hbar);
        c[k] *= p * p / (2.0 * m);
    }
    idft(c);
    return c;
}

}  // namespace

double pde_residual(const std::vector<WaveFunction1D>& frames, double dt, const SystemSpec& sys) {
    if (frames.size() < 3) throw TooFewFrames("pde_residual: need at least 3 frames");
    const Grid1D g = frames[0].grid;
    PotentialSpec V;
    switch (sys.kind) {
        case SystemKind::Free:
            V = PotentialSpec::zero();
            break;
        case SystemKind::Oscillator:
            V = PotentialSpec::harmonic(sys.m, sys.omega);
            break;
        case SystemKind::ConstantE:
            V = PotentialSpec::linear_force(sys.eE);
            break;
        default:
            throw ValidationError("pde_residual(1D): magnetic system needs 2D frames");
    }
    auto applyH = [&](const WaveFunction1D& f) {
        WaveFunction1D h = f;
        h.values = spectral_apply_1d(f.values, g.n, g.dx, f.hbar, sys.m);
        for (int j = 0; j < g.n; ++j) h.values[j] += V(g.x(j)) * f.values[j];
        return h;
    };
    double s = 0.0;
    for (std::size_t k = 1; k + 1 < frames.size(); ++k)
        s += residual_at(frames, k, dt, frames[0].hbar, applyH) * g.dx;
    return std::sqrt(s / static_cast<double>(frames.size() - 2));
}

double pde_residual(const std::vector<WaveFunction2D>& frames, double dt, const SystemSpec& sys) {
    if (frames.size() < 3) throw TooFewFrames("pde_residual: need at least 3 frames");
    if (sys.kind != SystemKind::ConstantB)
        throw ValidationError("pde_residual(2D): only the magnetic system is 2D here");
    const Grid1D gx = frames[0].grid_x, gy = frames[0].grid_y;
    const double hbar = frames[0].hbar;
    const int nx = gx.n, ny = gy.n;

    auto applyH = [&](const WaveFunction2D& f) {
        // px f and py f spectrally
        std::vector<cplx> px_f(f.values.size()), py_f(f.values.size());
        {
            std::vector<cplx> col(nx);
            for (int iy = 0; iy < ny; ++iy) {
                for (int ix = 0; ix < nx; ++ix) col[ix] = f.at(ix, iy);
                dft(col);
                for (int k = 0; k < nx; ++k) col[k] *= grid_momentum(k, nx, gx.dx, hbar);
                idft(col);
                for (int ix = 0; ix < nx; ++ix) px_f[static_cast<std::size_t>(ix) * ny + iy] = col[ix];
            }
            std::vector<cplx> row(ny);
            for (int ix = 0; ix < nx; ++ix) {
                for (int iy = 0; iy < ny; ++iy) row[iy] = f.at(ix, iy);
                dft(row);
                for (int k = 0; k < ny; ++k) row[k] *= grid_momentum(k, ny, gy.dx, hbar);
                idft(row);
                for (int iy = 0; iy < ny; ++iy) py_f[static_cast<std::size_t>(ix) * ny + iy] = row[iy];
            }
        }
        // (px^2 + py^2) f via a second spectral pass on px_f, py_f
        std::vector<cplx> pxx(px_f), pyy(py_f);
        {
            std::vector<cplx> col(nx);
            for (int iy = 0; iy < ny; ++iy) {
                for (int ix = 0; ix < nx; ++ix) col[ix] = pxx[static_cast<std::size_t>(ix) * ny + iy];
                dft(col);
                for (int k = 0; k < nx; ++k) col[k] *= grid_momentum(k, nx, gx.dx, hbar);
                idft(col);
                for (int ix = 0; ix < nx; ++ix) pxx[static_cast<std::size_t>(ix) * ny + iy] = col[ix];
            }
            std::vector<cplx> row(ny);
            for (int ix = 0; ix < nx; ++ix) {
                for (int iy = 0; iy < ny; ++iy) row[iy] = pyy[static_cast<std::size_t>(ix) * ny + iy];
                dft(row);
                for (int k = 0; k < ny; ++k) row[k] *= grid_momentum(k, ny, gy.dx, hbar);
                idft(row);
                for (int iy = 0; iy < ny; ++iy) pyy[static_cast<std::size_t>(ix) * ny + iy] = row[iy];
            }
        }
        WaveFunction2D h = f;
        const double eB = sys.e * sys.B;
        for (int ix = 0; ix < nx; ++ix) {
            double x = gx.x(ix);
            for (int iy = 0; iy < ny; ++iy) {
                double y = gy.x(iy);
                std::size_t id = static_cast<std::size_t>(ix) * ny + iy;
                cplx kinetic = (pxx[id] + pyy[id]) / (2.0 * sys.m);
                cplx angular = (eB / (2.0 * sys.m)) * (y * px_f[id] - x * py_f[id]);
                cplx dia = (eB * eB / (8.0 * sys.m)) * (x * x + y * y) * f.values[id];
                h.values[id] = kinetic + angular + dia;
            }
        }
        return h;
    };

    double s = 0.0;
    for (std::size_t k = 1; k + 1 < frames.size(); ++k)
        s += residual_at(frames, k, dt, hbar, applyH) * gx.dx * gy.dx;
    return std::sqrt(s / static_cast<double>(frames.size() - 2));
}

}  // namespace geoprop
