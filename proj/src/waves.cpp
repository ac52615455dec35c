#include "geoprop/waves.hpp"

#include <algorithm>
#include <cmath>

#include "geoprop/fft.hpp"

namespace geoprop {

bool grids_close(const Grid1D& a, const Grid1D& b) {
    if (a.n != b.n) return false;
    double scale = std::max({std::abs(a.x0), std::abs(a.x_last()), a.length()});
    double tol = 1e-12 * std::max(scale, 1e-300);
    return std::abs(a.x0 - b.x0) <= tol && std::abs(a.dx - b.dx) <= tol / a.n;
}

Grid1D symmetric_grid(double half_width, int n) {
    if (!(half_width > 0.0)) throw ValidationError("symmetric_grid: half_width must be > 0");
    return Grid1D(-half_width, 2.0 * half_width / n, n);
}

double norm(const WaveFunction1D& psi) {
    double s = 0.0;
    for (const auto& z : psi.values) s += std::norm(z);
    return std::sqrt(s * psi.grid.dx);
}

double norm(const WaveFunction2D& psi) {
    double s = 0.0;
    for (const auto& z : psi.values) s += std::norm(z);
    return std::sqrt(s * psi.grid_x.dx * psi.grid_y.dx);
}

cplx inner_product(const WaveFunction1D& a, const WaveFunction1D& b) {
    if (!grids_close(a.grid, b.grid) || a.hbar != b.hbar)
        throw GridMismatch("inner_product: grids or hbar differ");
    cplx s = 0.0;
    for (int j = 0; j < a.grid.n; ++j) s += std::conj(a.values[j]) * b.values[j];
    return s * a.grid.dx;
}

cplx inner_product(const WaveFunction2D& a, const WaveFunction2D& b) {
    if (!grids_close(a.grid_x, b.grid_x) || !grids_close(a.grid_y, b.grid_y) || a.hbar != b.hbar)
        throw GridMismatch("inner_product: grids or hbar differ");
    cplx s = 0.0;
    for (std::size_t j = 0; j < a.values.size(); ++j) s += std::conj(a.values[j]) * b.values[j];
    return s * a.grid_x.dx * a.grid_y.dx;
}

namespace {

template <class WF>
double fidelity_impl(const WF& a, const WF& b) {
    double na = norm(a), nb = norm(b);
    if (na == 0.0 || nb == 0.0) throw ZeroNorm("fidelity: zero-norm wavefunction");
    double f = std::abs(inner_product(a, b)) / (na * nb);
    return std::min(f, 1.0);
}

}  // namespace

double fidelity(const WaveFunction1D& a, const WaveFunction1D& b) { return fidelity_impl(a, b); }
double fidelity(const WaveFunction2D& a, const WaveFunction2D& b) { return fidelity_impl(a, b); }

WaveFunction1D hermite_gauss(int k, const Grid1D& grid, double hbar) {
    if (k < 0 || k > 20) throw ModeTooHigh("hermite_gauss: mode index must be in [0, 20]");
    const int n = grid.n;
    std::vector<double> prev(n, 0.0), cur(n), next(n);
    const double amp0 = std::pow(2.0, 0.25);
    const double root2pi = std::sqrt(2.0 * kPi);
    for (int j = 0; j < n; ++j) {
        double x = grid.x(j);
        cur[j] = amp0 * std::exp(-kPi * x * x);
    }
    for (int m = 0; m < k; ++m) {
        double ca = std::sqrt(2.0 / (m + 1.0));
        double cb = std::sqrt(m / (m + 1.0));
        for (int j = 0; j < n; ++j) {
            double u = root2pi * grid.x(j);
            next[j] = ca * u * cur[j] - cb * prev[j];
        }
        std::swap(prev, cur);
        std::swap(cur, next);
    }
    std::vector<cplx> vals(n);
    for (int j = 0; j < n; ++j) vals[j] = cur[j];
    return WaveFunction1D(grid, std::move(vals), hbar);
}

namespace {

// Periodic (Dirichlet) interpolation kernel for an n-point grid, evaluated at
// offset u in sample units. Even n uses the real cot form (split Nyquist bin).
double dirichlet(double u, int n) {
    double r = std::remainder(u, static_cast<double>(n));
    if (std::abs(r) < 1e-9) return 1.0;
    double s = std::sin(kPi * r);
    if (n % 2 == 0) return s / (n * std::tan(kPi * r / n));
    return s / (n * std::sin(kPi * r / n));
}

cplx interpolant_at_offset(const std::vector<cplx>& v, double c, int n) {
    // sin(pi(c-j)) = sin(pi c) * (-1)^j lets us hoist the numerator.
    cplx acc = 0.0;
    for (int j = 0; j < n; ++j) acc += v[j] * dirichlet(c - j, n);
    return acc;
}

struct FreqTable {
    std::vector<long> f;       // signed frequency per entry
    std::vector<double> mult;  // 1.0, or 0.5 for the split Nyquist pair
    std::vector<int> bin;      // source DFT bin
};

FreqTable freq_table(int n) {
    FreqTable t;
    if (n % 2 == 0) {
        t.f.reserve(n + 1);
        for (int m = 0; m < n; ++m) {
            long f = dft_freq(m, n);
            if (m == n / 2) {
                t.f.push_back(n / 2);
                t.mult.push_back(0.5);
                t.bin.push_back(m);
                t.f.push_back(-n / 2);
                t.mult.push_back(0.5);
                t.bin.push_back(m);
            } else {
                t.f.push_back(f);
                t.mult.push_back(1.0);
                t.bin.push_back(m);
            }
        }
    } else {
        for (int m = 0; m < n; ++m) {
            t.f.push_back(dft_freq(m, n));
            t.mult.push_back(1.0);
            t.bin.push_back(m);
        }
    }
    return t;
}

int next_pow2(int n) {
    int p = 1;
    while (p < n) p <<= 1;
    return p;
}

// Evaluate the trig-polynomial interpolant at the uniform targets
// u_k = a + k*b (sample units) via a Bluestein factorization. Identical to
// the Dirichlet sum up to rounding, O((ns+nt) log) instead of O(ns*nt).
std::vector<cplx> chirpz_resample(const std::vector<cplx>& v, double a, double b, int nt) {
    const int ns = static_cast<int>(v.size());
    std::vector<cplx> c(v);
    dft(c);
    FreqTable ft = freq_table(ns);
    const int nf = static_cast<int>(ft.f.size());
    const int h = (ns % 2 == 0) ? ns / 2 : (ns - 1) / 2;
    const double beta = b / ns;

    const int conv_len = nt + h + nf;  // covers all needed lags without wrap
    const int P = next_pow2(conv_len);
    std::vector<cplx> A(P, 0.0), C(P, 0.0);
    for (int i = 0; i < nf; ++i) {
        long f = ft.f[i];
        double w2 = std::fmod(beta * static_cast<double>(f) * static_cast<double>(f), 2.0);
        double wa = std::fmod(2.0 * static_cast<double>(f) * a / ns, 2.0);
        cplx w = c[ft.bin[i]] * (ft.mult[i] / ns) * cis(kPi * (w2 + wa));
        A[static_cast<std::size_t>(f + h)] = w;
    }
    for (int j = 0; j <= nt - 1 + h; ++j) {
        double w2 = std::fmod(beta * static_cast<double>(j) * static_cast<double>(j), 2.0);
        cplx val = cis(-kPi * w2);
        C[j] = val;
        if (j > 0 && j < nf) C[P - j] = val;  // chirp is even in the lag
    }
    dft(A);
    dft(C);
    for (int i = 0; i < P; ++i) A[i] *= C[i];
    idft(A);

    std::vector<cplx> out(nt);
    for (int k = 0; k < nt; ++k) {
        double w2 = std::fmod(beta * static_cast<double>(k) * static_cast<double>(k), 2.0);
        out[k] = cis(kPi * w2) * A[static_cast<std::size_t>(k + h)];
    }
    return out;
}

}  // namespace

cplx sample_interpolant(const Grid1D& grid, const std::vector<cplx>& values, double x) {
    return interpolant_at_offset(values, (x - grid.x0) / grid.dx, grid.n);
}

WaveFunction1D resample(const WaveFunction1D& psi, const Grid1D& newgrid, ResampleInfo* info) {
    const Grid1D& g = psi.grid;
    if (info) info->edge_warning = false;
    if (newgrid == g) return psi;

    if (info) {
        double maxv = 0.0;
        for (const auto& z : psi.values) maxv = std::max(maxv, std::abs(z));
        double lo = newgrid.x0 - g.dx, hi = newgrid.x_last() + g.dx;
        for (int j = 0; j < g.n; ++j) {
            double xj = g.x(j);
            bool outside = xj < lo || xj > hi;
            bool boundary = (j == 0 || j == g.n - 1);
            if ((outside || boundary) && std::abs(psi.values[j]) > 1e-6 * maxv) {
                info->edge_warning = true;
                break;
            }
        }
    }

    const double a = (newgrid.x0 - g.x0) / g.dx;
    const double b = newgrid.dx / g.dx;
    std::vector<cplx> out(newgrid.n);
    if (static_cast<std::size_t>(g.n) * newgrid.n > (1u << 16)) {
        out = chirpz_resample(psi.values, a, b, newgrid.n);
    } else {
        for (int k = 0; k < newgrid.n; ++k) out[k] = interpolant_at_offset(psi.values, a + k * b, g.n);
    }
    return WaveFunction1D(newgrid, std::move(out), psi.hbar);
}

WaveFunction2D resample_affine(const WaveFunction2D& psi, const double M[2][2], const double off[2],
                               const Grid1D& gx_out, const Grid1D& gy_out) {
    const int nx = psi.grid_x.n, ny = psi.grid_y.n;
    const int na = gx_out.n, nb = gy_out.n;

    // 2D DFT of the source (rows over y, then columns over x).
    std::vector<cplx> c(psi.values);
    {
        std::vector<cplx> row(ny);
        for (int ix = 0; ix < nx; ++ix) {
            std::copy_n(c.begin() + static_cast<std::size_t>(ix) * ny, ny, row.begin());
            dft(row);
            std::copy_n(row.begin(), ny, c.begin() + static_cast<std::size_t>(ix) * ny);
        }
        std::vector<cplx> col(nx);
        for (int iy = 0; iy < ny; ++iy) {
            for (int ix = 0; ix < nx; ++ix) col[ix] = c[static_cast<std::size_t>(ix) * ny + iy];
            dft(col);
            for (int ix = 0; ix < nx; ++ix) c[static_cast<std::size_t>(ix) * ny + iy] = col[ix];
        }
    }

    FreqTable fx = freq_table(nx), fy = freq_table(ny);
    const int mfx = static_cast<int>(fx.f.size()), mfy = static_cast<int>(fy.f.size());

    // Expanded spectral coefficients with split-Nyquist weights folded in.
    std::vector<cplx> ce(static_cast<std::size_t>(mfx) * mfy);
    const double scale = 1.0 / (static_cast<double>(nx) * ny);
    for (int i = 0; i < mfx; ++i)
        for (int j = 0; j < mfy; ++j)
            ce[static_cast<std::size_t>(i) * mfy + j] =
                c[static_cast<std::size_t>(fx.bin[i]) * ny + fy.bin[j]] * (fx.mult[i] * fy.mult[j] * scale);

    // Source point of output node (a,b): x = M00 Xa + M01 Yb + off0, etc.
    // u_x = (x - xs0)/dxs splits into a part depending on a and one on b,
    // so each spectral phase factorizes into per-a and per-b tables.
    auto phase_tables = [](const FreqTable& ft, int nfreq, int ncols, auto&& ucol, int nsrc) {
        std::vector<cplx> t(static_cast<std::size_t>(nfreq) * ncols);
        for (int i = 0; i < nfreq; ++i) {
            double base = 2.0 * static_cast<double>(ft.f[i]) / nsrc;
            for (int k = 0; k < ncols; ++k)
                t[static_cast<std::size_t>(i) * ncols + k] = cis(kPi * std::fmod(base * ucol(k), 2.0));
        }
        return t;
    };

    const double inv_dxs = 1.0 / psi.grid_x.dx, inv_dys = 1.0 / psi.grid_y.dx;
    auto uxa = [&](int a) { return M[0][0] * gx_out.x(a) * inv_dxs; };
    auto uxb = [&](int b) { return (M[0][1] * gy_out.x(b) + off[0] - psi.grid_x.x0) * inv_dxs; };
    auto uya = [&](int a) { return M[1][0] * gx_out.x(a) * inv_dys; };
    auto uyb = [&](int b) { return (M[1][1] * gy_out.x(b) + off[1] - psi.grid_y.x0) * inv_dys; };

    std::vector<cplx> Pxa = phase_tables(fx, mfx, na, uxa, nx);
    std::vector<cplx> Pxb = phase_tables(fx, mfx, nb, uxb, nx);
    std::vector<cplx> Pya = phase_tables(fy, mfy, na, uya, ny);
    std::vector<cplx> Pyb = phase_tables(fy, mfy, nb, uyb, ny);

    std::vector<cplx> out(static_cast<std::size_t>(na) * nb);
    parallel_for(static_cast<std::size_t>(na), [&](std::size_t a) {
        std::vector<cplx> w(mfy);
        for (int b = 0; b < nb; ++b) {
            for (int j = 0; j < mfy; ++j)
                w[j] = Pya[static_cast<std::size_t>(j) * na + a] * Pyb[static_cast<std::size_t>(j) * nb + b];
            cplx acc = 0.0;
            for (int i = 0; i < mfx; ++i) {
                cplx inner = 0.0;
                const cplx* crow = &ce[static_cast<std::size_t>(i) * mfy];
                for (int j = 0; j < mfy; ++j) inner += crow[j] * w[j];
                acc += Pxa[static_cast<std::size_t>(i) * na + a] * Pxb[static_cast<std::size_t>(i) * nb + b] * inner;
            }
            out[a * nb + b] = acc;
        }
    });
    return WaveFunction2D(gx_out, gy_out, std::move(out), psi.hbar);
}

Moments1D first_moments(const WaveFunction1D& psi) {
    const int n = psi.grid.n;
    double n2 = 0.0, xs = 0.0;
    for (int j = 0; j < n; ++j) {
        double w = std::norm(psi.values[j]);
        n2 += w;
        xs += w * psi.grid.x(j);
    }
    if (n2 == 0.0) throw ZeroNorm("first_moments: zero wavefunction");
    std::vector<cplx> c(psi.values);
    dft(c);
    double ps = 0.0, pn = 0.0;
    for (int k = 0; k < n; ++k) {
        double p = 2.0 * kPi * psi.hbar * dft_freq(k, n) / (n * psi.grid.dx);
        double w = std::norm(c[k]);
        ps += w * p;
        pn += w;
    }
    return Moments1D{xs / n2, ps / pn};
}

Moments2D first_moments(const WaveFunction2D& psi) {
    const int nx = psi.grid_x.n, ny = psi.grid_y.n;
    double n2 = 0.0, xs = 0.0, ys = 0.0;
    for (int ix = 0; ix < nx; ++ix)
        for (int iy = 0; iy < ny; ++iy) {
            double w = std::norm(psi.at(ix, iy));
            n2 += w;
            xs += w * psi.grid_x.x(ix);
            ys += w * psi.grid_y.x(iy);
        }
    if (n2 == 0.0) throw ZeroNorm("first_moments: zero wavefunction");

    // <px>: DFT along x for each y column; <py>: along y for each x row.
    double pxs = 0.0, pxn = 0.0, pys = 0.0, pyn = 0.0;
    {
        std::vector<cplx> col(nx);
        for (int iy = 0; iy < ny; ++iy) {
            for (int ix = 0; ix < nx; ++ix) col[ix] = psi.at(ix, iy);
            dft(col);
            for (int k = 0; k < nx; ++k) {
                double p = 2.0 * kPi * psi.hbar * dft_freq(k, nx) / (nx * psi.grid_x.dx);
                double w = std::norm(col[k]);
                pxs += w * p;
                pxn += w;
            }
        }
        std::vector<cplx> row(ny);
        for (int ix = 0; ix < nx; ++ix) {
            for (int iy = 0; iy < ny; ++iy) row[iy] = psi.at(ix, iy);
            dft(row);
            for (int k = 0; k < ny; ++k) {
                double p = 2.0 * kPi * psi.hbar * dft_freq(k, ny) / (ny * psi.grid_y.dx);
                double w = std::norm(row[k]);
                pys += w * p;
                pyn += w;
            }
        }
    }
    return Moments2D{xs / n2, ys / n2, pxs / pxn, pys / pyn};
}

}  // namespace geoprop
