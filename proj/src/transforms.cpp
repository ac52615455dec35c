#include "geoprop/transforms.hpp"

#include <algorithm>
#include <cmath>

#include "geoprop/fft.hpp"
#include "geoprop/propagators.hpp"

namespace geoprop {

WaveFunction1D galilei(const WaveFunction1D& psi, const GalileiGenerator& S) {
    WaveFunction1D out = psi;
    for (int j = 0; j < out.grid.n; ++j) out.values[j] *= cis(S(out.grid.x(j)) / out.hbar);
    return out;
}

WaveFunction2D galilei(const WaveFunction2D& psi, const GalileiGenerator2D& S) {
    WaveFunction2D out = psi;
    for (int ix = 0; ix < out.grid_x.n; ++ix) {
        double x = out.grid_x.x(ix);
        for (int iy = 0; iy < out.grid_y.n; ++iy)
            out.at(ix, iy) *= cis(S(x, out.grid_y.x(iy)) / out.hbar);
    }
    return out;
}

namespace {

// Forward continuum FT with an explicit hbar (frft_fast runs it with the
// dimensionless hbar = 1/(2 pi) regardless of the wavefunction tag).
WaveFunction1D fourier_core(const WaveFunction1D& psi, double hbar) {
    const Grid1D& g = psi.grid;
    const int n = g.n;
    const double dp = 2.0 * kPi * hbar / (n * g.dx);
    const double p0 = -kPi * hbar / g.dx;

    std::vector<cplx> buf(psi.values);
    for (int j = 1; j < n; j += 2) buf[j] = -buf[j];  // shifts p0 to -pi hbar/dx
    dft(buf);

    const cplx c = g.dx / std::sqrt(2.0 * kPi * hbar) * cis(-0.25 * kPi);
    std::vector<cplx> out(n);
    for (int k = 0; k < n; ++k) {
        double pk = p0 + k * dp;
        out[k] = c * cis(-pk * g.x0 / hbar) * buf[k];
    }
    return WaveFunction1D(Grid1D(p0, dp, n), std::move(out), psi.hbar);
}

WaveFunction1D inverse_fourier_core(const WaveFunction1D& phi, double hbar) {
    const Grid1D& g = phi.grid;  // momentum grid
    const int n = g.n;
    const double dx = 2.0 * kPi * hbar / (n * g.dx);
    const double x0 = -kPi * hbar / g.dx;

    const cplx cinv = std::sqrt(2.0 * kPi * hbar) / dx * cis(0.25 * kPi);
    std::vector<cplx> buf(n);
    for (int k = 0; k < n; ++k) buf[k] = phi.values[k] * cis(g.x(k) * x0 / hbar);
    idft(buf);
    std::vector<cplx> out(n);
    for (int j = 0; j < n; ++j) {
        cplx v = cinv * buf[j];
        out[j] = (j % 2 == 0) ? v : -v;
    }
    return WaveFunction1D(Grid1D(x0, dx, n), std::move(out), phi.hbar);
}

}  // namespace

WaveFunction1D fourier(const WaveFunction1D& psi) { return fourier_core(psi, psi.hbar); }

WaveFunction1D inverse_fourier(const WaveFunction1D& phi) { return inverse_fourier_core(phi, phi.hbar); }

WaveFunction1D dilate(const WaveFunction1D& psi, double s) {
    if (!(s > 0.0)) throw NonpositiveScale("dilate: scale must be > 0");
    Grid1D g(psi.grid.x0 / s, psi.grid.dx / s, psi.grid.n);
    std::vector<cplx> vals(psi.values);
    const double rs = std::sqrt(s);
    for (auto& z : vals) z *= rs;
    return WaveFunction1D(g, std::move(vals), psi.hbar);
}

namespace {

enum class FrftRoute { Identity, Parity, Generic };

FrftRoute classify_angle(double gamma_reduced) {
    if (std::abs(std::sin(gamma_reduced)) >= 1e-6) return FrftRoute::Generic;
    return (std::abs(gamma_reduced) < 0.5 * kPi) ? FrftRoute::Identity : FrftRoute::Parity;
}

WaveFunction1D parity_wavefunction(const WaveFunction1D& psi) {
    // periodic index reversal; exact reflection for grids with x0 = -n dx/2
    WaveFunction1D out = psi;
    const int n = psi.grid.n;
    for (int j = 0; j < n; ++j) out.values[j] = psi.values[(n - j) % n];
    return out;
}

void frft_alias_guard(const Grid1D& g, double gamma) {
    double xm = g.abs_max();
    double rate = 2.0 * kPi * xm * (std::abs(1.0 / std::tan(gamma)) + 1.0 / std::abs(std::sin(gamma)));
    if (rate * g.dx > kPi * 1.1)
        throw AliasingRisk("frft: kernel oscillates past Nyquist at the grid edge; widen dx or gamma");
}

WaveFunction1D conj_wave(const WaveFunction1D& psi) {
    WaveFunction1D out = psi;
    for (auto& z : out.values) z = std::conj(z);
    return out;
}

}  // namespace

WaveFunction1D frft(const WaveFunction1D& psi, double gamma) {
    double g = reduce_angle(gamma);
    switch (classify_angle(g)) {
        case FrftRoute::Identity:
            return psi;
        case FrftRoute::Parity:
            return parity_wavefunction(psi);
        case FrftRoute::Generic:
            break;
    }
    frft_alias_guard(psi.grid, g);

    const int n = psi.grid.n;
    const double cot = std::cos(g) / std::sin(g);
    const double csc = 1.0 / std::sin(g);
    const cplx pref = cis(0.5 * g) / std::sqrt(cplx(0.0, std::sin(g)));

    std::vector<double> xs(n), chirp(n);
    for (int j = 0; j < n; ++j) {
        xs[j] = psi.grid.x(j);
        chirp[j] = kPi * cot * xs[j] * xs[j];
    }
    std::vector<cplx> out(n);
    const std::vector<cplx>& v = psi.values;
    const double dx = psi.grid.dx;
    parallel_for(static_cast<std::size_t>(n), [&](std::size_t k) {
        const double xk = xs[k], base = chirp[k];
        const double cfac = 2.0 * kPi * csc * xk;
        cplx acc = 0.0;
        for (int j = 0; j < n; ++j) acc += v[j] * cis(base + chirp[j] - cfac * xs[j]);
        out[k] = pref * dx * acc;
    });
    return WaveFunction1D(psi.grid, std::move(out), psi.hbar);
}

WaveFunction1D frft_fast(const WaveFunction1D& psi, double gamma) {
    double g = reduce_angle(gamma);
    switch (classify_angle(g)) {
        case FrftRoute::Identity:
            return psi;
        case FrftRoute::Parity:
            return parity_wavefunction(psi);
        case FrftRoute::Generic:
            break;
    }
    if (g < 0.0) return conj_wave(frft_fast(conj_wave(psi), -g));
    frft_alias_guard(psi.grid, g);

    const double cot = std::cos(g) / std::sin(g);
    const double hbar_eff = 1.0 / (2.0 * kPi);

    // step 1: chirp in the input variable
    WaveFunction1D work = psi;
    for (int j = 0; j < work.grid.n; ++j) {
        double x = work.grid.x(j);
        work.values[j] *= cis(kPi * cot * x * x);
    }
    // step 2: ordinary Fourier transform in 2pi-units
    work = fourier_core(work, hbar_eff);
    // step 3: only the density factor, p~ = x'/sin(gamma)
    work = dilate(work, 1.0 / std::sin(g));
    // back to the input grid while the function is still smooth, then step 4
    work = resample(work, psi.grid);
    const cplx pref = cis(0.5 * g);
    for (int j = 0; j < work.grid.n; ++j) {
        double x = work.grid.x(j);
        work.values[j] *= pref * cis(kPi * cot * x * x);
    }
    return work;
}

WaveFunction1D apply_step(const TransformStep& step, const WaveFunction1D& psi) {
    return std::visit(
        [&](const auto& s) -> WaveFunction1D {
            using T = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<T, GalileiStep>) return galilei(psi, s.S);
            if constexpr (std::is_same_v<T, FourierStep>) return fourier(psi);
            if constexpr (std::is_same_v<T, InverseFourierStep>) return inverse_fourier(psi);
            if constexpr (std::is_same_v<T, DilateStep>) return dilate(psi, s.s);
            if constexpr (std::is_same_v<T, FrftStep>) return frft(psi, s.gamma);
            if constexpr (std::is_same_v<T, KernelStep>) return apply_kernel(psi, s.K, psi.grid);
        },
        step);
}

WaveFunction1D compose_pipeline(const std::vector<TransformStep>& steps, const WaveFunction1D& psi) {
    WaveFunction1D cur = psi;
    for (const auto& st : steps) cur = apply_step(st, cur);
    return cur;
}

std::optional<AffineSymplecticMap> step_classical_map(const TransformStep& step) {
    AffineSymplecticMap m = AffineSymplecticMap::identity(1);
    if (const auto* gs = std::get_if<GalileiStep>(&step)) {
        if (!gs->S.is_at_most_quadratic()) return std::nullopt;
        m.M[1][0] = 2.0 * gs->S.coeff(2);  // p -> p + S'(x)
        m.T[1] = gs->S.coeff(1);
        return m;
    }
    if (std::get_if<FourierStep>(&step)) {
        m.M[0][0] = 0.0;
        m.M[0][1] = 1.0;
        m.M[1][0] = -1.0;
        m.M[1][1] = 0.0;
        return m;
    }
    if (std::get_if<InverseFourierStep>(&step)) {
        m.M[0][0] = 0.0;
        m.M[0][1] = -1.0;
        m.M[1][0] = 1.0;
        m.M[1][1] = 0.0;
        return m;
    }
    if (const auto* ds = std::get_if<DilateStep>(&step)) {
        m.M[0][0] = 1.0 / ds->s;
        m.M[1][1] = ds->s;
        return m;
    }
    if (const auto* fs = std::get_if<FrftStep>(&step)) {
        double g = fs->gamma;
        m.M[0][0] = std::cos(g);
        m.M[0][1] = std::sin(g);
        m.M[1][0] = -std::sin(g);
        m.M[1][1] = std::cos(g);
        return m;
    }
    if (const auto* ks = std::get_if<KernelStep>(&step)) {
        const QuadraticKernel& K = ks->K;
        if (K.n != 1) return std::nullopt;
        // generating relations p = -dPhi/dx, p' = +dPhi/dx'
        double a = K.axx(), b = K.axpxp(), c = K.axxp();
        m.M[0][0] = -2.0 * a / c;
        m.M[0][1] = -1.0 / c;
        m.T[0] = -K.bx() / c;
        m.M[1][0] = c + 2.0 * b * m.M[0][0];
        m.M[1][1] = 2.0 * b * m.M[0][1];
        m.T[1] = 2.0 * b * m.T[0] + K.bxp();
        return m;
    }
    return std::nullopt;
}

double holonomy_probe(const std::vector<TransformStep>& loop, const std::vector<WaveFunction1D>& testset) {
    if (testset.empty()) throw EmptyTestset("holonomy_probe: empty testset");

    bool all_classical = true;
    AffineSymplecticMap total = AffineSymplecticMap::identity(1);
    for (const auto& st : loop) {
        auto m = step_classical_map(st);
        if (!m) {
            all_classical = false;
            break;
        }
        total = m->after(total);
    }
    if (all_classical) {
        double dev = std::abs(total.T[0]) + std::abs(total.T[1]);
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j) dev = std::max(dev, std::abs(total.M[i][j] - (i == j ? 1.0 : 0.0)));
        if (dev > 1e-9)
            throw ValidationError("holonomy_probe: classical composition of the loop is not the identity");
    }

    double worst = 0.0;
    for (const auto& psi : testset) {
        WaveFunction1D u = compose_pipeline(loop, psi);
        worst = std::max(worst, 1.0 - fidelity(u, psi));
    }
    return worst;
}

}  // namespace geoprop
