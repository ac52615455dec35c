#include "geoprop/propagators.hpp"

#include <cmath>

#include "geoprop/transforms.hpp"

namespace geoprop {

namespace {

void alias_guard_1d(const QuadraticKernel& K, const Grid1D& in, const Grid1D& out) {
    double xm = in.abs_max(), xpm = out.abs_max();
    double rate_in = (2.0 * std::abs(K.axx()) * xm + std::abs(K.axxp()) * xpm + std::abs(K.bx())) / K.hbar;
    double rate_out =
        (2.0 * std::abs(K.axpxp()) * xpm + std::abs(K.axxp()) * xm + std::abs(K.bxp())) / K.hbar;
    if (rate_in * in.dx > kPi * 1.1 || rate_out * out.dx > kPi * 1.1)
        throw AliasingRisk("apply_kernel: kernel phase exceeds the Nyquist budget on the given grids");
}

void fill_info(ApplyInfo* info, double nin, double nout) {
    if (!info) return;
    info->norm_deficit = (nin > 0.0) ? std::max(0.0, 1.0 - nout / nin) : 0.0;
    info->support_escape = info->norm_deficit > 1e-4;
}

}  // namespace

WaveFunction1D apply_kernel(const WaveFunction1D& psi, const QuadraticKernel& K, const Grid1D& outgrid,
                            ApplyInfo* info) {
    if (K.n != 1) throw ValidationError("apply_kernel: 1D wavefunction needs an n=1 kernel");
    K.validate();
    alias_guard_1d(K, psi.grid, outgrid);

    const int n = psi.grid.n, no = outgrid.n;
    const double hb = K.hbar;
    std::vector<double> xin(n), ain(n);
    for (int j = 0; j < n; ++j) {
        xin[j] = psi.grid.x(j);
        ain[j] = (K.axx() * xin[j] * xin[j] + K.bx() * xin[j]) / hb;
    }
    const cplx pref = K.amp * K.phase_amp * psi.grid.dx;
    std::vector<cplx> out(no);
    parallel_for(static_cast<std::size_t>(no), [&](std::size_t k) {
        double xp = outgrid.x(static_cast<int>(k));
        double bout = (K.axpxp() * xp * xp + K.bxp() * xp + K.c0) / hb;
        double cr = K.axxp() * xp / hb;
        cplx acc = 0.0;
        for (int j = 0; j < n; ++j) acc += psi.values[j] * cis(ain[j] + bout + cr * xin[j]);
        out[k] = pref * acc;
    });
    WaveFunction1D result(outgrid, std::move(out), psi.hbar);
    fill_info(info, norm(psi), norm(result));
    return result;
}

WaveFunction2D apply_kernel(const WaveFunction2D& psi, const QuadraticKernel& K, const Grid1D& ogx,
                            const Grid1D& ogy, ApplyInfo* info) {
    if (K.n != 2) throw ValidationError("apply_kernel: 2D wavefunction needs an n=2 kernel");
    K.validate();
    const double hb = K.hbar;
    {
        // Nyquist budget along each in/out axis, worst-case over the others.
        double xm = psi.grid_x.abs_max(), ym = psi.grid_y.abs_max();
        double xpm = ogx.abs_max(), ypm = ogy.abs_max();
        double rx = 2.0 * (std::abs(K.Axx[0][0]) * xm + std::abs(K.Axx[0][1]) * ym) +
                    std::abs(K.Axxp[0][0]) * xpm + std::abs(K.Axxp[0][1]) * ypm + std::abs(K.Bx[0]);
        double ry = 2.0 * (std::abs(K.Axx[1][1]) * ym + std::abs(K.Axx[0][1]) * xm) +
                    std::abs(K.Axxp[1][0]) * xpm + std::abs(K.Axxp[1][1]) * ypm + std::abs(K.Bx[1]);
        double rxp = 2.0 * (std::abs(K.Axpxp[0][0]) * xpm + std::abs(K.Axpxp[0][1]) * ypm) +
                     std::abs(K.Axxp[0][0]) * xm + std::abs(K.Axxp[1][0]) * ym + std::abs(K.Bxp[0]);
        double ryp = 2.0 * (std::abs(K.Axpxp[1][1]) * ypm + std::abs(K.Axpxp[0][1]) * xpm) +
                     std::abs(K.Axxp[0][1]) * xm + std::abs(K.Axxp[1][1]) * ym + std::abs(K.Bxp[1]);
        if (rx * psi.grid_x.dx / hb > kPi * 1.1 || ry * psi.grid_y.dx / hb > kPi * 1.1 ||
            rxp * ogx.dx / hb > kPi * 1.1 || ryp * ogy.dx / hb > kPi * 1.1)
            throw AliasingRisk("apply_kernel(2D): kernel phase exceeds the Nyquist budget");
    }

    const int nx = psi.grid_x.n, ny = psi.grid_y.n, na = ogx.n, nb = ogy.n;

    // Separable phase tables; input-side cross terms (Axx[0][1] etc.) are
    // folded pointwise into a pre-chirped copy of psi, output-side ones into
    // the per-(a,b) constant.
    std::vector<cplx> pre(static_cast<std::size_t>(nx) * ny);
    for (int j = 0; j < nx; ++j) {
        double x = psi.grid_x.x(j);
        for (int l = 0; l < ny; ++l) {
            double y = psi.grid_y.x(l);
            double ph = (K.Axx[0][0] * x * x + K.Axx[1][1] * y * y + 2.0 * K.Axx[0][1] * x * y +
                         K.Bx[0] * x + K.Bx[1] * y) /
                        hb;
            pre[static_cast<std::size_t>(j) * ny + l] = psi.at(j, l) * cis(ph);
        }
    }
    auto table = [&](int nsrc, const Grid1D& gs, int ndst, const Grid1D& gd, double coeff) {
        std::vector<cplx> t(static_cast<std::size_t>(nsrc) * ndst);
        for (int s = 0; s < nsrc; ++s) {
            double base = coeff * gs.x(s) / hb;
            for (int d = 0; d < ndst; ++d) t[static_cast<std::size_t>(s) * ndst + d] = cis(base * gd.x(d));
        }
        return t;
    };
    std::vector<cplx> Txa = table(nx, psi.grid_x, na, ogx, K.Axxp[0][0]);
    std::vector<cplx> Txb = table(nx, psi.grid_x, nb, ogy, K.Axxp[0][1]);
    std::vector<cplx> Tya = table(ny, psi.grid_y, na, ogx, K.Axxp[1][0]);
    std::vector<cplx> Tyb = table(ny, psi.grid_y, nb, ogy, K.Axxp[1][1]);

    const cplx pref = K.amp * K.phase_amp * psi.grid_x.dx * psi.grid_y.dx;
    std::vector<cplx> out(static_cast<std::size_t>(na) * nb);
    parallel_for(static_cast<std::size_t>(na), [&](std::size_t a) {
        double xp = ogx.x(static_cast<int>(a));
        std::vector<cplx> w(ny);
        for (int b = 0; b < nb; ++b) {
            double yp = ogy.x(b);
            double outph = (K.Axpxp[0][0] * xp * xp + K.Axpxp[1][1] * yp * yp +
                            2.0 * K.Axpxp[0][1] * xp * yp + K.Bxp[0] * xp + K.Bxp[1] * yp + K.c0) /
                           hb;
            for (int l = 0; l < ny; ++l)
                w[l] = Tya[static_cast<std::size_t>(l) * na + a] * Tyb[static_cast<std::size_t>(l) * nb + b];
            cplx acc = 0.0;
            for (int j = 0; j < nx; ++j) {
                const cplx* row = &pre[static_cast<std::size_t>(j) * ny];
                cplx inner = 0.0;
                for (int l = 0; l < ny; ++l) inner += row[l] * w[l];
                acc += Txa[static_cast<std::size_t>(j) * na + a] * Txb[static_cast<std::size_t>(j) * nb + b] *
                       inner;
            }
            out[a * nb + b] = pref * cis(outph) * acc;
        }
    });
    WaveFunction2D result(ogx, ogy, std::move(out), psi.hbar);
    fill_info(info, norm(psi), norm(result));
    return result;
}

QuadraticKernel free_kernel(double m, double hbar, double t) {
    if (t == 0.0) throw ZeroTime("free_kernel: t must be nonzero (propagate handles t = 0)");
    double a = m / (2.0 * t);
    return make_kernel_1d(a, a, -2.0 * a, 0.0, 0.0, 0.0, hbar);
}

QuadraticKernel free_kernel_2d(double m, double hbar, double t) {
    if (t == 0.0) throw ZeroTime("free_kernel_2d: t must be nonzero");
    double a = m / (2.0 * t);
    QuadraticKernel k;
    k.n = 2;
    k.hbar = hbar;
    for (int i = 0; i < 2; ++i) {
        k.Axx[i][i] = a;
        k.Axpxp[i][i] = a;
        k.Axxp[i][i] = -2.0 * a;
    }
    k.amp = unitary_amp(k);
    cplx per_dof = cis(-0.25 * kPi * (t > 0.0 ? 1.0 : -1.0));
    k.phase_amp = per_dof * per_dof;
    k.validate();
    return k;
}

QuadraticKernel oscillator_kernel(double m, double omega, double hbar, double t) {
    if (omega == 0.0) return free_kernel(m, hbar, t);
    double s = std::sin(omega * t);
    if (std::abs(s) < 1e-6)
        throw SingularTime("oscillator_kernel: omega*t within 1e-6 of a multiple of pi");
    double cot = std::cos(omega * t) / s;
    double a = 0.5 * m * omega * cot;
    return make_kernel_1d(a, a, -m * omega / s, 0.0, 0.0, 0.0, hbar);
}

QuadraticKernel efield_kernel(double m, double eE, double hbar, double t, bool include_gauge_constant) {
    if (t == 0.0) throw ZeroTime("efield_kernel: t must be nonzero");
    double a = m / (2.0 * t);
    double lin = 0.5 * eE * t;
    double c0 = include_gauge_constant ? -(eE * eE * t * t * t) / (24.0 * m) : 0.0;
    return make_kernel_1d(a, a, -2.0 * a, lin, lin, c0, hbar);
}

QuadraticKernel bfield_kernel(double m, double e, double B, double hbar, double t) {
    double w = e * B / m;
    if (w == 0.0) return free_kernel_2d(m, hbar, t);
    double sh = std::sin(0.5 * w * t);
    if (std::abs(sh) < 1e-6)
        throw SingularTime("bfield_kernel: omega*t within 1e-6 of a multiple of 2 pi");
    double ch = std::cos(0.5 * w * t) / sh;
    QuadraticKernel k;
    k.n = 2;
    k.hbar = hbar;
    double a = 0.25 * m * w * ch;
    for (int i = 0; i < 2; ++i) {
        k.Axx[i][i] = a;
        k.Axpxp[i][i] = a;
        k.Axxp[i][i] = -0.5 * m * w * ch;
    }
    k.Axxp[0][1] = 0.5 * m * w;   // + (m w/2) x y'
    k.Axxp[1][0] = -0.5 * m * w;  // - (m w/2) y x'
    k.amp = unitary_amp(k);
    k.phase_amp = cplx(0.0, sh > 0.0 ? -1.0 : 1.0);
    k.validate();
    return k;
}

Grid1D default_outgrid(const SystemSpec& sys, double t, const Grid1D& in) {
    AffineSymplecticMap f = classical_flow(sys, t);
    double scale = std::max(std::abs(f.M[0][0]), 1.0);
    return Grid1D(in.x0 * scale + f.T[0], in.dx * scale, in.n);
}

bool near_singular_time(const SystemSpec& sys, double t, int* k_out) {
    double period;
    if (sys.kind == SystemKind::Oscillator && sys.omega > 0.0)
        period = kPi / sys.omega;
    else if (sys.kind == SystemKind::ConstantB && sys.omega != 0.0)
        period = 2.0 * kPi / std::abs(sys.omega);
    else
        return false;
    double k = std::round(t / period);
    if (std::abs(sys.omega) * std::abs(t - k * period) <= 1e-6) {
        if (k_out) *k_out = static_cast<int>(k);
        return true;
    }
    return false;
}

namespace {

std::string singular_message(const SystemSpec& sys, double t) {
    double period = (sys.kind == SystemKind::Oscillator) ? kPi / sys.omega : 2.0 * kPi / std::abs(sys.omega);
    double k = std::round(t / period);
    double lo = (k - 0.5) * period, hi = (k + 0.5) * period;
    return "SingularTime: t = " + std::to_string(t) + " is within 1e-6/omega of " + std::to_string(k) +
           " half-periods; nearest safe times lie strictly inside (" + std::to_string(lo) + ", " +
           std::to_string(hi) + ") away from " + std::to_string(k * period) + " (use --substep)";
}

WaveFunction1D kernel_for_system_apply(const WaveFunction1D& psi, const SystemSpec& sys, double t,
                                       const Grid1D& outgrid, ApplyInfo* info) {
    QuadraticKernel K;
    switch (sys.kind) {
        case SystemKind::Free:
            K = free_kernel(sys.m, sys.hbar, t);
            break;
        case SystemKind::Oscillator:
            K = oscillator_kernel(sys.m, sys.omega, sys.hbar, t);
            break;
        case SystemKind::ConstantE:
            K = efield_kernel(sys.m, sys.eE, sys.hbar, t);
            break;
        default:
            throw ValidationError("propagate(1D): ConstantB needs the 2D overload");
    }
    return apply_kernel(psi, K, outgrid, info);
}

// Pipeline route: Galilei(ref -> mu') o generalized Fourier o Galilei(mu -> ref').
WaveFunction1D pipeline_route_1d(const WaveFunction1D& psi, const SystemSpec& sys, double t,
                                 const Grid1D& outgrid, ApplyInfo* info) {
    AffineSymplecticMap flow = classical_flow(sys, t);
    LinearFoliation L1 = LinearFoliation::position();
    LinearFoliation L2 = LinearFoliation::from_flow_position(flow);
    Line lambda = Line::horizontal(0.0);
    Line lambda_p = flowed_zero_section(flow);
    Line mu = L1.leaf(0.0);
    Line mu_p = L2.leaf(0.0);

    GalileiGenerator s_in = section_difference(lambda, mu_p, L1);
    GalileiGenerator s_out = section_difference(mu, lambda_p, L2);
    // References at the zero-coordinate leaves make the middle kernel the
    // pure cross pairing; the Galilei factors above carry the rest.
    QuadraticKernel mid = kernel_from_foliations(L1, mu_p, L2, mu, sys.hbar);

    WaveFunction1D cur = galilei(psi, s_in);
    cur = apply_kernel(cur, mid, outgrid, info);
    return galilei(cur, s_out);
}

WaveFunction2D pipeline_route_2d(const WaveFunction2D& psi, const SystemSpec& sys, double t,
                                 const Grid1D& ogx, const Grid1D& ogy, ApplyInfo* info) {
    AffineSymplecticMap flow = classical_flow(sys, t);
    Foliation4 L1 = Foliation4::position();
    Foliation4 L2 = Foliation4::from_flow_position(flow);
    LagrangianPlane4 lambda = zero_momentum_plane4();
    LagrangianPlane4 lambda_p = flowed_zero_momentum_plane4(flow);

    GalileiGenerator2D s_in = section_difference4(lambda, L2.leaf(0.0, 0.0), L1);
    GalileiGenerator2D s_out = section_difference4(L1.leaf(0.0, 0.0), lambda_p, L2);

    double sh = std::sin(0.5 * sys.omega * t);
    cplx branch = (sys.omega == 0.0) ? cis(-0.5 * kPi * (t > 0.0 ? 1.0 : -1.0))
                                     : cplx(0.0, sh > 0.0 ? -1.0 : 1.0);
    QuadraticKernel mid =
        kernel_from_planes(L1, L2.leaf(0.0, 0.0), L2, L1.leaf(0.0, 0.0), sys.hbar, branch);

    WaveFunction2D cur = galilei(psi, s_in);
    cur = apply_kernel(cur, mid, ogx, ogy, info);
    return galilei(cur, s_out);
}

WaveFunction1D parity_phase_shortcut(const WaveFunction1D& psi, int k) {
    WaveFunction1D out = psi;
    const int n = psi.grid.n;
    if (k % 2 != 0) {
        for (int j = 0; j < n; ++j) out.values[j] = psi.values[(n - j) % n];
    }
    cplx ph = cis(-0.5 * kPi * k);
    for (auto& z : out.values) z *= ph;
    return out;
}

}  // namespace

namespace {

WaveFunction1D propagate_impl(const WaveFunction1D& psi, const SystemSpec& sys, double t,
                              const Grid1D& outgrid, Route route, SingularPolicy policy, ApplyInfo* info,
                              int depth) {
    if (t == 0.0) return resample(psi, outgrid);

    int k = 0;
    if (near_singular_time(sys, t, &k)) {
        if (policy == SingularPolicy::Error) throw SingularTime(singular_message(sys, t));
        return resample(parity_phase_shortcut(psi, k), outgrid);
    }

    try {
        if (route == Route::Kernel) return kernel_for_system_apply(psi, sys, t, outgrid, info);
        return pipeline_route_1d(psi, sys, t, outgrid, info);
    } catch (const AliasingRisk&) {
        // Subdividing only helps when the chirp rate shrinks with the step
        // (near-singular oscillator times); for short times it grows instead.
        if (policy == SingularPolicy::Error || depth >= 4) throw;
        Grid1D midgrid = default_outgrid(sys, 0.5 * t, psi.grid);
        WaveFunction1D half = propagate_impl(psi, sys, 0.5 * t, midgrid, route, policy, nullptr, depth + 1);
        return propagate_impl(half, sys, 0.5 * t, outgrid, route, policy, info, depth + 1);
    }
}

}  // namespace

WaveFunction1D propagate(const WaveFunction1D& psi, const SystemSpec& sys, double t, const Grid1D& outgrid,
                         Route route, SingularPolicy policy, ApplyInfo* info) {
    if (sys.dof() != 1) throw ValidationError("propagate: system is 2D, use the 2D overload");
    return propagate_impl(psi, sys, t, outgrid, route, policy, info, 0);
}

namespace {

WaveFunction2D propagate_impl_2d(const WaveFunction2D& psi, const SystemSpec& sys, double t,
                                 const Grid1D& ogx, const Grid1D& ogy, Route route, SingularPolicy policy,
                                 ApplyInfo* info, int depth) {
    if (t == 0.0) {
        double ident[2][2] = {{1.0, 0.0}, {0.0, 1.0}};
        double off[2] = {0.0, 0.0};
        if (grids_close(ogx, psi.grid_x) && grids_close(ogy, psi.grid_y)) return psi;
        return resample_affine(psi, ident, off, ogx, ogy);
    }

    int k = 0;
    if (near_singular_time(sys, t, &k)) {
        if (policy == SingularPolicy::Error) throw SingularTime(singular_message(sys, t));
        WaveFunction2D out = psi;  // full cyclotron periods: (-1)^k identity
        if (k % 2 != 0)
            for (auto& z : out.values) z = -z;
        return out;
    }

    try {
        if (route == Route::Kernel) {
            QuadraticKernel K = bfield_kernel(sys.m, sys.e, sys.B, sys.hbar, t);
            return apply_kernel(psi, K, ogx, ogy, info);
        }
        return pipeline_route_2d(psi, sys, t, ogx, ogy, info);
    } catch (const AliasingRisk&) {
        if (policy == SingularPolicy::Error || depth >= 4) throw;
        WaveFunction2D half =
            propagate_impl_2d(psi, sys, 0.5 * t, psi.grid_x, psi.grid_y, route, policy, nullptr, depth + 1);
        return propagate_impl_2d(half, sys, 0.5 * t, ogx, ogy, route, policy, info, depth + 1);
    }
}

}  // namespace

WaveFunction2D propagate(const WaveFunction2D& psi, const SystemSpec& sys, double t, const Grid1D& ogx,
                         const Grid1D& ogy, Route route, SingularPolicy policy, ApplyInfo* info) {
    if (sys.dof() != 2) throw ValidationError("propagate(2D): system is 1D");
    return propagate_impl_2d(psi, sys, t, ogx, ogy, route, policy, info, 0);
}

}  // namespace geoprop
