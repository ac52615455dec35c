#include <cmath>
#include <random>
#include <sstream>

#include "geoprop/cli.hpp"
#include "geoprop/oracle.hpp"
#include "geoprop/propagators.hpp"
#include "geoprop/symmetry.hpp"
#include "geoprop/transforms.hpp"

namespace geoprop {

namespace {

// informational entries: reported, never gate the suite
constexpr double kLogOnly = 1e9;

void add(SuiteReport& r, const std::string& name, double value, double tol) {
    r.checks.push_back(CheckResult{name, value, tol, value <= tol});
}

double normal_from(std::mt19937& rng) {
    // pinned Box-Muller; std::normal_distribution is implementation-defined
    double u1 = (static_cast<double>(rng()) + 0.5) / 4294967296.0;
    double u2 = (static_cast<double>(rng()) + 0.5) / 4294967296.0;
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * kPi * u2);
}

double diff_norm(const WaveFunction1D& a, const WaveFunction1D& b) {
    double s = 0.0;
    for (int j = 0; j < a.grid.n; ++j) s += std::norm(a.values[j] - b.values[j]);
    return std::sqrt(s * a.grid.dx);
}

}  // namespace

WaveFunction1D random_bandlimited_state(const Grid1D& grid, unsigned seed, int modes, double width,
                                        double hbar) {
    std::mt19937 rng(seed);
    Grid1D scaled(grid.x0 / width, grid.dx / width, grid.n);
    std::vector<cplx> acc(grid.n, 0.0);
    for (int k = 0; k < modes; ++k) {
        cplx c(normal_from(rng), normal_from(rng));
        WaveFunction1D hk = hermite_gauss(k, scaled, hbar);
        for (int j = 0; j < grid.n; ++j) acc[j] += c * hk.values[j];
    }
    WaveFunction1D out(grid, std::move(acc), hbar);
    double nn = norm(out);
    if (nn == 0.0) throw ZeroNorm("random_bandlimited_state: degenerate draw");
    for (auto& z : out.values) z /= nn;
    return out;
}

bool SuiteReport::all_pass() const {
    for (const auto& c : checks)
        if (!c.pass) return false;
    return true;
}

std::string SuiteReport::to_json() const {
    std::ostringstream os;
    os.precision(17);
    os << "{\"suite\":\"" << suite << "\",\"checks\":[";
    for (std::size_t i = 0; i < checks.size(); ++i) {
        const auto& c = checks[i];
        os << (i ? "," : "") << "{\"name\":\"" << c.name << "\",\"value\":" << c.value
           << ",\"tolerance\":" << c.tolerance << ",\"pass\":" << (c.pass ? "true" : "false") << "}";
    }
    os << "]}";
    return os.str();
}

namespace {

SuiteReport suite_frft(unsigned seed, double ts) {
    SuiteReport r{"frft", {}};
    Grid1D g = symmetric_grid(6.0, 1024);

    {
        WaveFunction1D psi = random_bandlimited_state(g, seed, 8);
        WaveFunction1D id = frft(psi, 0.0);
        add(r, "gamma0_identity_exact", diff_norm(id, psi), 0.0 * ts);
    }
    {
        WaveFunction1D h0 = hermite_gauss(0, g);
        add(r, "gamma_pi2_gaussian_invariance", 1.0 - fidelity(frft(h0, 0.5 * kPi), h0), 1e-8 * ts);
    }
    for (int i = 0; i < 3; ++i) {
        WaveFunction1D psi = random_bandlimited_state(g, seed + 10 + i, 8);
        double mu = 0.3, nu = 0.7;
        double d = 1.0 - fidelity(frft(frft(psi, mu), nu), frft(psi, mu + nu));
        add(r, "group_property_state" + std::to_string(i), d, 1e-6 * ts);
    }
    for (int k = 0; k <= 5; ++k) {
        double gamma = 0.25 * kPi;
        WaveFunction1D hk = hermite_gauss(k, g);
        WaveFunction1D lhs = frft(hk, gamma);
        cplx eig = cis(-k * gamma);
        for (int j = 0; j < g.n; ++j) lhs.values[j] -= eig * hk.values[j];
        double s = 0.0;
        for (const auto& z : lhs.values) s += std::norm(z);
        add(r, "eigenrelation_h" + std::to_string(k), std::sqrt(s * g.dx), 1e-4 * ts);
    }
    for (double gamma : {0.3, 1.0, 2.0}) {
        WaveFunction1D psi = random_bandlimited_state(g, seed + 40, 8);
        double d = 1.0 - fidelity(frft_fast(psi, gamma), frft(psi, gamma));
        add(r, "fast_slow_agreement_gamma" + std::to_string(gamma).substr(0, 3), d, 1e-6 * ts);
    }
    {
        // F_{pi/2} equals the physical Fourier transform after the unit map
        // p = 2 pi hbar x'.
        WaveFunction1D psi = random_bandlimited_state(g, seed + 50, 8);
        WaveFunction1D lhs = frft(psi, 0.5 * kPi);
        WaveFunction1D rhs = resample(dilate(fourier(psi), 2.0 * kPi * psi.hbar), psi.grid);
        add(r, "gamma_pi2_matches_fourier", 1.0 - fidelity(lhs, rhs), 1e-8 * ts);
    }
    {
        // residual constant phase of the group property across the branch cut
        // (logged; additivity is projective by design)
        WaveFunction1D psi = random_bandlimited_state(g, seed + 60, 8);
        double mu = 2.0, nu = 1.5;  // mu + nu > pi
        cplx ov = inner_product(frft(frft(psi, mu), nu), frft(psi, mu + nu));
        add(r, "branch_residual_phase_logged", std::abs(std::arg(ov)), kLogOnly);
    }
    return r;
}

SuiteReport suite_propagators(unsigned seed, double ts) {
    SuiteReport r{"propagators", {}};
    Grid1D g = symmetric_grid(8.0, 1024);
    const double hbar = 1.0, m = 1.0;

    WaveFunction1D psi = random_bandlimited_state(g, seed, 6, 1.5);

    struct Case {
        const char* name;
        SystemSpec sys;
        double t;
    };
    std::vector<Case> cases = {
        {"free", SystemSpec::free_particle(m, hbar), 0.7},
        {"oscillator", SystemSpec::oscillator(m, 1.0, hbar), 0.9},
        {"efield", SystemSpec::constant_e(m, 1.0, hbar), 0.7},
    };
    for (const auto& c : cases) {
        Grid1D og = default_outgrid(c.sys, c.t, g);
        WaveFunction1D a = propagate(psi, c.sys, c.t, og, Route::Kernel);
        WaveFunction1D b = propagate(psi, c.sys, c.t, og, Route::Pipeline);
        add(r, std::string("two_route_") + c.name, 1.0 - fidelity(a, b), 1e-8 * ts);
        add(r, std::string("unitarity_") + c.name, std::abs(norm(a) / norm(psi) - 1.0), 1e-6 * ts);
    }
    {
        SystemSpec sys = SystemSpec::constant_b(m, 1.0, 1.0, hbar);
        const int n2 = 96;
        Grid1D g2 = symmetric_grid(6.0, n2);
        WaveFunction2D p2(g2, g2, std::vector<cplx>(static_cast<std::size_t>(n2) * n2), hbar);
        WaveFunction1D gx = gaussian_free_solution(1.0, 0.8, 0.0, m, hbar, 0.0, g2);
        WaveFunction1D gy = gaussian_free_solution(1.0, 0.0, 0.0, m, hbar, 0.0, g2);
        for (int ix = 0; ix < n2; ++ix)
            for (int iy = 0; iy < n2; ++iy) p2.at(ix, iy) = gx.values[ix] * gy.values[iy];
        double t = 0.8;
        WaveFunction2D a = propagate(p2, sys, t, g2, g2, Route::Kernel);
        WaveFunction2D b = propagate(p2, sys, t, g2, g2, Route::Pipeline);
        add(r, "two_route_bfield", 1.0 - fidelity(a, b), 1e-8 * ts);
        add(r, "unitarity_bfield", std::abs(norm(a) / norm(p2) - 1.0), 1e-6 * ts);
    }
    {
        // oracle agreement
        WaveFunction1D packet = gaussian_free_solution(1.0, -0.5, 0.6, m, hbar, 0.0, g);
        SystemSpec fr = SystemSpec::free_particle(m, hbar);
        WaveFunction1D via_kernel = propagate(packet, fr, 1.0, g, Route::Kernel);
        WaveFunction1D via_oracle = split_step(packet, PotentialSpec::zero(), m, hbar, 1.0, 512);
        add(r, "free_vs_split_step", 1.0 - fidelity(via_kernel, via_oracle), 1e-5 * ts);

        SystemSpec ef = SystemSpec::constant_e(m, 1.0, hbar);
        WaveFunction1D ek = propagate(packet, ef, 1.0, default_outgrid(ef, 1.0, g), Route::Kernel);
        WaveFunction1D eo = split_step(packet, PotentialSpec::linear_force(1.0), m, hbar, 1.0, 512);
        WaveFunction1D eo_r = resample(eo, ek.grid);
        add(r, "efield_vs_split_step", 1.0 - fidelity(ek, eo_r), 1e-5 * ts);

        SystemSpec os = SystemSpec::oscillator(m, 1.0, hbar);
        WaveFunction1D ok = propagate(packet, os, 1.0, g, Route::Kernel);
        WaveFunction1D oo = split_step(packet, PotentialSpec::harmonic(m, 1.0), m, hbar, 1.0, 512);
        add(r, "oscillator_vs_split_step", 1.0 - fidelity(ok, oo), 1e-5 * ts);
    }
    {
        // ground state picks up exactly e^{-i omega t / 2}
        double omega = 1.0, t = 1.0;
        std::vector<cplx> v(g.n);
        for (int j = 0; j < g.n; ++j) {
            double x = g.x(j);
            v[j] = std::pow(m * omega / (kPi * hbar), 0.25) * std::exp(-0.5 * m * omega * x * x / hbar);
        }
        WaveFunction1D gs(g, std::move(v), hbar);
        WaveFunction1D evolved = apply_kernel(gs, oscillator_kernel(m, omega, hbar, t), g);
        add(r, "ground_state_fidelity", 1.0 - fidelity(evolved, gs), 1e-8 * ts);
        double phase = std::arg(inner_product(gs, evolved));
        add(r, "ground_state_phase_error", std::abs(phase + 0.5 * omega * t), 1e-4 * ts);
    }
    {
        // measured constant between the oscillator kernel and the FrFT
        // convention (logged; expected omega t / 2)
        double omega = 1.0, t = 0.9;
        Grid1D gd = symmetric_grid(6.0, 1024);
        WaveFunction1D hs = hermite_gauss(0, gd);
        double alpha = std::sqrt(2.0 * kPi * hbar / (m * omega));
        WaveFunction1D phys = dilate(hs, 1.0 / alpha);
        WaveFunction1D via_kernel = apply_kernel(phys, oscillator_kernel(m, omega, hbar, t), phys.grid);
        WaveFunction1D via_frft = dilate(frft(hs, omega * t), 1.0 / alpha);
        cplx ov = inner_product(via_frft, via_kernel);
        add(r, "oscillator_frft_constant_phase_logged", std::arg(ov), kLogOnly);
    }
    return r;
}

SuiteReport suite_symmetry(unsigned seed, double ts) {
    SuiteReport r{"symmetry", {}};
    const double m = 1.0, hbar = 1.0, omega = 1.0;
    Grid1D g = symmetric_grid(8.0, 1024);
    WaveFunction1D packet = gaussian_free_solution(0.8, 0.4, 0.3, m, hbar, 0.0, g);

    {
        WaveFunction1D a = free_to_oscillator(packet, 0.0, m, omega);
        WaveFunction1D b = free_to_efield(packet, 0.0, m, 1.0);
        add(r, "identity_at_t0_oscillator", diff_norm(a, packet), 0.0 * ts);
        add(r, "identity_at_t0_efield", diff_norm(b, packet), 0.0 * ts);
    }
    {
        double tau = 0.7;
        TimeMap tm = TimeMap::free_oscillator(omega);
        double t = tm.inverse(tau);
        WaveFunction1D free_t = split_step(packet, PotentialSpec::zero(), m, hbar, t, 600);
        WaveFunction1D mapped = free_to_oscillator(free_t, t, m, omega);
        WaveFunction1D osc = split_step(packet, PotentialSpec::harmonic(m, omega), m, hbar, tau, 600);
        WaveFunction1D osc_r = resample(osc, mapped.grid);
        add(r, "lens_transform_vs_oracle", 1.0 - fidelity(mapped, osc_r), 1e-5 * ts);

        WaveFunction1D back = oscillator_to_free(mapped, tau, m, omega);
        add(r, "round_trip_oscillator", 1.0 - fidelity(back, free_t), 1e-10 * ts);
    }
    {
        double t = 1.0, eE = 1.0;
        WaveFunction1D free_t = split_step(packet, PotentialSpec::zero(), m, hbar, t, 600);
        WaveFunction1D mapped = free_to_efield(free_t, t, m, eE);
        WaveFunction1D ef = split_step(packet, PotentialSpec::linear_force(eE), m, hbar, t, 600);
        WaveFunction1D ef_r = resample(ef, mapped.grid);
        add(r, "avron_herbst_vs_oracle", 1.0 - fidelity(mapped, ef_r), 1e-5 * ts);
    }
    {
        double e = 1.0, B = 1.0;
        double wt = 0.8, t = wt;  // omega = 1
        // window wide enough that the rotated corner points stay inside it
        const int n2 = 128;
        Grid1D g2 = symmetric_grid(8.0, n2);
        WaveFunction1D gx = gaussian_free_solution(1.0, 0.6, 0.0, m, hbar, 0.0, g2);
        WaveFunction1D gy = gaussian_free_solution(1.0, -0.2, 0.0, m, hbar, 0.0, g2);
        WaveFunction2D init(g2, g2, std::vector<cplx>(static_cast<std::size_t>(n2) * n2), hbar);
        for (int ix = 0; ix < n2; ++ix)
            for (int iy = 0; iy < n2; ++iy) init.at(ix, iy) = gx.values[ix] * gy.values[iy];
        // analytic free 2D product solution at t
        WaveFunction1D fx = gaussian_free_solution(1.0, 0.6, 0.0, m, hbar, t, g2);
        WaveFunction1D fy = gaussian_free_solution(1.0, -0.2, 0.0, m, hbar, t, g2);
        WaveFunction2D free_t(g2, g2, std::vector<cplx>(static_cast<std::size_t>(n2) * n2), hbar);
        for (int ix = 0; ix < n2; ++ix)
            for (int iy = 0; iy < n2; ++iy) free_t.at(ix, iy) = fx.values[ix] * fy.values[iy];
        TimeMap tm = TimeMap::free_bfield(e * B / m);
        double tau = tm.forward(t);
        WaveFunction2D mapped = free_to_bfield(free_t, t, m, e, B);
        SystemSpec sys = SystemSpec::constant_b(m, e, B, hbar);
        WaveFunction2D prop = propagate(init, sys, tau, g2, g2, Route::Kernel);
        add(r, "bfield_map_vs_kernel", 1.0 - fidelity(mapped, prop), 1e-5 * ts);
    }
    {
        // monotonicity of the three time maps over a sweep
        double worst = 0.0;
        for (const TimeMap& tm :
             {TimeMap::free_oscillator(1.3), TimeMap::free_efield(), TimeMap::free_bfield(0.7)}) {
            double prev = tm.forward(-3.0);
            for (int i = 1; i <= 60; ++i) {
                double cur = tm.forward(-3.0 + 0.1 * i);
                worst = std::max(worst, prev - cur);
                prev = cur;
            }
        }
        add(r, "time_map_monotone", worst, 0.0 * ts);
    }
    (void)seed;
    return r;
}

SuiteReport suite_holonomy(unsigned seed, double ts) {
    SuiteReport r{"holonomy", {}};
    Grid1D g = symmetric_grid(6.0, 512);
    std::vector<WaveFunction1D> testset;
    for (int i = 0; i < 3; ++i) testset.push_back(random_bandlimited_state(g, seed + i, 6));

    add(r, "linear_loop_frft_pair",
        holonomy_probe({FrftStep{0.8}, FrftStep{-0.8}}, testset), 1e-6 * ts);
    add(r, "linear_loop_fourier_quartic",
        holonomy_probe({FourierStep{}, FourierStep{}, FourierStep{}, FourierStep{}}, testset), 1e-8 * ts);
    add(r, "linear_loop_dilate_pair", holonomy_probe({DilateStep{2.0}, DilateStep{0.5}}, testset),
        1e-12 * ts);
    add(r, "linear_loop_galilei_pair",
        holonomy_probe({GalileiStep{GalileiGenerator({0.3, 0.2})}, GalileiStep{-GalileiGenerator({0.3, 0.2})}},
                       testset),
        1e-12 * ts);
    {
        // commutator of a cubic position chirp with a cubic momentum chirp:
        // classically identity only to first order, reported without a gate
        double eps = 0.05, del = 0.05;
        GalileiGenerator Sx({0.0, 0.0, eps});
        GalileiGenerator Sp({0.0, 0.0, del});
        std::vector<TransformStep> loop = {GalileiStep{Sx},  FourierStep{}, GalileiStep{Sp},
                                           InverseFourierStep{}, GalileiStep{-Sx}, FourierStep{},
                                           GalileiStep{-Sp}, InverseFourierStep{}};
        add(r, "nonlinear_cubic_commutator_logged", holonomy_probe(loop, testset), kLogOnly);
    }
    return r;
}

}  // namespace

SuiteReport verify_suite(const std::string& name, unsigned seed, double tol_scale) {
    if (name == "frft") return suite_frft(seed, tol_scale);
    if (name == "propagators") return suite_propagators(seed, tol_scale);
    if (name == "symmetry") return suite_symmetry(seed, tol_scale);
    if (name == "holonomy") return suite_holonomy(seed, tol_scale);
    throw ValidationError("verify: unknown suite '" + name + "'");
}

}  // namespace geoprop
