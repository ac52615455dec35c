#include <doctest.h>

#include <cmath>

#include "geoprop/cli.hpp"
#include "geoprop/oracle.hpp"
#include "geoprop/propagators.hpp"
#include "geoprop/transforms.hpp"
#include "oracles.hpp"

using namespace geoprop;

TEST_CASE("apply_kernel: fourier kernel, zero input, support escape") {
    Grid1D g = symmetric_grid(8.0, 1024);
    WaveFunction1D psi = random_bandlimited_state(g, 12, 8, 1.5);

    SUBCASE("the ordinary fourier kernel matches fourier()") {
        QuadraticKernel K = make_kernel_1d(0.0, 0.0, -1.0, 0.0, 0.0, 0.0, 1.0);
        WaveFunction1D hat = fourier(psi);
        WaveFunction1D via_kernel = apply_kernel(psi, K, hat.grid);
        double worst = 0.0;
        for (int k = 0; k < hat.grid.n; ++k)
            worst = std::max(worst, std::abs(hat.values[k] - via_kernel.values[k]));
        CHECK(worst < 1e-10);
    }
    SUBCASE("zero in, zero out") {
        WaveFunction1D zero(g, std::vector<cplx>(g.n, 0.0), 1.0);
        WaveFunction1D out = apply_kernel(zero, free_kernel(1.0, 1.0, 1.0), g);
        for (const auto& z : out.values) CHECK(z == cplx(0.0, 0.0));
    }
    SUBCASE("narrow output window trips the support-escape flag") {
        ApplyInfo info;
        Grid1D tiny(2.0, 0.01, 64);
        (void)apply_kernel(psi, free_kernel(1.0, 1.0, 0.5), tiny, &info);
        CHECK(info.support_escape);
        CHECK(info.norm_deficit > 1e-4);
    }
}

TEST_CASE("free kernel: spreading gaussian, semigroup, oracle") {
    Grid1D g = symmetric_grid(10.0, 1024);
    const double m = 1.0, hbar = 1.0, sigma0 = 1.0;
    WaveFunction1D init = gaussian_free_solution(sigma0, 0.0, 0.0, m, hbar, 0.0, g);

    SUBCASE("width growth matches the closed form") {
        double t = 1.3;
        WaveFunction1D out = apply_kernel(init, free_kernel(m, hbar, t), g);
        double a = hbar * t / (2.0 * m * sigma0 * sigma0);
        double want = sigma0 * sigma0 * (1.0 + a * a);
        CHECK(std::abs(testutil::measured_var_x(out) - want) <= 1e-6 * want);
        CHECK(fidelity(out, gaussian_free_solution(sigma0, 0.0, 0.0, m, hbar, t, g)) >= 1.0 - 1e-8);
    }
    SUBCASE("semigroup under quadrature") {
        WaveFunction1D psi = random_bandlimited_state(g, 3, 6, 1.4);
        WaveFunction1D two = apply_kernel(apply_kernel(psi, free_kernel(m, hbar, 0.5), g),
                                          free_kernel(m, hbar, 0.8), g);
        WaveFunction1D one = apply_kernel(psi, free_kernel(m, hbar, 1.3), g);
        CHECK(fidelity(two, one) >= 1.0 - 1e-6);
    }
    SUBCASE("split-step oracle") {
        WaveFunction1D via_kernel = apply_kernel(init, free_kernel(m, hbar, 1.0), g);
        WaveFunction1D via_oracle = split_step(init, PotentialSpec::zero(), m, hbar, 1.0, 512);
        CHECK(fidelity(via_kernel, via_oracle) >= 1.0 - 1e-5);
    }
    CHECK_THROWS_AS((void)free_kernel(1.0, 1.0, 0.0), ZeroTime);
}

TEST_CASE("oscillator kernel: quarter period, singular times, ground state") {
    const double m = 1.0, omega = 1.0, hbar = 1.0;
    SUBCASE("quarter period reduces to the fourier kernel with the density factor") {
        QuadraticKernel K = oscillator_kernel(m, omega, hbar, 0.5 * kPi);
        CHECK(std::abs(K.axx()) < 1e-12);
        CHECK(std::abs(K.axpxp()) < 1e-12);
        CHECK(K.axxp() == doctest::Approx(-m * omega).epsilon(1e-14));
        CHECK(K.amp == doctest::Approx(std::sqrt(m * omega / (2.0 * kPi * hbar))).epsilon(1e-14));
    }
    SUBCASE("singular time rejected") {
        CHECK_THROWS_AS((void)oscillator_kernel(m, omega, hbar, kPi), SingularTime);
        CHECK_THROWS_AS((void)oscillator_kernel(m, omega, hbar, 2.0 * kPi + 1e-9), SingularTime);
    }
    SUBCASE("ground state: stationary with phase omega t/2") {
        Grid1D g = symmetric_grid(8.0, 1024);
        WaveFunction1D gs = testutil::oscillator_ground_state(g, m, omega, hbar);
        double t = 1.0;
        WaveFunction1D out = apply_kernel(gs, oscillator_kernel(m, omega, hbar, t), g);
        CHECK(fidelity(out, gs) >= 1.0 - 1e-8);
        double phase = std::arg(inner_product(gs, out));
        CHECK(std::abs(phase + 0.5 * omega * t) < 1e-4);
    }
    SUBCASE("split-step oracle with the harmonic potential") {
        Grid1D g = symmetric_grid(8.0, 1024);
        WaveFunction1D psi = gaussian_free_solution(0.8, 0.5, -0.4, m, hbar, 0.0, g);
        WaveFunction1D via_kernel = apply_kernel(psi, oscillator_kernel(m, omega, hbar, 1.0), g);
        WaveFunction1D via_oracle = split_step(psi, PotentialSpec::harmonic(m, omega), m, hbar, 1.0, 512);
        CHECK(fidelity(via_kernel, via_oracle) >= 1.0 - 1e-5);
    }
}

TEST_CASE("efield kernel: zero field, Ehrenfest drift, oracle, gauge flag") {
    const double m = 1.0, hbar = 1.0;
    SUBCASE("E = 0 equals the free kernel exactly") {
        QuadraticKernel a = efield_kernel(m, 0.0, hbar, 0.9);
        QuadraticKernel b = free_kernel(m, hbar, 0.9);
        CHECK(a.axx() == b.axx());
        CHECK(a.axxp() == b.axxp());
        CHECK(a.bx() == 0.0);
        CHECK(a.c0 == 0.0);
    }
    SUBCASE("centroid gains eE t^2/(2m)") {
        Grid1D g = symmetric_grid(10.0, 1024);
        double eE = 1.0, t = 1.2;
        WaveFunction1D init = gaussian_free_solution(1.0, -0.4, 0.3, m, hbar, 0.0, g);
        SystemSpec sys = SystemSpec::constant_e(m, eE, hbar);
        WaveFunction1D out = apply_kernel(init, efield_kernel(m, eE, hbar, t), default_outgrid(sys, t, g));
        double want = -0.4 + 0.3 * t / m + eE * t * t / (2.0 * m);
        CHECK(std::abs(testutil::measured_mean_x(out) - want) < 1e-6);
    }
    SUBCASE("split-step oracle with V = -eE x") {
        Grid1D g = symmetric_grid(10.0, 1024);
        WaveFunction1D init = gaussian_free_solution(1.0, 0.0, 0.0, m, hbar, 0.0, g);
        WaveFunction1D via_kernel = apply_kernel(init, efield_kernel(m, 1.0, hbar, 1.0), g);
        WaveFunction1D via_oracle = split_step(init, PotentialSpec::linear_force(1.0), m, hbar, 1.0, 512);
        CHECK(fidelity(via_kernel, via_oracle) >= 1.0 - 1e-5);
    }
    SUBCASE("gauge constant only moves c0") {
        QuadraticKernel with = efield_kernel(m, 1.0, hbar, 1.0, true);
        QuadraticKernel without = efield_kernel(m, 1.0, hbar, 1.0, false);
        CHECK(with.c0 == doctest::Approx(-1.0 / 24.0).epsilon(1e-15));
        CHECK(without.c0 == 0.0);
        CHECK(with.bx() == without.bx());
    }
}

TEST_CASE("bfield kernel: B->0 limit, Ehrenfest rotation, singular time") {
    const double m = 1.0, hbar = 1.0;
    SUBCASE("coefficients converge to the 2D free kernel") {
        double t = 0.9;
        QuadraticKernel k = bfield_kernel(m, 1.0, 1e-4, hbar, t);
        QuadraticKernel f = free_kernel_2d(m, hbar, t);
        CHECK(std::abs(k.Axx[0][0] - f.Axx[0][0]) < 1e-8);
        CHECK(std::abs(k.Axxp[0][0] - f.Axxp[0][0]) < 1e-8);
        CHECK(std::abs(k.Axxp[0][1]) < 1e-3);  // vanishes linearly in omega
    }
    SUBCASE("exact B = 0 falls back to the free kernel") {
        QuadraticKernel k = bfield_kernel(m, 1.0, 0.0, hbar, 0.7);
        CHECK(k.Axx[0][0] == doctest::Approx(m / 1.4));
    }
    SUBCASE("centroid follows the classical cyclotron circle") {
        const int n = 128;
        Grid1D g = symmetric_grid(8.0, n);
        SystemSpec sys = SystemSpec::constant_b(m, 1.0, 1.0, hbar);
        WaveFunction1D gx = gaussian_free_solution(1.0, 1.2, 0.0, m, hbar, 0.0, g);
        WaveFunction1D gy = gaussian_free_solution(1.0, 0.0, 0.0, m, hbar, 0.0, g);
        WaveFunction2D init(g, g, std::vector<cplx>(static_cast<std::size_t>(n) * n), hbar);
        for (int ix = 0; ix < n; ++ix)
            for (int iy = 0; iy < n; ++iy) init.at(ix, iy) = gx.values[ix] * gy.values[iy];
        double t = 0.8;
        WaveFunction2D out = apply_kernel(init, bfield_kernel(m, 1.0, 1.0, hbar, t), g, g);
        Moments2D mm = first_moments(out);
        auto z = classical_flow(sys, t).apply({1.2, 0.0, 0.0, 0.0});
        CHECK(std::abs(mm.x - z[0]) < 1e-5);
        CHECK(std::abs(mm.y - z[1]) < 1e-5);
        CHECK(std::abs(mm.px - z[2]) < 1e-5);
        CHECK(std::abs(mm.py - z[3]) < 1e-5);
    }
    CHECK_THROWS_AS((void)bfield_kernel(m, 1.0, 1.0, hbar, 2.0 * kPi), SingularTime);
}

TEST_CASE("propagate: zero time, two routes, full period, singular policy") {
    Grid1D g = symmetric_grid(8.0, 1024);
    const double m = 1.0, hbar = 1.0;
    WaveFunction1D psi = random_bandlimited_state(g, 21, 6, 1.4);

    SUBCASE("t = 0 returns the input up to resampling") {
        SystemSpec sys = SystemSpec::free_particle(m, hbar);
        WaveFunction1D out = propagate(psi, sys, 0.0, g, Route::Kernel);
        for (int j = 0; j < g.n; ++j) CHECK(out.values[j] == psi.values[j]);
    }
    SUBCASE("kernel and pipeline agree for all 1D systems") {
        std::vector<SystemSpec> systems = {SystemSpec::free_particle(m, hbar),
                                           SystemSpec::oscillator(m, 1.0, hbar),
                                           SystemSpec::constant_e(m, 0.8, hbar)};
        for (const auto& sys : systems)
            for (double t : {0.4, 0.9, 1.7}) {
                Grid1D og = default_outgrid(sys, t, g);
                WaveFunction1D a = propagate(psi, sys, t, og, Route::Kernel);
                WaveFunction1D b = propagate(psi, sys, t, og, Route::Pipeline);
                CHECK(fidelity(a, b) >= 1.0 - 1e-8);
            }
    }
    SUBCASE("oscillator full period through four quarter steps") {
        SystemSpec sys = SystemSpec::oscillator(m, 1.0, hbar);
        // width ~ sqrt(2 pi hbar/(m omega)) keeps the state inside the window
        // through every quarter turn of phase space
        WaveFunction1D matched = random_bandlimited_state(g, 21, 6, 2.5);
        WaveFunction1D cur = matched;
        for (int q = 0; q < 4; ++q) cur = propagate(cur, sys, 0.5 * kPi, g, Route::Kernel);
        CHECK(fidelity(cur, matched) >= 1.0 - 1e-6);
    }
    SUBCASE("singular policy: Error throws, Auto substitutes the parity shortcut") {
        SystemSpec sys = SystemSpec::oscillator(m, 1.0, hbar);
        WaveFunction1D matched = random_bandlimited_state(g, 22, 6, 2.5);
        CHECK_THROWS_AS((void)propagate(matched, sys, kPi, g, Route::Kernel, SingularPolicy::Error),
                        SingularTime);
        WaveFunction1D shortcut = propagate(matched, sys, kPi, g, Route::Kernel, SingularPolicy::Auto);
        WaveFunction1D half1 = propagate(matched, sys, 0.5 * kPi, g, Route::Kernel);
        WaveFunction1D half2 = propagate(half1, sys, 0.5 * kPi, g, Route::Kernel);
        CHECK(fidelity(shortcut, half2) >= 1.0 - 1e-7);
        // the shortcut carries the exact accumulated phase e^{-i pi/2}
        cplx ratio = inner_product(half2, shortcut) / (norm(shortcut) * norm(half2));
        CHECK(std::abs(std::arg(ratio)) < 1e-5);
    }
    SUBCASE("magnetic two-route agreement") {
        const int n = 96;
        Grid1D g2 = symmetric_grid(6.0, n);
        SystemSpec sys = SystemSpec::constant_b(m, 1.0, 1.0, hbar);
        WaveFunction1D gx = gaussian_free_solution(1.0, 0.5, 0.0, m, hbar, 0.0, g2);
        WaveFunction1D gy = gaussian_free_solution(1.0, -0.4, 0.0, m, hbar, 0.0, g2);
        WaveFunction2D init(g2, g2, std::vector<cplx>(static_cast<std::size_t>(n) * n), hbar);
        for (int ix = 0; ix < n; ++ix)
            for (int iy = 0; iy < n; ++iy) init.at(ix, iy) = gx.values[ix] * gy.values[iy];
        for (double t : {0.5, 1.6}) {
            WaveFunction2D a = propagate(init, sys, t, g2, g2, Route::Kernel);
            WaveFunction2D b = propagate(init, sys, t, g2, g2, Route::Pipeline);
            CHECK(fidelity(a, b) >= 1.0 - 1e-8);
        }
        WaveFunction2D cycle = propagate(init, sys, 2.0 * kPi, g2, g2, Route::Kernel);
        CHECK(fidelity(cycle, init) >= 1.0 - 1e-12);  // (-1)^k identity shortcut
    }
}

TEST_CASE("Ehrenfest: kernel moments track the classical flow") {
    Grid1D g = symmetric_grid(10.0, 1024);
    const double m = 1.0, hbar = 1.0;
    WaveFunction1D init = gaussian_free_solution(0.9, 0.7, 0.4, m, hbar, 0.0, g);
    std::vector<SystemSpec> systems = {SystemSpec::free_particle(m, hbar),
                                       SystemSpec::oscillator(m, 1.1, hbar),
                                       SystemSpec::constant_e(m, 0.9, hbar)};
    for (const auto& sys : systems) {
        double t = 0.9;
        Grid1D og = default_outgrid(sys, t, g);
        WaveFunction1D out = propagate(init, sys, t, og, Route::Kernel);
        Moments1D mm = first_moments(out);
        auto z = classical_flow(sys, t).apply({0.7, 0.4, 0.0, 0.0});
        CHECK(std::abs(mm.x - z[0]) < 1e-5);
        CHECK(std::abs(mm.p - z[1]) < 1e-5);
    }
}
