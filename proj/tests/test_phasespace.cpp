#include <doctest.h>

#include <cmath>
#include <random>

#include "geoprop/phasespace.hpp"
#include "geoprop/propagators.hpp"
#include "oracles.hpp"

using namespace geoprop;

namespace {

void check_map(const AffineSymplecticMap& f, const double M[2][2], const double T[2], double tol) {
    for (int i = 0; i < 2; ++i) {
        CHECK(std::abs(f.T[i] - T[i]) <= tol);
        for (int j = 0; j < 2; ++j) CHECK(std::abs(f.M[i][j] - M[i][j]) <= tol);
    }
}

SystemSpec system_by_index(int i) {
    switch (i) {
        case 0: return SystemSpec::free_particle(1.3, 1.0);
        case 1: return SystemSpec::oscillator(0.8, 1.7, 1.0);
        case 2: return SystemSpec::constant_e(1.1, -0.6, 1.0);
        default: return SystemSpec::constant_b(0.9, 1.2, 0.7, 1.0);
    }
}

}  // namespace

TEST_CASE("classical_flow worked cases") {
    SUBCASE("free particle m=1 t=2") {
        AffineSymplecticMap f = classical_flow(SystemSpec::free_particle(1.0, 1.0), 2.0);
        double M[2][2] = {{1.0, 2.0}, {0.0, 1.0}}, T[2] = {0.0, 0.0};
        check_map(f, M, T, 0.0);
    }
    SUBCASE("zero time flow is the identity") {
        for (int i = 0; i < 4; ++i) {
            AffineSymplecticMap f = classical_flow(system_by_index(i), 0.0);
            int d = 2 * f.n;
            for (int r = 0; r < d; ++r) {
                CHECK(f.T[r] == 0.0);
                for (int c = 0; c < d; ++c) CHECK(f.M[r][c] == (r == c ? 1.0 : 0.0));
            }
        }
    }
    SUBCASE("oscillator quarter period") {
        AffineSymplecticMap f = classical_flow(SystemSpec::oscillator(1.0, 1.0, 1.0), 0.5 * kPi);
        double M[2][2] = {{0.0, 1.0}, {-1.0, 0.0}}, T[2] = {0.0, 0.0};
        check_map(f, M, T, 1e-15);
    }
    SUBCASE("constant force unit case") {
        AffineSymplecticMap f = classical_flow(SystemSpec::constant_e(1.0, 1.0, 1.0), 1.0);
        double M[2][2] = {{1.0, 1.0}, {0.0, 1.0}}, T[2] = {0.5, 1.0};
        check_map(f, M, T, 0.0);
    }
}

TEST_CASE("flows are symplectic and compose as a one-parameter group") {
    std::mt19937 rng(42);
    for (int i = 0; i < 4; ++i) {
        SystemSpec sys = system_by_index(i);
        for (int trial = 0; trial < 25; ++trial) {
            double t1 = testutil::uniform(rng, -3.0, 3.0);
            double t2 = testutil::uniform(rng, -3.0, 3.0);
            AffineSymplecticMap f1 = classical_flow(sys, t1);
            CHECK(f1.symplectic_defect() <= 1e-12);
            AffineSymplecticMap f12 = f1.after(classical_flow(sys, t2));
            AffineSymplecticMap fsum = classical_flow(sys, t1 + t2);
            int d = 2 * f1.n;
            for (int r = 0; r < d; ++r) {
                CHECK(std::abs(f12.T[r] - fsum.T[r]) <= 1e-12 * (1.0 + std::abs(fsum.T[r])));
                for (int c = 0; c < d; ++c)
                    CHECK(std::abs(f12.M[r][c] - fsum.M[r][c]) <= 1e-12 * (1.0 + std::abs(fsum.M[r][c])));
            }
        }
    }
}

TEST_CASE("affine map inverse and application") {
    SystemSpec sys = SystemSpec::constant_b(0.9, 1.2, 0.7, 1.0);
    AffineSymplecticMap f = classical_flow(sys, 1.3);
    AffineSymplecticMap id = f.after(f.inverse());
    for (int r = 0; r < 4; ++r) {
        CHECK(std::abs(id.T[r]) < 1e-13);
        for (int c = 0; c < 4; ++c) CHECK(std::abs(id.M[r][c] - (r == c ? 1.0 : 0.0)) < 1e-13);
    }
    std::array<double, 4> z{0.3, -0.7, 1.1, 0.2};
    auto fz = f.apply(z);
    auto back = f.inverse().apply(fz);
    for (int r = 0; r < 4; ++r) CHECK(std::abs(back[r] - z[r]) < 1e-13);
}

TEST_CASE("system spec validation") {
    CHECK_THROWS_AS(SystemSpec::free_particle(0.0, 1.0), ValidationError);
    CHECK_THROWS_AS(SystemSpec::free_particle(1.0, 0.0), ValidationError);
    CHECK_THROWS_AS(SystemSpec::oscillator(1.0, -2.0, 1.0), ValidationError);
    CHECK(SystemSpec::constant_b(2.0, 3.0, 4.0, 1.0).omega == doctest::Approx(6.0));
    CHECK(SystemSpec::constant_b(1.0, 1.0, 1.0, 1.0).dof() == 2);
}

TEST_CASE("symplectic_area worked cases") {
    LinearFoliation L1 = LinearFoliation::position();
    LinearFoliation L2 = LinearFoliation::momentum();
    LinearSection l1 = LinearSection::vertical_at(0.0);  // leaf of L1
    LinearSection l2 = LinearSection::horizontal(0.0);   // leaf of L2

    CHECK(symplectic_area(l2, 2.0, 3.0, l1, L1, L2) == doctest::Approx(6.0).epsilon(1e-15));
    CHECK(symplectic_area(l2, 0.0, 3.0, l1, L1, L2) == doctest::Approx(0.0));  // q1 on lambda1
    // reversed traversal (A D C B) negates the integral
    CHECK(symplectic_area(l1.line(), L2.leaf(3.0), L1.leaf(2.0), l2.line()) ==
          doctest::Approx(-6.0).epsilon(1e-15));

    Line par1 = Line::horizontal(0.0), par2 = Line::horizontal(1.0);
    CHECK_THROWS_AS((void)symplectic_area(par1, par2, Line::vertical(1.0), Line::vertical(0.0)),
                    ParallelLeaves);
}

TEST_CASE("symplectic_area vs polygon-area oracle on random configurations") {
    std::mt19937 rng(7);
    int done = 0;
    while (done < 100) {
        double a1 = testutil::uniform(rng, 0.0, kPi);
        double a2 = testutil::uniform(rng, 0.0, kPi);
        if (std::abs(std::sin(a1 - a2)) < 0.1) continue;  // keep conditioning sane
        LinearFoliation L1 = LinearFoliation::from_direction(std::cos(a1), std::sin(a1));
        LinearFoliation L2 = LinearFoliation::from_direction(std::cos(a2), std::sin(a2));
        Line q1 = L1.leaf(testutil::uniform(rng, -2.0, 2.0));
        Line q2 = L2.leaf(testutil::uniform(rng, -2.0, 2.0));
        Line lam1 = L1.leaf(testutil::uniform(rng, -2.0, 2.0));
        Line lam2 = L2.leaf(testutil::uniform(rng, -2.0, 2.0));
        double got = symplectic_area(lam2, q1, q2, lam1);
        double want = testutil::polygon_area_oracle(lam2, q1, q2, lam1);
        CHECK(std::abs(got - want) <= 1e-12 * std::max(1.0, std::abs(want)));
        ++done;
    }
}

TEST_CASE("symplectic_area is additive under splitting by an intermediate line") {
    std::mt19937 rng(11);
    for (int trial = 0; trial < 50; ++trial) {
        double a1 = testutil::uniform(rng, 0.1, 1.2);
        double a2 = a1 + testutil::uniform(rng, 0.5, 1.4);
        LinearFoliation L1 = LinearFoliation::from_direction(std::cos(a1), std::sin(a1));
        LinearFoliation L2 = LinearFoliation::from_direction(std::cos(a2), std::sin(a2));
        Line q1 = L1.leaf(testutil::uniform(rng, -2.0, 2.0));
        Line q2 = L2.leaf(testutil::uniform(rng, -2.0, 2.0));
        Line lam1 = L1.leaf(testutil::uniform(rng, -2.0, 2.0));
        Line lam2 = L2.leaf(testutil::uniform(rng, -2.0, 2.0));
        Line mid = L2.leaf(testutil::uniform(rng, -2.0, 2.0));
        double whole = symplectic_area(lam2, q1, q2, lam1);
        double split = symplectic_area(lam2, q1, mid, lam1) + symplectic_area(mid, q1, q2, lam1);
        CHECK(std::abs(whole - split) <= 1e-12 * std::max(1.0, std::abs(whole)));
    }
}

TEST_CASE("section_difference worked cases and additivity") {
    LinearFoliation L = LinearFoliation::position();
    SUBCASE("identical sections give S = 0") {
        LinearSection l = LinearSection::sloped(0.4, -0.3);
        GalileiGenerator S = section_difference(l, l, L);
        CHECK(S.degree() == 0);
    }
    SUBCASE("oscillator reference change") {
        double m = 1.4, omega = 0.9, t = 0.6;
        double cot = std::cos(omega * t) / std::sin(omega * t);
        GalileiGenerator S = section_difference(LinearSection::sloped(m * omega * cot, 0.0),
                                                LinearSection::horizontal(0.0), L);
        CHECK(S.coeff(2) == doctest::Approx(0.5 * m * omega * cot).epsilon(1e-14));
        CHECK(S.coeff(1) == doctest::Approx(0.0));
    }
    SUBCASE("constant force shift") {
        double eEt = 0.7;
        GalileiGenerator S =
            section_difference(LinearSection::horizontal(eEt), LinearSection::horizontal(0.0), L);
        CHECK(S.coeff(1) == doctest::Approx(eEt).epsilon(1e-14));
        CHECK(S.coeff(2) == doctest::Approx(0.0));
    }
    SUBCASE("chain rule over random sections") {
        std::mt19937 rng(5);
        for (int trial = 0; trial < 30; ++trial) {
            LinearSection a = LinearSection::sloped(testutil::uniform(rng, -2, 2), testutil::uniform(rng, -2, 2));
            LinearSection b = LinearSection::sloped(testutil::uniform(rng, -2, 2), testutil::uniform(rng, -2, 2));
            LinearSection c = LinearSection::sloped(testutil::uniform(rng, -2, 2), testutil::uniform(rng, -2, 2));
            GalileiGenerator lhs = section_difference(a, b, L) + section_difference(b, c, L);
            GalileiGenerator rhs = section_difference(a, c, L);
            for (int k = 1; k <= 2; ++k)
                CHECK(std::abs(lhs.coeff(k) - rhs.coeff(k)) <= 1e-13 * (1.0 + std::abs(rhs.coeff(k))));
        }
    }
    SUBCASE("section parallel to the foliation is rejected") {
        LinearFoliation Lm = LinearFoliation::momentum();
        CHECK_THROWS_AS(
            (void)section_difference(LinearSection::horizontal(1.0), LinearSection::horizontal(0.0), Lm),
            NotTransversal);
    }
}

TEST_CASE("kernel_from_foliations: Fourier pair") {
    QuadraticKernel k = kernel_from_foliations(LinearFoliation::position(), LinearSection::horizontal(0.0),
                                               LinearFoliation::momentum(), LinearSection::vertical_at(0.0),
                                               1.0);
    CHECK(k.amp == doctest::Approx(1.0 / std::sqrt(2.0 * kPi)).epsilon(1e-15));
    CHECK(k.axxp() == doctest::Approx(-1.0).epsilon(1e-15));
    CHECK(k.axx() == doctest::Approx(0.0));
    CHECK(k.axpxp() == doctest::Approx(0.0));
    CHECK(k.bx() == doctest::Approx(0.0));
    CHECK(k.bxp() == doctest::Approx(0.0));
    CHECK(std::abs(k.phase_amp - cis(-0.25 * kPi)) < 1e-15);
}

TEST_CASE("kernel_from_foliations reproduces the flowed closed forms") {
    // oscillator and free kernels re-derived from pure geometry
    std::mt19937 rng(17);
    for (int trial = 0; trial < 20; ++trial) {
        double m = testutil::uniform(rng, 0.5, 2.0);
        double hbar = testutil::uniform(rng, 0.5, 2.0);
        {
            double omega = testutil::uniform(rng, 0.4, 2.0);
            double t = testutil::uniform(rng, 0.1, 1.2) / omega;
            AffineSymplecticMap flow = classical_flow(SystemSpec::oscillator(m, omega, hbar), t);
            QuadraticKernel geo =
                kernel_from_foliations(LinearFoliation::position(), Line::horizontal(0.0),
                                       LinearFoliation::from_flow_position(flow),
                                       flowed_zero_section(flow), hbar);
            QuadraticKernel closed = oscillator_kernel(m, omega, hbar, t);
            CHECK(geo.axx() == doctest::Approx(closed.axx()).epsilon(1e-12));
            CHECK(geo.axpxp() == doctest::Approx(closed.axpxp()).epsilon(1e-12));
            CHECK(geo.axxp() == doctest::Approx(closed.axxp()).epsilon(1e-12));
            CHECK(geo.amp == doctest::Approx(closed.amp).epsilon(1e-12));
            CHECK(std::abs(geo.phase_amp - closed.phase_amp) < 1e-12);
        }
        {
            double t = testutil::uniform(rng, 0.2, 2.0);
            AffineSymplecticMap flow = classical_flow(SystemSpec::free_particle(m, hbar), t);
            QuadraticKernel geo =
                kernel_from_foliations(LinearFoliation::position(), Line::horizontal(0.0),
                                       LinearFoliation::from_flow_position(flow),
                                       flowed_zero_section(flow), hbar);
            QuadraticKernel closed = free_kernel(m, hbar, t);
            CHECK(geo.axx() == doctest::Approx(closed.axx()).epsilon(1e-12));
            CHECK(geo.axpxp() == doctest::Approx(closed.axpxp()).epsilon(1e-12));
            CHECK(geo.axxp() == doctest::Approx(closed.axxp()).epsilon(1e-12));
            CHECK(geo.amp == doctest::Approx(closed.amp).epsilon(1e-12));
        }
    }
}

TEST_CASE("kernel_from_foliations: transversality and direction-scale invariance") {
    LinearFoliation L1 = LinearFoliation::position();
    CHECK_THROWS_AS((void)kernel_from_foliations(L1, LinearSection::horizontal(0.0), L1,
                                                 LinearSection::horizontal(0.0), 1.0),
                    NotTransversal);

    LinearFoliation a = LinearFoliation::from_direction(0.3, 1.1);
    LinearFoliation b = LinearFoliation::from_direction(-2.1, 0.9);
    LinearFoliation a2 = LinearFoliation::from_direction(0.3 * 7.5, 1.1 * 7.5);
    LinearSection r1 = LinearSection::sloped(-0.4, 0.2);
    LinearSection r2 = LinearSection::sloped(0.9, -0.1);
    QuadraticKernel k1 = kernel_from_foliations(a, r1, b, r2, 1.0);
    QuadraticKernel k2 = kernel_from_foliations(a2, r1, b, r2, 1.0);
    CHECK(k1.axx() == doctest::Approx(k2.axx()).epsilon(1e-14));
    CHECK(k1.axpxp() == doctest::Approx(k2.axpxp()).epsilon(1e-14));
    CHECK(k1.axxp() == doctest::Approx(k2.axxp()).epsilon(1e-14));
    CHECK(k1.bx() == doctest::Approx(k2.bx()).epsilon(1e-14));
    CHECK(k1.amp == doctest::Approx(k2.amp).epsilon(1e-14));
}

TEST_CASE("composed kernel phase equals the single-rectangle area where it exists") {
    // oscillator flow: the references lambda, lambda' are mutually transversal,
    // so -k(lambda, q1, q2, lambda') must reproduce the composed phase
    double m = 1.0, omega = 1.0, hbar = 1.0, t = 0.8;
    AffineSymplecticMap flow = classical_flow(SystemSpec::oscillator(m, omega, hbar), t);
    LinearFoliation L1 = LinearFoliation::position();
    LinearFoliation L2 = LinearFoliation::from_flow_position(flow);
    Line lambda = Line::horizontal(0.0);
    Line lambda_p = flowed_zero_section(flow);
    QuadraticKernel k = kernel_from_foliations(L1, lambda, L2, lambda_p, hbar);

    std::mt19937 rng(23);
    for (int trial = 0; trial < 20; ++trial) {
        double q1 = testutil::uniform(rng, -2.0, 2.0);
        double q2 = testutil::uniform(rng, -2.0, 2.0);
        double area = symplectic_area(lambda, L1.leaf(q1), L2.leaf(q2), lambda_p);
        CHECK(k.phase(q1, q2) == doctest::Approx(-area).epsilon(1e-11));
    }
}

TEST_CASE("kernel_from_planes reproduces the magnetic closed form") {
    double m = 1.1, e = 0.9, B = 1.3, hbar = 0.8;
    for (double t : {0.4, 0.9, 2.0}) {
        AffineSymplecticMap flow = classical_flow(SystemSpec::constant_b(m, e, B, hbar), t);
        double sh = std::sin(0.5 * (e * B / m) * t);
        QuadraticKernel geo = kernel_from_planes(
            Foliation4::position(), zero_momentum_plane4(), Foliation4::from_flow_position(flow),
            flowed_zero_momentum_plane4(flow), hbar, cplx(0.0, sh > 0.0 ? -1.0 : 1.0));
        QuadraticKernel closed = bfield_kernel(m, e, B, hbar, t);
        for (int i = 0; i < 2; ++i) {
            CHECK(std::abs(geo.Bx[i] - closed.Bx[i]) < 1e-12);
            CHECK(std::abs(geo.Bxp[i] - closed.Bxp[i]) < 1e-12);
            for (int j = 0; j < 2; ++j) {
                CHECK(geo.Axx[i][j] == doctest::Approx(closed.Axx[i][j]).epsilon(1e-12));
                CHECK(geo.Axpxp[i][j] == doctest::Approx(closed.Axpxp[i][j]).epsilon(1e-12));
                CHECK(geo.Axxp[i][j] == doctest::Approx(closed.Axxp[i][j]).epsilon(1e-12));
            }
        }
        CHECK(geo.amp == doctest::Approx(closed.amp).epsilon(1e-12));
    }
}

TEST_CASE("magnetic section differences match the half-angle cotangent form") {
    double m = 1.0, e = 1.0, B = 1.0, hbar = 1.0, t = 0.9;
    AffineSymplecticMap flow = classical_flow(SystemSpec::constant_b(m, e, B, hbar), t);
    double omega = e * B / m;
    double expect = 0.25 * m * omega / std::tan(0.5 * omega * t);
    Foliation4 L1 = Foliation4::position();
    Foliation4 L2 = Foliation4::from_flow_position(flow);
    GalileiGenerator2D s_in = section_difference4(zero_momentum_plane4(), L2.leaf(0.0, 0.0), L1);
    CHECK(s_in.c[2][0] == doctest::Approx(expect).epsilon(1e-12));
    CHECK(s_in.c[0][2] == doctest::Approx(expect).epsilon(1e-12));
    CHECK(std::abs(s_in.c[1][1]) < 1e-12);
    CHECK(std::abs(s_in.c[1][0]) < 1e-12);
    CHECK(std::abs(s_in.c[0][1]) < 1e-12);
}
