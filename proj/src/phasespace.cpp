#include "geoprop/phasespace.hpp"

#include <cmath>

namespace geoprop {

// --- SystemSpec ---------------------------------------------------------

namespace {
void check_common(double m, double hbar) {
    if (!(m > 0.0)) throw ValidationError("SystemSpec: m must be > 0");
    if (!(hbar > 0.0)) throw ValidationError("SystemSpec: hbar must be > 0");
}
}  // namespace

SystemSpec SystemSpec::free_particle(double m, double hbar) {
    check_common(m, hbar);
    SystemSpec s;
    s.kind = SystemKind::Free;
    s.m = m;
    s.hbar = hbar;
    return s;
}

SystemSpec SystemSpec::oscillator(double m, double omega, double hbar) {
    check_common(m, hbar);
    if (!(omega >= 0.0)) throw ValidationError("SystemSpec: oscillator omega must be >= 0");
    SystemSpec s;
    s.kind = SystemKind::Oscillator;
    s.m = m;
    s.hbar = hbar;
    s.omega = omega;
    return s;
}

SystemSpec SystemSpec::constant_e(double m, double eE, double hbar) {
    check_common(m, hbar);
    SystemSpec s;
    s.kind = SystemKind::ConstantE;
    s.m = m;
    s.hbar = hbar;
    s.eE = eE;
    return s;
}

SystemSpec SystemSpec::constant_b(double m, double e, double B, double hbar) {
    check_common(m, hbar);
    SystemSpec s;
    s.kind = SystemKind::ConstantB;
    s.m = m;
    s.hbar = hbar;
    s.e = e;
    s.B = B;
    s.omega = e * B / m;
    return s;
}

// --- AffineSymplecticMap --------------------------------------------------

AffineSymplecticMap AffineSymplecticMap::identity(int n) {
    AffineSymplecticMap r;
    r.n = n;
    for (int i = 0; i < 2 * n; ++i) r.M[i][i] = 1.0;
    return r;
}

AffineSymplecticMap AffineSymplecticMap::after(const AffineSymplecticMap& g) const {
    AffineSymplecticMap r;
    r.n = n;
    const int d = 2 * n;
    for (int i = 0; i < d; ++i) {
        double t = T[i];
        for (int k = 0; k < d; ++k) {
            t += M[i][k] * g.T[k];
            double s = 0.0;
            for (int j = 0; j < d; ++j) s += M[i][j] * g.M[j][k];
            r.M[i][k] = s;
        }
        r.T[i] = t;
    }
    return r;
}

namespace {

// Solve A x = b by Gaussian elimination with partial pivoting, d <= 4.
void solve_small(int d, double A[4][4], const double b[4], double x[4]) {
    double a[4][5];
    for (int i = 0; i < d; ++i) {
        for (int j = 0; j < d; ++j) a[i][j] = A[i][j];
        a[i][d] = b[i];
    }
    double scale = 0.0;
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) scale = std::max(scale, std::abs(a[i][j]));
    for (int col = 0; col < d; ++col) {
        int piv = col;
        for (int r = col + 1; r < d; ++r)
            if (std::abs(a[r][col]) > std::abs(a[piv][col])) piv = r;
        if (std::abs(a[piv][col]) <= 1e-14 * std::max(scale, 1e-300))
            throw ParallelLeaves("degenerate linear system (non-transversal configuration)");
        if (piv != col)
            for (int j = col; j <= d; ++j) std::swap(a[piv][j], a[col][j]);
        for (int r = 0; r < d; ++r) {
            if (r == col) continue;
            double f = a[r][col] / a[col][col];
            for (int j = col; j <= d; ++j) a[r][j] -= f * a[col][j];
        }
    }
    for (int i = 0; i < d; ++i) x[i] = a[i][d] / a[i][i];
}

}  // namespace

AffineSymplecticMap AffineSymplecticMap::inverse() const {
    AffineSymplecticMap r;
    r.n = n;
    const int d = 2 * n;
    double A[4][4];
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) A[i][j] = M[i][j];
    for (int col = 0; col < d; ++col) {
        double e[4] = {};
        e[col] = 1.0;
        double x[4];
        solve_small(d, A, e, x);
        for (int i = 0; i < d; ++i) r.M[i][col] = x[i];
    }
    for (int i = 0; i < d; ++i) {
        double t = 0.0;
        for (int j = 0; j < d; ++j) t += r.M[i][j] * T[j];
        r.T[i] = -t;
    }
    return r;
}

std::array<double, 4> AffineSymplecticMap::apply(const std::array<double, 4>& z) const {
    std::array<double, 4> out{};
    const int d = 2 * n;
    for (int i = 0; i < d; ++i) {
        double s = T[i];
        for (int j = 0; j < d; ++j) s += M[i][j] * z[j];
        out[i] = s;
    }
    return out;
}

double AffineSymplecticMap::symplectic_defect() const {
    const int d = 2 * n;
    double J[4][4] = {};
    for (int i = 0; i < n; ++i) {
        J[i][n + i] = 1.0;
        J[n + i][i] = -1.0;
    }
    double worst = 0.0;
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) {
            double s = 0.0;
            for (int a = 0; a < d; ++a)
                for (int b = 0; b < d; ++b) s += M[a][i] * J[a][b] * M[b][j];
            worst = std::max(worst, std::abs(s - J[i][j]));
        }
    return worst;
}

// --- classical flows --------------------------------------------------------

AffineSymplecticMap classical_flow(const SystemSpec& sys, double t) {
    switch (sys.kind) {
        case SystemKind::Free: {
            AffineSymplecticMap f = AffineSymplecticMap::identity(1);
            f.M[0][1] = t / sys.m;
            return f;
        }
        case SystemKind::Oscillator: {
            if (sys.omega == 0.0) return classical_flow(SystemSpec::free_particle(sys.m, sys.hbar), t);
            AffineSymplecticMap f = AffineSymplecticMap::identity(1);
            double c = std::cos(sys.omega * t), s = std::sin(sys.omega * t);
            f.M[0][0] = c;
            f.M[0][1] = s / (sys.m * sys.omega);
            f.M[1][0] = -sys.m * sys.omega * s;
            f.M[1][1] = c;
            return f;
        }
        case SystemKind::ConstantE: {
            AffineSymplecticMap f = AffineSymplecticMap::identity(1);
            f.M[0][1] = t / sys.m;
            f.T[0] = sys.eE * t * t / (2.0 * sys.m);
            f.T[1] = sys.eE * t;
            return f;
        }
        case SystemKind::ConstantB: {
            AffineSymplecticMap f = AffineSymplecticMap::identity(2);
            const double w = sys.omega, m = sys.m;
            if (w == 0.0) {
                f.M[0][2] = t / m;
                f.M[1][3] = t / m;
                return f;
            }
            const double c = std::cos(w * t), s = std::sin(w * t);
            const double wm = w * m;
            f.M[0][0] = 0.5 * (c + 1.0);
            f.M[0][1] = 0.5 * s;
            f.M[0][2] = s / wm;
            f.M[0][3] = -(c - 1.0) / wm;
            f.M[1][0] = -0.5 * s;
            f.M[1][1] = 0.5 * (c + 1.0);
            f.M[1][2] = (c - 1.0) / wm;
            f.M[1][3] = s / wm;
            f.M[2][0] = -0.25 * wm * s;
            f.M[2][1] = 0.25 * wm * (c - 1.0);
            f.M[2][2] = 0.5 * (c + 1.0);
            f.M[2][3] = 0.5 * s;
            f.M[3][0] = -0.25 * wm * (c - 1.0);
            f.M[3][1] = -0.25 * wm * s;
            f.M[3][2] = -0.5 * s;
            f.M[3][3] = 0.5 * (c + 1.0);
            return f;
        }
    }
    throw ValidationError("classical_flow: unknown system kind");
}

// --- plane geometry ---------------------------------------------------------

namespace {

inline double cross2(double ux, double up, double vx, double vp) { return ux * vp - up * vx; }

}  // namespace

bool Line::parallel_to(const Line& o) const {
    double det = cross2(nx, np, o.nx, o.np);
    double s1 = std::hypot(nx, np), s2 = std::hypot(o.nx, o.np);
    return std::abs(det) <= 1e-14 * std::max(s1 * s2, 1e-300);
}

std::array<double, 2> Line::intersect(const Line& o) const {
    if (parallel_to(o)) throw ParallelLeaves("Line::intersect: lines are parallel");
    double det = cross2(nx, np, o.nx, o.np);
    // [nx np; onx onp][x;p] = [c; oc]
    double x = (c * o.np - o.c * np) / det;
    double p = (nx * o.c - o.nx * c) / det;
    return {x, p};
}

LinearFoliation LinearFoliation::from_direction(double vx, double vp) {
    if (vx == 0.0 && vp == 0.0) throw ValidationError("LinearFoliation: zero leaf direction");
    LinearFoliation f;
    f.vx = vx;
    f.vp = vp;
    if (vp != 0.0) {
        // crossing parameter with the position axis {p = 0}
        f.lx = 1.0;
        f.lp = -vx / vp;
        f.lc = 0.0;
    } else {
        f.lx = 0.0;
        f.lp = 1.0;
        f.lc = 0.0;
    }
    return f;
}

LinearFoliation LinearFoliation::from_flow_position(const AffineSymplecticMap& flow) {
    LinearFoliation f;
    f.lx = flow.M[0][0];
    f.lp = flow.M[0][1];
    f.lc = flow.T[0];
    f.vx = -flow.M[0][1];
    f.vp = flow.M[0][0];
    if (f.vx == 0.0 && f.vp == 0.0)
        throw ValidationError("from_flow_position: degenerate flow row");
    return f;
}

Line flowed_zero_section(const AffineSymplecticMap& flow) {
    return Line{flow.M[1][0], flow.M[1][1], -flow.T[1]};
}

double symplectic_area(const Line& lambda2, const Line& q1, const Line& q2, const Line& lambda1) {
    auto A = lambda1.intersect(lambda2);
    auto B = lambda2.intersect(q1);
    auto C = q1.intersect(q2);
    auto D = q2.intersect(lambda1);
    double abx = B[0] - A[0], abp = B[1] - A[1];
    double acx = C[0] - A[0], acp = C[1] - A[1];
    double adx = D[0] - A[0], adp = D[1] - A[1];
    return 0.5 * (cross2(abx, abp, acx, acp) + cross2(acx, acp, adx, adp));
}

double symplectic_area(const LinearSection& lambda2, double q1, double q2, const LinearSection& lambda1,
                       const LinearFoliation& L1, const LinearFoliation& L2) {
    return symplectic_area(lambda2.line(), L1.leaf(q1), L2.leaf(q2), lambda1.line());
}

GalileiGenerator section_difference(const Line& tilde, const Line& ref, const LinearFoliation& L) {
    if (!L.transversal_to_line(tilde) || !L.transversal_to_line(ref))
        throw NotTransversal("section_difference: section parallel to the foliation");
    // lift of d/dq with label(u) = 1; any choice differing by a leaf vector
    // gives the same pairing because the leaves are Lagrangian
    double nl = L.lx * L.lx + L.lp * L.lp;
    double ux = L.lx / nl, up = L.lp / nl;
    auto covector = [&](double q) {
        Line leaf = L.leaf(q);
        auto pt = leaf.intersect(tilde);
        auto pr = leaf.intersect(ref);
        return cross2(ux, up, pt[0] - pr[0], pt[1] - pr[1]);
    };
    double f0 = covector(0.0);
    double f1 = covector(1.0) - f0;
    return GalileiGenerator({f0, 0.5 * f1});
}

GalileiGenerator section_difference(const LinearSection& tilde, const LinearSection& ref,
                                    const LinearFoliation& L) {
    return section_difference(tilde.line(), ref.line(), L);
}

QuadraticKernel kernel_from_foliations(const LinearFoliation& L1, const Line& ref1,
                                       const LinearFoliation& L2, const Line& ref2, double hbar) {
    if (!L1.transversal_to(L2))
        throw NotTransversal("kernel_from_foliations: foliations share a leaf direction");
    if (!L1.transversal_to_line(ref1))
        throw ValidationError("kernel_from_foliations: ref1 not transversal to L1");
    if (!L2.transversal_to_line(ref2))
        throw ValidationError("kernel_from_foliations: ref2 not transversal to L2");

    Line mu = L1.leaf(0.0);
    Line mu_p = L2.leaf(0.0);

    GalileiGenerator s_in = section_difference(ref1, mu_p, L1);
    GalileiGenerator s_out = section_difference(mu, ref2, L2);

    auto A = mu.intersect(mu_p);
    auto B1 = mu_p.intersect(L1.leaf(1.0));
    auto D1 = L2.leaf(1.0).intersect(mu);
    double k11 = cross2(B1[0] - A[0], B1[1] - A[1], D1[0] - A[0], D1[1] - A[1]);
    if (k11 == 0.0) throw NotTransversal("kernel_from_foliations: degenerate pairing");

    return make_kernel_1d(s_in.coeff(2), s_out.coeff(2), -k11, s_in.coeff(1), s_out.coeff(1), 0.0, hbar);
}

QuadraticKernel kernel_from_foliations(const LinearFoliation& L1, const LinearSection& ref1,
                                       const LinearFoliation& L2, const LinearSection& ref2, double hbar) {
    return kernel_from_foliations(L1, ref1.line(), L2, ref2.line(), hbar);
}

// --- two degrees of freedom ---------------------------------------------------

namespace {

inline double omega4(const std::array<double, 4>& u, const std::array<double, 4>& v) {
    return u[0] * v[2] - u[2] * v[0] + u[1] * v[3] - u[3] * v[1];
}

std::array<double, 4> plane_intersect(const LagrangianPlane4& a, const LagrangianPlane4& b) {
    double A[4][4];
    double rhs[4];
    for (int j = 0; j < 4; ++j) {
        A[0][j] = a.N[0][j];
        A[1][j] = a.N[1][j];
        A[2][j] = b.N[0][j];
        A[3][j] = b.N[1][j];
    }
    rhs[0] = a.beta[0];
    rhs[1] = a.beta[1];
    rhs[2] = b.beta[0];
    rhs[3] = b.beta[1];
    double x[4];
    solve_small(4, A, rhs, x);
    return {x[0], x[1], x[2], x[3]};
}

std::array<double, 4> sub4(const std::array<double, 4>& a, const std::array<double, 4>& b) {
    return {a[0] - b[0], a[1] - b[1], a[2] - b[2], a[3] - b[3]};
}

}  // namespace

Foliation4 Foliation4::position() {
    Foliation4 f;
    f.L[0][0] = 1.0;
    f.L[1][1] = 1.0;
    return f;
}

Foliation4 Foliation4::from_flow_position(const AffineSymplecticMap& flow) {
    Foliation4 f;
    for (int j = 0; j < 4; ++j) {
        f.L[0][j] = flow.M[0][j];
        f.L[1][j] = flow.M[1][j];
    }
    f.c[0] = flow.T[0];
    f.c[1] = flow.T[1];
    return f;
}

LagrangianPlane4 Foliation4::leaf(double q0, double q1) const {
    LagrangianPlane4 p;
    for (int j = 0; j < 4; ++j) {
        p.N[0][j] = L[0][j];
        p.N[1][j] = L[1][j];
    }
    p.beta[0] = q0 - c[0];
    p.beta[1] = q1 - c[1];
    return p;
}

LagrangianPlane4 zero_momentum_plane4() {
    LagrangianPlane4 p;
    p.N[0][2] = 1.0;
    p.N[1][3] = 1.0;
    return p;
}

LagrangianPlane4 flowed_zero_momentum_plane4(const AffineSymplecticMap& flow) {
    LagrangianPlane4 p;
    for (int j = 0; j < 4; ++j) {
        p.N[0][j] = flow.M[2][j];
        p.N[1][j] = flow.M[3][j];
    }
    p.beta[0] = -flow.T[2];
    p.beta[1] = -flow.T[3];
    return p;
}

GalileiGenerator2D section_difference4(const LagrangianPlane4& tilde, const LagrangianPlane4& ref,
                                       const Foliation4& L) {
    // lifts of d/dq_i: u with L u = e_i, via u = L^T (L L^T)^{-1} e_i
    double G00 = 0.0, G01 = 0.0, G11 = 0.0;
    for (int j = 0; j < 4; ++j) {
        G00 += L.L[0][j] * L.L[0][j];
        G01 += L.L[0][j] * L.L[1][j];
        G11 += L.L[1][j] * L.L[1][j];
    }
    double det = G00 * G11 - G01 * G01;
    if (std::abs(det) < 1e-14 * std::max(G00 * G11, 1e-300))
        throw ValidationError("section_difference4: degenerate label rows");
    std::array<double, 4> u[2];
    for (int i = 0; i < 2; ++i) {
        double gi0 = (i == 0 ? G11 : -G01) / det;
        double gi1 = (i == 0 ? -G01 : G00) / det;
        for (int j = 0; j < 4; ++j) u[i][j] = L.L[0][j] * gi0 + L.L[1][j] * gi1;
    }

    auto covector = [&](double q0, double q1) {
        LagrangianPlane4 leaf_pl = L.leaf(q0, q1);
        auto pt = plane_intersect(leaf_pl, tilde);
        auto pr = plane_intersect(leaf_pl, ref);
        auto d = sub4(pt, pr);
        return std::array<double, 2>{omega4(u[0], d), omega4(u[1], d)};
    };

    auto f00 = covector(0.0, 0.0);
    auto f10 = covector(1.0, 0.0);
    auto f01 = covector(0.0, 1.0);
    double F[2][2] = {{f10[0] - f00[0], f01[0] - f00[0]}, {f10[1] - f00[1], f01[1] - f00[1]}};
    double Fxy = 0.5 * (F[0][1] + F[1][0]);  // symmetric for Lagrangian sections

    GalileiGenerator2D S;
    S.c[1][0] = f00[0];
    S.c[0][1] = f00[1];
    S.c[2][0] = 0.5 * F[0][0];
    S.c[0][2] = 0.5 * F[1][1];
    S.c[1][1] = Fxy;
    return S;
}

QuadraticKernel kernel_from_planes(const Foliation4& L1, const LagrangianPlane4& ref1, const Foliation4& L2,
                                   const LagrangianPlane4& ref2, double hbar, cplx phase_amp) {
    LagrangianPlane4 mu = L1.leaf(0.0, 0.0);
    LagrangianPlane4 mu_p = L2.leaf(0.0, 0.0);

    GalileiGenerator2D s_in = section_difference4(ref1, mu_p, L1);
    GalileiGenerator2D s_out = section_difference4(mu, ref2, L2);

    auto A = plane_intersect(mu, mu_p);
    std::array<double, 4> Bv[2] = {sub4(plane_intersect(mu_p, L1.leaf(1.0, 0.0)), A),
                                   sub4(plane_intersect(mu_p, L1.leaf(0.0, 1.0)), A)};
    std::array<double, 4> Dv[2] = {sub4(plane_intersect(L2.leaf(1.0, 0.0), mu), A),
                                   sub4(plane_intersect(L2.leaf(0.0, 1.0), mu), A)};

    QuadraticKernel k;
    k.n = 2;
    k.hbar = hbar;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) k.Axxp[i][j] = -omega4(Bv[i], Dv[j]);
    k.Axx[0][0] = s_in.c[2][0];
    k.Axx[1][1] = s_in.c[0][2];
    k.Axx[0][1] = k.Axx[1][0] = 0.5 * s_in.c[1][1];
    k.Axpxp[0][0] = s_out.c[2][0];
    k.Axpxp[1][1] = s_out.c[0][2];
    k.Axpxp[0][1] = k.Axpxp[1][0] = 0.5 * s_out.c[1][1];
    k.Bx[0] = s_in.c[1][0];
    k.Bx[1] = s_in.c[0][1];
    k.Bxp[0] = s_out.c[1][0];
    k.Bxp[1] = s_out.c[0][1];
    k.amp = unitary_amp(k);
    k.phase_amp = phase_amp;
    k.validate();
    return k;
}

}  // namespace geoprop
