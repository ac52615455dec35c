#pragma once

#include <array>

#include "geoprop/errors.hpp"
#include "geoprop/galilei.hpp"
#include "geoprop/kernels.hpp"
#include "geoprop/util.hpp"

namespace geoprop {

enum class SystemKind { Free, Oscillator, ConstantE, ConstantB };

/// Which linear system, with its parameters. ConstantB is the only n=2 case;
/// its cyclotron frequency omega = e*B/m is derived at construction.
struct SystemSpec {
    SystemKind kind = SystemKind::Free;
    double m = 1.0;
    double hbar = 1.0;
    double omega = 0.0;  // oscillator frequency, or e*B/m
    double eE = 0.0;     // force, ConstantE
    double e = 0.0;      // charge, ConstantB
    double B = 0.0;      // field, ConstantB

    static SystemSpec free_particle(double m, double hbar);
    static SystemSpec oscillator(double m, double omega, double hbar);
    static SystemSpec constant_e(double m, double eE, double hbar);
    static SystemSpec constant_b(double m, double e, double B, double hbar);

    int dof() const { return kind == SystemKind::ConstantB ? 2 : 1; }
};

/// Affine symplectic map z -> M z + T on R^{2n}, z = (x, p) or (x, y, px, py).
/// Only the leading 2n rows/columns are used for n = 1.
struct AffineSymplecticMap {
    int n = 1;
    double M[4][4] = {};
    double T[4] = {};

    static AffineSymplecticMap identity(int n);
    /// this after g: (this o g)(z) = this(g(z)).
    AffineSymplecticMap after(const AffineSymplecticMap& g) const;
    AffineSymplecticMap inverse() const;
    std::array<double, 4> apply(const std::array<double, 4>& z) const;

    /// max |(M^T J M - J)_{ij}|, zero for exact symplectic matrices.
    double symplectic_defect() const;
    bool is_symplectic(double tol = 1e-12) const { return symplectic_defect() <= tol; }
};

/// Exact classical flow over time t, per system. Throws nothing; t = 0 gives
/// the identity.
AffineSymplecticMap classical_flow(const SystemSpec& sys, double t);

/// A line in the (x, p) plane, {z : nx*x + np*p = c}.
struct Line {
    double nx = 0.0, np = 1.0, c = 0.0;

    static Line horizontal(double p) { return Line{0.0, 1.0, p}; }   // {p = const}
    static Line vertical(double x) { return Line{1.0, 0.0, x}; }     // {x = const}
    static Line sloped(double slope, double intercept) {             // {p = s x + b}
        return Line{-slope, 1.0, intercept};
    }
    bool parallel_to(const Line& o) const;
    std::array<double, 2> intersect(const Line& o) const;  // throws ParallelLeaves
};

/// Reference section of the phase plane: {p = slope*x + intercept} or the
/// vertical {x = xcut}.
struct LinearSection {
    bool vertical = false;
    double slope = 0.0;
    double intercept = 0.0;
    double xcut = 0.0;

    static LinearSection sloped(double s, double b) { return LinearSection{false, s, b, 0.0}; }
    static LinearSection horizontal(double p) { return LinearSection{false, 0.0, p, 0.0}; }
    static LinearSection vertical_at(double x) { return LinearSection{true, 0.0, 0.0, x}; }
    Line line() const { return vertical ? Line::vertical(xcut) : Line::sloped(slope, intercept); }
};

/// Linear Lagrangian foliation of the plane: leaves are the level sets of the
/// affine label  q(z) = lx*x + lp*p + lc,  all parallel to the direction
/// (vx, vp). The label is the leaf coordinate on Q_Lambda; the default chosen
/// by from_direction is the crossing parameter with the position axis (or the
/// momentum axis when the leaves are horizontal).
struct LinearFoliation {
    double vx = 0.0, vp = 1.0;  // leaf direction, defined up to scale
    double lx = 1.0, lp = 0.0, lc = 0.0;

    static LinearFoliation position() { return LinearFoliation{0.0, 1.0, 1.0, 0.0, 0.0}; }
    static LinearFoliation momentum() { return LinearFoliation{1.0, 0.0, 0.0, 1.0, 0.0}; }
    static LinearFoliation from_direction(double vx, double vp);
    /// Level sets of the evolved position observable x(t), labelled by its
    /// value: q(z) = (flow z)_x.
    static LinearFoliation from_flow_position(const AffineSymplecticMap& flow);

    Line leaf(double q) const { return Line{lx, lp, q - lc}; }
    bool transversal_to(const LinearFoliation& o) const { return vx * o.vp - vp * o.vx != 0.0; }
    bool transversal_to_line(const Line& l) const { return l.nx * vx + l.np * vp != 0.0; }
};

/// Zero set of the evolved momentum observable p(t) as a section.
Line flowed_zero_section(const AffineSymplecticMap& flow);

/// Symplectic surface of the oriented rectangle (lambda2, q1, q2, lambda1):
/// corners A = lambda1 ^ lambda2, B = lambda2 ^ q1, C = q1 ^ q2,
/// D = q2 ^ lambda1, integrated with the orientation that makes the standard
/// position/momentum configuration come out positive (the (x,p) shoelace
/// sign). Throws ParallelLeaves when an adjacent pair fails to intersect.
double symplectic_area(const Line& lambda2, const Line& q1, const Line& q2, const Line& lambda1);

/// Same, with the leaves named by their coordinates on the two foliations.
double symplectic_area(const LinearSection& lambda2, double q1, double q2, const LinearSection& lambda1,
                       const LinearFoliation& L1, const LinearFoliation& L2);

/// Phase function S with dS = (tilde - ref) as a 1-form on Q_Lambda in the
/// foliation's label coordinate; S(0) = 0. Both sections must be transversal
/// to the foliation.
GalileiGenerator section_difference(const LinearSection& tilde, const LinearSection& ref,
                                    const LinearFoliation& L);
GalileiGenerator section_difference(const Line& tilde, const Line& ref, const LinearFoliation& L);

/// Generalized Fourier kernel between the representations (L1, ref1) and
/// (L2, ref2), as a QuadraticKernel over the two leaf coordinates. Built as
/// Galilei-to-zero-leaf + pure cross kernel (duality form) + Galilei, which
/// covers reference pairs the single-rectangle construction cannot (parallel
/// references). Unitary amplitude, per-dof principal branch phase.
QuadraticKernel kernel_from_foliations(const LinearFoliation& L1, const LinearSection& ref1,
                                       const LinearFoliation& L2, const LinearSection& ref2, double hbar);
QuadraticKernel kernel_from_foliations(const LinearFoliation& L1, const Line& ref1,
                                       const LinearFoliation& L2, const Line& ref2, double hbar);

// --- two degrees of freedom -------------------------------------------------
//
// The flowed configuration foliation of the magnetic system mixes the two
// planes, so its kernel derivation runs on full affine Lagrangian planes of
// R^4, z = (x, y, px, py).

/// Affine 2-plane {z : N z = beta}; rows of N are two independent covectors.
struct LagrangianPlane4 {
    double N[2][4] = {};
    double beta[2] = {};
};

/// Foliation of R^4 by the level sets of the affine label pair
/// q(z) = L z + c; leaves are Lagrangian planes.
struct Foliation4 {
    double L[2][4] = {};
    double c[2] = {};

    static Foliation4 position();
    static Foliation4 from_flow_position(const AffineSymplecticMap& flow);
    LagrangianPlane4 leaf(double q0, double q1) const;
};

LagrangianPlane4 zero_momentum_plane4();
LagrangianPlane4 flowed_zero_momentum_plane4(const AffineSymplecticMap& flow);

/// Quadratic phase with dS = (tilde - ref) over Q_Lambda (both label coords).
GalileiGenerator2D section_difference4(const LagrangianPlane4& tilde, const LagrangianPlane4& ref,
                                       const Foliation4& L);

/// n=2 generalized Fourier kernel from plane geometry. The branch factor
/// (unit modulus) is supplied by the caller; geometry fixes everything else.
QuadraticKernel kernel_from_planes(const Foliation4& L1, const LagrangianPlane4& ref1, const Foliation4& L2,
                                   const LagrangianPlane4& ref2, double hbar, cplx phase_amp);

}  // namespace geoprop
