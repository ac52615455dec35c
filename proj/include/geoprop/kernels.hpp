#pragma once

#include "geoprop/util.hpp"

namespace geoprop {

/// Parameters of an integral kernel
///   K = amp * phase_amp * exp(i Phi / hbar),
///   Phi(q, q') = q^T Axx q + q'^T Axpxp q' + q^T Axxp q' + Bx.q + Bxp.q' + c0,
/// the common shape of every propagator here. n = 1 uses the [0][0]/[0]
/// entries only. amp > 0 carries the unitary normalization
/// |det Axxp|^{1/2} / (2 pi hbar)^{n/2}; phase_amp is the unit-modulus branch
/// factor (see kernel constructors for the convention).
struct QuadraticKernel {
    int n = 1;
    double Axx[2][2] = {};
    double Axpxp[2][2] = {};
    double Axxp[2][2] = {};
    double Bx[2] = {};
    double Bxp[2] = {};
    double c0 = 0.0;
    double amp = 0.0;
    cplx phase_amp = {1.0, 0.0};
    double hbar = 1.0;

    // 1D accessors
    double axx() const { return Axx[0][0]; }
    double axpxp() const { return Axpxp[0][0]; }
    double axxp() const { return Axxp[0][0]; }
    double bx() const { return Bx[0]; }
    double bxp() const { return Bxp[0]; }

    double phase(double x, double xp) const {
        return Axx[0][0] * x * x + Axpxp[0][0] * xp * xp + Axxp[0][0] * x * xp + Bx[0] * x + Bxp[0] * xp + c0;
    }
    cplx eval(double x, double xp) const { return amp * phase_amp * cis(phase(x, xp) / hbar); }

    double phase2(double x, double y, double xp, double yp) const;
    cplx eval2(double x, double y, double xp, double yp) const {
        return amp * phase_amp * cis(phase2(x, y, xp, yp) / hbar);
    }

    /// |det| of the input-output coupling block.
    double cross_det() const {
        if (n == 1) return std::abs(Axxp[0][0]);
        return std::abs(Axxp[0][0] * Axxp[1][1] - Axxp[0][1] * Axxp[1][0]);
    }

    /// Throws if amp/phase_amp/transversality invariants fail.
    void validate() const;
};

/// amp making the kernel unitary for the stored cross block.
double unitary_amp(const QuadraticKernel& k);

/// make a 1D kernel with unitary amp and the per-dof principal branch
/// phase factor exp(-i pi/4 sign(-axxp)).
QuadraticKernel make_kernel_1d(double axx, double axpxp, double axxp, double bx, double bxp, double c0,
                               double hbar);

}  // namespace geoprop
