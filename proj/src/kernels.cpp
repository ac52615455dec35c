#include "geoprop/kernels.hpp"

#include <cmath>

#include "geoprop/errors.hpp"

namespace geoprop {

double QuadraticKernel::phase2(double x, double y, double xp, double yp) const {
    double q[2] = {x, y}, qp[2] = {xp, yp};
    double s = c0;
    for (int i = 0; i < 2; ++i) {
        s += Bx[i] * q[i] + Bxp[i] * qp[i];
        for (int j = 0; j < 2; ++j)
            s += Axx[i][j] * q[i] * q[j] + Axpxp[i][j] * qp[i] * qp[j] + Axxp[i][j] * q[i] * qp[j];
    }
    return s;
}

void QuadraticKernel::validate() const {
    if (n != 1 && n != 2) throw ValidationError("QuadraticKernel: n must be 1 or 2");
    if (!(amp > 0.0)) throw ValidationError("QuadraticKernel: amp must be > 0");
    if (std::abs(std::abs(phase_amp) - 1.0) > 1e-12)
        throw ValidationError("QuadraticKernel: |phase_amp| must be 1");
    if (cross_det() == 0.0)
        throw NotTransversal("QuadraticKernel: vanishing input-output coupling");
    if (!(hbar > 0.0)) throw ValidationError("QuadraticKernel: hbar must be > 0");
}

double unitary_amp(const QuadraticKernel& k) {
    double d = k.cross_det();
    if (k.n == 1) return std::sqrt(d / (2.0 * kPi * k.hbar));
    return std::sqrt(d) / (2.0 * kPi * k.hbar);
}

QuadraticKernel make_kernel_1d(double axx, double axpxp, double axxp, double bx, double bxp, double c0,
                               double hbar) {
    QuadraticKernel k;
    k.n = 1;
    k.Axx[0][0] = axx;
    k.Axpxp[0][0] = axpxp;
    k.Axxp[0][0] = axxp;
    k.Bx[0] = bx;
    k.Bxp[0] = bxp;
    k.c0 = c0;
    k.hbar = hbar;
    k.amp = unitary_amp(k);
    double w = -axxp;  // symplectic density coefficient, branch of sqrt(w/i hbar)
    k.phase_amp = cis(-0.25 * kPi * (w >= 0.0 ? 1.0 : -1.0));
    k.validate();
    return k;
}

}  // namespace geoprop
