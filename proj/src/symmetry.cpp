#include "geoprop/symmetry.hpp"

#include <cmath>

#include "geoprop/transforms.hpp"

namespace geoprop {

TimeMap TimeMap::free_oscillator(double omega) {
    if (!(omega > 0.0)) throw ValidationError("TimeMap: oscillator omega must be > 0");
    return TimeMap{Pair::FreeOscillator, omega};
}
TimeMap TimeMap::free_efield() { return TimeMap{Pair::FreeEfield, 0.0}; }
TimeMap TimeMap::free_bfield(double omega) {
    if (omega == 0.0) throw ValidationError("TimeMap: bfield omega must be nonzero");
    return TimeMap{Pair::FreeBfield, omega};
}

double TimeMap::forward(double t) const {
    switch (pair) {
        case Pair::FreeOscillator:
            return std::atan(omega * t) / omega;
        case Pair::FreeEfield:
            return t;
        case Pair::FreeBfield:
            return 2.0 * std::atan(0.5 * omega * t) / omega;
    }
    return t;
}

double TimeMap::inverse(double tau) const {
    switch (pair) {
        case Pair::FreeOscillator:
            if (!(std::abs(omega * tau) < 0.5 * kPi))
                throw TimeOutOfDomain("TimeMap: |omega tau| must be < pi/2");
            return std::tan(omega * tau) / omega;
        case Pair::FreeEfield:
            return tau;
        case Pair::FreeBfield:
            if (!(std::abs(omega * tau) < kPi))
                throw TimeOutOfDomain("TimeMap: |omega tau| must be < pi");
            return 2.0 * std::tan(0.5 * omega * tau) / omega;
    }
    return tau;
}

WaveFunction1D free_to_oscillator(const WaveFunction1D& phi, double t, double m, double omega) {
    if (t == 0.0 || omega == 0.0) return phi;
    double r2 = 1.0 + omega * omega * t * t;
    GalileiGenerator S({0.0, -0.5 * m * omega * omega * t / r2});
    return dilate(galilei(phi, S), std::sqrt(r2));
}

WaveFunction1D oscillator_to_free(const WaveFunction1D& psi, double tau, double m, double omega) {
    if (tau == 0.0 || omega == 0.0) return psi;
    if (!(std::abs(omega * tau) < 0.5 * kPi))
        throw TimeOutOfDomain("oscillator_to_free: |omega tau| must be < pi/2");
    double t = std::tan(omega * tau) / omega;
    double r2 = 1.0 + omega * omega * t * t;
    GalileiGenerator S({0.0, 0.5 * m * omega * omega * t / r2});
    return galilei(dilate(psi, 1.0 / std::sqrt(r2)), S);
}

WaveFunction1D free_to_efield(const WaveFunction1D& phi, double t, double m, double eE, bool gauged) {
    if (t == 0.0 || eE == 0.0) return phi;
    const double d = eE * t * t / (2.0 * m);
    WaveFunction1D out(Grid1D(phi.grid.x0 + d, phi.grid.dx, phi.grid.n), phi.values, phi.hbar);
    out = galilei(out, GalileiGenerator::linear(eE * t));
    // cross term from the shift, and the gauge constant when requested
    double c = -eE * t * d;  // = -e^2 E^2 t^3 / (2m)
    if (gauged) c += eE * eE * t * t * t / (3.0 * m);
    cplx ph = cis(c / phi.hbar);
    for (auto& z : out.values) z *= ph;
    return out;
}

WaveFunction2D free_to_bfield(const WaveFunction2D& phi, double t, double m, double e, double B) {
    double omega = e * B / m;
    if (t == 0.0 || omega == 0.0) return phi;
    if (!std::isfinite(t) || !std::isfinite(omega))
        throw TimeOutOfDomain("free_to_bfield: time outside the principal branch");
    const double u = omega * t;
    // (x, y) = Minv (X, Y): inverse of the plane rotation-scale of the map
    const double Minv[2][2] = {{1.0, -0.5 * u}, {0.5 * u, 1.0}};
    const double off[2] = {0.0, 0.0};
    WaveFunction2D out = resample_affine(phi, Minv, off, phi.grid_x, phi.grid_y);
    const double dens = std::sqrt(1.0 + 0.25 * u * u);
    for (auto& z : out.values) z *= dens;
    return galilei(out, GalileiGenerator2D::radial_quadratic(-m * omega * omega * t / 8.0));
}

}  // namespace geoprop
