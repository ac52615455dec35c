#pragma once

#include "geoprop/waves.hpp"

namespace geoprop {

/// Time reparameterization between the free clock t and the target system's
/// clock tau; strictly monotone, tau(0) = 0.
struct TimeMap {
    enum class Pair { FreeOscillator, FreeEfield, FreeBfield };
    Pair pair = Pair::FreeEfield;
    double omega = 0.0;

    static TimeMap free_oscillator(double omega);
    static TimeMap free_efield();
    static TimeMap free_bfield(double omega);

    double forward(double t) const;   // t -> tau
    double inverse(double tau) const;  // tau -> t, throws TimeOutOfDomain
};

/// Lens transform, inverted: build the oscillator solution at
/// tau = arctan(omega t)/omega from the free solution at t.
WaveFunction1D free_to_oscillator(const WaveFunction1D& phi, double t, double m, double omega);

/// Exact inverse of free_to_oscillator; |omega tau| < pi/2.
WaveFunction1D oscillator_to_free(const WaveFunction1D& psi, double tau, double m, double omega);

/// Avron-Herbst, inverted: constant-force solution at tau = t from the free
/// solution at t. gauged = false gives the variant without the gauge phase.
WaveFunction1D free_to_efield(const WaveFunction1D& phi, double t, double m, double eE, bool gauged = true);

/// Magnetic analogue: solution at tau with omega*tau = 2 arctan(omega t / 2)
/// from the free 2D solution at t (rotation-scale of the plane, density
/// factor, radial Galilei phase).
WaveFunction2D free_to_bfield(const WaveFunction2D& phi, double t, double m, double e, double B);

}  // namespace geoprop
