#pragma once

#include "geoprop/kernels.hpp"
#include "geoprop/phasespace.hpp"
#include "geoprop/waves.hpp"

namespace geoprop {

struct ApplyInfo {
    bool support_escape = false;  // > 1e-4 of the norm left the output window
    double norm_deficit = 0.0;
};

/// Psi'(x'_k) = sum_j K(x_j, x'_k) psi(x_j) dx. Unitary within quadrature
/// tolerance for compliant (band-limited, windowed) inputs. Throws
/// AliasingRisk when the kernel phase advances more than 1.1*pi between
/// samples at the window edges.
WaveFunction1D apply_kernel(const WaveFunction1D& psi, const QuadraticKernel& K, const Grid1D& outgrid,
                            ApplyInfo* info = nullptr);
WaveFunction2D apply_kernel(const WaveFunction2D& psi, const QuadraticKernel& K, const Grid1D& ogx,
                            const Grid1D& ogy, ApplyInfo* info = nullptr);

/// sqrt(m/(2 pi i hbar t)) exp(i m (x-x')^2 / (2 hbar t)); t != 0.
QuadraticKernel free_kernel(double m, double hbar, double t);
/// 2D product version (the B -> 0 limit of bfield_kernel).
QuadraticKernel free_kernel_2d(double m, double hbar, double t);

/// Oscillator propagator (Mehler), exponent
/// (m w/2 hbar)((x^2+x'^2) cot wt - 2 x x'/sin wt); |sin wt| >= 1e-6.
QuadraticKernel oscillator_kernel(double m, double omega, double hbar, double t);

/// Free kernel plus linear terms (eEt/2)(x + x') and, by default, the gauge
/// constant -e^2 E^2 t^3/(24 m) in the phase.
QuadraticKernel efield_kernel(double m, double eE, double hbar, double t, bool include_gauge_constant = true);

/// Symmetric-gauge magnetic propagator (n = 2), omega = e B/m:
/// (m w/4 hbar) cot(wt/2) ((x-x')^2+(y-y')^2) - (m w/2 hbar)(x'y - y'x),
/// amplitude m w/(4 pi hbar |sin(wt/2)|), branch -i sign(sin(wt/2)).
QuadraticKernel bfield_kernel(double m, double e, double B, double hbar, double t);

enum class Route { Kernel, Pipeline };
enum class SingularPolicy { Auto, Error };

/// Output window for propagation: the input grid carried along by the
/// configuration part of the classical flow.
Grid1D default_outgrid(const SystemSpec& sys, double t, const Grid1D& in);

/// Evolve by time t, either through the closed-form kernel or through the
/// three-step Galilei / generalized-Fourier / Galilei pipeline derived from
/// the flowed foliations. Near-singular times (|wt - k pi| <= 1e-6 for the
/// oscillator, |wt - 2k pi| <= 1e-6 magnetic) use the exact identity/parity
/// shortcut with the accumulated phase (e^{-i pi/2} parity)^k resp. (-1)^k
/// under SingularPolicy::Auto, and throw SingularTime under Error. Auto also
/// splits times whose one-shot kernel would alias.
WaveFunction1D propagate(const WaveFunction1D& psi, const SystemSpec& sys, double t, const Grid1D& outgrid,
                         Route route, SingularPolicy policy = SingularPolicy::Auto,
                         ApplyInfo* info = nullptr);
WaveFunction2D propagate(const WaveFunction2D& psi, const SystemSpec& sys, double t, const Grid1D& ogx,
                         const Grid1D& ogy, Route route, SingularPolicy policy = SingularPolicy::Auto,
                         ApplyInfo* info = nullptr);

/// ht = omega*t reduced against multiples of period pi (oscillator) or 2 pi
/// (magnetic); true when within 1e-6 of one.
bool near_singular_time(const SystemSpec& sys, double t, int* k_out = nullptr);

}  // namespace geoprop
