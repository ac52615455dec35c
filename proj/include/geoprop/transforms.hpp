#pragma once

#include <optional>
#include <variant>
#include <vector>

#include "geoprop/galilei.hpp"
#include "geoprop/kernels.hpp"
#include "geoprop/phasespace.hpp"
#include "geoprop/waves.hpp"

namespace geoprop {

/// psi(x) -> psi(x) . exp(i S(x)/hbar). Norm preserved exactly.
WaveFunction1D galilei(const WaveFunction1D& psi, const GalileiGenerator& S);
WaveFunction2D galilei(const WaveFunction2D& psi, const GalileiGenerator2D& S);

/// Continuum Fourier transform on the conjugate grid,
///   Psi^(p_k) = (2 pi i hbar)^{-1/2} sum_j psi(x_j) e^{-i p_k x_j / hbar} dx,
/// p_k in [-pi hbar/dx, pi hbar/dx), dp = 2 pi hbar/(n dx). Exact DFT
/// factorization with the x0 phase bookkeeping; unitary to rounding.
WaveFunction1D fourier(const WaveFunction1D& psi);

/// Exact algebraic inverse of fourier. The output window is the canonical
/// placement x0 = -pi hbar/dp; round trips are exact for grids in canonical
/// position (x0 = -n dx/2).
WaveFunction1D inverse_fourier(const WaveFunction1D& phi);

/// psi -> sqrt(s) psi(s x') on the grid {x0/s, dx/s, n}; s > 0.
WaveFunction1D dilate(const WaveFunction1D& psi, double s);

/// Fractional Fourier transform, direct O(N^2) quadrature of the kernel
///   e^{i gamma/2}/sqrt(i sin gamma) .
///   exp(i pi ((x^2+x'^2) cot gamma - 2 x x'/sin gamma))
/// on the same (dimensionless) grid; gamma reduced to (-pi, pi]. Angles with
/// |sin gamma| < 1e-6 route to the identity (gamma ~ 0) or exact parity
/// (gamma ~ pi). Throws AliasingRisk when the kernel oscillates past Nyquist.
WaveFunction1D frft(const WaveFunction1D& psi, double gamma);

/// Same operator through the chirp / FFT / dilate / chirp decomposition plus
/// a band-limited resample back to the input grid. O(N log N).
WaveFunction1D frft_fast(const WaveFunction1D& psi, double gamma);

struct GalileiStep {
    GalileiGenerator S;
};
struct FourierStep {};
struct InverseFourierStep {};
struct DilateStep {
    double s = 1.0;
};
struct FrftStep {
    double gamma = 0.0;
};
struct KernelStep {
    QuadraticKernel K;
};

using TransformStep =
    std::variant<GalileiStep, FourierStep, InverseFourierStep, DilateStep, FrftStep, KernelStep>;

WaveFunction1D apply_step(const TransformStep& step, const WaveFunction1D& psi);

/// Left-to-right application of the steps.
WaveFunction1D compose_pipeline(const std::vector<TransformStep>& steps, const WaveFunction1D& psi);

/// Classical affine map of a step, when it has one (Galilei generators above
/// degree 2 do not). Fourier/FrFT maps are in the grid's own units.
std::optional<AffineSymplecticMap> step_classical_map(const TransformStep& step);

/// Max over the testset of 1 - fidelity(U_loop psi, psi). When every step
/// carries classical data the classical composition is required to be the
/// identity (throws ValidationError otherwise); loops with nonquadratic
/// Galilei steps are the caller's responsibility.
double holonomy_probe(const std::vector<TransformStep>& loop, const std::vector<WaveFunction1D>& testset);

}  // namespace geoprop
