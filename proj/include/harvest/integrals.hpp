#pragma once

#include "harvest/detector.hpp"
#include "harvest/quadrature.hpp"

namespace harvest {

/// The four second-order scalars that fix rho_AB: local noise I_AA, I_BB,
/// cross term I_AB and the nonlocal correlation J.
struct SecondOrderIntegrals {
    double i_aa = 0.0;
    double i_bb = 0.0;
    Complex i_ab{};
    Complex j{};

    double i_plus() const { return i_aa + i_bb; }
    double i_minus() const { return i_aa - i_bb; }

    /// Throws std::invalid_argument on negative noise terms or
    /// |I_AB|^2 > I_AA I_BB (beyond `slack`).
    void validate(double slack = 1e-10) const;
};

/// Largest |t - t'| between the two switching windows; the phase rate that
/// the window factors contribute to radial integrands.
double window_spread(const SwitchingWindow& wa, const SwitchingWindow& wb);

// Radial integrands at unit coupling (lambda = 1). The Gaussian form factor
// contributes |F(k)|^2 = (2 pi)^-3 e^{-omega^2 sigma^2 / 2}; the angular
// integral of e^{i k.r} is 4 pi sinc(omega r).

/// omega e^{-omega^2 sigma^2/2} |W(omega)|^2 / (4 pi^2)
/// = omega e^{..} sin^2((omega+Omega) D/2) / (pi^2 (omega+Omega)^2)
quadrature::IntegrandSpec local_noise_integrand(const DetectorParams& det);

/// omega sinc(omega r) e^{..} conj(W_A) W_B / (4 pi^2). Requires sigma_A == sigma_B.
quadrature::IntegrandSpec cross_noise_integrand(const Scenario& s, double separation);

/// e^{-omega^2 sigma^2/2} [Jt_AB(omega) + Jt_BA(omega)]: the separation-free
/// part of the J integrand.
Complex correlation_kernel(const Scenario& s, double omega);

/// omega sinc(omega r) correlation_kernel(omega) / (4 pi^2). Requires
/// sigma_A == sigma_B.
quadrature::IntegrandSpec correlation_integrand(const Scenario& s, double separation);

/// I_nu nu. Zero without integrating when the coupling vanishes.
quadrature::QuadResult compute_I_nn(const DetectorParams& det, const quadrature::QuadOptions& opts = {});

/// I_AB at the scenario's separation.
quadrature::QuadResult compute_I_AB(const Scenario& s, const quadrature::QuadOptions& opts = {});

/// J at the scenario's separation (delta ignored).
quadrature::QuadResult compute_J(const Scenario& s, const quadrature::QuadOptions& opts = {});

/// Throws std::invalid_argument unless both detectors share one smearing width.
void require_equal_smearing(const Scenario& s);

}  // namespace harvest
