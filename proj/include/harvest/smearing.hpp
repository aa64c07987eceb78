#pragma once

#include "harvest/integrals.hpp"

#include <vector>

// Positioning uncertainty. The separation is distributed as
// Pr(r) = e^{-(r - r0)^2 / delta^2} / (delta sqrt(pi)) over the whole real
// line, and the same convention is used for a shift of B's switching time.

namespace harvest {

/// damped_im_erfi(r0/delta, delta omega/2) e^{-omega^2 sigma^2/2}
/// [Jt_AB + Jt_BA] / (4 pi^{3/2} delta) at unit coupling.
quadrature::IntegrandSpec smeared_correlation_integrand(const Scenario& s);

/// damped_im_erfi(r0/delta, delta omega/2) e^{..} conj(W_A) W_B
/// / (4 pi^{3/2} delta) at unit coupling.
quadrature::IntegrandSpec smeared_cross_noise_integrand(const Scenario& s);

/// Complex smeared J via the closed form. Requires delta > 0 and disjoint
/// windows (std::invalid_argument otherwise).
quadrature::QuadResult smeared_J(const Scenario& s, const quadrature::QuadOptions& opts = {});

/// |smeared_J(s)|.
double compute_J_smeared(const Scenario& s, const quadrature::QuadOptions& opts = {});

/// I_AB averaged over Pr(r). Requires delta > 0.
quadrature::QuadResult compute_I_AB_smeared(const Scenario& s, const quadrature::QuadOptions& opts = {});

enum class Execution { parallel, serial };

/// Direct average of J(r) over Pr(r), negative r included.
struct SeparationAverage {
    Complex j{};             ///< average of J(r)
    double mean_abs_j = 0.0; ///< average of |J(r)|
    double abs_error = 0.0;  ///< |result at step h - result at step 2h|
    std::size_t r_points = 0;
    std::size_t omega_points = 0;
};

/// Trapezoid rule in r with step min(sigma/2, delta/8) over r0 +- 6.5 delta,
/// J(r) on one fixed Gauss-Legendre omega grid shared by every r. Works for
/// any timing regime. Requires delta > 0. Serial and parallel execution
/// give bit-identical results.
SeparationAverage separation_averaged_J(const Scenario& s, const quadrature::QuadOptions& opts = {},
                                        Execution exec = Execution::parallel);

/// Physicists' Gauss-Hermite rule: sum w_k f(x_k) ~ int e^{-x^2} f(x) dx.
struct GaussHermite {
    std::vector<double> nodes;
    std::vector<double> weights;
};
GaussHermite gauss_hermite(int n);

/// |int Pr(tau) J(s with B's window shifted by tau) dtau| by an n-node
/// Gauss-Hermite rule. Requires delta_t > 0 and disjoint windows.
double compute_J_time_smeared(const Scenario& s, double delta_t, const quadrature::QuadOptions& opts = {},
                              int nodes = 41);

/// compute_J_smeared(s) / |compute_J(s)|. Throws std::domain_error when the
/// unsmeared J vanishes.
double ratio_R(const Scenario& s, const quadrature::QuadOptions& opts = {});

}  // namespace harvest
