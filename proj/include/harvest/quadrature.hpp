#pragma once

#include "harvest/specfun.hpp"

#include <cstddef>
#include <functional>
#include <stdexcept>
#include <vector>

namespace harvest::quadrature {

/// A radial integrand g(omega) on [0, inf) carrying a Gaussian envelope
/// e^{-omega^2 damping_scale^2 / 2} and oscillatory phases whose largest
/// |coefficient of omega| is max_phase_rate.
struct IntegrandSpec {
    std::function<Complex(double)> evaluate;
    double damping_scale = 1.0;
    double max_phase_rate = 0.0;
    /// Removable singularities (already regularized by the integrand); used
    /// only as panel anchors.
    std::vector<double> singular_points;

    /// Throws std::invalid_argument when the invariants above are broken.
    void validate() const;
};

struct QuadOptions {
    double tol_abs = 1e-12;
    double tol_rel = 1e-9;
    double tail_tol = 1e-18;
    std::size_t eval_budget = 1'000'000;
    bool operator==(const QuadOptions&) const = default;
};

struct QuadResult {
    Complex value{};
    double abs_error = 0.0;
    std::size_t evaluations = 0;
};

/// Raised when the evaluation budget runs out; carries the best estimate.
class ConvergenceFailure : public std::runtime_error {
public:
    ConvergenceFailure(const std::string& what, QuadResult best)
        : std::runtime_error(what), best_(best)
    {
    }
    const QuadResult& best() const noexcept { return best_; }

private:
    QuadResult best_;
};

/// omega_max with e^{-omega_max^2 sigma^2 / 2} = tail_tol.
double cutoff(const IntegrandSpec& spec, double tail_tol);

/// Panel boundaries on [0, omega_max]: uniform panels no wider than
/// pi / max_phase_rate, with every singular point inserted.
std::vector<double> panel_edges(const IntegrandSpec& spec, double omega_max);

/// Integrates spec.evaluate over [0, cutoff] with a globally adaptive
/// Gauss-Kronrod (10/21) scheme seeded by panel_edges.
///
/// Stops once the summed error estimate is at most
/// max(tol_abs, tol_rel * |value|). The refinement order depends only on the
/// inputs, so results are bit-reproducible.
QuadResult integrate_radial(const IntegrandSpec& spec, const QuadOptions& opts = {});

/// Fixed (non-adaptive) composite 10-point Gauss-Legendre nodes on
/// [0, omega_max] over the panel_edges layout. For kernels that reuse one
/// omega grid across many outer parameters.
struct FixedGrid {
    std::vector<double> nodes;
    std::vector<double> weights;
};
FixedGrid fixed_grid(const IntegrandSpec& spec, double omega_max);

}  // namespace harvest::quadrature
