#pragma once

#include "harvest/smearing.hpp"
#include "harvest/state.hpp"

#include <string_view>
#include <vector>

namespace harvest {

/// How the nonlocal term J was obtained.
enum class JMethod {
    direct,        ///< no positioning uncertainty
    closed_form,   ///< spatial smearing, erfi closed form
    r_averaged,    ///< spatial smearing, direct average over r (overlapping windows)
    time_averaged, ///< temporal smearing, Gauss-Hermite over the shift of B
};
std::string_view to_string(JMethod m);

/// One evaluation point: the scenario plus an optional temporal uncertainty
/// of B's switching (same width convention as delta).
struct PointInput {
    Scenario scenario;
    double time_uncertainty = 0.0;
    bool operator==(const PointInput&) const = default;
};

struct IntegralErrors {
    double i_aa = 0.0;
    double i_bb = 0.0;
    double i_ab = 0.0;
    double j = 0.0;
};

struct HarvestReport {
    SecondOrderIntegrals integrals;
    IntegralErrors errors;
    double negativity = 0.0;
    double negativity_raw = 0.0;
    /// -(negative eigenvalue of the |gg>,|ee> sector); O(lambda^4), not in the negativity
    double negativity_higher_order = 0.0;
    BellFractions bell;
    CausalClass causal_class = CausalClass::PurelySpacelike;
    TimingRegime timing = Disjoint{DetectorLabel::A, 0.0};
    JMethod method = JMethod::direct;
    /// |J| / |J without positioning uncertainty|; NaN when the latter vanishes
    double ratio = 1.0;
    std::vector<Warning> warnings;
};

/// Validates the input, computes the four integrals (smeared as requested),
/// assembles rho and derives negativity and Bell fractions. Throws
/// std::invalid_argument for invalid input, std::domain_error outside the
/// perturbative regime, and quadrature::ConvergenceFailure.
///
/// Spatial and temporal uncertainty cannot both be positive. Temporal
/// smearing requires disjoint windows.
HarvestReport evaluate_point(const PointInput& in, const quadrature::QuadOptions& opts = {},
                             Execution exec = Execution::parallel);

}  // namespace harvest
