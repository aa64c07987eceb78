#include "harvest/report.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace harvest {

namespace {

constexpr int kTimeNodes = 41;
constexpr int kTimeNodesCoarse = 21;
constexpr double kTimeWarnRel = 1e-2;

struct CrossTerms {
    quadrature::QuadResult i_ab;
    quadrature::QuadResult j;
    JMethod method = JMethod::direct;
};

CrossTerms spatial_terms(const Scenario& s, const quadrature::QuadOptions& opts, Execution exec)
{
    CrossTerms out;
    if (s.position_uncertainty == 0.0) {
        out.i_ab = compute_I_AB(s, opts);
        out.j = compute_J(s, opts);
        return out;
    }
    out.i_ab = compute_I_AB_smeared(s, opts);
    if (std::holds_alternative<Overlapping>(classify_timing(s.det_a.window, s.det_b.window))) {
        const SeparationAverage avg = separation_averaged_J(s, opts, exec);
        out.j = {avg.j, avg.abs_error, avg.r_points * avg.omega_points};
        out.method = JMethod::r_averaged;
    } else {
        out.j = smeared_J(s, opts);
        out.method = JMethod::closed_form;
    }
    return out;
}

CrossTerms gauss_hermite_average(const Scenario& s, double delta_t, int nodes, const quadrature::QuadOptions& opts)
{
    const GaussHermite rule = gauss_hermite(nodes);
    const double norm = 1.0 / std::sqrt(std::numbers::pi);
    CrossTerms out;
    out.method = JMethod::time_averaged;
    for (std::size_t k = 0; k < rule.nodes.size(); ++k) {
        Scenario shifted = s;
        const double tau = delta_t * rule.nodes[k];
        shifted.det_b.window.t_on += tau;
        shifted.det_b.window.t_off += tau;
        const double w = norm * rule.weights[k];
        const quadrature::QuadResult i_ab = compute_I_AB(shifted, opts);
        const quadrature::QuadResult j = compute_J(shifted, opts);
        out.i_ab.value += w * i_ab.value;
        out.i_ab.abs_error += w * i_ab.abs_error;
        out.i_ab.evaluations += i_ab.evaluations;
        out.j.value += w * j.value;
        out.j.abs_error += w * j.abs_error;
        out.j.evaluations += j.evaluations;
    }
    return out;
}

// 41-node average; the error adds |41-node - 21-node|, a pessimistic
// estimate of the tau-discretization error.
CrossTerms temporal_terms(const Scenario& s, double delta_t, const quadrature::QuadOptions& opts)
{
    if (std::holds_alternative<Overlapping>(classify_timing(s.det_a.window, s.det_b.window))) {
        throw std::invalid_argument("time_uncertainty requires disjoint switching windows");
    }
    CrossTerms fine = gauss_hermite_average(s, delta_t, kTimeNodes, opts);
    const CrossTerms coarse = gauss_hermite_average(s, delta_t, kTimeNodesCoarse, opts);
    fine.i_ab.abs_error += std::abs(fine.i_ab.value - coarse.i_ab.value);
    fine.j.abs_error += std::abs(fine.j.value - coarse.j.value);
    fine.i_ab.evaluations += coarse.i_ab.evaluations;
    fine.j.evaluations += coarse.j.evaluations;
    return fine;
}

}  // namespace

std::string_view to_string(JMethod m)
{
    switch (m) {
    case JMethod::direct:
        return "direct";
    case JMethod::closed_form:
        return "closed_form";
    case JMethod::r_averaged:
        return "r_averaged";
    case JMethod::time_averaged:
        return "time_averaged";
    }
    return "unknown";
}

HarvestReport evaluate_point(const PointInput& in, const quadrature::QuadOptions& opts, Execution exec)
{
    const Scenario& s = in.scenario;
    HarvestReport rep;
    rep.warnings = validate(s);
    require_equal_smearing(s);
    if (!(in.time_uncertainty >= 0.0)) {
        throw std::invalid_argument("time_uncertainty must be >= 0");
    }
    if (in.time_uncertainty > 0.0 && s.position_uncertainty > 0.0) {
        throw std::invalid_argument("position_uncertainty and time_uncertainty cannot both be positive");
    }

    const quadrature::QuadResult i_aa = compute_I_nn(s.det_a, opts);
    const quadrature::QuadResult i_bb = compute_I_nn(s.det_b, opts);
    const CrossTerms cross =
        in.time_uncertainty > 0.0 ? temporal_terms(s, in.time_uncertainty, opts) : spatial_terms(s, opts, exec);

    rep.integrals = {i_aa.value.real(), i_bb.value.real(), cross.i_ab.value, cross.j.value};
    rep.errors = {i_aa.abs_error, i_bb.abs_error, cross.i_ab.abs_error, cross.j.abs_error};
    rep.method = cross.method;
    // 1e-10 at unit coupling
    const double lambda_sq = s.det_a.coupling * s.det_b.coupling;
    const double slack = 1e-10 * lambda_sq * lambda_sq;
    rep.integrals.validate(slack);

    if (rep.method == JMethod::direct) {
        rep.ratio = 1.0;
    } else {
        Scenario sharp = s;
        sharp.position_uncertainty = 0.0;
        const double j0 = std::abs(compute_J(sharp, opts).value);
        rep.ratio = j0 > 0.0 ? std::abs(rep.integrals.j) / j0 : std::numeric_limits<double>::quiet_NaN();
    }

    const TwoQubitState rho = assemble_rho(rep.integrals);
    const Negativity n = negativity_closed(rep.integrals);
    rep.negativity = n.clamped;
    rep.negativity_raw = n.raw;
    rep.negativity_higher_order = negativity_numeric(partial_transpose(rho)).higher_order;
    rep.bell = bell_fractions(rho);
    if (rep.method == JMethod::time_averaged && rep.errors.j > kTimeWarnRel * std::abs(rep.integrals.j)) {
        rep.warnings.push_back({"time average under-resolved: estimated error of J exceeds 1% of |J|"});
    }
    rep.causal_class = classify_causal(s);
    rep.timing = classify_timing(s.det_a.window, s.det_b.window);
    return rep;
}

}  // namespace harvest
