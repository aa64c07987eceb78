#include "harvest/detector.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace harvest {

namespace {

void require(bool ok, std::string_view label, std::string_view what)
{
    if (!ok) {
        std::ostringstream msg;
        msg << label << ": " << what;
        throw std::invalid_argument(msg.str());
    }
}

bool finite(double v) { return std::isfinite(v); }

// Closed-interval containment / intersection.
bool contains(double lo, double hi, double a, double b) { return lo <= a && b <= hi; }
bool intersects(double lo, double hi, double a, double b) { return a <= hi && lo <= b; }

}  // namespace

std::vector<Warning> validate(const DetectorParams& det, std::string_view label)
{
    const std::string l(label);
    require(finite(det.coupling) && det.coupling >= 0.0, l + ".coupling", "must be >= 0");
    require(finite(det.gap) && det.gap > 0.0, l + ".gap", "must be > 0");
    require(finite(det.sigma) && det.sigma > 0.0, l + ".sigma", "must be > 0");
    require(finite(det.window.t_on) && finite(det.window.t_off), l + ".window", "times must be finite");
    require(det.window.t_off > det.window.t_on, l + ".window", "t_off must exceed t_on");

    std::vector<Warning> warnings;
    if (det.coupling / det.gap > 0.1) {
        warnings.push_back({l + ": coupling/gap = " + std::to_string(det.coupling / det.gap) +
                            " exceeds 0.1; second-order perturbation theory may be unreliable"});
    }
    return warnings;
}

std::vector<Warning> validate(const Scenario& s)
{
    std::vector<Warning> warnings = validate(s.det_a, "detector_a");
    for (auto& w : validate(s.det_b, "detector_b")) {
        warnings.push_back(std::move(w));
    }
    require(finite(s.separation) && s.separation > 0.0, "scenario.separation", "must be > 0");
    require(finite(s.position_uncertainty) && s.position_uncertainty >= 0.0, "scenario.delta",
            "must be >= 0");
    const double widest = std::max(s.det_a.sigma, s.det_b.sigma);
    if (s.separation < 5.0 * widest) {
        warnings.push_back({"scenario: separation below 5 sigma; detector smearings overlap"});
    }
    return warnings;
}

std::string_view to_string(CausalClass c)
{
    switch (c) {
    case CausalClass::PurelySpacelike:
        return "spacelike";
    case CausalClass::PartiallyLightConnected:
        return "partially_light_connected";
    case CausalClass::FullyLightConnected:
        return "fully_light_connected";
    case CausalClass::PurelyTimelike:
        return "timelike";
    }
    return "unknown";
}

TimingRegime classify_timing(const SwitchingWindow& wa, const SwitchingWindow& wb)
{
    if (wa.t_off <= wb.t_on) {
        return Disjoint{DetectorLabel::A, wb.t_on - wa.t_off};
    }
    if (wb.t_off <= wa.t_on) {
        return Disjoint{DetectorLabel::B, wa.t_on - wb.t_off};
    }
    return Overlapping{std::max(wa.t_on, wb.t_on), std::min(wa.t_off, wb.t_off)};
}

CausalClass classify_causal(const Scenario& s)
{
    const SwitchingWindow& a = s.det_a.window;
    const SwitchingWindow& b = s.det_b.window;
    const double r = s.separation;

    // Arrival of light from A at B's position, and from B at A's.
    const double ab_lo = a.t_on + r, ab_hi = a.t_off + r;
    const double ba_lo = b.t_on + r, ba_hi = b.t_off + r;

    if (contains(ab_lo, ab_hi, b.t_on, b.t_off) || contains(ba_lo, ba_hi, a.t_on, a.t_off)) {
        return CausalClass::FullyLightConnected;
    }
    if (intersects(ab_lo, ab_hi, b.t_on, b.t_off) || intersects(ba_lo, ba_hi, a.t_on, a.t_off)) {
        return CausalClass::PartiallyLightConnected;
    }
    if (b.t_on > ab_hi || a.t_on > ba_hi) {
        return CausalClass::PurelyTimelike;
    }
    return CausalClass::PurelySpacelike;
}

SeparationInterval light_contact_interval(const SwitchingWindow& wa, const SwitchingWindow& wb)
{
    if (wb.t_on < wa.t_on) {
        throw std::invalid_argument("light_contact_interval: wb must not start before wa");
    }
    return {std::max(0.0, wb.t_on - wa.t_off), wb.t_off - wa.t_on};
}

}  // namespace harvest
