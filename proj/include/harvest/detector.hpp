#pragma once

#include <string>
#include <string_view>
#include <variant>
#include <vector>

// Natural units throughout: c = hbar = 1, so lengths and times share a unit.
namespace harvest {

/// Rectangular switching: the detector couples on [t_on, t_off].
struct SwitchingWindow {
    double t_on = 0.0;
    double t_off = 0.0;

    double midpoint() const { return 0.5 * (t_off + t_on); }
    double half_width() const { return 0.5 * (t_off - t_on); }
    double duration() const { return t_off - t_on; }

    bool operator==(const SwitchingWindow&) const = default;
};

struct DetectorParams {
    double coupling = 0.0;  ///< lambda, dimensionless
    double gap = 1.0;       ///< Omega
    double sigma = 1.0;     ///< Gaussian smearing width
    SwitchingWindow window;

    bool operator==(const DetectorParams&) const = default;
};

enum class DetectorLabel { A, B };

struct Scenario {
    DetectorParams det_a;
    DetectorParams det_b;
    double separation = 1.0;            ///< r0 = |x_A - x_B|
    double position_uncertainty = 0.0;  ///< delta

    bool operator==(const Scenario&) const = default;
};

/// Non-fatal conditions that put the second-order treatment on shaky ground.
struct Warning {
    std::string message;
};

/// Throws std::invalid_argument naming the field; returns soft warnings
/// (lambda / Omega > 0.1).
std::vector<Warning> validate(const DetectorParams& det, std::string_view label);

/// Validates both detectors, r0 > 0 and delta >= 0; warns when
/// r0 < 5 max(sigma_A, sigma_B).
std::vector<Warning> validate(const Scenario& s);

enum class CausalClass {
    PurelySpacelike,
    PartiallyLightConnected,
    FullyLightConnected,
    PurelyTimelike,
};

std::string_view to_string(CausalClass c);

struct Disjoint {
    DetectorLabel first;
    double gap;  ///< >= 0
};
struct Overlapping {
    double overlap_start;
    double overlap_end;
};
using TimingRegime = std::variant<Disjoint, Overlapping>;

/// Touching windows (gap 0) count as Disjoint.
TimingRegime classify_timing(const SwitchingWindow& wa, const SwitchingWindow& wb);

/// Where the two switching windows sit relative to each other's light cones,
/// with closed arrival intervals (boundary cases are light connected).
CausalClass classify_causal(const Scenario& s);

struct SeparationInterval {
    double r_min;
    double r_max;
};

/// Separations r for which light emitted during wa reaches the detector
/// during wb. Requires wb.t_on >= wa.t_on.
SeparationInterval light_contact_interval(const SwitchingWindow& wa, const SwitchingWindow& wb);

}  // namespace harvest
