#pragma once

#include "harvest/detector.hpp"

namespace fixtures {

inline constexpr double kSigma = 1e-3;

/// Omega = 1, sigma = 0.001, windows [0, 100 sigma] and [150 sigma, 250 sigma],
/// r0 = 150 sigma, unit couplings.
inline harvest::Scenario figure_scenario()
{
    harvest::Scenario s;
    s.det_a = {1.0, 1.0, kSigma, {0.0, 100 * kSigma}};
    s.det_b = {1.0, 1.0, kSigma, {150 * kSigma, 250 * kSigma}};
    s.separation = 150 * kSigma;
    return s;
}

}  // namespace fixtures
