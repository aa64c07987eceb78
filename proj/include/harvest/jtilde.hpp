#pragma once

#include "harvest/detector.hpp"
#include "harvest/specfun.hpp"

namespace harvest {

/// int chi(t) e^{i (omega + Omega) t} dt over the detector's rectangular
/// window, i.e. 2 T^- e^{i omega^+ T^+} sinc(omega^+ T^-).
Complex window_factor_plus(const DetectorParams& det, double omega);

/// Time-ordered double integral
///
///   int_{absorber window} dt e^{-i (omega - Omega_abs) t}
///       int_{-inf}^{t} dt' chi_emitter(t') e^{i (omega + Omega_em) t'}
///
/// for any relative placement of the two windows. It is zero when the absorber
/// window closes before the emitter window opens. Every term is regular in
/// omega; the only divisor is omega + Omega_em > 0.
Complex jtilde(const DetectorParams& emitter, const DetectorParams& absorber, double omega);

/// jtilde for emitter.t_off <= absorber.t_on: a product of two window
/// factors. Throws std::invalid_argument otherwise.
Complex jtilde_disjoint(const DetectorParams& emitter, const DetectorParams& absorber, double omega);

/// jtilde for windows that overlap in time. Throws std::invalid_argument
/// when classify_timing reports Disjoint.
Complex jtilde_overlap(const DetectorParams& emitter, const DetectorParams& absorber, double omega);

}  // namespace harvest
