#include "harvest/jtilde.hpp"

#include <algorithm>
#include <stdexcept>

namespace harvest {

using specfun::phase_integral;

Complex window_factor_plus(const DetectorParams& det, double omega)
{
    return phase_integral(det.window.t_on, det.window.t_off, omega + det.gap);
}

namespace {

// Absorber time t in [a, b], emitter time t' in [c, min(t, d)].
Complex time_ordered(double a, double b, double c, double d, double alpha, double beta)
{
    Complex total{};

    // t after the emitter has switched off: the t' integral covers [c, d].
    const double late = std::max(a, d);
    if (late < b) {
        total += phase_integral(late, b, -beta) * phase_integral(c, d, alpha);
    }

    // t inside both windows, [p, q].
    const double p = std::max(a, c);
    const double q = std::min(b, d);
    if (p < q) {
        // t' in [c, p] is always earlier than t
        total += phase_integral(p, q, -beta) * phase_integral(c, p, alpha);
        // triangle p <= t' <= t <= q
        const double len = q - p;
        const double omega_sum = alpha - beta;
        const Complex lead = std::polar(1.0, omega_sum * p) / Complex(0.0, alpha);
        total += lead * (phase_integral(0.0, len, omega_sum) - phase_integral(0.0, len, -beta));
    }
    return total;
}

}  // namespace

Complex jtilde(const DetectorParams& emitter, const DetectorParams& absorber, double omega)
{
    return time_ordered(absorber.window.t_on, absorber.window.t_off, emitter.window.t_on,
                        emitter.window.t_off, omega + emitter.gap, omega - absorber.gap);
}

Complex jtilde_disjoint(const DetectorParams& emitter, const DetectorParams& absorber, double omega)
{
    if (emitter.window.t_off > absorber.window.t_on) {
        throw std::invalid_argument("jtilde_disjoint: emitter window must close before the absorber opens");
    }
    return phase_integral(absorber.window.t_on, absorber.window.t_off, absorber.gap - omega) *
           phase_integral(emitter.window.t_on, emitter.window.t_off, omega + emitter.gap);
}

Complex jtilde_overlap(const DetectorParams& emitter, const DetectorParams& absorber, double omega)
{
    if (std::holds_alternative<Disjoint>(classify_timing(emitter.window, absorber.window))) {
        throw std::invalid_argument("jtilde_overlap: windows do not overlap");
    }
    return jtilde(emitter, absorber, omega);
}

}  // namespace harvest
