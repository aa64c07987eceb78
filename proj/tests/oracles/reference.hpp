#pragma once

// Test-only reference computations. Nothing here calls into the radial
// quadrature engine or the regularized (ediff/sinc) forms used by the library.

#include "harvest/detector.hpp"

#include <boost/math/quadrature/gauss.hpp>

#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>
#include <numbers>

namespace oracle {

using Complex = std::complex<double>;
using harvest::DetectorParams;
using harvest::Scenario;

/// Composite 20-point Gauss-Legendre on [a, b] with `panels` equal panels.
inline Complex gauss_legendre(const std::function<Complex(double)>& f, double a, double b, int panels)
{
    using G = boost::math::quadrature::gauss<double, 20>;
    if (!(b > a)) {
        return {};
    }
    const auto& x = G::abscissa();
    const auto& w = G::weights();
    Complex sum{};
    const double width = (b - a) / panels;
    for (int p = 0; p < panels; ++p) {
        const double centre = a + (p + 0.5) * width;
        const double half = 0.5 * width;
        for (std::size_t i = 0; i < x.size(); ++i) {
            sum += w[i] * half * (f(centre - half * x[i]) + f(centre + half * x[i]));
        }
    }
    return sum;
}

inline int panels_for(double length, double rate)
{
    return std::max(2, static_cast<int>(std::ceil(length * rate / 2.0)) + 1);
}

/// Brute-force time-domain double integral:
///   int_a^b dt e^{-i beta t} int_c^{min(t,d)} dt' e^{i alpha t'}.
inline Complex jtilde_time_domain(const DetectorParams& emitter, const DetectorParams& absorber, double omega)
{
    const double a = absorber.window.t_on, b = absorber.window.t_off;
    const double c = emitter.window.t_on, d = emitter.window.t_off;
    const double alpha = omega + emitter.gap;
    const double beta = omega - absorber.gap;
    const double rate = std::abs(alpha) + std::abs(beta) + 1.0;

    auto inner = [&](double t) {
        const double hi = std::min(t, d);
        if (hi <= c) {
            return Complex{};
        }
        auto g = [&](double s) { return std::polar(1.0, alpha * s); };
        return gauss_legendre(g, c, hi, panels_for(hi - c, rate));
    };
    auto outer = [&](double t) { return std::polar(1.0, -beta * t) * inner(t); };

    // split the outer range at the emitter's switching times (kinks)
    std::vector<double> cuts{a, b};
    for (double k : {c, d}) {
        if (k > a && k < b) {
            cuts.push_back(k);
        }
    }
    std::sort(cuts.begin(), cuts.end());
    Complex total{};
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
        total += gauss_legendre(outer, cuts[i], cuts[i + 1], panels_for(cuts[i + 1] - cuts[i], rate));
    }
    return total;
}

/// e^{i mu t} |_lo^hi, unregularized.
inline Complex bracket(double mu, double lo, double hi)
{
    return std::polar(1.0, mu * hi) - std::polar(1.0, mu * lo);
}

/// The no-overlap / overlap (K - X) decomposition written with raw
/// exponential differences over frequency. Singular at omega = Omega_abs and
/// must not be evaluated there.
inline Complex jtilde_raw(const DetectorParams& emitter, const DetectorParams& absorber, double omega)
{
    const double a = absorber.window.t_on, b = absorber.window.t_off;
    const double c = emitter.window.t_on, d = emitter.window.t_off;
    const double alpha = omega + emitter.gap;
    const double beta = omega - absorber.gap;
    const double omega_sum = absorber.gap + emitter.gap;

    // i int_lo^hi e^{-i beta t} dt  and  -i int_lo^hi e^{i alpha t} dt
    auto abs_piece = [&](double lo, double hi) { return bracket(-beta, lo, hi) / beta; };
    auto em_piece = [&](double lo, double hi) { return bracket(alpha, lo, hi) / alpha; };

    if (b <= c) {
        return {};
    }
    if (d <= a) {
        return abs_piece(a, b) * em_piece(c, d);
    }
    const double p = std::max(a, c);
    const double q = std::min(b, d);
    Complex k{};
    if (c < p) {
        k += abs_piece(p, b) * em_piece(c, p);
    }
    if (q < b) {
        k += abs_piece(q, b) * em_piece(p, q);
    }
    const Complex x = std::polar(1.0, alpha * p - beta * q) / (alpha * beta) -
                      (alpha * std::polar(1.0, p * omega_sum) - beta * std::polar(1.0, q * omega_sum)) /
                          (alpha * beta * omega_sum);
    return k - x;
}

/// Raw single-window time integral int chi e^{i (omega+Omega) t} dt.
inline Complex window_raw(const DetectorParams& det, double omega)
{
    const double mu = omega + det.gap;
    return bracket(mu, det.window.t_on, det.window.t_off) / Complex(0.0, mu);
}

/// Dense composite 10-point Gauss-Legendre over [0, omega_max] with panels
/// of width `panel` whose edges are multiples of `panel` (so omega = Omega
/// at an integer multiple is never a node).
inline Complex dense_radial(const std::function<Complex(double)>& g, double sigma, double panel)
{
    using G = boost::math::quadrature::gauss<double, 10>;
    const auto& x = G::abscissa();
    const auto& w = G::weights();
    const double omega_max = std::sqrt(2.0 * std::log(1e18)) / sigma;
    const long n = static_cast<long>(std::ceil(omega_max / panel));
    Complex sum{};
    for (long p = 0; p < n; ++p) {
        const double centre = (p + 0.5) * panel;
        const double half = 0.5 * panel;
        Complex s{};
        for (std::size_t i = 0; i < x.size(); ++i) {
            s += w[i] * (g(centre - half * x[i]) + g(centre + half * x[i]));
        }
        sum += half * s;
    }
    return sum;
}

inline double local_noise(const DetectorParams& det, double panel = 0.25)
{
    const double s = det.sigma;
    auto g = [&](double omega) {
        return omega * std::exp(-0.5 * omega * omega * s * s) * std::norm(window_raw(det, omega));
    };
    return det.coupling * det.coupling / (4.0 * std::numbers::pi * std::numbers::pi) *
           dense_radial(g, s, panel).real();
}

inline Complex cross_noise(const Scenario& sc, double panel = 0.25)
{
    const double s = sc.det_a.sigma;
    const double r = sc.separation;
    auto g = [&](double omega) {
        return std::sin(omega * r) / r * std::exp(-0.5 * omega * omega * s * s) *
               std::conj(window_raw(sc.det_a, omega)) * window_raw(sc.det_b, omega);
    };
    return sc.det_a.coupling * sc.det_b.coupling / (4.0 * std::numbers::pi * std::numbers::pi) *
           dense_radial(g, s, panel);
}

inline Complex correlation(const Scenario& sc, double panel = 0.25)
{
    const double s = sc.det_a.sigma;
    const double r = sc.separation;
    auto g = [&](double omega) {
        return std::sin(omega * r) / r * std::exp(-0.5 * omega * omega * s * s) *
               (jtilde_raw(sc.det_b, sc.det_a, omega) + jtilde_raw(sc.det_a, sc.det_b, omega));
    };
    return sc.det_a.coupling * sc.det_b.coupling / (4.0 * std::numbers::pi * std::numbers::pi) *
           dense_radial(g, s, panel);
}

/// int_{-inf}^{inf} (dr / r) sin(k r) e^{-(r - r0)^2 / delta^2} by composite
/// Gauss-Legendre over r0 +- 9 delta.
inline double smear_identity_lhs(double r0, double delta, double k)
{
    auto f = [&](double r) {
        const double kr = k * r;
        const double s = std::abs(kr) < 1e-8 ? k : std::sin(kr) / r;
        const double u = (r - r0) / delta;
        return Complex(s * std::exp(-u * u), 0.0);
    };
    const double lo = r0 - 9.0 * delta;
    const double hi = r0 + 9.0 * delta;
    const double width = std::min(delta / 2.0, std::numbers::pi / k);
    return gauss_legendre(f, lo, hi, static_cast<int>(std::ceil((hi - lo) / width))).real();
}

}  // namespace oracle
