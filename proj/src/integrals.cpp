#include "harvest/integrals.hpp"

#include "harvest/jtilde.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace harvest {

namespace {

constexpr double kInvFourPiSq = 1.0 / (4.0 * std::numbers::pi * std::numbers::pi);

double gaussian_weight(double omega, double sigma)
{
    return std::exp(-0.5 * omega * omega * sigma * sigma);
}

std::vector<double> gap_anchors(const Scenario& s)
{
    std::vector<double> pts{s.det_a.gap, s.det_b.gap};
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    return pts;
}

quadrature::QuadResult scaled(quadrature::QuadResult r, double factor)
{
    r.value *= factor;
    r.abs_error *= std::abs(factor);
    return r;
}

quadrature::QuadResult skipped()
{
    return {Complex{}, 0.0, 0};
}

}  // namespace

void SecondOrderIntegrals::validate(double slack) const
{
    if (!(i_aa >= 0.0) || !(i_bb >= 0.0)) {
        throw std::invalid_argument("SecondOrderIntegrals: local noise terms must be >= 0");
    }
    if (std::norm(i_ab) > i_aa * i_bb + slack) {
        throw std::invalid_argument("SecondOrderIntegrals: |I_AB|^2 exceeds I_AA I_BB");
    }
}

double window_spread(const SwitchingWindow& wa, const SwitchingWindow& wb)
{
    return std::max(std::abs(wb.t_off - wa.t_on), std::abs(wa.t_off - wb.t_on));
}

void require_equal_smearing(const Scenario& s)
{
    if (s.det_a.sigma != s.det_b.sigma) {
        throw std::invalid_argument("cross terms require identical smearing widths (sigma_A == sigma_B)");
    }
}

quadrature::IntegrandSpec local_noise_integrand(const DetectorParams& det)
{
    quadrature::IntegrandSpec spec;
    spec.damping_scale = det.sigma;
    spec.max_phase_rate = det.window.duration();
    spec.evaluate = [det](double omega) {
        return Complex(kInvFourPiSq * omega * gaussian_weight(omega, det.sigma) *
                           std::norm(window_factor_plus(det, omega)),
                       0.0);
    };
    return spec;
}

quadrature::IntegrandSpec cross_noise_integrand(const Scenario& s, double separation)
{
    require_equal_smearing(s);
    quadrature::IntegrandSpec spec;
    spec.damping_scale = s.det_a.sigma;
    spec.max_phase_rate = separation + window_spread(s.det_a.window, s.det_b.window);
    spec.evaluate = [a = s.det_a, b = s.det_b, separation](double omega) {
        return kInvFourPiSq * omega * specfun::sinc(omega * separation) * gaussian_weight(omega, a.sigma) *
               std::conj(window_factor_plus(a, omega)) * window_factor_plus(b, omega);
    };
    return spec;
}

Complex correlation_kernel(const Scenario& s, double omega)
{
    // Jt_AB: B emits (earlier t'), A absorbs; Jt_BA the reverse.
    return gaussian_weight(omega, s.det_a.sigma) *
           (jtilde(s.det_b, s.det_a, omega) + jtilde(s.det_a, s.det_b, omega));
}

quadrature::IntegrandSpec correlation_integrand(const Scenario& s, double separation)
{
    require_equal_smearing(s);
    quadrature::IntegrandSpec spec;
    spec.damping_scale = s.det_a.sigma;
    spec.max_phase_rate = separation + window_spread(s.det_a.window, s.det_b.window);
    spec.singular_points = gap_anchors(s);
    spec.evaluate = [s, separation](double omega) {
        return kInvFourPiSq * omega * specfun::sinc(omega * separation) * correlation_kernel(s, omega);
    };
    return spec;
}

quadrature::QuadResult compute_I_nn(const DetectorParams& det, const quadrature::QuadOptions& opts)
{
    const double lambda_sq = det.coupling * det.coupling;
    if (lambda_sq == 0.0 || det.window.duration() <= 0.0) {
        return skipped();
    }
    return scaled(quadrature::integrate_radial(local_noise_integrand(det), opts), lambda_sq);
}

quadrature::QuadResult compute_I_AB(const Scenario& s, const quadrature::QuadOptions& opts)
{
    require_equal_smearing(s);
    const double lambda_sq = s.det_a.coupling * s.det_b.coupling;
    if (lambda_sq == 0.0) {
        return skipped();
    }
    return scaled(quadrature::integrate_radial(cross_noise_integrand(s, s.separation), opts), lambda_sq);
}

quadrature::QuadResult compute_J(const Scenario& s, const quadrature::QuadOptions& opts)
{
    require_equal_smearing(s);
    const double lambda_sq = s.det_a.coupling * s.det_b.coupling;
    if (lambda_sq == 0.0) {
        return skipped();
    }
    return scaled(quadrature::integrate_radial(correlation_integrand(s, s.separation), opts), lambda_sq);
}

}  // namespace harvest
