#include "harvest/smearing.hpp"

#include "harvest/jtilde.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace harvest {

namespace {

const double kSmearNorm = 1.0 / (4.0 * std::pow(std::numbers::pi, 1.5));
constexpr double kInvFourPiSq = 1.0 / (4.0 * std::numbers::pi * std::numbers::pi);

// Gaussian tail beyond 6.5 delta: e^{-42}.
constexpr double kRangeInDeltas = 6.5;
constexpr std::size_t kOmegaChunks = 64;
constexpr std::size_t kRenormEvery = 32;

void require_positive_delta(const Scenario& s)
{
    if (!(s.position_uncertainty > 0.0)) {
        throw std::invalid_argument("smearing requires position_uncertainty > 0");
    }
}

void require_disjoint(const Scenario& s, const char* what)
{
    if (std::holds_alternative<Overlapping>(classify_timing(s.det_a.window, s.det_b.window))) {
        throw std::invalid_argument(std::string(what) + " requires disjoint switching windows");
    }
}

double gaussian_weight(double omega, double sigma)
{
    return std::exp(-0.5 * omega * omega * sigma * sigma);
}

quadrature::QuadResult scaled(quadrature::QuadResult r, double factor)
{
    r.value *= factor;
    r.abs_error *= std::abs(factor);
    return r;
}

std::vector<double> gap_anchors(const Scenario& s)
{
    std::vector<double> pts{s.det_a.gap, s.det_b.gap};
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    return pts;
}

// sin(omega r) / r for r on a uniform grid, accumulated into out[j] with
// weight c: out[j] += c sin(omega r_j) / r_j.
void accumulate_row(double omega, Complex c, double r_start, double h, const std::vector<double>& inv_r,
                    double near_zero, std::vector<Complex>& out)
{
    const std::size_t n = out.size();
    const Complex step = std::polar(1.0, omega * h);
    Complex phase{};
    for (std::size_t j = 0; j < n; ++j) {
        const double r = r_start + static_cast<double>(j) * h;
        if (j % kRenormEvery == 0) {
            phase = std::polar(1.0, omega * r);
        } else {
            phase *= step;
        }
        const double kernel = std::abs(r) < near_zero ? omega * specfun::sinc(omega * r) : phase.imag() * inv_r[j];
        out[j] += c * kernel;
    }
}

}  // namespace

quadrature::IntegrandSpec smeared_correlation_integrand(const Scenario& s)
{
    require_equal_smearing(s);
    require_positive_delta(s);
    const double delta = s.position_uncertainty;
    const double x = s.separation / delta;
    quadrature::IntegrandSpec spec;
    spec.damping_scale = s.det_a.sigma;
    spec.max_phase_rate = s.separation + window_spread(s.det_a.window, s.det_b.window);
    spec.singular_points = gap_anchors(s);
    spec.evaluate = [s, delta, x](double omega) {
        return (kSmearNorm / delta) * specfun::damped_im_erfi(x, 0.5 * delta * omega) * correlation_kernel(s, omega);
    };
    return spec;
}

quadrature::IntegrandSpec smeared_cross_noise_integrand(const Scenario& s)
{
    require_equal_smearing(s);
    require_positive_delta(s);
    const double delta = s.position_uncertainty;
    const double x = s.separation / delta;
    quadrature::IntegrandSpec spec;
    spec.damping_scale = s.det_a.sigma;
    spec.max_phase_rate = s.separation + window_spread(s.det_a.window, s.det_b.window);
    spec.evaluate = [a = s.det_a, b = s.det_b, delta, x](double omega) {
        return (kSmearNorm / delta) * specfun::damped_im_erfi(x, 0.5 * delta * omega) *
               gaussian_weight(omega, a.sigma) * std::conj(window_factor_plus(a, omega)) *
               window_factor_plus(b, omega);
    };
    return spec;
}

quadrature::QuadResult smeared_J(const Scenario& s, const quadrature::QuadOptions& opts)
{
    require_disjoint(s, "smeared_J");
    const quadrature::IntegrandSpec spec = smeared_correlation_integrand(s);
    const double lambda_sq = s.det_a.coupling * s.det_b.coupling;
    if (lambda_sq == 0.0) {
        return {};
    }
    return scaled(quadrature::integrate_radial(spec, opts), lambda_sq);
}

double compute_J_smeared(const Scenario& s, const quadrature::QuadOptions& opts)
{
    return std::abs(smeared_J(s, opts).value);
}

quadrature::QuadResult compute_I_AB_smeared(const Scenario& s, const quadrature::QuadOptions& opts)
{
    const quadrature::IntegrandSpec spec = smeared_cross_noise_integrand(s);
    const double lambda_sq = s.det_a.coupling * s.det_b.coupling;
    if (lambda_sq == 0.0) {
        return {};
    }
    return scaled(quadrature::integrate_radial(spec, opts), lambda_sq);
}

SeparationAverage separation_averaged_J(const Scenario& s, const quadrature::QuadOptions& opts, Execution exec)
{
    require_equal_smearing(s);
    require_positive_delta(s);
    const double delta = s.position_uncertainty;
    const double r0 = s.separation;
    const double sigma = s.det_a.sigma;
    const double h = std::min(0.5 * sigma, delta / 8.0);
    const auto half_count = static_cast<std::size_t>(std::ceil(kRangeInDeltas * delta / h));
    const std::size_t nr = 2 * half_count + 1;
    const double r_start = r0 - static_cast<double>(half_count) * h;
    const double near_zero = 4.0 * h;

    std::vector<double> inv_r(nr);
    for (std::size_t j = 0; j < nr; ++j) {
        const double r = r_start + static_cast<double>(j) * h;
        inv_r[j] = std::abs(r) < near_zero ? 0.0 : 1.0 / r;
    }

    quadrature::IntegrandSpec spec;
    spec.damping_scale = sigma;
    const double r_end = r_start + static_cast<double>(nr - 1) * h;
    spec.max_phase_rate =
        std::max(std::abs(r_start), std::abs(r_end)) + window_spread(s.det_a.window, s.det_b.window);
    spec.singular_points = gap_anchors(s);
    spec.evaluate = [](double) { return Complex{}; };
    const quadrature::FixedGrid grid = quadrature::fixed_grid(spec, quadrature::cutoff(spec, opts.tail_tol));
    const std::size_t nw = grid.nodes.size();

    std::vector<Complex> weight(nw);
    for (std::size_t k = 0; k < nw; ++k) {
        weight[k] = grid.weights[k] * kInvFourPiSq * correlation_kernel(s, grid.nodes[k]);
    }

    // Fixed chunking of the omega nodes, reduced in chunk order, so the
    // result does not depend on the thread count.
    const std::size_t chunks = std::min(kOmegaChunks, nw);
    std::vector<std::vector<Complex>> partial(chunks, std::vector<Complex>(nr));
    auto run_chunk = [&](std::size_t c) {
        const std::size_t lo = c * nw / chunks;
        const std::size_t hi = (c + 1) * nw / chunks;
        for (std::size_t k = lo; k < hi; ++k) {
            accumulate_row(grid.nodes[k], weight[k], r_start, h, inv_r, near_zero, partial[c]);
        }
    };
    if (exec == Execution::parallel) {
#pragma omp parallel for schedule(dynamic, 1)
        for (std::size_t c = 0; c < chunks; ++c) {
            run_chunk(c);
        }
    } else {
        for (std::size_t c = 0; c < chunks; ++c) {
            run_chunk(c);
        }
    }

    const double lambda_sq = s.det_a.coupling * s.det_b.coupling;
    const double norm = 1.0 / (delta * std::sqrt(std::numbers::pi));
    Complex sum_h{}, sum_2h{};
    double abs_sum = 0.0;
    for (std::size_t j = 0; j < nr; ++j) {
        Complex jr{};
        for (std::size_t c = 0; c < chunks; ++c) {
            jr += partial[c][j];
        }
        const double dr = r_start + static_cast<double>(j) * h - r0;
        const double pr = norm * std::exp(-dr * dr / (delta * delta));
        sum_h += pr * jr;
        if (j % 2 == half_count % 2) {
            sum_2h += pr * jr;
        }
        abs_sum += pr * std::abs(jr);
    }

    SeparationAverage out;
    out.j = lambda_sq * h * sum_h;
    out.mean_abs_j = std::abs(lambda_sq) * h * abs_sum;
    out.abs_error = std::abs(lambda_sq) * std::abs(h * sum_h - 2.0 * h * sum_2h);
    out.r_points = nr;
    out.omega_points = nw;
    return out;
}

GaussHermite gauss_hermite(int n)
{
    if (n < 1) {
        throw std::invalid_argument("gauss_hermite: n must be >= 1");
    }
    // Golub-Welsch on the Jacobi matrix of the Hermite recurrence.
    Eigen::MatrixXd jacobi = Eigen::MatrixXd::Zero(n, n);
    for (int k = 1; k < n; ++k) {
        jacobi(k, k - 1) = jacobi(k - 1, k) = std::sqrt(0.5 * k);
    }
    const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(jacobi);
    GaussHermite rule;
    rule.nodes.resize(static_cast<std::size_t>(n));
    rule.weights.resize(static_cast<std::size_t>(n));
    const double mu0 = std::sqrt(std::numbers::pi);
    for (int k = 0; k < n; ++k) {
        const double v0 = solver.eigenvectors()(0, k);
        rule.nodes[static_cast<std::size_t>(k)] = solver.eigenvalues()(k);
        rule.weights[static_cast<std::size_t>(k)] = mu0 * v0 * v0;
    }
    // exact symmetry
    for (int k = 0; k < n / 2; ++k) {
        const auto lo = static_cast<std::size_t>(k);
        const auto hi = static_cast<std::size_t>(n - 1 - k);
        const double x = 0.5 * (rule.nodes[hi] - rule.nodes[lo]);
        const double w = 0.5 * (rule.weights[hi] + rule.weights[lo]);
        rule.nodes[lo] = -x;
        rule.nodes[hi] = x;
        rule.weights[lo] = rule.weights[hi] = w;
    }
    if (n % 2 == 1) {
        rule.nodes[static_cast<std::size_t>(n / 2)] = 0.0;
    }
    return rule;
}

double compute_J_time_smeared(const Scenario& s, double delta_t, const quadrature::QuadOptions& opts, int nodes)
{
    if (!(delta_t > 0.0)) {
        throw std::invalid_argument("compute_J_time_smeared requires delta_t > 0");
    }
    require_disjoint(s, "compute_J_time_smeared");
    const GaussHermite rule = gauss_hermite(nodes);
    Complex sum{};
    for (std::size_t k = 0; k < rule.nodes.size(); ++k) {
        Scenario shifted = s;
        const double tau = delta_t * rule.nodes[k];
        shifted.det_b.window.t_on += tau;
        shifted.det_b.window.t_off += tau;
        sum += rule.weights[k] * compute_J(shifted, opts).value;
    }
    return std::abs(sum) / std::sqrt(std::numbers::pi);
}

double ratio_R(const Scenario& s, const quadrature::QuadOptions& opts)
{
    const double unsmeared = std::abs(compute_J(s, opts).value);
    if (unsmeared == 0.0) {
        throw std::domain_error("ratio_R: unsmeared J vanishes");
    }
    return compute_J_smeared(s, opts) / unsmeared;
}

}  // namespace harvest
