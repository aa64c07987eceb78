#include "harvest/quadrature.hpp"

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <queue>

namespace harvest::quadrature {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

// 21-point Kronrod extension of the 10-point Gauss rule on [-1, 1].
struct KronrodRule {
    std::array<double, 21> nodes{};
    std::array<double, 21> kronrod{};
    std::array<double, 21> gauss{};

    KronrodRule()
    {
        using GK = boost::math::quadrature::gauss_kronrod<double, 21>;
        using G = boost::math::quadrature::gauss<double, 10>;
        const auto& x = GK::abscissa();
        const auto& wk = GK::weights();
        const auto& wg = G::weights();
        nodes[10] = 0.0;
        kronrod[10] = wk[0];
        for (std::size_t i = 1; i < x.size(); ++i) {
            nodes[10 - i] = -x[i];
            nodes[10 + i] = x[i];
            kronrod[10 - i] = kronrod[10 + i] = wk[i];
            // Gauss-10 nodes sit at the odd Kronrod abscissae.
            const double g = (i % 2 == 1) ? wg[i / 2] : 0.0;
            gauss[10 - i] = gauss[10 + i] = g;
        }
    }
};

const KronrodRule& kronrod_rule()
{
    static const KronrodRule rule;
    return rule;
}

struct Segment {
    double a = 0.0;
    double b = 0.0;
    Complex value{};
    double error = 0.0;
};

// QUADPACK qk21 error heuristic, applied to the complex integrand through |.|.
Segment apply_rule(const std::function<Complex(double)>& f, double a, double b)
{
    const KronrodRule& rule = kronrod_rule();
    const double centre = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    std::array<Complex, 21> fv;
    Complex k{}, g{};
    double resabs = 0.0;
    for (std::size_t i = 0; i < 21; ++i) {
        fv[i] = f(centre + half * rule.nodes[i]);
        k += rule.kronrod[i] * fv[i];
        g += rule.gauss[i] * fv[i];
        resabs += rule.kronrod[i] * std::abs(fv[i]);
    }
    const Complex mean = 0.5 * k;
    double resasc = 0.0;
    for (std::size_t i = 0; i < 21; ++i) {
        resasc += rule.kronrod[i] * std::abs(fv[i] - mean);
    }
    resabs *= std::abs(half);
    resasc *= std::abs(half);
    double err = std::abs((k - g) * half);
    if (resasc != 0.0 && err != 0.0) {
        err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
    }
    if (resabs > std::numeric_limits<double>::min() / (50.0 * kEps)) {
        err = std::max(50.0 * kEps * resabs, err);
    }
    return {a, b, k * half, err};
}

struct LargerError {
    bool operator()(const Segment& x, const Segment& y) const
    {
        if (x.error != y.error) {
            return x.error < y.error;
        }
        return x.a > y.a;
    }
};

QuadResult summarize(std::vector<Segment> segs, std::size_t evaluations)
{
    std::sort(segs.begin(), segs.end(), [](const Segment& x, const Segment& y) { return x.a < y.a; });
    QuadResult r;
    for (const auto& s : segs) {
        r.value += s.value;
        r.abs_error += s.error;
    }
    r.evaluations = evaluations;
    return r;
}

}  // namespace

void IntegrandSpec::validate() const
{
    if (!evaluate) {
        throw std::invalid_argument("IntegrandSpec: missing evaluator");
    }
    if (!(damping_scale > 0.0) || !std::isfinite(damping_scale)) {
        throw std::invalid_argument("IntegrandSpec: damping_scale must be > 0");
    }
    if (!(max_phase_rate >= 0.0) || !std::isfinite(max_phase_rate)) {
        throw std::invalid_argument("IntegrandSpec: max_phase_rate must be >= 0");
    }
    if (!std::is_sorted(singular_points.begin(), singular_points.end())) {
        throw std::invalid_argument("IntegrandSpec: singular_points must be sorted");
    }
    if (!singular_points.empty() && singular_points.front() < 0.0) {
        throw std::invalid_argument("IntegrandSpec: singular_points must be non-negative");
    }
}

double cutoff(const IntegrandSpec& spec, double tail_tol)
{
    if (!(tail_tol > 0.0 && tail_tol < 1.0)) {
        throw std::domain_error("cutoff: tail_tol must lie in (0, 1)");
    }
    if (!(spec.damping_scale > 0.0)) {
        throw std::domain_error("cutoff: damping_scale must be > 0");
    }
    return std::sqrt(2.0 * std::log(1.0 / tail_tol)) / spec.damping_scale;
}

std::vector<double> panel_edges(const IntegrandSpec& spec, double omega_max)
{
    std::size_t panels = 8;
    if (spec.max_phase_rate > 0.0) {
        const double width = std::numbers::pi / spec.max_phase_rate;
        panels = std::max<std::size_t>(panels, static_cast<std::size_t>(std::ceil(omega_max / width)));
    }
    std::vector<double> edges;
    edges.reserve(panels + 1 + spec.singular_points.size());
    for (std::size_t i = 0; i <= panels; ++i) {
        edges.push_back(omega_max * static_cast<double>(i) / static_cast<double>(panels));
    }
    edges.back() = omega_max;
    for (double s : spec.singular_points) {
        if (s > 0.0 && s < omega_max) {
            edges.push_back(s);
        }
    }
    std::sort(edges.begin(), edges.end());
    const double min_gap = 1e-12 * omega_max;
    std::vector<double> out;
    out.reserve(edges.size());
    for (double e : edges) {
        if (out.empty() || e - out.back() > min_gap) {
            out.push_back(e);
        } else if (e == omega_max) {
            out.back() = omega_max;
        }
    }
    return out;
}

QuadResult integrate_radial(const IntegrandSpec& spec, const QuadOptions& opts)
{
    spec.validate();
    if (!(opts.tol_abs > 0.0) || !(opts.tol_rel > 0.0)) {
        throw std::invalid_argument("integrate_radial: tolerances must be > 0");
    }
    const double omega_max = cutoff(spec, opts.tail_tol);
    const std::vector<double> edges = panel_edges(spec, omega_max);

    std::priority_queue<Segment, std::vector<Segment>, LargerError> queue;
    std::size_t evaluations = 0;
    Complex total{};
    double total_err = 0.0;
    for (std::size_t i = 0; i + 1 < edges.size(); ++i) {
        if (evaluations + 21 > opts.eval_budget) {
            std::vector<Segment> partial;
            while (!queue.empty()) {
                partial.push_back(queue.top());
                queue.pop();
            }
            QuadResult best = summarize(std::move(partial), evaluations);
            best.abs_error = INFINITY;
            throw ConvergenceFailure("integrate_radial: evaluation budget smaller than the panel layout", best);
        }
        Segment s = apply_rule(spec.evaluate, edges[i], edges[i + 1]);
        evaluations += 21;
        total += s.value;
        total_err += s.error;
        queue.push(s);
    }

    auto drain = [&queue]() {
        std::vector<Segment> segs;
        segs.reserve(queue.size());
        while (!queue.empty()) {
            segs.push_back(queue.top());
            queue.pop();
        }
        return segs;
    };

    const double min_width = 64.0 * kEps * omega_max;
    while (total_err > std::max(opts.tol_abs, opts.tol_rel * std::abs(total))) {
        if (evaluations + 42 > opts.eval_budget) {
            throw ConvergenceFailure("integrate_radial: evaluation budget exhausted",
                                     summarize(drain(), evaluations));
        }
        const Segment worst = queue.top();
        const double mid = 0.5 * (worst.a + worst.b);
        if (worst.b - worst.a < min_width) {
            throw ConvergenceFailure("integrate_radial: interval too small to refine",
                                     summarize(drain(), evaluations));
        }
        queue.pop();
        const Segment left = apply_rule(spec.evaluate, worst.a, mid);
        const Segment right = apply_rule(spec.evaluate, mid, worst.b);
        evaluations += 42;
        total += left.value + right.value - worst.value;
        total_err += left.error + right.error - worst.error;
        queue.push(left);
        queue.push(right);
    }
    return summarize(drain(), evaluations);
}

FixedGrid fixed_grid(const IntegrandSpec& spec, double omega_max)
{
    using G = boost::math::quadrature::gauss<double, 10>;
    const auto& x = G::abscissa();
    const auto& w = G::weights();
    const std::vector<double> edges = panel_edges(spec, omega_max);
    FixedGrid grid;
    grid.nodes.reserve(10 * edges.size());
    grid.weights.reserve(10 * edges.size());
    for (std::size_t p = 0; p + 1 < edges.size(); ++p) {
        const double centre = 0.5 * (edges[p] + edges[p + 1]);
        const double half = 0.5 * (edges[p + 1] - edges[p]);
        for (std::size_t i = 0; i < x.size(); ++i) {
            grid.nodes.push_back(centre - half * x[i]);
            grid.weights.push_back(half * w[i]);
            grid.nodes.push_back(centre + half * x[i]);
            grid.weights.push_back(half * w[i]);
        }
    }
    return grid;
}

}  // namespace harvest::quadrature
