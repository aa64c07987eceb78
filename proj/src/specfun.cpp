#include "harvest/specfun.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace harvest::specfun {

namespace {

constexpr double kTwoOverSqrtPi = 2.0 / 1.77245385090551602729816748334114518;

void require_finite(double v, const char* what)
{
    if (!std::isfinite(v)) {
        throw std::domain_error(std::string(what) + ": non-finite argument");
    }
}

// Region |z| small, where e^{-z^2}(1 + erf(iz)) is summed from the Maclaurin
// series of erf. x, y >= 0.
Complex w_series(double x, double y, double scaled_rho)
{
    const double xquad = x * x - y * y;
    const double yquad = 2.0 * x * y;

    const double rho = (1.0 - 0.85 * (y / 4.4)) * std::sqrt(scaled_rho);
    const int n = static_cast<int>(std::lround(6.0 + 72.0 * rho)) + 4;
    int j = 2 * n + 1;
    double sx = 1.0 / j;
    double sy = 0.0;
    for (int i = n; i >= 1; --i) {
        j -= 2;
        const double tmp = (sx * xquad - sy * yquad) / i;
        sy = (sx * yquad + sy * xquad) / i;
        sx = tmp + 1.0 / j;
    }
    const double u1 = 1.0 - kTwoOverSqrtPi * (sx * y + sy * x);
    const double v1 = kTwoOverSqrtPi * (sx * x - sy * y);
    const double damp = std::exp(-xquad);
    const double u2 = damp * std::cos(yquad);
    const double v2 = -damp * std::sin(yquad);
    return {u1 * u2 - v1 * v2, u1 * v2 + v1 * u2};
}

// Gautschi's continued fraction with a Taylor shift h near the origin.
// x, y >= 0.
Complex w_continued_fraction(double x, double y, double scaled_rho)
{
    double h = 0.0;
    int kapn = 0;
    int nu = 0;
    if (scaled_rho > 1.0) {
        const double rho = std::sqrt(scaled_rho);
        nu = static_cast<int>(3.0 + 1442.0 / (26.0 * rho + 77.0));
    } else {
        const double rho = (1.0 - y / 4.4) * std::sqrt(1.0 - scaled_rho);
        h = 1.88 * rho;
        kapn = static_cast<int>(std::lround(7.0 + 34.0 * rho));
        nu = static_cast<int>(std::lround(16.0 + 26.0 * rho));
    }
    const bool shifted = h > 0.0;
    const double h2 = 2.0 * h;
    double lambda = shifted ? std::pow(h2, kapn) : 0.0;

    double rx = 0.0, ry = 0.0, sx = 0.0, sy = 0.0;
    for (int n = nu; n >= 0; --n) {
        const int np1 = n + 1;
        double tx = y + h + np1 * rx;
        double ty = x - np1 * ry;
        const double c = 0.5 / (tx * tx + ty * ty);
        rx = c * tx;
        ry = c * ty;
        if (shifted && n <= kapn) {
            tx = lambda + sx;
            sx = rx * tx - ry * sy;
            sy = ry * tx + rx * sy;
            lambda /= h2;
        }
    }
    if (shifted) {
        return {kTwoOverSqrtPi * sx, kTwoOverSqrtPi * sy};
    }
    return {kTwoOverSqrtPi * rx, kTwoOverSqrtPi * ry};
}

// Maclaurin series of Erfi(z) = 2/sqrt(pi) sum z^{2k+1} / (k! (2k+1)).
Complex erfi_series(Complex z)
{
    const Complex z2 = z * z;
    Complex term = z;
    Complex sum = z;
    for (int k = 1; k < 60; ++k) {
        term *= z2 / static_cast<double>(k);
        const Complex add = term / static_cast<double>(2 * k + 1);
        sum += add;
        if (std::abs(add) < 1e-18 * std::abs(sum)) {
            break;
        }
    }
    return kTwoOverSqrtPi * sum;
}

}  // namespace

double sinc(double x)
{
    require_finite(x, "sinc");
    const double ax = std::abs(x);
    if (ax < 1e-2) {
        const double x2 = x * x;
        return 1.0 - x2 / 6.0 * (1.0 - x2 / 20.0 * (1.0 - x2 / 42.0));
    }
    return std::sin(x) / x;
}

Complex ediff(double a, double b, double mu)
{
    require_finite(a, "ediff");
    require_finite(b, "ediff");
    require_finite(mu, "ediff");
    if (a > b) {
        throw std::invalid_argument("ediff: requires a <= b");
    }
    const double half_width = 0.5 * (b - a);
    const double phase = mu * 0.5 * (a + b);
    const double mag = (b - a) * sinc(mu * half_width);
    return Complex(-mag * std::sin(phase), mag * std::cos(phase));
}

Complex phase_integral(double a, double b, double mu)
{
    const Complex d = ediff(a, b, mu);
    return {d.imag(), -d.real()};
}

Complex faddeeva_w(Complex z)
{
    const double x = z.real();
    const double y = z.imag();
    require_finite(x, "faddeeva_w");
    require_finite(y, "faddeeva_w");
    if (y < 0.0) {
        throw std::domain_error("faddeeva_w: Im z must be >= 0");
    }
    const double ax = std::abs(x);
    const double xs = ax / 6.3;
    const double ys = y / 4.4;
    const double scaled_rho = xs * xs + ys * ys;

    Complex w = scaled_rho < 0.085264 ? w_series(ax, y, scaled_rho)
                                      : w_continued_fraction(ax, y, scaled_rho);
    if (y == 0.0) {
        w.real(std::exp(-ax * ax));
    }
    // w(-conj(z)) = conj(w(z))
    if (x < 0.0) {
        w.imag(-w.imag());
    }
    return w;
}

double damped_im_erfi(double x, double y)
{
    require_finite(x, "damped_im_erfi");
    require_finite(y, "damped_im_erfi");
    if (x < 0.0 || y < 0.0) {
        throw std::domain_error("damped_im_erfi: arguments must be >= 0");
    }
    if (y == 0.0) {
        return 0.0;
    }
    const Complex z(x, y);
    if (std::abs(z) < 1.0) {
        return std::exp(-x * x) * erfi_series(z).imag();
    }
    const Complex w = faddeeva_w(z);
    const double phase = 2.0 * x * y;
    const Complex rot(std::cos(phase), std::sin(phase));
    return -std::exp(-y * y) * (rot * w).real() + std::exp(-x * x);
}

}  // namespace harvest::specfun
