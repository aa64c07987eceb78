#pragma once

#include <complex>

namespace harvest {

using Complex = std::complex<double>;

namespace specfun {

/// Unnormalized cardinal sine, sin(x)/x, with sinc(0) = 1.
///
/// Note the convention: this is NOT the normalized sin(pi x)/(pi x) used by
/// numpy. With it the rectangle function has the transform
/// int rect(t) e^{-i w t} dt = sinc(w/2).
double sinc(double x);

/// (e^{i mu b} - e^{i mu a}) / mu, evaluated as
/// i (b - a) e^{i mu (a+b)/2} sinc(mu (b-a)/2) so it stays regular at mu = 0.
/// Requires a <= b.
Complex ediff(double a, double b, double mu);

/// int_a^b e^{i mu t} dt. Same regularization as ediff (it is -i * ediff).
Complex phase_integral(double a, double b, double mu);

/// Faddeeva function w(z) = e^{-z^2} erfc(-i z) on the closed upper
/// half-plane. Throws std::domain_error for Im z < 0 or non-finite input.
Complex faddeeva_w(Complex z);

/// e^{-x^2} Im Erfi(x + i y) for x, y >= 0, without overflow for large x.
///
/// Uses e^{-x^2} Erfi(x+iy) = -i w(x+iy) e^{-y^2} e^{2ixy} + i e^{-x^2}, and the
/// Maclaurin series of Erfi near the origin where the two terms cancel.
double damped_im_erfi(double x, double y);

}  // namespace specfun
}  // namespace harvest
