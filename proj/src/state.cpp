#include "harvest/state.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>
#include <stdexcept>

namespace harvest {

double Matrix4c::hermiticity_defect() const
{
    double worst = 0.0;
    for (int i = 0; i < 4; ++i) {
        for (int j = 0; j < 4; ++j) {
            worst = std::max(worst, std::abs((*this)(i, j) - std::conj((*this)(j, i))));
        }
    }
    return worst;
}

TwoQubitState assemble_rho(const SecondOrderIntegrals& ints)
{
    if (ints.i_plus() >= 1.0) {
        throw std::domain_error("assemble_rho: I_AA + I_BB >= 1, outside the perturbative regime");
    }
    TwoQubitState s;
    Matrix4c& m = s.rho;
    m(0, 0) = 1.0 - ints.i_plus();
    m(1, 1) = ints.i_bb;
    m(2, 2) = ints.i_aa;
    m(1, 2) = ints.i_ab;
    m(2, 1) = std::conj(ints.i_ab);
    m(0, 3) = -std::conj(ints.j);
    m(3, 0) = -ints.j;
    return s;
}

Matrix4c partial_transpose(const Matrix4c& rho)
{
    // index = 2 a + b; swap the B indices of row and column
    Matrix4c out;
    for (int a = 0; a < 2; ++a) {
        for (int b = 0; b < 2; ++b) {
            for (int ap = 0; ap < 2; ++ap) {
                for (int bp = 0; bp < 2; ++bp) {
                    out(2 * a + b, 2 * ap + bp) = rho(2 * a + bp, 2 * ap + b);
                }
            }
        }
    }
    return out;
}

Negativity negativity_closed(const SecondOrderIntegrals& ints)
{
    const double ip = ints.i_plus();
    const double im = ints.i_minus();
    const double raw = -0.5 * (ip - std::sqrt(im * im + 4.0 * std::norm(ints.j)));
    return {raw, std::max(0.0, raw)};
}

NegativitySpectrum negativity_numeric(const Matrix4c& rho_pt)
{
    if (rho_pt.hermiticity_defect() > 1e-12) {
        throw std::invalid_argument("negativity_numeric: input is not Hermitian");
    }
    Eigen::Matrix4cd m;
    for (int i = 0; i < 4; ++i) {
        for (int j = 0; j < 4; ++j) {
            m(i, j) = rho_pt(i, j);
        }
    }
    const Eigen::SelfAdjointEigenSolver<Eigen::Matrix4cd> solver(m);
    NegativitySpectrum out;
    for (int k = 0; k < 4; ++k) {
        const double lam = solver.eigenvalues()(k);
        out.eigenvalues[static_cast<std::size_t>(k)] = lam;
        if (lam >= 0.0) {
            continue;
        }
        const auto v = solver.eigenvectors().col(k);
        const double inner_weight = std::norm(v(1)) + std::norm(v(2));
        if (inner_weight >= 0.5) {
            out.second_order -= lam;
        } else {
            out.higher_order -= lam;
        }
    }
    return out;
}

BellFractions bell_fractions(const TwoQubitState& s)
{
    const Matrix4c& m = s.rho;
    const double outer = 0.5 * (m(0, 0).real() + m(3, 3).real());
    const double inner = 0.5 * (m(1, 1).real() + m(2, 2).real());
    const double c_outer = m(0, 3).real();
    const double c_inner = m(1, 2).real();
    return {outer + c_outer, outer - c_outer, inner + c_inner, inner - c_inner};
}

}  // namespace harvest
