#pragma once

#include "harvest/integrals.hpp"

#include <array>

namespace harvest {

/// Dense 4x4 complex matrix, row-major, in the two-qubit basis
/// {|gg>, |ge>, |eg>, |ee>} (first label: detector A).
class Matrix4c {
public:
    Complex& operator()(int row, int col) { return m_[static_cast<std::size_t>(4 * row + col)]; }
    const Complex& operator()(int row, int col) const { return m_[static_cast<std::size_t>(4 * row + col)]; }

    Complex trace() const { return m_[0] + m_[5] + m_[10] + m_[15]; }
    /// max |m(i,j) - conj(m(j,i))|
    double hermiticity_defect() const;

    bool operator==(const Matrix4c&) const = default;

private:
    std::array<Complex, 16> m_{};
};

/// Detector density matrix to second order in the couplings.
struct TwoQubitState {
    Matrix4c rho;
};

/// diag(1 - I+, I_BB, I_AA, 0), <ge|rho|eg> = I_AB, <gg|rho|ee> = -conj(J).
/// Throws std::domain_error when I+ >= 1 (outside the perturbative regime).
TwoQubitState assemble_rho(const SecondOrderIntegrals& ints);

/// Transpose on the second qubit (detector B).
Matrix4c partial_transpose(const Matrix4c& rho);
inline Matrix4c partial_transpose(const TwoQubitState& s) { return partial_transpose(s.rho); }

struct Negativity {
    double raw = 0.0;      ///< may be negative (separable)
    double clamped = 0.0;  ///< max(0, raw)
};

/// -1/2 [I+ - sqrt((I-)^2 + 4 |J|^2)], the only eigenvalue of the partial
/// transpose that can go negative at second order.
Negativity negativity_closed(const SecondOrderIntegrals& ints);

struct NegativitySpectrum {
    /// -sum of negative eigenvalues whose eigenvectors live in the
    /// {|ge>, |eg>} sector; the second-order negativity.
    double second_order = 0.0;
    /// Same for the {|gg>, |ee>} sector. O(lambda^4) for harvested states;
    /// reported as a diagnostic only.
    double higher_order = 0.0;
    std::array<double, 4> eigenvalues{};
};

/// Direct Hermitian eigen-solve of a partially transposed state.
/// Throws std::invalid_argument when the input is not Hermitian (1e-12).
NegativitySpectrum negativity_numeric(const Matrix4c& rho_pt);

struct BellFractions {
    double phi_plus = 0.0;
    double phi_minus = 0.0;
    double psi_plus = 0.0;
    double psi_minus = 0.0;
};

/// <Phi+-|rho|Phi+->, <Psi+-|rho|Psi+-> read off the matrix.
BellFractions bell_fractions(const TwoQubitState& s);

}  // namespace harvest
