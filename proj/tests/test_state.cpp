#include "harvest/state.hpp"

#include <doctest.h>

#include <random>
#include <stdexcept>

using namespace harvest;

namespace {

SecondOrderIntegrals random_tuple(std::mt19937_64& rng)
{
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::uniform_real_distribution<double> phase(-3.14159, 3.14159);
    SecondOrderIntegrals t;
    const double scale = std::pow(10.0, -1.0 - 4.0 * u(rng));
    t.i_aa = scale * u(rng);
    t.i_bb = scale * u(rng);
    t.i_ab = std::polar(std::sqrt(t.i_aa * t.i_bb) * u(rng), phase(rng));
    t.j = std::polar(2.0 * std::sqrt(t.i_aa * t.i_bb) * u(rng) + scale * 0.3 * u(rng), phase(rng));
    return t;
}

// -sum of negative eigenvalues of [[I_BB, -conj J], [-J, I_AA]], in closed form
// for a 2x2 Hermitian block.
double inner_block_negativity(const SecondOrderIntegrals& t)
{
    const double mean = 0.5 * (t.i_aa + t.i_bb);
    const double half_diff = 0.5 * (t.i_bb - t.i_aa);
    const double radius = std::sqrt(half_diff * half_diff + std::norm(t.j));
    return -(mean - radius);
}

}  // namespace

TEST_CASE("assemble_rho examples")
{
    const TwoQubitState vac = assemble_rho({});
    CHECK(vac.rho(0, 0) == Complex(1.0, 0.0));
    CHECK(vac.rho.trace() == Complex(1.0, 0.0));

    SecondOrderIntegrals t;
    t.i_aa = t.i_bb = 1e-4;
    const TwoQubitState s = assemble_rho(t);
    CHECK(s.rho(0, 0).real() == doctest::Approx(1.0 - 2e-4).epsilon(1e-15));
    CHECK(s.rho(1, 1).real() == 1e-4);
    CHECK(s.rho(2, 2).real() == 1e-4);
    CHECK(s.rho(3, 3) == Complex{});

    t.i_aa = 0.6;
    t.i_bb = 0.5;
    CHECK_THROWS_AS(assemble_rho(t), std::domain_error);
}

TEST_CASE("structural invariants on random tuples")
{
    std::mt19937_64 rng(101);
    for (int i = 0; i < 1000; ++i) {
        const SecondOrderIntegrals t = random_tuple(rng);
        const TwoQubitState s = assemble_rho(t);
        CHECK(std::abs(s.rho.trace() - 1.0) <= 1e-14);
        CHECK(s.rho.hermiticity_defect() <= 1e-14);
        CHECK(partial_transpose(s).hermiticity_defect() <= 1e-14);
        CHECK(s.rho(3, 3) == Complex{});
        const BellFractions b = bell_fractions(s);
        CHECK(std::abs(b.phi_plus + b.phi_minus + b.psi_plus + b.psi_minus - 1.0) <= 1e-12);
    }
}

TEST_CASE("partial transpose")
{
    SecondOrderIntegrals t;
    t.i_aa = 2e-4;
    t.i_bb = 1e-4;
    t.i_ab = {3e-5, -1e-5};
    t.j = {4e-5, 2e-5};
    const TwoQubitState s = assemble_rho(t);
    const Matrix4c pt = partial_transpose(s);
    CHECK(pt(0, 3) == t.i_ab);
    CHECK(pt(3, 0) == std::conj(t.i_ab));
    CHECK(pt(1, 2) == -std::conj(t.j));
    CHECK(pt(2, 1) == -t.j);
    CHECK(pt(0, 0) == s.rho(0, 0));
    CHECK(partial_transpose(pt) == s.rho);

    Matrix4c diag;
    diag(0, 0) = 0.1;
    diag(1, 1) = 0.2;
    diag(2, 2) = 0.3;
    diag(3, 3) = 0.4;
    CHECK(partial_transpose(diag) == diag);
}

TEST_CASE("negativity_closed examples")
{
    SecondOrderIntegrals t;
    t.i_aa = t.i_bb = 1e-4;
    t.j = 3e-4;
    CHECK(negativity_closed(t).raw == doctest::Approx(2e-4).epsilon(1e-13));
    t.j = 0.0;
    t.i_aa = 3e-4;
    const Negativity n = negativity_closed(t);
    CHECK(n.raw <= 0.0);
    CHECK(n.raw == doctest::Approx(-0.5 * (4e-4 - 2e-4)).epsilon(1e-13));
    CHECK(n.clamped == 0.0);
}

TEST_CASE("negativity_numeric examples")
{
    Matrix4c mixed;
    for (int i = 0; i < 4; ++i) {
        mixed(i, i) = 0.25;
    }
    CHECK(negativity_numeric(partial_transpose(mixed)).second_order == 0.0);

    Matrix4c bell;
    bell(0, 0) = bell(0, 3) = bell(3, 0) = bell(3, 3) = 0.5;
    CHECK(negativity_numeric(partial_transpose(bell)).second_order == doctest::Approx(0.5).epsilon(1e-14));

    Matrix4c bad;
    bad(0, 1) = 1.0;
    CHECK_THROWS_AS(negativity_numeric(bad), std::invalid_argument);
}

TEST_CASE("closed form and eigen-solve agree")
{
    std::mt19937_64 rng(202);
    for (int i = 0; i < 1000; ++i) {
        const SecondOrderIntegrals t = random_tuple(rng);
        const Negativity closed = negativity_closed(t);
        CHECK(std::abs(closed.raw - inner_block_negativity(t)) <= 1e-13);
        const NegativitySpectrum num = negativity_numeric(partial_transpose(assemble_rho(t)));
        CHECK(std::abs(closed.clamped - num.second_order) <= 1e-12);
        // |gg>,|ee> sector: [[1 - I+, I_AB], [conj I_AB, 0]]
        const double outer = 1.0 - t.i_plus();
        const double expected = 0.5 * (std::sqrt(outer * outer + 4.0 * std::norm(t.i_ab)) - outer);
        CHECK(std::abs(num.higher_order - expected) <= 1e-15);
        CHECK(num.higher_order <= std::norm(t.i_ab) / outer + 1e-18);
    }
}

TEST_CASE("entanglement iff |J|^2 > I_AA I_BB")
{
    std::mt19937_64 rng(303);
    int entangled = 0;
    for (int i = 0; i < 1000; ++i) {
        const SecondOrderIntegrals t = random_tuple(rng);
        const bool positive = negativity_closed(t).raw > 0.0;
        const bool criterion = std::norm(t.j) > t.i_aa * t.i_bb;
        CHECK(positive == criterion);
        entangled += positive ? 1 : 0;
    }
    CHECK(entangled > 100);
    CHECK(entangled < 900);
}

TEST_CASE("bell fractions")
{
    const BellFractions vac = bell_fractions(assemble_rho({}));
    CHECK(vac.phi_plus == 0.5);
    CHECK(vac.phi_minus == 0.5);
    CHECK(vac.psi_plus == 0.0);
    CHECK(vac.psi_minus == 0.0);

    SecondOrderIntegrals t;
    t.i_aa = t.i_bb = 2e-4;
    t.j = 7e-5;
    const BellFractions b = bell_fractions(assemble_rho(t));
    CHECK(b.psi_plus == doctest::Approx(0.5 * t.i_plus()).epsilon(1e-14));
    CHECK(b.psi_minus == doctest::Approx(0.5 * t.i_plus()).epsilon(1e-14));
    CHECK(b.phi_plus == doctest::Approx(0.5 * (1.0 - t.i_plus()) - 7e-5).epsilon(1e-14));
    CHECK(b.phi_minus == doctest::Approx(0.5 * (1.0 - t.i_plus()) + 7e-5).epsilon(1e-14));
}
