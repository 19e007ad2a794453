#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "lightshift/numerics.hpp"

using namespace lightshift;
using namespace lightshift::numerics;

namespace {

ComplexMatrix random_hermitian(std::mt19937_64& rng, int dim)
{
    std::normal_distribution<double> n(0.0, 1.0);
    ComplexMatrix a(dim, dim);
    for (int i = 0; i < dim; ++i)
        for (int j = 0; j < dim; ++j)
            a(i, j) = Complex(n(rng), n(rng));
    return (a + a.adjoint()) / 2.0;
}

ComplexMatrix pauli_x()
{
    ComplexMatrix x(2, 2);
    x << 0, 1, 1, 0;
    return x;
}

} // namespace

TEST_CASE("expm_hermitian of the zero generator is the identity")
{
    for (int dim : {1, 3, 7}) {
        const ComplexMatrix u = expm_hermitian(ComplexMatrix::Zero(dim, dim), 4.2);
        CHECK(max_abs_diff(u, ComplexMatrix::Identity(dim, dim)) == 0.0);
    }
}

TEST_CASE("expm_hermitian of sigma_x at pi/2 is -i sigma_x")
{
    const ComplexMatrix u = expm_hermitian(pauli_x(), M_PI / 2.0);
    CHECK(max_abs_diff(u, Complex(0, -1) * pauli_x()) < 1e-14);
}

TEST_CASE("expm_hermitian of a diagonal generator")
{
    const double w = 3.7, t = 0.9;
    ComplexMatrix h = ComplexMatrix::Zero(2, 2);
    h(1, 1) = w;
    const ComplexMatrix u = expm_hermitian(h, t);
    CHECK(std::abs(u(0, 0) - 1.0) < 1e-15);
    CHECK(std::abs(u(1, 1) - std::exp(Complex(0, -w * t))) < 1e-14);
    CHECK(std::abs(u(0, 1)) < 1e-15);
}

TEST_CASE("non-Hermitian input is rejected with its defect")
{
    ComplexMatrix h = pauli_x();
    h(0, 1) = 1.5;
    try {
        expm_hermitian(h, 1.0);
        FAIL("expected NumericsError");
    } catch (const NumericsError& e) {
        CHECK(std::string(e.what()).find("0.5") != std::string::npos);
    }
}

TEST_CASE("expm_antihermitian rotation in the +/- basis")
{
    // A = mu(|+><-| - |-><+|) written in the |+>, |-> basis.
    ComplexMatrix a(2, 2);
    a << 0, 0.1, -0.1, 0;
    const ComplexMatrix u = expm_antihermitian(a);
    CHECK(std::abs(u(1, 1) - std::cos(0.1)) < 1e-14);
    CHECK(std::abs(u(0, 1) - std::sin(0.1)) < 1e-14);
    CHECK(std::abs(u(1, 1).real() - 0.99500) < 5e-6);
    CHECK(std::abs(u(0, 1).real() - 0.09983) < 5e-6);
    CHECK(unitarity_defect(u) < 1e-10);
    CHECK(max_abs_diff(expm_antihermitian(ComplexMatrix::Zero(3, 3)), ComplexMatrix::Identity(3, 3)) == 0.0);
    CHECK_THROWS_AS(expm_antihermitian(pauli_x()), NumericsError);
}

TEST_CASE("unitarity_defect")
{
    CHECK(unitarity_defect(ComplexMatrix::Identity(4, 4)) == 0.0);
    ComplexMatrix d = ComplexMatrix::Identity(2, 2);
    d(1, 1) = std::exp(Complex(0, 1.234));
    CHECK(unitarity_defect(d) < 1e-15);
    d = ComplexMatrix::Identity(2, 2);
    d(0, 0) = 1.01;
    CHECK(unitarity_defect(d) == doctest::Approx(0.0201).epsilon(1e-12));
}

TEST_CASE("property: group law, inverse and unit-circle spectrum for random Hermitian generators")
{
    std::mt19937_64 rng(20240611);
    std::uniform_int_distribution<int> dim_d(1, 64);
    std::uniform_real_distribution<double> t_d(-3.0, 3.0);
    for (int trial = 0; trial < 25; ++trial) {
        const int dim = dim_d(rng);
        const ComplexMatrix h = random_hermitian(rng, dim);
        const double t1 = t_d(rng), t2 = t_d(rng);
        const ComplexMatrix u1 = expm_hermitian(h, t1), u2 = expm_hermitian(h, t2);
        CHECK(max_abs_diff(expm_hermitian(h, t1 + t2), u1 * u2) <= 1e-9);
        CHECK(max_abs_diff(u1 * expm_hermitian(h, -t1), ComplexMatrix::Identity(dim, dim)) <= 1e-9);
        CHECK(unitarity_defect(u1) <= 1e-10);
        const Eigen::ComplexEigenSolver<ComplexMatrix> es(u1);
        for (Eigen::Index k = 0; k < dim; ++k)
            CHECK(std::abs(std::abs(es.eigenvalues()(k)) - 1.0) <= 1e-9);
    }
}

TEST_CASE("SpectralPropagator reuses one decomposition")
{
    std::mt19937_64 rng(7);
    const ComplexMatrix h = random_hermitian(rng, 12);
    const SpectralPropagator sp(h);
    ComplexVector v = ComplexVector::Zero(12);
    v(3) = 1.0;
    for (double t : {0.0, 0.3, -1.7, 25.0}) {
        CHECK(max_abs_diff(sp.at(t), expm_hermitian(h, t)) < 1e-11);
        CHECK((sp.apply(t, v) - expm_hermitian(h, t) * v).cwiseAbs().maxCoeff() < 1e-11);
    }
}

TEST_CASE("kron puts the first factor on the slow index")
{
    ComplexMatrix a(2, 2), b(2, 2);
    a << 1, 2, 3, 4;
    b << 0, 1, 1, 0;
    const ComplexMatrix k = kron(a, b);
    CHECK(k(0, 1) == Complex(1));
    CHECK(k(2, 3) == Complex(4));
    CHECK(k(1, 2) == Complex(2));
    CHECK(max_abs(commutator(a, a)) == 0.0);
}
