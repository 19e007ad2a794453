#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "lightshift/hilbert.hpp"

using namespace lightshift;
using numerics::commutator;
using numerics::max_abs;
using numerics::max_abs_diff;

namespace {

SpacePtr make(int n_max, int atoms, int levels, Representation rep, int modes = 1)
{
    return build_space({n_max, modes, atoms, levels, rep});
}

const Level kAll[] = {Level::Zero, Level::One, Level::Two, Level::Plus, Level::Minus};

} // namespace

TEST_CASE("dimensions")
{
    CHECK(make(4, 2, 3, Representation::Product)->dim() == 45);
    CHECK(make(4, 2, 3, Representation::Symmetric)->dim() == 30);
    CHECK(make(0, 1, 2, Representation::Product)->dim() == 2);
    CHECK(make(1, 3, 2, Representation::Product, 2)->dim() == 32);
    CHECK(Space::dimension_of({2, 1, 20, 3, Representation::Product}) == doctest::Approx(3.0 * std::pow(3.0, 20)));
}

TEST_CASE("dimension guard reports the computed dimension")
{
    try {
        make(2, 20, 3, Representation::Product);
        FAIL("expected GuardError");
    } catch (const GuardError& e) {
        CHECK(std::string(e.what()).find("10460353203") != std::string::npos);
    }
    CHECK_THROWS_AS(make(-1, 1, 2, Representation::Product), ValidationError);
    CHECK_THROWS_AS(make(1, 0, 2, Representation::Product), ValidationError);
    CHECK_THROWS_AS(make(1, 1, 4, Representation::Product), ValidationError);
}

TEST_CASE("basis enumeration is photon-major and labelled")
{
    const auto p = make(2, 2, 2, Representation::Product);
    CHECK(p->label(0) == "n=0;atoms=00");
    CHECK(p->label(1) == "n=0;atoms=01");
    CHECK(p->label(4) == "n=1;atoms=00");
    CHECK(p->photons_of(9) == std::vector<int>{2});
    const auto s = make(2, 2, 3, Representation::Symmetric);
    CHECK(s->label(0) == "n=0;occ=(2,0,0)");
    CHECK(s->label(6) == "n=1;occ=(2,0,0)");
    const auto two = make(1, 1, 2, Representation::Product, 2);
    CHECK(two->label(2) == "n=(0,1);atoms=0");
    CHECK(two->label(4) == "n=(1,0);atoms=0");
}

TEST_CASE("annihilation and creation")
{
    const auto sp = make(3, 1, 2, Representation::Product);
    const Operator a = annihilation(sp, 0);
    const ComplexVector n2 = basis_state(*sp, {{2}, std::vector<Level>{Level::Zero}});
    const ComplexVector n1 = basis_state(*sp, {{1}, std::vector<Level>{Level::Zero}});
    CHECK((a.matrix * n2 - std::sqrt(2.0) * n1).norm() < 1e-15);
    const ComplexVector n0 = basis_state(*sp, {{0}, std::vector<Level>{Level::Zero}});
    CHECK((a.matrix * n0).norm() == 0.0);
    CHECK(max_abs_diff(creation(sp, 0).matrix, a.matrix.adjoint()) == 0.0);
    CHECK_THROWS_AS(annihilation(sp, 1), ValidationError);

    const ComplexMatrix c = commutator(a.matrix, creation(sp, 0).matrix);
    for (std::size_t i = 0; i < sp->dim(); ++i)
        if (sp->photons_of(i)[0] < sp->n_max())
            CHECK(std::abs(c(i, i) - 1.0) < 1e-15);
    const ComplexMatrix num = number(sp, 0).matrix;
    CHECK(max_abs(num - ComplexMatrix(num.diagonal().asDiagonal())) == 0.0);
    for (std::size_t i = 0; i < sp->dim(); ++i)
        CHECK(num(i, i).real() == sp->photons_of(i)[0]);
}

TEST_CASE("collective examples")
{
    const auto p2 = make(0, 2, 2, Representation::Product);
    const ComplexVector mm = basis_state(*p2, {{0}, std::vector<Level>{Level::Minus, Level::Minus}});
    const ComplexVector pm = basis_state(*p2, {{0}, std::vector<Level>{Level::Plus, Level::Minus}});
    const ComplexVector mp = basis_state(*p2, {{0}, std::vector<Level>{Level::Minus, Level::Plus}});
    CHECK((collective(p2, Level::Plus, Level::Minus).matrix * mm - pm - mp).norm() < 1e-14);

    const auto p1 = make(0, 1, 2, Representation::Product);
    const ComplexVector m = basis_state(*p1, {{0}, std::vector<Level>{Level::Minus}});
    CHECK((s3(p1).matrix * m + m).norm() < 1e-15);
    CHECK(std::abs(m(0) - 1.0 / std::sqrt(2.0)) < 1e-15);
    CHECK(std::abs(m(1) + 1.0 / std::sqrt(2.0)) < 1e-15);
}

TEST_CASE("N=2 symmetric |--> occupation amplitudes")
{
    const auto s = make(0, 2, 2, Representation::Symmetric);
    const ComplexVector v = basis_state(*s, {{0}, std::vector<Level>{Level::Minus, Level::Minus}});
    CHECK(std::abs(v(0) - 0.5) < 1e-15);
    CHECK(std::abs(v(1) + 1.0 / std::sqrt(2.0)) < 1e-15);
    CHECK(std::abs(v(2) - 0.5) < 1e-15);
    const ComplexVector occ = basis_state(*s, {{0}, std::vector<int>{1, 1}});
    CHECK(std::abs(occ(1) - 1.0) < 1e-15);
    CHECK_THROWS_AS(basis_state(*s, {{0}, std::vector<int>{1, 2}}), ValidationError);
    CHECK_THROWS_AS(basis_state(*s, {{1}, std::vector<int>{2, 0}}), ValidationError);
}

TEST_CASE("first basis vector")
{
    const auto p = make(2, 3, 3, Representation::Product);
    const ComplexVector v = basis_state(*p, {{0}, std::vector<Level>(3, Level::Zero)});
    CHECK(std::abs(v(0) - 1.0) == 0.0);
    CHECK(std::abs(v.norm() - 1.0) < 1e-15);
}

TEST_CASE("property: su(2) relations and adjoints for N <= 4 in both representations")
{
    for (auto rep : {Representation::Product, Representation::Symmetric})
        for (int levels : {2, 3})
            for (int n = 1; n <= 4; ++n) {
                const auto sp = make(1, n, levels, rep);
                const ComplexMatrix spm = collective(sp, Level::Plus, Level::Minus).matrix;
                const ComplexMatrix smp = collective(sp, Level::Minus, Level::Plus).matrix;
                const ComplexMatrix z = s3(sp).matrix;
                CHECK(max_abs(commutator(spm, smp) - z) <= 1e-12);
                CHECK(max_abs(commutator(z, spm) - 2.0 * spm) <= 1e-12);
                CHECK(max_abs(commutator(z, smp) + 2.0 * smp) <= 1e-12);
                CHECK(max_abs_diff(spm.adjoint(), smp) == 0.0);
            }
}

TEST_CASE("property: symmetric operators equal the product operators on the Dicke sector")
{
    for (int levels : {2, 3})
        for (int n = 1; n <= 3; ++n) {
            const auto p = make(1, n, levels, Representation::Product);
            const auto s = make(1, n, levels, Representation::Symmetric);
            const ComplexMatrix b = symmetric_embedding(*s, *p);
            CHECK(max_abs(b.adjoint() * b - ComplexMatrix::Identity(s->dim(), s->dim())) < 1e-14);
            for (Level x : kAll)
                for (Level y : kAll) {
                    if ((levels == 2) && (x == Level::Two || y == Level::Two))
                        continue;
                    const ComplexMatrix op = collective(p, x, y).matrix;
                    CHECK(max_abs(b.adjoint() * op * b - collective(s, x, y).matrix) < 1e-13);
                    // The product operator keeps the symmetric sector invariant.
                    CHECK(max_abs(op * b - b * (b.adjoint() * op * b)) < 1e-13);
                }
            CHECK(max_abs(b.adjoint() * number(p, 0).matrix * b - number(s, 0).matrix) < 1e-14);
        }
}

TEST_CASE("operator arithmetic checks the space")
{
    const auto a = make(1, 1, 2, Representation::Product);
    const auto b = make(2, 1, 2, Representation::Product);
    CHECK_THROWS_AS(number(a, 0) + number(b, 0), ValidationError);
    CHECK_NOTHROW(number(a, 0) + identity(a));
}

TEST_CASE("photon sector projector")
{
    const auto sp = make(2, 1, 2, Representation::Product, 2);
    const ComplexMatrix p = photon_sector_projector(*sp, {1, 2});
    CHECK(std::abs(p.trace() - 2.0) < 1e-15);
    CHECK(max_abs(p * p - p) == 0.0);
}

TEST_CASE("level parsing")
{
    CHECK(parse_level('+') == Level::Plus);
    CHECK(level_char(Level::Two) == '2');
    CHECK_THROWS_AS(parse_level('x'), ValidationError);
    CHECK(default_representation(3) == Representation::Product);
    CHECK(default_representation(4) == Representation::Symmetric);
}
