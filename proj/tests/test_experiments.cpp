#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "lightshift/experiments.hpp"
#include "lightshift/report.hpp"

using namespace lightshift;

namespace {

constexpr double g = kDefaultG;

ScenarioOptions options(VMode mode = VMode::Physical, std::size_t grid = 256)
{
    ScenarioOptions o;
    o.mode = mode;
    o.grid_points = grid;
    return o;
}

const BranchSeries& find(const ScenarioResult& r, int n_atoms, int photons)
{
    for (const auto& b : r.branches)
        if (b.n_atoms == n_atoms && b.photons == photons)
            return b;
    throw std::runtime_error("branch missing");
}

} // namespace

TEST_CASE("overrides")
{
    const SchemeParams p = apply_overrides(fig3b_params(1), {{"g", 2 * g}, {"n_atoms", 3}});
    CHECK(p.g == 2 * g);
    CHECK(p.n_atoms == 3);
    CHECK_THROWS_AS(apply_overrides(fig3b_params(1), {{"bogus", 1.0}}), ValidationError);
    CHECK_THROWS_AS(apply_overrides(fig3b_params(1), {{"n_atoms", 1.5}}), ValidationError);
}

TEST_CASE("vacuum control")
{
    const SchemeParams p = derive_params(fig3b_params(1));
    const BranchSeries b = run_branch(p, 0, options());
    for (double x : b.X)
        CHECK(std::abs(x - 1.0) <= 1e-6);
    CHECK(b.t.front() == 0.0);
    CHECK(b.t.back() == doctest::Approx(2 * M_PI / b.kappa).epsilon(1e-14));
}

TEST_CASE("ideal mode without leakage is the pure Kerr law")
{
    const SchemeParams p = derive_params(fig3b_params(1));
    const auto sp = build_space({2, 1, 1, 2, Representation::Product});
    const VSequence v(sp, p, {VMode::Ideal, Tier::Eliminated, true});
    for (int n : {1, 2}) {
        const ComplexVector s = uniform_state(*sp, {n}, Level::Minus);
        for (int k = 0; k <= 64; ++k) {
            const double t = k * (2 * M_PI / p.kappa) / 64;
            const Complex a = s.dot(v.apply(t, s)) * std::exp(Complex(0, -*p.theta / 2 * t));
            CHECK(std::abs(a.real() - std::cos(p.kappa * n * n * t)) <= 1e-10);
            CHECK(std::abs(std::abs(a) - 1.0) <= 1e-10);
        }
    }
}

TEST_CASE("fig3b physical")
{
    const ScenarioResult r = run_fig3b({}, options(VMode::Physical, 512));
    REQUIRE(r.branches.size() == 4);
    for (const auto& b : r.branches) {
        // V(0) is the realization followed by its inverse, not the identity.
        CHECK(std::abs(b.Y.front() - 1.0) <= 1e-4);
        CHECK(b.kappa == doctest::Approx(2.5e5 * b.n_atoms).epsilon(1e-12));
        for (std::size_t k = 0; k < b.t.size(); ++k) {
            CHECK(b.X[k] <= 1.0 + 1e-8);
            CHECK(std::abs(b.Y[k]) <= 1.0 + 1e-8);
        }
        CHECK(b.max_plus_population <= 0.05);
        CHECK(b.max_unitarity_defect <= 1e-8);
        REQUIRE(b.frame_calibration);
        CHECK(b.frame_calibration->within_tolerance);
        CHECK(b.frame_calibration->interior);
    }
    CHECK(find(r, 1, 1).max_abs_error <= 0.15);
    CHECK(find(r, 2, 1).max_abs_error <= 0.15);
    CHECK(find(r, 1, 1).frame_calibration->r_lin == doctest::Approx(5e6).epsilon(0.01));
    const double r1 = find(r, 1, 1).frame_calibration->r_lin, r2 = find(r, 2, 1).frame_calibration->r_lin;
    CHECK(r2 / r1 == doctest::Approx(2.0).epsilon(0.1));

    const BranchSeries& b1 = find(r, 1, 1);
    const BranchSeries& b2 = find(r, 1, 2);
    const double ratio = dominant_frequency(b2.t, b2.Y) / dominant_frequency(b1.t, b1.Y);
    CHECK(ratio >= 3.8);
    CHECK(ratio <= 4.2);
}

TEST_CASE("frame calibration in ideal mode recovers the analytic rate")
{
    const SchemeParams p = derive_params(fig3b_params(1));
    ScenarioOptions o = options(VMode::Ideal);
    const FrameCalibration f = calibrate_frame(p, o);
    // No linear term in the generator: the rate absorbs the exact n = 1 dressed-energy correction.
    const double a = linear_photon_rates(p)[0], th = *p.theta;
    const double exact = std::sqrt(th * th / 4 + a * a) - th / 2 - a * a / th;
    CHECK(f.r_lin == doctest::Approx(-exact).epsilon(1e-4));
    CHECK(f.max_deviation <= 1e-6);
}

TEST_CASE("fig3a")
{
    const ScenarioResult r = run_fig3a({}, options(VMode::Physical, 256));
    REQUIRE(r.branches.size() == 2);
    for (const auto& b : r.branches) {
        CHECK(b.photons == 2);
        CHECK(b.min_X >= 0.9);
        REQUIRE(b.max_ideal_deviation);
        CHECK(*b.max_ideal_deviation <= 0.1);
    }
}

TEST_CASE("dominant frequency")
{
    std::vector<double> t, y;
    for (int k = 0; k < 400; ++k) {
        t.push_back(k * 1e-3);
        y.push_back(0.3 + std::cos(37.0 * t.back() + 0.4));
    }
    CHECK(dominant_frequency(t, y) == doctest::Approx(37.0).epsilon(1e-6));
}

TEST_CASE("sweeps")
{
    const ScenarioFn fn = [](const ParamOverrides& o) {
        return run_fig3b(o, options(VMode::Physical, 256), {{1, 1}});
    };
    CHECK(sweep("theta", {}, fn).empty());

    const auto pts = sweep("theta", {g, 2 * g}, fn, {}, 2);
    REQUIRE(pts.size() == 2);
    REQUIRE(pts[0].result);
    REQUIRE(pts[1].result);
    const BranchSeries& a = pts[0].result->branches.front();
    const BranchSeries& b = pts[1].result->branches.front();
    CHECK(b.kappa == doctest::Approx(a.kappa / 2).epsilon(1e-12));
    // Both runs span one Kerr period; compare absolute frequencies.
    CHECK(dominant_frequency(b.t, b.Y) / dominant_frequency(a.t, a.Y) == doctest::Approx(0.5).epsilon(0.05));

    const auto bad = sweep("n_atoms", {1, 0}, fn);
    REQUIRE(bad.size() == 2);
    CHECK(bad[0].result.has_value());
    CHECK_FALSE(bad[1].result.has_value());
    CHECK_FALSE(bad[1].error.empty());

    const ScenarioFn full = [](const ParamOverrides& o) { return run_fig3b(o, options(VMode::Physical, 256)); };
    const auto ns = sweep("n_atoms", {1, 2}, full, {}, 2);
    REQUIRE(ns.size() == 2);
    const ScenarioResult whole = run_fig3b({}, options(VMode::Physical, 256));
    for (int i = 0; i < 2; ++i) {
        REQUIRE(ns[i].result);
        REQUIRE(ns[i].result->branches.size() == 2);
        for (const auto& b : ns[i].result->branches) {
            CHECK(b.n_atoms == i + 1);
            CHECK(b.Y == find(whole, b.n_atoms, b.photons).Y);
        }
    }
}

TEST_CASE("determinism")
{
    const auto a = to_json(run_fig3b({}, options(VMode::Physical, 128))).dump();
    const auto b = to_json(run_fig3b({}, options(VMode::Physical, 128))).dump();
    CHECK(a == b);
}

TEST_CASE("accuracy improves when the small parameters shrink")
{
    // Delta_1 -> 2 Delta_1 halves dispersive_cavity and second_dispersive.
    for (int n : {1, 2}) {
        const ScenarioResult base = run_fig3b({}, options(VMode::Physical, 256), {{1, n}});
        const ScenarioResult small = run_fig3b({{"delta1", 20 * g}}, options(VMode::Physical, 256), {{1, n}});
        CHECK(small.branches.front().max_abs_error < base.branches.front().max_abs_error);
    }
}

TEST_CASE("full tier agrees with the eliminated tier")
{
    ScenarioOptions full = options(VMode::Physical, 128);
    full.tier = Tier::Full;
    const ScenarioResult a = run_fig3b({}, full, {{1, 1}});
    const ScenarioResult b = run_fig3b({}, options(VMode::Physical, 128), {{1, 1}});
    const BranchSeries& fa = a.branches.front();
    const BranchSeries& fb = b.branches.front();
    double worst = 0.0;
    for (std::size_t k = 0; k < fa.X.size(); ++k)
        worst = std::max(worst, std::abs(fa.X[k] - fb.X[k]));
    MESSAGE("full vs eliminated max |X| difference " << worst << ", full max |Y - cos| " << fa.max_abs_error);
    CHECK(worst <= 0.05);
}

TEST_CASE("cross-Kerr")
{
    const ScenarioResult pol = run_cross_kerr(Scheme::CrossPolarization, {}, options(VMode::Physical, 128));
    REQUIRE(pol.cross);
    CHECK(pol.cross->nu_effective == doctest::Approx(5e5).epsilon(1e-12));
    CHECK(pol.cross->nu_hat == doctest::Approx(5e5).epsilon(0.15));

    const ScenarioResult tor = run_cross_kerr(Scheme::CrossToroidal, {{"delta", 0.0}}, options(VMode::Physical, 128));
    REQUIRE(tor.cross);
    CHECK(tor.cross->nu_hat == doctest::Approx(tor.cross->nu_effective).epsilon(0.15));

    const ScenarioResult off = run_cross_kerr(Scheme::CrossPolarization, {{"g_b", 0.0}}, options(VMode::Physical, 128));
    REQUIRE(off.cross);
    CHECK(std::abs(off.cross->nu_hat) <= 1e-3 * pol.cross->nu_hat);
}
