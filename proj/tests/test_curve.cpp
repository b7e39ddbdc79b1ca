#include <doctest.h>

#include <cmath>
#include <numbers>

#include "perm/curve.hpp"
#include "perm/errors.hpp"
#include "perm/rng.hpp"

using namespace perm;

namespace {
constexpr double kPi = std::numbers::pi;
}

TEST_CASE("family geometry at epsilon = 0.05") {
    const double eps = 0.05;
    const CurveFamily fam = build_family(eps);

    CHECK(fam.m_real() == doctest::Approx(32.0 / std::pow(eps, 5)));
    // |eps*M| + 1 curves; M = 1.024e7 here
    CHECK(fam.size() == 512001);
    CHECK(fam.width() == doctest::Approx(kPi * std::pow(eps, 6)));

    for (long long j : {fam.j_min(), fam.j_min() + fam.size() / 2, fam.j_max()}) {
        const PiecewiseCurve c = fam.curve(j);
        REQUIRE(c.vertices.size() == 3);
        CHECK(c.vertices[0] == Complex{0, 0});
        CHECK(c.vertices[1].real() == doctest::Approx(2 * eps));
        CHECK(c.vertices[1].imag() >= 2 * eps - 1e-12);
        const double b = c.vertices[2].real();
        CHECK(c.vertices[2].imag() == 0.0);
        CHECK(b >= 1 / eps - 1e-12);
        CHECK(b <= 1 / eps + 2 * eps + 1e-12);
        CHECK(c.total_length() <= 2 / eps);
        // containment: entire curve inside B_{2/eps + w}
        for (const Complex& v : c.vertices) CHECK(std::abs(v) <= 2 / eps + c.width);
    }

    CHECK_THROWS_AS(build_family(0.0), EpsilonOutOfRange);
    CHECK_THROWS_AS(build_family(0.6), EpsilonOutOfRange);
    CHECK_THROWS_AS(build_family(-0.1), EpsilonOutOfRange);
    CHECK_THROWS_AS(fam.curve(fam.j_max() + 1), InvalidArgument);
}

TEST_CASE("family stays sane at the spec's large epsilons") {
    for (const double eps : {0.3, 0.35}) {
        const CurveFamily fam = build_family(eps);
        REQUIRE(fam.size() >= 1);
        for (long long j : {fam.j_min(), fam.j_min() + fam.size() / 2, fam.j_max()}) {
            const PiecewiseCurve c = fam.curve(j);
            CHECK(c.total_length() <= 2 / eps + 1e-9);
            const double b = c.vertices[2].real();
            CHECK(b >= 1 / eps - 1e-12);
            CHECK(b <= 1 / eps + 2 * eps + 1e-12);
        }
    }
}

TEST_CASE("discretize") {
    SUBCASE("single segment [0,1] with max_step 0.3 gives 4 steps of 0.25") {
        PiecewiseCurve c;
        c.vertices = {Complex{0, 0}, Complex{1, 0}};
        const StepPlan plan = discretize(c, 0.3);
        REQUIRE(plan.deltas.size() == 4);
        for (const Complex& d : plan.deltas) CHECK(std::abs(d - Complex{0.25, 0}) < 1e-15);
        CHECK(plan.delta_min == doctest::Approx(0.25));
    }

    SUBCASE("deltas telescope to the endpoint exactly") {
        PiecewiseCurve c;
        c.vertices = {Complex{0, 0}, Complex{0.123, 0.456}, Complex{1.7, 0.1}};
        const StepPlan plan = discretize(c, 0.17);
        Complex sum{0, 0};
        for (const Complex& d : plan.deltas) sum += d;
        CHECK(sum == c.endpoint());
    }

    SUBCASE("family curve at eps=0.3 with the theorem's step bound") {
        const double eps = 0.3;
        const CurveFamily fam = build_family(eps);
        const PiecewiseCurve c = fam.curve(fam.j_min() + fam.size() / 3);
        const double max_step = kPi * std::pow(eps, 6) / std::exp(1.0);  // w/e
        const StepPlan plan = discretize(c, max_step);
        for (const Complex& d : plan.deltas) CHECK(std::abs(d) <= max_step + 1e-15);
        CHECK(plan.delta_min > 0.0);
    }
}

TEST_CASE("tube clearance") {
    PiecewiseCurve c;
    c.vertices = {Complex{0, 0}, Complex{1, 1}, Complex{3, 0}};
    c.width = 1.0;

    SUBCASE("far roots leave the tube root-free") {
        RootSet rs;
        rs.roots = {Complex{0, 12}, Complex{-11, 0}, Complex{14, 3}};
        const TubeClearance tc = tube_clearance(c, rs);
        CHECK(tc.min_distance > 10.0);
        CHECK(tc.root_free(c.width));
        CHECK_FALSE(tc.violating_root.has_value());
    }

    SUBCASE("root on a vertex gives zero distance") {
        RootSet rs;
        rs.roots = {Complex{1, 1}};
        const TubeClearance tc = tube_clearance(c, rs);
        CHECK(tc.min_distance == 0.0);
        CHECK_FALSE(tc.root_free(c.width));
        CHECK(tc.violating_root.has_value());
    }

    SUBCASE("matches a dense sampling oracle") {
        RootSet rs;
        for (int i = 0; i < 10; ++i) {
            const double a = 0.77 * i;
            rs.roots.push_back(Complex{2.0 * std::cos(a), 1.5 * std::sin(a) + 0.4});
        }
        const TubeClearance tc = tube_clearance(c, rs);

        const double len = c.total_length();
        const int samples = 10000;
        double best = 1e300;
        for (int i = 0; i <= samples; ++i) {
            const Complex p = c.point_at_arclength(len * i / samples);
            for (const Complex& z : rs.roots) best = std::min(best, std::abs(z - p));
        }
        // sampled oracle can only overestimate, by at most the sample spacing
        CHECK(tc.min_distance <= best + 1e-12);
        CHECK(best - tc.min_distance <= len / samples);
    }
}

TEST_CASE("discretization does not change clearance") {
    PiecewiseCurve c;
    c.vertices = {Complex{0, 0}, Complex{2, 0.4}};
    c.width = 0.05;
    RootSet rs;
    rs.roots = {Complex{1.0, 0.8}, Complex{0.4, -0.6}};
    const double d0 = tube_clearance(c, rs).min_distance;
    for (double step = 0.4; step > 0.01; step /= 2) {
        discretize(c, step);  // steps are derived data; clearance is curve-only
        CHECK(tube_clearance(c, rs).min_distance == d0);
    }
}

TEST_CASE("select_curve strategies") {
    const double eps = 0.05;
    const CurveFamily fam = build_family(eps);

    SUBCASE("all roots far away: first_clear returns j_min") {
        RootSet rs;
        rs.roots = {Complex{100, 80}, Complex{-90, 30}};
        const PiecewiseCurve c = select_curve(rs, eps, CurveStrategy::FirstClear);
        CHECK(c.family_index == fam.j_min());
    }

    SUBCASE("adversarial roots on one curve push first_clear to another index") {
        const long long j0 = fam.j_min() + 7;
        const PiecewiseCurve target = fam.curve(j0);
        RootSet rs;
        // pepper the second segment (away from the shared origin)
        for (int i = 1; i <= 30; ++i) {
            const double t = i / 31.0;
            rs.roots.push_back(target.vertices[1] + t * (target.vertices[2] - target.vertices[1]));
        }
        const PiecewiseCurve chosen = select_curve(rs, eps, CurveStrategy::FirstClear);
        CHECK(chosen.family_index != j0);
        CHECK(tube_clearance(chosen, rs).root_free(chosen.width));
    }

    SUBCASE("best_clearance picks the stratified max and reports ties low") {
        RootSet rs;
        rs.roots = {Complex{3, 4}};
        const PiecewiseCurve c = select_curve(rs, eps, CurveStrategy::BestClearance);
        CHECK(tube_clearance(c, rs).min_distance >= c.width);
    }

    SUBCASE("paper_random is deterministic in the seed and root-blind") {
        const PiecewiseCurve c1 = select_curve(RootSet{}, eps, CurveStrategy::PaperRandom, 9);
        const PiecewiseCurve c2 = select_curve(RootSet{}, eps, CurveStrategy::PaperRandom, 9);
        CHECK(c1.family_index == c2.family_index);
        CHECK(c1.family_index >= fam.j_min());
        CHECK(c1.family_index <= fam.j_max());
        const PiecewiseCurve c3 = select_curve(RootSet{}, eps, CurveStrategy::PaperRandom, 10);
        CHECK(c3.family_index != c1.family_index);  // would be astronomically unlucky
    }

    SUBCASE("no clear curve raises with the best clearance found") {
        // wall of roots across the vertex line x = 2*eps blocks every curve
        const double eps_big = 0.3;
        const CurveFamily big = build_family(eps_big);
        RootSet rs;
        const double y_lo = 2 * eps_big * 0.99;
        const double y_hi = std::abs(big.curve(big.j_max()).vertices[1].imag()) * 1.01;
        const double spacing = big.width() * 0.9;
        for (double y = y_lo; y <= y_hi; y += spacing) rs.roots.push_back(Complex{2 * eps_big, y});
        CHECK_THROWS_AS(select_curve(rs, eps_big, CurveStrategy::FirstClear), NoClearCurve);
        CHECK_THROWS_AS(select_curve(rs, eps_big, CurveStrategy::BestClearance), NoClearCurve);
    }
}

TEST_CASE("sampled tube pairs are disjoint away from the origin") {
    const double eps = 0.05;
    const CurveFamily fam = build_family(eps);
    const double w = fam.width();
    for (int pair = 0; pair < 12; ++pair) {
        const std::uint64_t h1 = rng::counter_hash(33, pair, 0, 0);
        const std::uint64_t h2 = rng::counter_hash(33, pair, 1, 0);
        const long long j = fam.j_min() + static_cast<long long>(h1 % fam.size());
        long long k = fam.j_min() + static_cast<long long>(h2 % fam.size());
        if (k == j) ++k;
        const PiecewiseCurve cj = fam.curve(j);
        const PiecewiseCurve ck = fam.curve(std::min(k, fam.j_max()));
        const double len = cj.total_length();
        for (int s = 0; s <= 400; ++s) {
            const Complex p = cj.point_at_arclength(len * s / 400.0);
            if (std::abs(p) <= eps) continue;
            CHECK(distance_to_polyline(p, ck.vertices) > 2 * w);
        }
    }
}
