#include <doctest.h>

#include <cmath>
#include <numbers>

#include "perm/cac.hpp"
#include "perm/complex_matrix.hpp"
#include "perm/errors.hpp"
#include "perm/interp_poly.hpp"
#include "perm/permanent.hpp"

using namespace perm;

namespace {

double rel_err(Complex got, Complex want) {
    return std::abs(got - want) / std::max(std::abs(want), 1e-300);
}

// First trial index whose sampled matrix has all roots at distance > clearance
// from every probe point. Deterministic scan.
std::uint64_t find_trial(const EnsembleSpec& spec, const std::vector<Complex>& probes,
                         double clearance) {
    for (std::uint64_t t = 0;; ++t) {
        REQUIRE(t < 500);
        const RootSet rs = find_roots(coeffs_via_ryser(sample(spec, t)));
        if (!rs.converged) continue;
        bool ok = true;
        for (const Complex& p : probes) {
            for (const Complex& z : rs.roots)
                if (std::abs(z - p) <= clearance) {
                    ok = false;
                    break;
                }
            if (!ok) break;
        }
        if (ok) return t;
    }
}

}  // namespace

TEST_CASE("log-Taylor table closed forms") {
    SUBCASE("g = 1 + a z gives phi_k = (-1)^{k-1} a^k / k") {
        const Complex a{0.7, -0.4};
        const LogTaylorTable t =
            log_taylor_from_coeffs(InterpPolynomial::from_coefficients({Complex{1, 0}, a}), 12);
        for (int k = 1; k <= 12; ++k) {
            const Complex want = ((k % 2) ? 1.0 : -1.0) * std::pow(a, k) / static_cast<double>(k);
            CHECK(std::abs(t.phis[k] - want) < 1e-13 * std::max(1.0, std::abs(want)));
        }
    }

    SUBCASE("constant polynomial: phi_0 = ln c_0, rest zero") {
        const LogTaylorTable t =
            log_taylor_from_coeffs(InterpPolynomial::from_coefficients({Complex{2.5, 0}}), 6);
        CHECK(rel_err(t.phis[0], std::log(Complex{2.5, 0})) < 1e-15);
        for (int k = 1; k <= 6; ++k) CHECK(std::abs(t.phis[k]) == 0.0);
    }

    SUBCASE("zero constant term throws") {
        CHECK_THROWS_AS(
            log_taylor_from_coeffs(InterpPolynomial::from_coefficients({Complex{0, 0}, Complex{1, 0}}), 3),
            ZeroConstantTerm);
    }

    SUBCASE("exp of truncated series matches the polynomial near 0") {
        const EnsembleSpec spec{EnsembleKind::GaussianComplex, 0.0, 6, 19};
        const InterpPolynomial p = coeffs_via_ryser(sample(spec, 0));
        const RootSet rs = find_roots(p);
        double nearest = 1e300;
        for (const Complex& z : rs.roots) nearest = std::min(nearest, std::abs(z));
        const LogTaylorTable t = log_taylor_from_coeffs(p, 12);

        for (int i = 0; i < 8; ++i) {
            const double angle = 0.7 * i;
            const Complex z = 0.1 * nearest * Complex{std::cos(angle), std::sin(angle)};
            Complex series{0, 0}, zp{1, 0};
            for (int k = 0; k <= 12; ++k) {
                series += t.phis[k] * zp;
                zp *= z;
            }
            CHECK(rel_err(std::exp(series), p.eval_normalized(z)) < 1e-9);
        }
    }
}

TEST_CASE("derivative schedule") {
    CacConfig cfg;
    cfg.m = 200;

    SUBCASE("t = 0 returns [m]") {
        const auto s = schedule(cfg, 0.1, 0);
        CHECK(s == std::vector<int>{200});
    }

    SUBCASE("one step matches an independent high-precision evaluation") {
        const auto s = schedule(cfg, 0.1, 1);
        // independent: long-double formula evaluation
        const long double expect = std::floor(0.5L * 200.0L / std::log(2.0L * 200.0L / 0.1L));
        REQUIRE(s.size() == 2);
        CHECK(s[1] == static_cast<int>(expect));
    }

    SUBCASE("underflow reporting at the feasibility boundary") {
        // find the minimal feasible m for t = 2 by brute search with an
        // independent long-double recurrence
        const double dmin = 0.1;
        auto feasible = [&](int m) {
            long double s = m;
            for (int i = 0; i < 2; ++i) {
                s = std::floor(0.5L * s / std::log(2.0L * s / dmin));
                if (s < 4) return false;
            }
            return true;
        };
        int m_star = 8;
        while (!feasible(m_star)) ++m_star;

        CacConfig ok = cfg;
        ok.m = m_star;
        CHECK_NOTHROW(schedule(ok, dmin, 2));
        CacConfig bad = cfg;
        bad.m = m_star - 1;
        try {
            schedule(bad, dmin, 2);
            FAIL("expected ScheduleUnderflow");
        } catch (const ScheduleUnderflow& e) {
            CHECK(e.min_feasible_m == m_star);
            CHECK(e.max_feasible_t < 2);
        }
    }

    SUBCASE("config validation") {
        CacConfig bad = cfg;
        bad.beta = 1.5;
        CHECK_THROWS_AS(schedule(bad, 0.1, 1), ParameterViolation);
        bad.allow_beta_below_e = true;
        CHECK_NOTHROW(schedule(bad, 0.1, 0));
        CacConfig small = cfg;
        small.m = 6;
        small.schedule_floor = 4;
        CHECK_THROWS_AS(schedule(small, 0.1, 0), ParameterViolation);
    }
}

TEST_CASE("taylor_shift") {
    const Complex a{0.9, 0.35};

    SUBCASE("delta = 0 truncates the table") {
        const LogTaylorTable t =
            log_taylor_from_coeffs(InterpPolynomial::from_coefficients({Complex{1, 0}, a}), 10);
        const LogTaylorTable shifted = taylor_shift(t, Complex{0, 0}, 4);
        REQUIRE(shifted.s() == 4);
        for (int k = 0; k <= 4; ++k) CHECK(shifted.phis[k] == t.phis[k]);
        CHECK(shifted.step_index == t.step_index + 1);
    }

    SUBCASE("n=1 closed form after one shift") {
        const double d = 0.2 / std::abs(a);
        const LogTaylorTable t =
            log_taylor_from_coeffs(InterpPolynomial::from_coefficients({Complex{1, 0}, a}), 60);
        const LogTaylorTable shifted = taylor_shift(t, Complex{d, 0}, 8);
        const Complex want = a / (1.0 + a * d);  // f'(d) for f = ln(1+az)
        CHECK(rel_err(shifted.phis[1], want) < 1e-9);
    }

    SUBCASE("two half steps agree with one full step") {
        const double d = 0.25 / std::abs(a);  // root distance 1/|a| >= e*|d|
        const LogTaylorTable t0 =
            log_taylor_from_coeffs(InterpPolynomial::from_coefficients({Complex{1, 0}, a}), 80);
        const LogTaylorTable one = taylor_shift(t0, Complex{d, 0}, 6);
        const LogTaylorTable half = taylor_shift(t0, Complex{d / 2, 0}, 40);
        const LogTaylorTable two = taylor_shift(half, Complex{d / 2, 0}, 6);
        const Complex exact = std::log(1.0 + a * d);
        CHECK(std::abs(one.phis[0] - exact) < 1e-10);
        CHECK(std::abs(two.phis[0] - exact) < 1e-10);
        CHECK(std::abs(one.phis[0] - two.phis[0]) < 1e-10);
    }

    SUBCASE("requesting more derivatives than available throws") {
        const LogTaylorTable t =
            log_taylor_from_coeffs(InterpPolynomial::from_coefficients({Complex{1, 0}, a}), 10);
        CHECK_THROWS_AS(taylor_shift(t, Complex{0.1, 0}, 11), InsufficientDerivatives);
    }
}

TEST_CASE("cac_run end to end") {
    const EnsembleSpec spec{EnsembleKind::GaussianComplex, 0.0, 10, 202};

    SUBCASE("t = 0 returns n! exactly") {
        CacConfig cfg;
        cfg.m = 20;
        const InterpPolynomial p = coeffs_via_ryser(sample(spec, 0));
        const CacResult r = cac_run(p, {}, cfg);
        CHECK(rel_err(r.g_hat, Complex{factorial_double(10), 0}) < 1e-12);
    }

    SUBCASE("straight two-step path matches polynomial evaluation") {
        CacConfig cfg;
        cfg.m = 2000;
        const std::vector<Complex> steps = {Complex{0.5, 0}, Complex{0.5, 0}};
        const double need = std::exp(1.0) * 0.5;
        const std::uint64_t trial = find_trial(spec, {Complex{0, 0}, Complex{0.5, 0}}, need);
        const InterpPolynomial p = coeffs_via_ryser(sample(spec, trial));
        const CacResult r = cac_run(p, steps, cfg);
        CHECK(rel_err(r.g_hat, p.eval(Complex{1, 0})) < 1e-3);
    }

    SUBCASE("two discretizations of the same endpoint agree") {
        CacConfig cfg;
        cfg.m = 2000;
        const std::uint64_t trial =
            find_trial(spec, {Complex{0, 0}, Complex{0.15, 0}, Complex{0.25, 0}}, std::exp(1.0) * 0.25);
        const InterpPolynomial p = coeffs_via_ryser(sample(spec, trial));
        const std::vector<Complex> s1 = {Complex{0.15, 0}, Complex{0.25, 0}};
        const std::vector<Complex> s2 = {Complex{0.25, 0}, Complex{0.15, 0}};
        const CacResult r1 = cac_run(p, s1, cfg);
        const CacResult r2 = cac_run(p, s2, cfg);
        CHECK(rel_err(r1.g_hat, r2.g_hat) < 1e-6);
        CHECK(rel_err(r1.g_hat, p.eval(Complex{0.4, 0})) < 1e-6);
    }

    SUBCASE("scaling the coefficients shifts f_hat by ln c and g_hat by c") {
        CacConfig cfg;
        cfg.m = 400;
        const std::uint64_t trial = find_trial(spec, {Complex{0, 0}}, std::exp(1.0) * 0.3);
        const InterpPolynomial p = coeffs_via_ryser(sample(spec, trial));
        const std::vector<Complex> steps = {Complex{0.3, 0}};

        for (const double c : {1e50, 1e-50}) {
            std::vector<Complex> scaled = p.normalized_coeffs();
            for (Complex& x : scaled) x *= c;
            const InterpPolynomial q = InterpPolynomial::from_normalized(scaled, p.log_scale());
            const CacResult base = cac_run(p, steps, cfg);
            const CacResult mult = cac_run(q, steps, cfg);
            CHECK(std::abs((mult.f_hat - base.f_hat) - std::log(c)) < 1e-10);
            CHECK(rel_err(mult.g_hat, base.g_hat * c) < 1e-12);
        }
    }

    SUBCASE("truncation error is nonincreasing in m") {
        CacConfig cfg;
        const std::uint64_t trial = find_trial(spec, {Complex{0, 0}}, std::exp(1.0) * 0.25);
        const InterpPolynomial p = coeffs_via_ryser(sample(spec, trial));
        const std::vector<Complex> steps = {Complex{0.25, 0}};
        const Complex truth = p.eval(Complex{0.25, 0});
        double prev = 1e300;
        for (const int m : {30, 50, 80}) {
            cfg.m = m;
            const double err = std::abs(cac_run(p, steps, cfg).g_hat - truth);
            CHECK(err <= prev + 1e-12 * std::abs(truth));
            prev = err;
        }
    }
}

TEST_CASE("error budget dominates the realized error on measured instances") {
    // roots placed exactly on the unit circle, so distances are known
    const int n = 10;
    std::vector<Complex> roots(n);
    for (int j = 0; j < n; ++j) {
        const double angle = 2.0 * std::numbers::pi * j / n + 0.23;
        roots[j] = Complex{std::cos(angle), std::sin(angle)};
    }
    std::vector<Complex> coeffs = {Complex{1, 0}};
    for (const Complex& z : roots) {
        std::vector<Complex> next(coeffs.size() + 1, Complex{0, 0});
        for (std::size_t k = 0; k < coeffs.size(); ++k) {
            next[k] += coeffs[k];
            next[k + 1] -= coeffs[k] / z;
        }
        coeffs = std::move(next);
    }
    const InterpPolynomial p = InterpPolynomial::from_coefficients(coeffs);
    RootSet rs;
    rs.roots = roots;

    CacConfig cfg;
    cfg.m = 46;
    const std::vector<Complex> steps = {Complex{0.36, 0}};  // measured ratio 1/0.36 > e
    const CacResult r = cac_run(p, steps, cfg, &rs);
    const double realized = rel_err(r.g_hat, p.eval(Complex{0.36, 0}));
    CHECK(r.err_budget > 1e-14);  // budget must dominate float noise for this check
    CHECK(realized <= 10.0 * r.err_budget);
}

TEST_CASE("branch consistency: winding around a root needs no unwinding") {
    // g = 1 - 2z, single root at 0.5; continue to 1.2 above and below the root
    const InterpPolynomial p = InterpPolynomial::from_coefficients({Complex{1, 0}, Complex{-2, 0}});
    const Complex target{1.2, 0};
    const Complex truth = 1.0 - 2.0 * target;  // -1.4

    auto walk = [&](double height) {
        const std::vector<Complex> waypoints = {Complex{0, 0}, Complex{0, height},
                                                Complex{1.2, height}, target};
        LogTaylorTable t = log_taylor_from_coeffs(p, 400);
        int s = 400;
        for (std::size_t w = 1; w < waypoints.size(); ++w) {
            const Complex leg = waypoints[w] - waypoints[w - 1];
            const int pieces = static_cast<int>(std::ceil(std::abs(leg) / 0.12));
            for (int i = 0; i < pieces; ++i) {
                s -= 24;
                REQUIRE(s > 4);
                t = taylor_shift(t, leg / static_cast<double>(pieces), s);
            }
        }
        return t.phis[0];
    };

    const Complex above = walk(0.6);
    const Complex below = walk(-0.6);
    // the two continuations land on different branches of ln ...
    CHECK(std::abs(above.imag() - below.imag()) > 1.0);
    // ... yet both exponentials agree with the polynomial value
    CHECK(rel_err(std::exp(above), truth) < 1e-8);
    CHECK(rel_err(std::exp(below), truth) < 1e-8);
}

TEST_CASE("approx_permanent_shifted") {
    const EnsembleSpec spec{EnsembleKind::GaussianComplex, 0.0, 10, 404};

    SUBCASE("b = 0 degenerates to n!") {
        CacConfig cfg;
        cfg.m = 20;
        const StepPlan empty;
        const auto est = approx_permanent_shifted(sample(spec, 0), 0.0, empty, cfg);
        CHECK(est.g_hat == Complex{factorial_double(10), 0});
    }

    SUBCASE("matches Ryser on a root-avoiding instance and rescales exactly") {
        CacConfig cfg;
        cfg.m = 2000;
        const double b = 0.5;
        const std::uint64_t trial =
            find_trial(spec, {Complex{0, 0}, Complex{0.25, 0}}, std::exp(1.0) * 0.25);
        const ComplexMatrix a = sample(spec, trial);

        StepPlan plan;
        plan.deltas = {Complex{0.25, 0}, Complex{0.25, 0}};
        plan.delta_min = 0.25;
        plan.total_length = 0.5;
        const auto est = approx_permanent_shifted(a, b, plan, cfg);

        const Complex truth = permanent_ryser(affine_combine(Complex{1, 0}, a, Complex{b, 0}));
        CHECK(rel_err(est.g_hat, truth) < 1e-3);
        CHECK(est.per_estimate == est.g_hat * std::pow(b, -10));
    }

    SUBCASE("endpoint mismatch is rejected") {
        CacConfig cfg;
        cfg.m = 60;
        StepPlan plan;
        plan.deltas = {Complex{0.3, 0}};
        plan.delta_min = 0.3;
        plan.total_length = 0.3;
        CHECK_THROWS_AS(approx_permanent_shifted(sample(spec, 0), 0.5, plan, cfg), InvalidArgument);
    }
}

TEST_CASE("plan_auto finds feasible plans when clearance allows") {
    const EnsembleSpec spec{EnsembleKind::GaussianComplex, 0.0, 10, 505};
    CacConfig cfg;
    cfg.m = 2000;

    // near endpoint: typically reachable in two steps
    const std::uint64_t trial = find_trial(spec, {Complex{0, 0}, Complex{0.2, 0}}, 0.7);
    const RootSet rs = find_roots(coeffs_via_ryser(sample(spec, trial)));
    const AutoPlan plan = plan_auto(rs, 0.4, cfg);
    REQUIRE(plan.feasible);
    CHECK(plan.min_ratio >= cfg.beta);
    Complex sum{0, 0};
    for (const Complex& d : plan.plan.deltas) sum += d;
    CHECK(std::abs(sum - Complex{0.4, 0}) < 1e-12);

    // paper-schedule wall: m = 60 admits only a single step, which would
    // need the nearest root at distance 2e from the origin
    CacConfig tight;
    tight.m = 60;
    const AutoPlan blocked = plan_auto(rs, 2.0, tight);
    CHECK_FALSE(blocked.feasible);
}
