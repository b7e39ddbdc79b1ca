#include "perm/stats.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "perm/errors.hpp"
#include "perm/parallel.hpp"
#include "perm/permanent.hpp"

namespace perm {

TrialAggregate aggregate_values(std::span<const double> values, std::uint64_t seed,
                                bool want_quantiles) {
    TrialAggregate agg;
    agg.trials = values.size();
    agg.seed = seed;
    double mean = 0.0, m2 = 0.0;
    std::uint64_t k = 0;
    for (const double v : values) {
        ++k;
        const double d1 = v - mean;
        mean += d1 / static_cast<double>(k);
        m2 += d1 * (v - mean);
    }
    agg.mean = mean;
    agg.std_error = (k > 1) ? std::sqrt(m2 / (static_cast<double>(k) * (static_cast<double>(k) - 1.0)))
                            : 0.0;
    if (want_quantiles && k > 0) {
        std::vector<double> sorted(values.begin(), values.end());
        std::sort(sorted.begin(), sorted.end());
        const auto at = [&](double q) {
            const double pos = q * (static_cast<double>(sorted.size()) - 1.0);
            const std::size_t lo = static_cast<std::size_t>(pos);
            const std::size_t hi = std::min(lo + 1, sorted.size() - 1);
            const double frac = pos - static_cast<double>(lo);
            return sorted[lo] * (1.0 - frac) + sorted[hi] * frac;
        };
        agg.quantiles = {{"median", at(0.5)}, {"p90", at(0.9)}, {"p99", at(0.99)}};
    }
    return agg;
}

SecondMomentReport second_moment(const EnsembleSpec& spec, double r, std::uint64_t trials,
                                 const RunOpts& opts) {
    if (spec.mu != 0.0) throw ParameterViolation("second_moment requires a zero-mean ensemble");
    if (r < 0.0) throw ParameterViolation("r must be non-negative");

    SecondMomentReport report;
    report.r = r;
    for (int a = 0; a < 8; ++a)
        report.angles[a] = 2.0 * std::numbers::pi * (a + 0.5) / 8.0;  // offset: avoid theta=0 duplicate

    struct Row {
        double radial;
        double theta_avg;
        std::array<double, 8> angle;
    };
    const auto rows = run_trials<Row>(trials, opts.threads, [&](std::uint64_t t) {
        const InterpPolynomial p = coeffs_via_ryser(sample(spec, t));
        Row row{};
        row.radial = std::norm(p.eval_normalized(Complex{r, 0.0}));
        double parseval = 0.0, r2k = 1.0;
        for (int k = 0; k <= p.degree(); ++k) {
            parseval += std::norm(p.normalized_coeff(k)) * r2k;
            r2k *= r * r;
        }
        row.theta_avg = parseval;
        for (int a = 0; a < 8; ++a) {
            const Complex z = r * Complex{std::cos(report.angles[a]), std::sin(report.angles[a])};
            row.angle[a] = std::norm(p.eval_normalized(z));
        }
        return row;
    });

    std::vector<double> radial(trials), theta(trials), angle(trials);
    for (std::uint64_t t = 0; t < trials; ++t) radial[t] = rows[t].radial;
    for (std::uint64_t t = 0; t < trials; ++t) theta[t] = rows[t].theta_avg;
    report.radial = aggregate_values(radial, spec.seed, opts.want_quantiles);
    report.theta_avg = aggregate_values(theta, spec.seed, opts.want_quantiles);
    for (int a = 0; a < 8; ++a) {
        for (std::uint64_t t = 0; t < trials; ++t) angle[t] = rows[t].angle[a];
        report.per_angle[a] = aggregate_values(angle, spec.seed, false);
    }
    report.radial_values = std::move(radial);
    return report;
}

RootCountReport root_count_stats(const EnsembleSpec& spec, std::span<const double> radii,
                                 std::uint64_t trials, const RunOpts& opts) {
    if (spec.n > 22) throw DimensionTooLarge(spec.n, 22, "root_count_stats");

    RootCountReport report;
    report.radii.assign(radii.begin(), radii.end());
    report.trials = trials;

    struct Row {
        bool ok;
        std::vector<int> counts;
    };
    const auto rows = run_trials<Row>(trials, opts.threads, [&](std::uint64_t t) {
        const RootSet rs = find_roots(coeffs_via_ryser(sample(spec, t)));
        Row row;
        row.ok = rs.converged;
        if (row.ok) {
            row.counts.reserve(radii.size());
            for (const double r : radii) row.counts.push_back(count_roots_in_disk(rs, r));
        }
        return row;
    });

    std::vector<double> counts, nonzero;
    counts.reserve(trials);
    nonzero.reserve(trials);
    for (std::size_t ri = 0; ri < radii.size(); ++ri) {
        counts.clear();
        nonzero.clear();
        for (const Row& row : rows) {
            if (!row.ok) continue;
            counts.push_back(static_cast<double>(row.counts[ri]));
            nonzero.push_back(row.counts[ri] >= 1 ? 1.0 : 0.0);
        }
        report.mean_count.push_back(aggregate_values(counts, spec.seed, opts.want_quantiles));
        report.prob_nonzero.push_back(aggregate_values(nonzero, spec.seed, false));
    }
    report.excluded_trials = trials - static_cast<std::uint64_t>(
                                          std::count_if(rows.begin(), rows.end(),
                                                        [](const Row& r) { return r.ok; }));
    return report;
}

namespace {

double circle_average_log_abs(const InterpPolynomial& p, double r, int points) {
    double acc = 0.0;
    for (int k = 0; k < points; ++k) {
        const double theta = 2.0 * std::numbers::pi * k / points;
        const Complex z = r * Complex{std::cos(theta), std::sin(theta)};
        acc += std::log(std::abs(p.eval_normalized(z)));
    }
    return acc / points;
}

}  // namespace

JensenReport jensen_check(const InterpPolynomial& p, double r, int quad_points) {
    if (quad_points < 8) throw ParameterViolation("quad_points must be at least 8");
    if (std::abs(p.normalized_coeffs()[0]) == 0.0) throw ZeroConstantTerm();

    const RootSet rs = find_roots(p);
    for (const Complex& z : rs.roots)
        if (std::abs(std::abs(z) - r) <= 1e-6) throw RootOnContour(std::abs(z), r);

    const double coarse = circle_average_log_abs(p, r, quad_points / 2);
    const double fine = circle_average_log_abs(p, r, quad_points);
    const double refined = fine + (fine - coarse) / 3.0;

    JensenReport report;
    report.lhs = refined - std::log(std::abs(p.normalized_coeffs()[0]));
    report.rhs = 0.0;
    for (const Complex& z : rs.roots)
        if (std::abs(z) <= r) report.rhs += std::log(r / std::abs(z));
    report.gap = std::abs(report.lhs - report.rhs);
    return report;
}

TrialAggregate mean_shift_sensitivity(int n, double mu, std::uint64_t trials, std::uint64_t seed,
                                      const RunOpts& opts) {
    if (n > 12) throw DimensionTooLarge(n, 12, "mean_shift_sensitivity");

    const EnsembleSpec spec{EnsembleKind::GaussianComplex, 0.0, n, seed};
    const auto values = run_trials<double>(trials, opts.threads, [&](std::uint64_t t) {
        const ComplexMatrix a = sample(spec, t);
        const ComplexMatrix shifted = affine_combine(Complex{mu, 0.0}, a, Complex{1.0, 0.0});
        const Complex delta = permanent_ryser(shifted) - permanent_ryser(a);
        return std::norm(delta);
    });
    return aggregate_values(values, seed, opts.want_quantiles);
}

TailBoundReport tail_bound_check(int m, int l, double beta) {
    if (l < 0 || m < 2 * l) throw ParameterViolation("tail bound requires m >= 2l, l >= 0");
    if (beta < std::exp(1.0) - 1e-12) throw ParameterViolation("tail bound requires beta >= e");

    TailBoundReport report;
    double sum = 0.0;
    for (int k = m;; ++k) {
        const double term = std::pow(beta, -k) * std::pow(static_cast<double>(k), l);
        sum += term;
        if (term < 1e-18 * sum) break;
        if (k > m + 100000) break;  // unreachable for beta >= e; hard stop regardless
    }
    report.partial_sum = sum;
    report.bound = 3.0 * std::pow(beta, -m) * std::pow(static_cast<double>(m), l);
    report.holds = report.partial_sum <= report.bound;
    return report;
}

}  // namespace perm
