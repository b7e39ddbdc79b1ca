#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "perm/complex_matrix.hpp"
#include "perm/interp_poly.hpp"

namespace perm {

struct RunOpts {
    unsigned threads = 0;  // 0: PERM_THREADS env, else hardware concurrency
    bool want_quantiles = false;
};

// Monte-Carlo aggregate with Welford moments. Deterministic function of
// (spec, seed, trials): per-trial values are computed independently from the
// counter RNG and reduced in index order.
struct TrialAggregate {
    std::uint64_t trials = 0;
    double mean = 0.0;
    double std_error = 0.0;
    std::map<std::string, double> quantiles;  // median/p90/p99 when requested
    std::uint64_t seed = 0;
};

TrialAggregate aggregate_values(std::span<const double> values, std::uint64_t seed,
                                bool want_quantiles);

struct SecondMomentReport {
    double r = 0.0;
    TrialAggregate radial;     // |g(r)|^2/(n!)^2 at theta = 0
    TrialAggregate theta_avg;  // exact per-trial theta average (Parseval)
    std::array<double, 8> angles{};
    std::array<TrialAggregate, 8> per_angle;
    std::vector<double> radial_values;  // per-trial, for CSV export
};

// Estimate of E_A |g_A(r)|^2/(n!)^2 for a zero-mean ensemble. The theta
// average per trial is sum_k |c_k-hat|^2 r^{2k}; the fixed-angle estimates
// are reported alongside because the paper's bound is for the theta-averaged
// quantity.
SecondMomentReport second_moment(const EnsembleSpec& spec, double r, std::uint64_t trials,
                                 const RunOpts& opts = {});

struct RootCountReport {
    std::vector<double> radii;
    std::vector<TrialAggregate> mean_count;
    std::vector<TrialAggregate> prob_nonzero;
    std::uint64_t excluded_trials = 0;  // root-finder non-convergence, reported never dropped
    std::uint64_t trials = 0;
};

RootCountReport root_count_stats(const EnsembleSpec& spec, std::span<const double> radii,
                                 std::uint64_t trials, const RunOpts& opts = {});

struct JensenReport {
    double lhs = 0.0;  // circle average of ln|g| minus ln|g(0)|
    double rhs = 0.0;  // sum over roots in the disk of ln(r/|z_j|)
    double gap = 0.0;
};

// Trapezoidal quadrature with Richardson refinement against the exact root
// sum. Throws RootOnContour if a root lies within 1e-6 of |z| = r.
JensenReport jensen_check(const InterpPolynomial& p, double r, int quad_points);

// Monte-Carlo mean of |Per(A + J mu) - Per(A)|^2 over zero-mean complex
// Gaussian A.
TrialAggregate mean_shift_sensitivity(int n, double mu, std::uint64_t trials, std::uint64_t seed,
                                      const RunOpts& opts = {});

struct TailBoundReport {
    double partial_sum = 0.0;
    double bound = 0.0;
    bool holds = false;
};

// sum_{k>=m} beta^-k k^l against 3 beta^-m m^l; valid for m >= 2l, beta >= e.
TailBoundReport tail_bound_check(int m, int l, double beta);

}  // namespace perm
