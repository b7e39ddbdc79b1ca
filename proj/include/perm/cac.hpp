#pragma once

#include <complex>
#include <span>
#include <string>
#include <vector>

#include "perm/curve.hpp"
#include "perm/interp_poly.hpp"

namespace perm {

// Scaled derivative table of f = ln g at a base point: phis[k] = f^{(k)}/k!.
// Raw derivatives overflow doubles near k ~ 170 (f^{(k)} ~ (k-1)!/rho^k); the
// Taylor-coefficient scaling keeps entries bounded and turns the update rule
// into phi'_k = sum_p C(k+p,p) phi_{k+p} delta^p, algebraically identical to
// the unscaled recurrence.
struct LogTaylorTable {
    Complex base_point{0.0, 0.0};
    std::vector<Complex> phis;  // k = 0..s
    int step_index = 0;

    int s() const noexcept { return static_cast<int>(phis.size()) - 1; }
};

struct CacConfig {
    double beta = 2.718281828459045;  // root-distance ratio; >= e unless overridden
    double delta = 1e-3;              // precision target (informational at desk scale)
    int m = 60;                       // derivative count at step 0
    int schedule_floor = 4;           // abort threshold for degenerate schedules
    bool allow_beta_below_e = false;
};

// s_0 = m, s_{i+1} = floor((ln beta / 2) * s_i / ln(2 s_i / delta_min)).
// Throws ScheduleUnderflow (with the largest feasible t and the smallest
// feasible m) as soon as a value drops below cfg.schedule_floor.
std::vector<int> schedule(const CacConfig& cfg, double delta_min, int t);

// Power-series log of the normalized polynomial: phi_0 = ln(c_0-hat) on the
// principal branch, then phi_k = u_k - (1/k) sum_{j<k} j phi_j u_{k-j} with
// u_k = c_k-hat/c_0-hat (u_k = 0 beyond the degree). The stored ln(n!) offset
// is *not* folded in here; cac_run re-adds it at output time.
LogTaylorTable log_taylor_from_coeffs(const InterpPolynomial& p, int m);

// Shift the table by delta, keeping s_next derivatives. Binomial weights are
// accumulated as a running product.
LogTaylorTable taylor_shift(const LogTaylorTable& table, Complex delta, int s_next);

struct CacResult {
    Complex f_hat{0.0, 0.0};
    Complex g_hat{0.0, 0.0};
    std::vector<int> s_trace;
    // sum_i kappa_i e^{sigma_t - sigma_i} with kappa_i from the correctness
    // analysis, using measured root distances when a RootSet is supplied and
    // cfg.beta otherwise.
    double err_budget = 0.0;
};

CacResult cac_run(const InterpPolynomial& p, std::span<const Complex> steps, const CacConfig& cfg,
                  const RootSet* roots = nullptr);

struct ShiftedPermanentEstimate {
    Complex g_hat{0.0, 0.0};        // estimate of Per(J + b A')
    Complex per_estimate{0.0, 0.0};  // b^{-n} g_hat: Per of the mean-1/b ensemble
    CacResult cac;
};

// Runs the engine along `plan` (endpoint must equal b on the real axis).
ShiftedPermanentEstimate approx_permanent_shifted(const ComplexMatrix& a_prime, double b,
                                                  const StepPlan& plan, const CacConfig& cfg);

struct AutoPlan {
    bool feasible = false;
    std::vector<Complex> curve_vertices;
    StepPlan plan;
    double min_ratio = 0.0;   // min over step origins of dist(y_i, roots)/|Delta_{i+1}|
    std::string curve_id;
    std::string reason;       // why planning failed, when infeasible
};

// Desk-scale path planner: tries the straight segment [0, b] and a family of
// single-elbow detours, walking each with greedy steps of size
// dist(y, roots)/beta, and keeps the first candidate whose step count admits
// a feasible derivative schedule. Exact roots replace the paper's
// probabilistic tube argument.
AutoPlan plan_auto(const RootSet& roots, double b, const CacConfig& cfg,
                   bool straight_only = false);

}  // namespace perm
