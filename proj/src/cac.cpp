#include "perm/cac.hpp"

#include <algorithm>
#include <cmath>

#include "perm/errors.hpp"

namespace perm {

namespace {

void validate(const CacConfig& cfg) {
    if (!(cfg.beta > 1.0)) throw ParameterViolation("beta must exceed 1");
    if (cfg.beta < std::exp(1.0) - 1e-12 && !cfg.allow_beta_below_e)
        throw ParameterViolation("beta below e; set allow_beta_below_e to override");
    if (cfg.schedule_floor < 1) throw ParameterViolation("schedule_floor must be >= 1");
    if (cfg.m < 2 * cfg.schedule_floor)
        throw ParameterViolation("m must be at least 2*schedule_floor");
}

// One schedule step without the floor check; negative result means the
// formula degenerated.
double schedule_next(double s, double beta, double delta_min) {
    const double arg = 2.0 * s / delta_min;
    if (!(arg > 1.0)) return -1.0;
    return 0.5 * std::log(beta) * s / std::log(arg);
}

bool schedule_feasible(long long m, double beta, double delta_min, int t, int floor_s) {
    double s = static_cast<double>(m);
    for (int i = 0; i < t; ++i) {
        const double nxt = std::floor(schedule_next(s, beta, delta_min));
        if (!(nxt >= floor_s)) return false;
        s = nxt;
    }
    return true;
}

}  // namespace

std::vector<int> schedule(const CacConfig& cfg, double delta_min, int t) {
    validate(cfg);
    if (!(delta_min > 0.0)) throw ParameterViolation("delta_min must be positive");
    if (t < 0) throw ParameterViolation("t must be non-negative");

    std::vector<int> s;
    s.reserve(t + 1);
    s.push_back(cfg.m);
    for (int i = 0; i < t; ++i) {
        const double nxt = std::floor(schedule_next(static_cast<double>(s.back()), cfg.beta, delta_min));
        if (!(nxt >= cfg.schedule_floor)) {
            // Diagnostics for the error: how far this m reaches, and the
            // smallest m that would survive the requested t.
            int max_t = 0;
            double v = cfg.m;
            while (true) {
                const double w = std::floor(schedule_next(v, cfg.beta, delta_min));
                if (!(w >= cfg.schedule_floor)) break;
                v = w;
                ++max_t;
            }
            long long lo = 2 * cfg.schedule_floor, hi = -1;
            for (long long probe = lo; probe <= (1LL << 30); probe *= 2) {
                if (schedule_feasible(probe, cfg.beta, delta_min, t, cfg.schedule_floor)) {
                    hi = probe;
                    break;
                }
                lo = probe;
            }
            long long min_m = -1;
            if (hi > 0) {
                while (lo < hi) {
                    const long long mid = lo + (hi - lo) / 2;
                    if (schedule_feasible(mid, cfg.beta, delta_min, t, cfg.schedule_floor))
                        hi = mid;
                    else
                        lo = mid + 1;
                }
                min_m = hi;
            }
            throw ScheduleUnderflow(i + 1, static_cast<int>(std::max(nxt, -1.0)), cfg.schedule_floor,
                                    max_t, min_m);
        }
        s.push_back(static_cast<int>(nxt));
    }
    return s;
}

LogTaylorTable log_taylor_from_coeffs(const InterpPolynomial& p, int m) {
    if (m < 0) throw ParameterViolation("derivative count must be non-negative");
    const auto& c = p.normalized_coeffs();
    if (std::abs(c[0]) == 0.0) throw ZeroConstantTerm();

    const int n = p.degree();
    std::vector<Complex> u(m + 1, Complex{0.0, 0.0});
    for (int k = 1; k <= std::min(m, n); ++k) u[k] = c[k] / c[0];

    LogTaylorTable table;
    table.phis.assign(m + 1, Complex{0.0, 0.0});
    table.phis[0] = std::log(c[0]);
    for (int k = 1; k <= m; ++k) {
        Complex conv{0.0, 0.0};
        const int j_lo = std::max(1, k - n);  // u_{k-j} vanishes beyond the degree
        for (int j = j_lo; j < k; ++j) conv += static_cast<double>(j) * table.phis[j] * u[k - j];
        table.phis[k] = u[k] - conv / static_cast<double>(k);
    }
    for (const Complex& phi : table.phis)
        if (!std::isfinite(phi.real()) || !std::isfinite(phi.imag()))
            throw NoConvergence("log-Taylor table has non-finite entries (root too close to 0?)");
    return table;
}

LogTaylorTable taylor_shift(const LogTaylorTable& table, Complex delta, int s_next) {
    const int s = table.s();
    if (s_next > s) throw InsufficientDerivatives(s_next, s);
    if (s_next < 0) throw ParameterViolation("s_next must be non-negative");

    LogTaylorTable out;
    out.base_point = table.base_point + delta;
    out.step_index = table.step_index + 1;
    out.phis.assign(s_next + 1, Complex{0.0, 0.0});
    for (int k = 0; k <= s_next; ++k) {
        Complex acc = table.phis[k];
        Complex term{1.0, 0.0};  // C(k+p,p) delta^p, built incrementally
        for (int p = 1; p <= s - k; ++p) {
            term *= delta * (static_cast<double>(k + p) / static_cast<double>(p));
            acc += table.phis[k + p] * term;
        }
        out.phis[k] = acc;
    }
    return out;
}

CacResult cac_run(const InterpPolynomial& p, std::span<const Complex> steps, const CacConfig& cfg,
                  const RootSet* roots) {
    validate(cfg);
    CacResult result;
    const int t = static_cast<int>(steps.size());
    if (t == 0) {
        const Complex c0 = p.normalized_coeffs()[0];
        if (std::abs(c0) == 0.0) throw ZeroConstantTerm();
        result.f_hat = std::log(c0) + p.log_scale();
        result.g_hat = std::exp(result.f_hat);
        result.s_trace = {cfg.m};
        return result;
    }

    double delta_min = std::abs(steps[0]);
    for (const Complex& d : steps) delta_min = std::min(delta_min, std::abs(d));
    if (!(delta_min > 0.0)) throw ParameterViolation("steps must have positive length");

    result.s_trace = schedule(cfg, delta_min, t);
    LogTaylorTable table = log_taylor_from_coeffs(p, cfg.m);
    for (int i = 1; i <= t; ++i) table = taylor_shift(table, steps[i - 1], result.s_trace[i]);

    result.f_hat = table.phis[0] + p.log_scale();
    result.g_hat = std::exp(result.f_hat);

    // Error budget: delta_t <= sum_i kappa_i e^{sigma_t - sigma_i} with
    // kappa_i = 3 n (2 s_{i-1}/|Delta_i|)^{s_i} beta_i^{-s_{i-1}}, beta_i the
    // measured ratio at the step origin when roots are available.
    const int n = p.degree();
    std::vector<double> sigma(t + 1, 0.0);
    std::vector<Complex> y(t + 1, Complex{0.0, 0.0});
    for (int i = 1; i <= t; ++i) {
        sigma[i] = sigma[i - 1] + std::abs(steps[i - 1]);
        y[i] = y[i - 1] + steps[i - 1];
    }
    double budget = 0.0;
    for (int i = 1; i <= t; ++i) {
        double beta_i = cfg.beta;
        if (roots != nullptr && !roots->roots.empty()) {
            double dist = std::numeric_limits<double>::infinity();
            for (const Complex& z : roots->roots) dist = std::min(dist, std::abs(z - y[i - 1]));
            beta_i = dist / std::abs(steps[i - 1]);
        }
        const double log_kappa = std::log(3.0 * n) +
                                 result.s_trace[i] * std::log(2.0 * result.s_trace[i - 1] / std::abs(steps[i - 1])) -
                                 result.s_trace[i - 1] * std::log(beta_i);
        budget += std::exp(std::min(log_kappa + sigma[t] - sigma[i], 700.0));
    }
    result.err_budget = budget;
    return result;
}

ShiftedPermanentEstimate approx_permanent_shifted(const ComplexMatrix& a_prime, double b,
                                                  const StepPlan& plan, const CacConfig& cfg) {
    const int n = a_prime.dim();
    ShiftedPermanentEstimate out;
    if (b == 0.0 || plan.deltas.empty()) {
        if (b != 0.0) throw InvalidArgument("empty plan with nonzero endpoint");
        out.g_hat = factorial_double(n);
        out.per_estimate = out.g_hat;  // b^{-n} is singular at b = 0
        out.cac.f_hat = std::log(Complex{out.g_hat.real(), 0.0});
        out.cac.g_hat = out.g_hat;
        out.cac.s_trace = {cfg.m};
        return out;
    }

    Complex endpoint{0.0, 0.0};
    for (const Complex& d : plan.deltas) endpoint += d;
    const double tol = 1e-9 * std::max(1.0, std::abs(b));
    if (std::abs(endpoint - Complex{b, 0.0}) > tol)
        throw InvalidArgument("plan endpoint does not equal b on the real axis");

    const InterpPolynomial p = coeffs_via_ryser(a_prime);
    out.cac = cac_run(p, plan.deltas, cfg);
    out.g_hat = out.cac.g_hat;
    out.per_estimate = out.g_hat * std::pow(b, -n);
    return out;
}

AutoPlan plan_auto(const RootSet& roots, double b, const CacConfig& cfg, bool straight_only) {
    AutoPlan best;
    best.reason = "no candidate curve admits ratio >= beta with a feasible schedule";
    if (b == 0.0) {
        best.feasible = true;
        best.curve_id = "degenerate";
        best.curve_vertices = {Complex{0.0, 0.0}};
        return best;
    }

    static constexpr double kHeights[] = {0.0, 0.125, -0.125, 0.25, -0.25, 0.375, -0.375,
                                          0.5, -0.5, 0.75, -0.75, 1.0, -1.0};
    int best_t = std::numeric_limits<int>::max();

    for (const double h : kHeights) {
        if (straight_only && h != 0.0) break;
        PiecewiseCurve curve;
        if (h == 0.0)
            curve.vertices = {Complex{0.0, 0.0}, Complex{b, 0.0}};
        else
            curve.vertices = {Complex{0.0, 0.0}, Complex{b / 2, h * b}, Complex{b, 0.0}};
        const double length = curve.total_length();

        std::vector<Complex> deltas;
        Complex y{0.0, 0.0};
        double walked = 0.0;
        bool ok = true;
        while (walked < length - 1e-15) {
            double dist = std::numeric_limits<double>::infinity();
            for (const Complex& z : roots.roots) dist = std::min(dist, std::abs(z - y));
            const double allowed = dist / cfg.beta * (1.0 - 1e-9);
            if (!(allowed > 1e-6 * std::max(1.0, std::abs(b))) || deltas.size() > 4096) {
                ok = false;
                break;
            }
            const double remaining = length - walked;
            double advance = std::min(allowed, remaining);
            if (remaining > allowed && remaining < 2.0 * allowed)
                advance = remaining / 2.0;  // balance the tail so delta_min stays sane
            const Complex y_next = curve.point_at_arclength(walked + advance);
            deltas.push_back(y_next - y);
            y = y_next;
            walked += advance;
        }
        if (!ok || deltas.empty()) continue;
        deltas.back() += Complex{b, 0.0} - y;  // telescope exactly to the endpoint

        // Verify the origin ratios and collect the plan.
        StepPlan plan;
        plan.deltas = deltas;
        plan.delta_min = std::abs(deltas[0]);
        plan.total_length = 0.0;
        Complex yi{0.0, 0.0};
        double min_ratio = std::numeric_limits<double>::infinity();
        for (const Complex& d : deltas) {
            double dist = std::numeric_limits<double>::infinity();
            for (const Complex& z : roots.roots) dist = std::min(dist, std::abs(z - yi));
            min_ratio = std::min(min_ratio, dist / std::abs(d));
            plan.delta_min = std::min(plan.delta_min, std::abs(d));
            plan.total_length += std::abs(d);
            yi += d;
        }
        if (min_ratio < cfg.beta * (1.0 - 1e-12)) continue;

        try {
            schedule(cfg, plan.delta_min, static_cast<int>(deltas.size()));
        } catch (const ScheduleUnderflow&) {
            if (!best.feasible) best.reason = "schedule underflow at every candidate discretization";
            continue;
        }

        const int t = static_cast<int>(deltas.size());
        if (t < best_t || (t == best_t && min_ratio > best.min_ratio)) {
            best.feasible = true;
            best.curve_vertices = curve.vertices;
            best.plan = std::move(plan);
            best.min_ratio = min_ratio;
            best.curve_id = (h == 0.0) ? "straight"
                                       : std::string("elbow") + (h > 0 ? "+" : "") + std::to_string(h);
            best.reason.clear();
            best_t = t;
        }
    }
    return best;
}

}  // namespace perm
