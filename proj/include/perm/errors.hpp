#pragma once

#include <stdexcept>
#include <string>

namespace perm {

// Base for all library errors. `code()` is a stable machine-readable
// identifier used by the CLI for error JSON.
class Error : public std::runtime_error {
public:
    Error(std::string code, const std::string& message)
        : std::runtime_error(message), code_(std::move(code)) {}
    const std::string& code() const noexcept { return code_; }

private:
    std::string code_;
};

class DimensionTooLarge : public Error {
public:
    DimensionTooLarge(int n, int cap, const std::string& where)
        : Error("dimension_too_large",
                where + ": n=" + std::to_string(n) + " exceeds cap " + std::to_string(cap)),
          n(n), cap(cap) {}
    int n, cap;
};

class BudgetExceeded : public Error {
public:
    BudgetExceeded(double estimated_ops, double budget)
        : Error("budget_exceeded",
                "estimated operation count " + std::to_string(estimated_ops) +
                " exceeds budget " + std::to_string(budget)),
          estimated_ops(estimated_ops), budget(budget) {}
    double estimated_ops, budget;
};

class DegenerateLeadingCoefficient : public Error {
public:
    explicit DegenerateLeadingCoefficient(double magnitude)
        : Error("degenerate_leading_coefficient",
                "leading coefficient magnitude " + std::to_string(magnitude) +
                " too small for root finding") {}
};

class ZeroConstantTerm : public Error {
public:
    ZeroConstantTerm() : Error("zero_constant_term", "constant term is zero; log series undefined") {}
};

class ScheduleUnderflow : public Error {
public:
    ScheduleUnderflow(int step, int value, int floor, int max_feasible_t, long long min_feasible_m)
        : Error("schedule_underflow",
                "derivative schedule hit s_" + std::to_string(step) + "=" + std::to_string(value) +
                " below floor " + std::to_string(floor) +
                " (largest feasible t=" + std::to_string(max_feasible_t) +
                ", smallest feasible m=" + std::to_string(min_feasible_m) + ")"),
          step(step), value(value), floor(floor),
          max_feasible_t(max_feasible_t), min_feasible_m(min_feasible_m) {}
    int step, value, floor;
    int max_feasible_t;
    long long min_feasible_m;
};

class InsufficientDerivatives : public Error {
public:
    InsufficientDerivatives(int requested, int available)
        : Error("insufficient_derivatives",
                "requested " + std::to_string(requested) + " derivatives, table holds " +
                std::to_string(available)) {}
};

class EpsilonOutOfRange : public Error {
public:
    explicit EpsilonOutOfRange(double epsilon)
        : Error("epsilon_out_of_range",
                "epsilon=" + std::to_string(epsilon) + " outside (0, 0.5)") {}
};

class NoClearCurve : public Error {
public:
    NoClearCurve(double best_clearance, long long best_index)
        : Error("no_clear_curve",
                "no root-free curve found; best clearance " + std::to_string(best_clearance) +
                " at family index " + std::to_string(best_index)),
          best_clearance(best_clearance), best_index(best_index) {}
    double best_clearance;
    long long best_index;
};

class RootOnContour : public Error {
public:
    RootOnContour(double root_abs, double r)
        : Error("root_on_contour",
                "root at |z|=" + std::to_string(root_abs) + " within 1e-6 of contour r=" +
                std::to_string(r)) {}
};

class ParameterViolation : public Error {
public:
    explicit ParameterViolation(const std::string& message)
        : Error("parameter_violation", message) {}
};

class TooManyErrors : public Error {
public:
    explicit TooManyErrors(const std::string& message) : Error("too_many_errors", message) {}
};

class NoConvergence : public Error {
public:
    explicit NoConvergence(const std::string& message) : Error("no_convergence", message) {}
};

class InvalidArgument : public Error {
public:
    explicit InvalidArgument(const std::string& message) : Error("invalid_argument", message) {}
};

}  // namespace perm
