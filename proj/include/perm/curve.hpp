#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "perm/complex_matrix.hpp"
#include "perm/interp_poly.hpp"

namespace perm {

// Piecewise-linear curve starting at the origin. Family curves carry their
// index j, the epsilon they were built from, and the tube width w = pi*eps^6.
struct PiecewiseCurve {
    std::vector<Complex> vertices;  // v_0 = 0, ..., v_K
    long long family_index = -1;
    double epsilon = 0.0;
    double width = 0.0;
    // Endpoint (1/eps)*tan(2*pi*j/M) before clamping into [1/eps, 1/eps+2eps];
    // the lemma's stated box and its own formula disagree, so both are kept.
    double pre_clamp_endpoint = 0.0;

    double total_length() const;
    Complex endpoint() const { return vertices.back(); }
    // Point at arc-length s from the start (clamped to the curve).
    Complex point_at_arclength(double s) const;
};

struct StepPlan {
    std::vector<Complex> deltas;
    double delta_min = 0.0;
    double total_length = 0.0;  // sigma_t
};

// Lazy view of the two-segment curve family from the root-avoiding-tube
// construction: M = 32/eps^5, admissible indices j in
// [ceil(M/8), floor(M/8 + eps*M)], curve j rising from 0 to
// 2eps + i*2eps*tan(2pi j/M) and descending to a real endpoint clamped into
// [1/eps, 1/eps + 2eps]. Indices past the tangent pole (only reachable for
// eps >= 1/8, outside the lemma's hypothesis) are dropped, and the vertex
// tangent is capped so every curve keeps total length <= 2/eps.
class CurveFamily {
public:
    explicit CurveFamily(double epsilon);

    double epsilon() const noexcept { return epsilon_; }
    double width() const noexcept { return width_; }
    double m_real() const noexcept { return m_; }
    long long j_min() const noexcept { return j_min_; }
    long long j_max() const noexcept { return j_max_; }
    long long size() const noexcept { return j_max_ - j_min_ + 1; }
    PiecewiseCurve curve(long long j) const;

private:
    double epsilon_, width_, m_, tau_cap_;
    long long j_min_, j_max_;
};

// Validates epsilon and returns the lazy family (never materialized).
CurveFamily build_family(double epsilon);

// Per-segment equal subdivision with step <= max_step; the last step of the
// final segment absorbs rounding so the deltas telescope to the endpoint
// exactly.
StepPlan discretize(const PiecewiseCurve& curve, double max_step);

struct TubeClearance {
    double min_distance = 0.0;
    std::optional<Complex> violating_root;  // set when min_distance <= width
    bool root_free(double width) const { return min_distance > width; }
};

// Exact min over roots of point-to-polyline distance.
TubeClearance tube_clearance(const PiecewiseCurve& curve, const RootSet& roots);

enum class CurveStrategy { FirstClear, BestClearance, PaperRandom };

CurveStrategy curve_strategy_from_name(const std::string& name);
std::string curve_strategy_name(CurveStrategy s);

// first_clear: ascending scan, first curve whose tube clearance exceeds w.
// best_clearance: stratified sample of 256 indices, max clearance (ties to
// smaller j). paper_random: uniform admissible index, no root knowledge.
PiecewiseCurve select_curve(const InterpPolynomial& p, double epsilon, CurveStrategy strategy,
                            std::uint64_t seed = 0);
PiecewiseCurve select_curve(const RootSet& roots, double epsilon, CurveStrategy strategy,
                            std::uint64_t seed = 0);

// Distance from a point to a polyline (exposed for tests).
double distance_to_polyline(Complex point, const std::vector<Complex>& vertices);

}  // namespace perm
