#include "perm/curve.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "perm/errors.hpp"
#include "perm/rng.hpp"

namespace perm {

namespace {
constexpr double kPi = std::numbers::pi;
}

double PiecewiseCurve::total_length() const {
    double len = 0.0;
    for (std::size_t k = 1; k < vertices.size(); ++k) len += std::abs(vertices[k] - vertices[k - 1]);
    return len;
}

Complex PiecewiseCurve::point_at_arclength(double s) const {
    if (s <= 0.0) return vertices.front();
    for (std::size_t k = 1; k < vertices.size(); ++k) {
        const double seg = std::abs(vertices[k] - vertices[k - 1]);
        if (s <= seg || k + 1 == vertices.size()) {
            const double t = std::min(s / seg, 1.0);
            return vertices[k - 1] + t * (vertices[k] - vertices[k - 1]);
        }
        s -= seg;
    }
    return vertices.back();
}

CurveFamily::CurveFamily(double epsilon) : epsilon_(epsilon) {
    if (!(epsilon > 0.0) || !(epsilon < 0.5)) throw EpsilonOutOfRange(epsilon);
    width_ = kPi * std::pow(epsilon, 6);
    m_ = 32.0 / std::pow(epsilon, 5);
    j_min_ = static_cast<long long>(std::ceil(m_ / 8.0));
    j_max_ = static_cast<long long>(std::floor(m_ / 8.0 + epsilon * m_));
    // Stay strictly below the tangent pole at angle pi/2.
    const long long j_pole = static_cast<long long>(std::floor(m_ * 0.249999));
    j_max_ = std::min(j_max_, j_pole);
    if (j_max_ < j_min_) throw EpsilonOutOfRange(epsilon);
    // Cap on the vertex tangent keeping |vertex| <= (1/eps - 2eps)/2, which
    // bounds each curve's length by 2/eps.
    const double half_reach = (1.0 / epsilon - 2.0 * epsilon) / 2.0;
    const double ratio = half_reach / (2.0 * epsilon);
    tau_cap_ = std::sqrt(std::max(ratio * ratio - 1.0, 1.0));
}

PiecewiseCurve CurveFamily::curve(long long j) const {
    if (j < j_min_ || j > j_max_)
        throw InvalidArgument("family index " + std::to_string(j) + " outside admissible range");
    const double theta = 2.0 * kPi * static_cast<double>(j) / m_;
    const double tau_raw = std::tan(theta);
    const double tau = std::clamp(tau_raw, 1.0, tau_cap_);
    const double b_lo = 1.0 / epsilon_;
    const double b_hi = 1.0 / epsilon_ + 2.0 * epsilon_;

    PiecewiseCurve c;
    c.vertices = {Complex{0.0, 0.0},
                  Complex{2.0 * epsilon_, 2.0 * epsilon_ * tau},
                  Complex{std::clamp(b_lo * tau_raw, b_lo, b_hi), 0.0}};
    c.family_index = j;
    c.epsilon = epsilon_;
    c.width = width_;
    c.pre_clamp_endpoint = b_lo * tau_raw;
    return c;
}

CurveFamily build_family(double epsilon) { return CurveFamily(epsilon); }

StepPlan discretize(const PiecewiseCurve& curve, double max_step) {
    if (!(max_step > 0.0)) throw InvalidArgument("max_step must be positive");
    StepPlan plan;
    Complex running{0.0, 0.0};
    for (std::size_t k = 1; k < curve.vertices.size(); ++k) {
        const Complex a = curve.vertices[k - 1];
        const Complex b = curve.vertices[k];
        const double len = std::abs(b - a);
        const int pieces = std::max(1, static_cast<int>(std::ceil(len / max_step)));
        const Complex step = (b - a) / static_cast<double>(pieces);
        for (int i = 0; i < pieces; ++i) {
            Complex delta = step;
            if (k + 1 == curve.vertices.size() && i + 1 == pieces)
                delta = curve.endpoint() - running;  // absorb rounding
            plan.deltas.push_back(delta);
            running += delta;
        }
    }
    plan.delta_min = plan.deltas.empty() ? 0.0 : std::abs(plan.deltas[0]);
    plan.total_length = 0.0;
    for (const Complex& d : plan.deltas) {
        plan.delta_min = std::min(plan.delta_min, std::abs(d));
        plan.total_length += std::abs(d);
    }
    return plan;
}

double distance_to_polyline(Complex point, const std::vector<Complex>& vertices) {
    double best = std::abs(point - vertices.front());
    for (std::size_t k = 1; k < vertices.size(); ++k) {
        const Complex a = vertices[k - 1];
        const Complex b = vertices[k];
        const Complex ab = b - a;
        const double len2 = std::norm(ab);
        double t = 0.0;
        if (len2 > 0.0) {
            t = ((point.real() - a.real()) * ab.real() + (point.imag() - a.imag()) * ab.imag()) / len2;
            t = std::clamp(t, 0.0, 1.0);
        }
        best = std::min(best, std::abs(point - (a + t * ab)));
    }
    return best;
}

TubeClearance tube_clearance(const PiecewiseCurve& curve, const RootSet& roots) {
    TubeClearance out;
    out.min_distance = std::numeric_limits<double>::infinity();
    for (const Complex& z : roots.roots) {
        const double d = distance_to_polyline(z, curve.vertices);
        if (d < out.min_distance) {
            out.min_distance = d;
            if (d <= curve.width) out.violating_root = z;
        }
    }
    if (out.min_distance > curve.width) out.violating_root.reset();
    return out;
}

CurveStrategy curve_strategy_from_name(const std::string& name) {
    if (name == "first_clear") return CurveStrategy::FirstClear;
    if (name == "best_clearance") return CurveStrategy::BestClearance;
    if (name == "paper_random") return CurveStrategy::PaperRandom;
    throw InvalidArgument("unknown curve strategy: " + name);
}

std::string curve_strategy_name(CurveStrategy s) {
    switch (s) {
        case CurveStrategy::FirstClear: return "first_clear";
        case CurveStrategy::BestClearance: return "best_clearance";
        default: return "paper_random";
    }
}

PiecewiseCurve select_curve(const RootSet& roots, double epsilon, CurveStrategy strategy,
                            std::uint64_t seed) {
    const CurveFamily family(epsilon);

    if (strategy == CurveStrategy::PaperRandom) {
        const std::uint64_t u = rng::counter_hash(seed, 0, 0, 0xC0DE);
        const long long j = family.j_min() + static_cast<long long>(u % static_cast<std::uint64_t>(family.size()));
        return family.curve(j);
    }

    double best_clear = -1.0;
    long long best_j = family.j_min();
    if (strategy == CurveStrategy::FirstClear) {
        const long long scan_cap = std::min<long long>(family.size(), 1 << 20);
        for (long long off = 0; off < scan_cap; ++off) {
            const long long j = family.j_min() + off;
            PiecewiseCurve c = family.curve(j);
            const TubeClearance tc = tube_clearance(c, roots);
            if (tc.root_free(c.width)) return c;
            if (tc.min_distance > best_clear) {
                best_clear = tc.min_distance;
                best_j = j;
            }
        }
        throw NoClearCurve(best_clear, best_j);
    }

    // best_clearance: stratified sample of 256 indices.
    const long long samples = std::min<long long>(256, family.size());
    for (long long s = 0; s < samples; ++s) {
        const long long j =
            family.j_min() + (samples == 1 ? 0 : (family.size() - 1) * s / (samples - 1));
        PiecewiseCurve c = family.curve(j);
        const TubeClearance tc = tube_clearance(c, roots);
        if (tc.min_distance > best_clear) {
            best_clear = tc.min_distance;
            best_j = j;
        }
    }
    PiecewiseCurve best = family.curve(best_j);
    if (!(best_clear > best.width)) throw NoClearCurve(best_clear, best_j);
    return best;
}

PiecewiseCurve select_curve(const InterpPolynomial& p, double epsilon, CurveStrategy strategy,
                            std::uint64_t seed) {
    if (strategy == CurveStrategy::PaperRandom) {
        RootSet empty;
        return select_curve(empty, epsilon, strategy, seed);
    }
    return select_curve(find_roots(p), epsilon, strategy, seed);
}

}  // namespace perm
