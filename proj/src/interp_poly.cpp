#include "perm/interp_poly.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numbers>
#include <utility>

#include "perm/errors.hpp"
#include "perm/permanent.hpp"

namespace perm {

double factorial_double(int n) {
    double f = 1.0;
    for (int k = 2; k <= n; ++k) f *= k;
    return f;
}

double log_factorial(int n) {
    double s = 0.0;
    for (int k = 2; k <= n; ++k) s += std::log(static_cast<double>(k));
    return s;
}

InterpPolynomial::InterpPolynomial(std::vector<Complex> coeffs, double log_scale)
    : coeffs_(std::move(coeffs)), log_scale_(log_scale) {
    if (coeffs_.empty()) throw InvalidArgument("polynomial needs at least one coefficient");
    scale_hint_ = 0.0;
    for (const Complex& c : coeffs_) scale_hint_ = std::max(scale_hint_, std::abs(c));
}

InterpPolynomial InterpPolynomial::from_coefficients(std::vector<Complex> coeffs) {
    return InterpPolynomial(std::move(coeffs), 0.0);
}

InterpPolynomial InterpPolynomial::from_normalized(std::vector<Complex> coeffs, double log_scale) {
    return InterpPolynomial(std::move(coeffs), log_scale);
}

Complex InterpPolynomial::coeff(int k) const { return coeffs_[k] * std::exp(log_scale_); }

Complex InterpPolynomial::eval_normalized(Complex z) const {
    Complex acc = coeffs_.back();
    for (int k = static_cast<int>(coeffs_.size()) - 2; k >= 0; --k) acc = acc * z + coeffs_[k];
    return acc;
}

Complex InterpPolynomial::eval_normalized_derivative(Complex z) const {
    const int n = degree();
    if (n == 0) return {0.0, 0.0};
    Complex acc = coeffs_[n] * static_cast<double>(n);
    for (int k = n - 1; k >= 1; --k) acc = acc * z + coeffs_[k] * static_cast<double>(k);
    return acc;
}

Complex InterpPolynomial::eval(Complex z) const {
    return eval_normalized(z) * std::exp(log_scale_);
}

InterpPolynomial InterpPolynomial::from_matrix(const ComplexMatrix& a, int max_n) {
    const int n = a.dim();
    if (n > max_n) throw DimensionTooLarge(n, max_n, "coeffs_via_ryser");

    // Accumulators per coefficient; the subset products are degree-n
    // polynomials prod_i (|S| + z * rowsum_i).
    std::vector<KahanComplex> acc(n + 1);
    std::vector<Complex> row_sum(n, Complex{0.0, 0.0});
    std::vector<Complex> poly(n + 1);
    int popcount = 0;
    std::uint64_t gray_prev = 0;
    const std::uint64_t count = 1ULL << n;
    for (std::uint64_t k = 1; k < count; ++k) {
        const std::uint64_t gray = k ^ (k >> 1);
        const std::uint64_t flipped = gray ^ gray_prev;
        const int j = std::countr_zero(flipped);
        if (gray & flipped) {
            for (int i = 0; i < n; ++i) row_sum[i] += a(i, j);
            ++popcount;
        } else {
            for (int i = 0; i < n; ++i) row_sum[i] -= a(i, j);
            --popcount;
        }
        gray_prev = gray;

        const double card = static_cast<double>(popcount);
        std::fill(poly.begin(), poly.end(), Complex{0.0, 0.0});
        poly[0] = Complex{1.0, 0.0};
        for (int i = 0; i < n; ++i) {
            for (int d = i + 1; d >= 1; --d) poly[d] = poly[d] * card + poly[d - 1] * row_sum[i];
            poly[0] *= card;
        }
        if (popcount & 1)
            for (int d = 0; d <= n; ++d) acc[d].add(-poly[d]);
        else
            for (int d = 0; d <= n; ++d) acc[d].add(poly[d]);
    }

    const double sign = (n & 1) ? -1.0 : 1.0;
    const double n_fact = factorial_double(n);
    std::vector<Complex> coeffs(n + 1);
    for (int d = 0; d <= n; ++d) coeffs[d] = sign * acc[d].value() / n_fact;
    return InterpPolynomial(std::move(coeffs), log_factorial(n));
}

InterpPolynomial coeffs_via_ryser(const ComplexMatrix& a, int max_n) {
    return InterpPolynomial::from_matrix(a, max_n);
}

namespace {

bool next_combination(std::vector<int>& idx, int n) {
    const int k = static_cast<int>(idx.size());
    for (int i = k - 1; i >= 0; --i) {
        if (idx[i] < n - k + i) {
            ++idx[i];
            for (int j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
            return true;
        }
    }
    return false;
}

double binomial_double(int n, int k) {
    double b = 1.0;
    for (int i = 1; i <= k; ++i) b = b * (n - k + i) / i;
    return b;
}

}  // namespace

std::vector<Complex> coeffs_via_submatrices(const ComplexMatrix& a, int k_max, double op_budget) {
    const int n = a.dim();
    if (k_max < 0 || k_max > n) throw InvalidArgument("k_max must be in [0, n]");

    double est_ops = 0.0;
    for (int k = 1; k <= k_max; ++k) {
        const double c = binomial_double(n, k);
        est_ops += c * c * std::ldexp(static_cast<double>(k), k);  // C(n,k)^2 * 2^k * k
    }
    if (est_ops > op_budget) throw BudgetExceeded(est_ops, op_budget);

    std::vector<Complex> coeffs(k_max + 1);
    coeffs[0] = factorial_double(n);
    std::vector<Complex> buf;
    for (int k = 1; k <= k_max; ++k) {
        KahanComplex sum;
        std::vector<int> rows(k);
        for (int i = 0; i < k; ++i) rows[i] = i;
        do {
            std::vector<int> cols(k);
            for (int i = 0; i < k; ++i) cols[i] = i;
            do {
                buf.resize(static_cast<std::size_t>(k) * k);
                for (int i = 0; i < k; ++i)
                    for (int j = 0; j < k; ++j) buf[static_cast<std::size_t>(i) * k + j] = a(rows[i], cols[j]);
                sum.add(detail::ryser_raw(buf.data(), k));
            } while (next_combination(cols, n));
        } while (next_combination(rows, n));
        coeffs[k] = sum.value() * factorial_double(n - k);
    }
    return coeffs;
}

RootSet find_roots(const InterpPolynomial& p) {
    const int n = p.degree();
    const auto& c = p.normalized_coeffs();
    if (std::abs(c[n]) <= 1e-300 * p.scale_hint() || std::abs(c[n]) == 0.0)
        throw DegenerateLeadingCoefficient(std::abs(c[n]));

    RootSet rs;
    rs.roots.resize(n);
    const double r0 = (std::abs(c[0]) > 0.0)
                          ? 1.1 * std::pow(std::abs(c[0]) / std::abs(c[n]), 1.0 / n)
                          : 1e-3;
    for (int j = 0; j < n; ++j) {
        const double angle = 0.37 + 2.0 * std::numbers::pi * j / n;
        rs.roots[j] = r0 * Complex{std::cos(angle), std::sin(angle)};
    }

    constexpr int kMaxSweeps = 500;
    constexpr double kTol = 1e-13;
    std::vector<bool> done(n, false);
    int sweep = 0;
    for (; sweep < kMaxSweeps; ++sweep) {
        bool all_done = true;
        for (int k = 0; k < n; ++k) {
            if (done[k]) continue;
            Complex z = rs.roots[k];
            const Complex pv = p.eval_normalized(z);
            if (std::abs(pv) == 0.0) {
                done[k] = true;
                continue;
            }
            Complex dv = p.eval_normalized_derivative(z);
            if (std::abs(dv) == 0.0) {
                // stationary-point hit: nudge off and retry next sweep
                rs.roots[k] = z * 1.000001 + Complex{1e-12, 1e-12};
                all_done = false;
                continue;
            }
            const Complex newton = pv / dv;
            Complex repulsion{0.0, 0.0};
            for (int j = 0; j < n; ++j)
                if (j != k) repulsion += 1.0 / (z - rs.roots[j]);
            const Complex denom = 1.0 - newton * repulsion;
            const Complex step = (std::abs(denom) > 1e-300) ? newton / denom : newton;
            rs.roots[k] = z - step;
            if (std::abs(newton) <= kTol * (1.0 + std::abs(rs.roots[k])))
                done[k] = true;
            else
                all_done = false;
        }
        if (all_done) break;
    }
    rs.sweeps = std::min(sweep + 1, kMaxSweeps);
    rs.converged = std::all_of(done.begin(), done.end(), [](bool b) { return b; });

    rs.residuals.resize(n);
    for (int k = 0; k < n; ++k) {
        const Complex z = rs.roots[k];
        double mag_sum = 0.0, zp = 1.0;
        for (int d = 0; d <= n; ++d) {
            mag_sum += std::abs(c[d]) * zp;
            zp *= std::abs(z);
        }
        rs.residuals[k] = std::abs(p.eval_normalized(z)) / std::max(mag_sum, 1e-300);
    }
    return rs;
}

int count_roots_in_disk(const RootSet& rs, double r) {
    int count = 0;
    for (const Complex& z : rs.roots)
        if (std::abs(z) <= r) ++count;
    return count;
}

}  // namespace perm
