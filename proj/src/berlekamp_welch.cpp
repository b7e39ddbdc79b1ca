#include "perm/berlekamp_welch.hpp"

#include <algorithm>

#include "perm/errors.hpp"
#include "perm/rng.hpp"

namespace perm {

namespace {

using Poly = std::vector<GaussianRational>;  // coefficient order c_0..c_d

GaussianRational poly_eval(const Poly& p, const GaussianRational& x) {
    GaussianRational acc;
    for (auto it = p.rbegin(); it != p.rend(); ++it) acc = acc * x + *it;
    return acc;
}

void trim(Poly& p) {
    while (p.size() > 1 && p.back().is_zero()) p.pop_back();
}

// Exact division; returns false when the remainder is nonzero.
bool poly_divide(const Poly& num, const Poly& den, Poly& quotient) {
    Poly n = num, d = den;
    trim(n);
    trim(d);
    if (d.size() == 1 && d[0].is_zero()) return false;
    if (n.size() < d.size()) {
        const bool n_zero = n.size() == 1 && n[0].is_zero();
        quotient = {GaussianRational{}};
        return n_zero;
    }
    quotient.assign(n.size() - d.size() + 1, GaussianRational{});
    for (int k = static_cast<int>(quotient.size()) - 1; k >= 0; --k) {
        const GaussianRational q = n[k + d.size() - 1] / d.back();
        quotient[k] = q;
        for (std::size_t j = 0; j < d.size(); ++j)
            n[k + j] = n[k + j] - q * d[j];
    }
    for (const GaussianRational& r : n)
        if (!r.is_zero()) return false;
    return true;
}

// First nonzero kernel vector of the homogeneous system rows * x = 0,
// via exact RREF; deterministic. Empty result when the kernel is trivial.
std::vector<GaussianRational> kernel_vector(std::vector<std::vector<GaussianRational>> rows,
                                            std::size_t cols) {
    std::vector<int> pivot_col_of_row;
    std::size_t row = 0;
    std::vector<bool> is_pivot(cols, false);
    for (std::size_t col = 0; col < cols && row < rows.size(); ++col) {
        std::size_t piv = row;
        while (piv < rows.size() && rows[piv][col].is_zero()) ++piv;
        if (piv == rows.size()) continue;
        std::swap(rows[row], rows[piv]);
        const GaussianRational inv = GaussianRational(1) / rows[row][col];
        for (std::size_t j = col; j < cols; ++j) rows[row][j] = rows[row][j] * inv;
        for (std::size_t r = 0; r < rows.size(); ++r) {
            if (r == row || rows[r][col].is_zero()) continue;
            const GaussianRational factor = rows[r][col];
            for (std::size_t j = col; j < cols; ++j)
                rows[r][j] = rows[r][j] - factor * rows[row][j];
        }
        pivot_col_of_row.push_back(static_cast<int>(col));
        is_pivot[col] = true;
        ++row;
    }

    std::size_t free_col = cols;
    for (std::size_t col = 0; col < cols; ++col)
        if (!is_pivot[col]) {
            free_col = col;
            break;
        }
    if (free_col == cols) return {};

    std::vector<GaussianRational> x(cols);
    x[free_col] = GaussianRational(1);
    for (std::size_t r = 0; r < pivot_col_of_row.size(); ++r) {
        const std::size_t pc = pivot_col_of_row[r];
        if (free_col > pc) x[pc] = -rows[r][free_col];
    }
    return x;
}

}  // namespace

std::vector<GaussianRational> bw_reconstruct(const OracleTranscript& transcript, int degree) {
    const int m = static_cast<int>(transcript.xs.size());
    if (m > 64) throw DimensionTooLarge(m, 64, "bw_reconstruct points");
    if (transcript.ys.size() != transcript.xs.size())
        throw InvalidArgument("transcript xs/ys length mismatch");
    if (degree < 0 || m < degree + 1)
        throw InvalidArgument("need at least degree+1 evaluation points");
    for (int i = 0; i < m; ++i)
        for (int j = i + 1; j < m; ++j)
            if (transcript.xs[i] == transcript.xs[j])
                throw InvalidArgument("evaluation points must be pairwise distinct");

    std::vector<GaussianRational> gx(m);
    for (int i = 0; i < m; ++i) gx[i] = GaussianRational{transcript.xs[i], mpq_class(0)};

    const int e_max = std::max(0, (m - degree - 1) / 2);
    const int needed = m + degree;  // verification: 2*matches > m + degree
    for (int e = e_max; e >= 0; --e) {
        const std::size_t n_unknowns = static_cast<std::size_t>(degree + e + 1);
        const std::size_t cols = n_unknowns + static_cast<std::size_t>(e + 1);
        std::vector<std::vector<GaussianRational>> rows(m, std::vector<GaussianRational>(cols));
        for (int i = 0; i < m; ++i) {
            GaussianRational xp(1);
            for (std::size_t j = 0; j < n_unknowns; ++j) {
                rows[i][j] = xp;
                xp *= gx[i];
            }
            xp = GaussianRational(1);
            for (std::size_t j = 0; j <= static_cast<std::size_t>(e); ++j) {
                rows[i][n_unknowns + j] = -(transcript.ys[i] * xp);
                xp *= gx[i];
            }
        }
        const auto solution = kernel_vector(std::move(rows), cols);
        if (solution.empty()) continue;

        Poly big_n(solution.begin(), solution.begin() + n_unknowns);
        Poly locator(solution.begin() + n_unknowns, solution.end());
        trim(locator);
        if (locator.size() == 1 && locator[0].is_zero()) continue;

        Poly q;
        if (!poly_divide(big_n, locator, q)) continue;
        trim(q);
        if (static_cast<int>(q.size()) > degree + 1) continue;

        int matches = 0;
        for (int i = 0; i < m; ++i)
            if (poly_eval(q, GaussianRational{transcript.xs[i], mpq_class(0)}) == transcript.ys[i])
                ++matches;
        if (2 * matches > needed) {
            q.resize(degree + 1);
            return q;
        }
    }
    throw TooManyErrors("no polynomial consistent with more than (m+degree)/2 transcript points");
}

OracleTranscript make_transcript(const RationalComplexMatrix& a, int m,
                                 const std::vector<int>& corrupt_indices, std::uint64_t seed) {
    OracleTranscript tr;
    tr.xs.reserve(m);
    tr.ys.reserve(m);
    for (int i = 0; i < m; ++i) {
        tr.xs.emplace_back(i + 1);
        tr.ys.push_back(q_poly_eval(a, tr.xs.back()));
    }
    for (const int idx : corrupt_indices) {
        if (idx < 0 || idx >= m) throw InvalidArgument("corrupt index out of range");
        const std::uint64_t h = rng::counter_hash(seed, 1, static_cast<std::uint64_t>(idx), 21);
        // nonzero perturbation; any value different from q(x_i) breaks the point
        const long num = static_cast<long>(h % 8) + 1;
        const long den = static_cast<long>((h >> 16) % 4) + 1;
        const long sign = (h >> 63) ? 1 : -1;
        mpq_class re(sign * num, den), im(static_cast<long>((h >> 32) % 9) - 4, den);
        re.canonicalize();
        im.canonicalize();
        tr.ys[idx] += GaussianRational{std::move(re), std::move(im)};
        tr.corrupted_indices.push_back(idx);
    }
    std::sort(tr.corrupted_indices.begin(), tr.corrupted_indices.end());
    return tr;
}

ReductionDemoResult reduction_demo(const RationalComplexMatrix& a, int m, const mpq_class& rate,
                                   std::uint64_t seed) {
    const int n = a.dim();
    const mpq_class cap(m - n, 2 * m);
    if (rate >= cap)
        throw ParameterViolation("corruption_rate must stay below (m-n)/(2m)");

    std::vector<int> corrupt;
    const mpz_class denom = mpz_class(1) << 64;
    for (int i = 0; i < m; ++i) {
        const std::uint64_t u = rng::counter_hash(seed, 0, static_cast<std::uint64_t>(i), 20);
        mpq_class unit(mpz_class(u), denom);
        unit.canonicalize();
        if (unit < rate) corrupt.push_back(i);
    }

    const OracleTranscript tr = make_transcript(a, m, corrupt, seed);
    ReductionDemoResult result;
    result.corrupted = static_cast<int>(corrupt.size());
    result.per_expected = permanent_exact_rational(a);
    try {
        const auto q = bw_reconstruct(tr, n);
        result.per_recovered = q[0];
        result.matches = (result.per_recovered == result.per_expected);
    } catch (const TooManyErrors&) {
        result.decode_failed = true;
        result.matches = false;
    }
    return result;
}

}  // namespace perm
