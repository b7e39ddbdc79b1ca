#include "perm/gaussian_rational.hpp"

#include <complex>
#include <utility>

#include "perm/errors.hpp"
#include "perm/rng.hpp"

namespace perm {

std::string GaussianRational::str() const {
    std::string out = re.get_str();
    if (sgn(im) != 0) {
        out += (sgn(im) > 0 ? "+" : "-");
        mpq_class a = abs(im);
        out += a.get_str() + "i";
    }
    return out;
}

RationalComplexMatrix::RationalComplexMatrix(int n, std::vector<GaussianRational> entries)
    : n_(n), entries_(std::move(entries)) {
    if (n < 1) throw InvalidArgument("matrix dimension must be >= 1");
    if (entries_.size() != static_cast<std::size_t>(n) * n)
        throw InvalidArgument("entry count does not match n*n");
}

RationalComplexMatrix RationalComplexMatrix::random_small(int n, std::uint64_t seed,
                                                          std::uint64_t trial) {
    std::vector<GaussianRational> entries;
    entries.reserve(static_cast<std::size_t>(n) * n);
    for (std::size_t e = 0; e < static_cast<std::size_t>(n) * n; ++e) {
        const std::uint64_t h0 = rng::counter_hash(seed, trial, e, 10);
        const std::uint64_t h1 = rng::counter_hash(seed, trial, e, 11);
        const long re_num = static_cast<long>(h0 % 17) - 8;
        const long re_den = static_cast<long>((h0 >> 32) % 4) + 1;
        const long im_num = static_cast<long>(h1 % 17) - 8;
        const long im_den = static_cast<long>((h1 >> 32) % 4) + 1;
        mpq_class re(re_num, re_den), im(im_num, im_den);
        re.canonicalize();
        im.canonicalize();
        entries.emplace_back(std::move(re), std::move(im));
    }
    return {n, std::move(entries)};
}

GaussianRational permanent_exact_rational(const RationalComplexMatrix& a) {
    const int n = a.dim();
    if (n > 8) throw DimensionTooLarge(n, 8, "permanent_exact_rational");
    if (n == 1) return a(0, 0);

    std::vector<GaussianRational> row_sum(n);
    GaussianRational total;
    int popcount = 0;
    std::uint64_t gray_prev = 0;
    for (std::uint64_t k = 1; k < (1ULL << n); ++k) {
        const std::uint64_t gray = k ^ (k >> 1);
        const std::uint64_t flipped = gray ^ gray_prev;
        int j = 0;
        while (!((flipped >> j) & 1)) ++j;
        if (gray & flipped) {
            for (int i = 0; i < n; ++i) row_sum[i] += a(i, j);
            ++popcount;
        } else {
            for (int i = 0; i < n; ++i) row_sum[i] += -a(i, j);
            --popcount;
        }
        gray_prev = gray;

        GaussianRational prod{mpq_class(1), mpq_class(0)};
        for (int i = 0; i < n; ++i) prod *= row_sum[i];
        total += (popcount & 1) ? -prod : prod;
    }
    return (n & 1) ? -total : total;
}

GaussianRational q_poly_eval(const RationalComplexMatrix& a, const mpq_class& mu) {
    const int n = a.dim();
    std::vector<GaussianRational> shifted;
    shifted.reserve(static_cast<std::size_t>(n) * n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) shifted.push_back(a(i, j) + GaussianRational{mu, mpq_class(0)});
    return permanent_exact_rational({n, std::move(shifted)});
}

double to_double(const mpq_class& q) { return q.get_d(); }

std::complex<double> to_complex(const GaussianRational& v) {
    return {v.re.get_d(), v.im.get_d()};
}

}  // namespace perm
