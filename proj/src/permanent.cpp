#include "perm/permanent.hpp"

#include <algorithm>
#include <bit>
#include <numeric>
#include <vector>

#include "perm/errors.hpp"

namespace perm {

Complex permanent_naive(const ComplexMatrix& a) {
    const int n = a.dim();
    if (n > 10) throw DimensionTooLarge(n, 10, "permanent_naive");
    std::vector<int> sigma(n);
    std::iota(sigma.begin(), sigma.end(), 0);
    KahanComplex acc;
    do {
        Complex prod{1.0, 0.0};
        for (int i = 0; i < n; ++i) prod *= a(i, sigma[i]);
        acc.add(prod);
    } while (std::next_permutation(sigma.begin(), sigma.end()));
    return acc.value();
}

namespace detail {

Complex ryser_raw(const Complex* data, int n) {
    if (n == 1) return data[0];
    std::vector<Complex> row_sum(n, Complex{0.0, 0.0});
    KahanComplex acc;
    int popcount = 0;
    const std::uint64_t count = 1ULL << n;
    std::uint64_t gray_prev = 0;
    for (std::uint64_t k = 1; k < count; ++k) {
        const std::uint64_t gray = k ^ (k >> 1);
        const std::uint64_t flipped = gray ^ gray_prev;
        const int j = std::countr_zero(flipped);
        if (gray & flipped) {
            for (int i = 0; i < n; ++i) row_sum[i] += data[static_cast<std::size_t>(i) * n + j];
            ++popcount;
        } else {
            for (int i = 0; i < n; ++i) row_sum[i] -= data[static_cast<std::size_t>(i) * n + j];
            --popcount;
        }
        gray_prev = gray;

        Complex prod{1.0, 0.0};
        for (int i = 0; i < n; ++i) prod *= row_sum[i];
        acc.add((popcount & 1) ? -prod : prod);
    }
    const Complex total = acc.value();
    return (n & 1) ? -total : total;
}

}  // namespace detail

Complex permanent_ryser(const ComplexMatrix& a, int max_n) {
    const int n = a.dim();
    if (n > max_n) throw DimensionTooLarge(n, max_n, "permanent_ryser");
    return detail::ryser_raw(a.entries().data(), n);
}

}  // namespace perm
