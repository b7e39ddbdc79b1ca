#pragma once

#include "perm/complex_matrix.hpp"

namespace perm {

// Compensated (Kahan) accumulator for complex sums; the Ryser
// inclusion-exclusion cancels heavily, so the compensation matters.
class KahanComplex {
public:
    void add(Complex x) {
        const Complex y = x - comp_;
        const Complex t = sum_ + y;
        comp_ = (t - sum_) - y;
        sum_ = t;
    }
    Complex value() const noexcept { return sum_; }

private:
    Complex sum_{0.0, 0.0};
    Complex comp_{0.0, 0.0};
};

// Direct permutation sum, O(n! n). Guarded at n <= 10.
Complex permanent_naive(const ComplexMatrix& a);

// Ryser inclusion-exclusion over column subsets in Gray-code order with
// incremental row-sum updates, O(2^n n). Default cap n <= 30.
Complex permanent_ryser(const ComplexMatrix& a, int max_n = 30);

namespace detail {
// Ryser on a raw row-major n x n buffer (no cap check); shared by the
// submatrix coefficient path.
Complex ryser_raw(const Complex* data, int n);
}  // namespace detail

}  // namespace perm
