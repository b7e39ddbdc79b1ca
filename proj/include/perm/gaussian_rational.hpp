#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <gmpxx.h>

namespace perm {

// Exact element of Q(i): re + im*i with arbitrary-precision rational parts.
// mpq_class keeps values in canonical reduced form.
struct GaussianRational {
    mpq_class re{0};
    mpq_class im{0};

    GaussianRational() = default;
    GaussianRational(mpq_class r, mpq_class i) : re(std::move(r)), im(std::move(i)) {}
    explicit GaussianRational(long v) : re(v), im(0) {}

    bool is_zero() const { return sgn(re) == 0 && sgn(im) == 0; }
    std::string str() const;

    friend GaussianRational operator+(const GaussianRational& a, const GaussianRational& b) {
        return {a.re + b.re, a.im + b.im};
    }
    friend GaussianRational operator-(const GaussianRational& a, const GaussianRational& b) {
        return {a.re - b.re, a.im - b.im};
    }
    friend GaussianRational operator-(const GaussianRational& a) { return {-a.re, -a.im}; }
    friend GaussianRational operator*(const GaussianRational& a, const GaussianRational& b) {
        return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
    }
    friend GaussianRational operator/(const GaussianRational& a, const GaussianRational& b) {
        const mpq_class norm = b.re * b.re + b.im * b.im;
        return {(a.re * b.re + a.im * b.im) / norm, (a.im * b.re - a.re * b.im) / norm};
    }
    friend bool operator==(const GaussianRational& a, const GaussianRational& b) {
        return a.re == b.re && a.im == b.im;
    }
    GaussianRational& operator+=(const GaussianRational& b) { return *this = *this + b; }
    GaussianRational& operator*=(const GaussianRational& b) { return *this = *this * b; }
};

class RationalComplexMatrix {
public:
    RationalComplexMatrix(int n, std::vector<GaussianRational> entries);

    int dim() const noexcept { return n_; }
    const GaussianRational& operator()(int i, int j) const {
        return entries_[static_cast<std::size_t>(i) * n_ + j];
    }

    // Seeded small-denominator random matrix (numerators in [-8, 8],
    // denominators in [1, 4]); deterministic in (seed, trial).
    static RationalComplexMatrix random_small(int n, std::uint64_t seed, std::uint64_t trial = 0);

private:
    int n_;
    std::vector<GaussianRational> entries_;
};

// Exact Ryser over Q(i); guarded at n <= 8 (denominator blowup).
GaussianRational permanent_exact_rational(const RationalComplexMatrix& a);

// q(mu) = Per(A + mu J), exact.
GaussianRational q_poly_eval(const RationalComplexMatrix& a, const mpq_class& mu);

double to_double(const mpq_class& q);
std::complex<double> to_complex(const GaussianRational& v);

}  // namespace perm
