#pragma once

#include <vector>

#include "perm/complex_matrix.hpp"

namespace perm {

double factorial_double(int n);
double log_factorial(int n);

// The interpolating polynomial g_A(z) = Per(J + z A), degree n.
// Coefficients are stored normalized by n! (hat{c}_k = c_k / n!) next to the
// scalar log_scale = ln(n!), so dimensions up to 22 cause no overflow.
// True coefficients are hat{c}_k * exp(log_scale); g(0) = n!, c_n = Per(A).
class InterpPolynomial {
public:
    static InterpPolynomial from_matrix(const ComplexMatrix& a, int max_n = 22);
    // Arbitrary coefficient list c_0..c_n (stored with log_scale = 0).
    static InterpPolynomial from_coefficients(std::vector<Complex> coeffs);
    static InterpPolynomial from_normalized(std::vector<Complex> coeffs, double log_scale);

    int degree() const noexcept { return static_cast<int>(coeffs_.size()) - 1; }
    const std::vector<Complex>& normalized_coeffs() const noexcept { return coeffs_; }
    Complex normalized_coeff(int k) const { return coeffs_[k]; }
    Complex coeff(int k) const;
    double log_scale() const noexcept { return log_scale_; }
    double scale_hint() const noexcept { return scale_hint_; }

    Complex eval(Complex z) const;             // true scale
    Complex eval_normalized(Complex z) const;  // Horner on normalized coefficients
    Complex eval_normalized_derivative(Complex z) const;

private:
    InterpPolynomial(std::vector<Complex> coeffs, double log_scale);
    std::vector<Complex> coeffs_;
    double log_scale_;
    double scale_hint_;
};

// Polynomial-Ryser: run the inclusion-exclusion with each row sum a degree-1
// polynomial in z, multiplying n linear factors per subset. O(2^n n^2) for
// all n+1 coefficients.
InterpPolynomial coeffs_via_ryser(const ComplexMatrix& a, int max_n = 22);

// Submatrix expansion c_k = (n-k)! sum_{|S|=|T|=k} Per(A[S,T]); returns true
// coefficients c_0..c_{k_max}. Cross-validates the polynomial-Ryser path and
// mirrors the n^{O(l)} derivative oracle.
std::vector<Complex> coeffs_via_submatrices(const ComplexMatrix& a, int k_max,
                                            double op_budget = 2e9);

struct RootSet {
    std::vector<Complex> roots;
    std::vector<double> residuals;  // backward-error residual per root
    bool converged = true;
    int sweeps = 0;
};

// Aberth-Ehrlich simultaneous iteration. Deterministic: fixed circular
// initialization (radius (|c0/cn|)^{1/n} * 1.1, angular offset 0.37 rad),
// per-root stop when the Newton correction falls below 1e-13*(1+|z|).
// After 500 sweeps the best iterate is returned with converged=false.
RootSet find_roots(const InterpPolynomial& p);

int count_roots_in_disk(const RootSet& rs, double r);

}  // namespace perm
