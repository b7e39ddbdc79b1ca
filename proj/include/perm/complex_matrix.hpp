#pragma once

#include <complex>
#include <cstdint>
#include <string>
#include <vector>

namespace perm {

using Complex = std::complex<double>;

// Dense n x n complex matrix, immutable after construction. Row-major.
class ComplexMatrix {
public:
    ComplexMatrix(int n, std::vector<Complex> entries);

    int dim() const noexcept { return n_; }
    const Complex& operator()(int i, int j) const { return entries_[static_cast<std::size_t>(i) * n_ + j]; }
    const std::vector<Complex>& entries() const noexcept { return entries_; }

private:
    int n_;
    std::vector<Complex> entries_;
};

enum class EnsembleKind { GaussianComplex, BernoulliBiased };

// i.i.d. entry ensemble. GaussianComplex: mean mu, E|X-mu|^2 = 1 (re/im parts
// each N(0,1/2)). BernoulliBiased: -1+mu w.p. 1/2, 1 w.p. 1/2.
struct EnsembleSpec {
    EnsembleKind kind = EnsembleKind::GaussianComplex;
    double mu = 0.0;
    int n = 1;
    std::uint64_t seed = 0;
};

std::string ensemble_kind_name(EnsembleKind kind);
EnsembleKind ensemble_kind_from_name(const std::string& name);

// Deterministic function of (spec.seed, trial_index); bit-identical across
// runs and thread counts.
ComplexMatrix sample(const EnsembleSpec& spec, std::uint64_t trial_index);

ComplexMatrix all_ones(int n);

// J_scale * J + z * A, entrywise.
ComplexMatrix affine_combine(Complex j_scale, const ComplexMatrix& a, Complex z);

}  // namespace perm
