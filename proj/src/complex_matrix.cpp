#include "perm/complex_matrix.hpp"

#include <cmath>
#include <utility>

#include "perm/errors.hpp"
#include "perm/rng.hpp"

namespace perm {

ComplexMatrix::ComplexMatrix(int n, std::vector<Complex> entries)
    : n_(n), entries_(std::move(entries)) {
    if (n < 1) throw InvalidArgument("matrix dimension must be >= 1");
    if (entries_.size() != static_cast<std::size_t>(n) * n)
        throw InvalidArgument("entry count does not match n*n");
    for (const Complex& e : entries_)
        if (!std::isfinite(e.real()) || !std::isfinite(e.imag()))
            throw InvalidArgument("matrix entries must be finite");
}

std::string ensemble_kind_name(EnsembleKind kind) {
    return kind == EnsembleKind::GaussianComplex ? "gaussian" : "bernoulli";
}

EnsembleKind ensemble_kind_from_name(const std::string& name) {
    if (name == "gaussian") return EnsembleKind::GaussianComplex;
    if (name == "bernoulli") return EnsembleKind::BernoulliBiased;
    throw InvalidArgument("unknown ensemble kind: " + name);
}

ComplexMatrix sample(const EnsembleSpec& spec, std::uint64_t trial_index) {
    if (spec.n < 1) throw InvalidArgument("ensemble n must be >= 1");
    const std::size_t count = static_cast<std::size_t>(spec.n) * spec.n;
    std::vector<Complex> entries(count);
    if (spec.kind == EnsembleKind::GaussianComplex) {
        for (std::size_t e = 0; e < count; ++e)
            entries[e] = spec.mu + rng::standard_complex_normal(spec.seed, trial_index, e);
    } else {
        for (std::size_t e = 0; e < count; ++e)
            entries[e] = rng::fair_coin(spec.seed, trial_index, e) ? Complex(1.0, 0.0)
                                                                   : Complex(-1.0 + spec.mu, 0.0);
    }
    return {spec.n, std::move(entries)};
}

ComplexMatrix all_ones(int n) {
    if (n < 1) throw InvalidArgument("all_ones: n must be >= 1");
    return {n, std::vector<Complex>(static_cast<std::size_t>(n) * n, Complex(1.0, 0.0))};
}

ComplexMatrix affine_combine(Complex j_scale, const ComplexMatrix& a, Complex z) {
    const int n = a.dim();
    std::vector<Complex> entries(static_cast<std::size_t>(n) * n);
    for (std::size_t e = 0; e < entries.size(); ++e)
        entries[e] = j_scale + z * a.entries()[e];
    return {n, std::move(entries)};
}

}  // namespace perm
