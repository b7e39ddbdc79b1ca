#pragma once

#include <cstdint>
#include <vector>

#include "perm/gaussian_rational.hpp"

namespace perm {

// Evaluation transcript of the simulated permanent oracle. The promise model
// requires |corrupted| < (m - degree)/2 for guaranteed recovery;
// corrupted_indices is ground-truth bookkeeping for tests, never consulted by
// the decoder.
struct OracleTranscript {
    std::vector<mpq_class> xs;            // pairwise distinct evaluation points
    std::vector<GaussianRational> ys;
    std::vector<int> corrupted_indices;
};

// Berlekamp-Welch over Q(i): exact reconstruction of the degree-`degree`
// polynomial when more than (m+degree)/2 transcript values are correct.
// Solves the homogeneous system N(x_i) = y_i E(x_i) for an error locator E
// (assumed error count cascading e_max..0) and divides exactly. Throws
// TooManyErrors when no candidate passes verification.
std::vector<GaussianRational> bw_reconstruct(const OracleTranscript& transcript, int degree);

struct ReductionDemoResult {
    GaussianRational per_recovered;
    GaussianRational per_expected;
    bool matches = false;
    bool decode_failed = false;  // decoder reported TooManyErrors
    int corrupted = 0;
};

// Simulates the oracle q(mu_i) = Per(A + J mu_i) at mu_i = 1..m with random
// corruptions at the given rate, reconstructs q, and compares the constant
// term against the exact permanent.
ReductionDemoResult reduction_demo(const RationalComplexMatrix& a, int m, const mpq_class& rate,
                                   std::uint64_t seed);

// Builds the exact transcript for A at mu = 1..m and corrupts exactly the
// given indices (adds a nonzero seeded perturbation). Exposed for boundary
// tests around the decoding radius.
OracleTranscript make_transcript(const RationalComplexMatrix& a, int m,
                                 const std::vector<int>& corrupt_indices, std::uint64_t seed);

}  // namespace perm
