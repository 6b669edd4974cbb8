#pragma once

#include "spca/rng.hpp"
#include "spca/types.hpp"

namespace spca::model {

struct SpikedSpec {
    Eigen::Index n = 0;  // samples
    Eigen::Index p = 0;  // ambient dimension
    Eigen::Index r = 0;  // rank
    Eigen::Index s = 0;  // support size
    Vector betas;        // length r, strictly positive, nonincreasing
    std::uint64_t seed = 0;

    void validate() const;
};

struct GroundTruth {
    Matrix v;          // p x r, orthonormal columns, zero rows off support
    IndexSet support;  // sorted, size s
};

// Uniform random s-subset support; v restricted to the support is the
// orthonormal QR factor (nonnegative-diagonal convention) of an s x r
// standard-Gaussian matrix.
GroundTruth sample_ground_truth(const SpikedSpec& spec, RngStream& stream);

// X = U diag(betas) v' + E with U (n x r) and E (n x p) i.i.d. N(0,1),
// drawn in that order, row-major.
Matrix sample_data(const SpikedSpec& spec, const GroundTruth& truth, RngStream& stream);

// Population covariance implied by the generator:
// Sigma = V diag(beta^2 + 1) V' + (I - V V').
Matrix population_covariance(const SpikedSpec& spec, const GroundTruth& truth);

}  // namespace spca::model
