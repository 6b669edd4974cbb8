#pragma once

#include "spca/types.hpp"

namespace spca::numlin {

inline constexpr double kDefaultRankTol = 1e-10;

struct ThinSvd {
    Matrix u;                 // m x k
    Vector singular_values;   // length k, nonincreasing, >= 0
    Matrix vt;                // k x n
};

struct SymEig {
    Vector eigenvalues;   // nonincreasing
    Matrix eigenvectors;  // columns, orthonormal
};

// Top-k singular triplets of m. Each right singular vector is signed so its
// largest-magnitude entry is positive; the left vector is flipped with it.
ThinSvd thin_svd(const Matrix& m, Eigen::Index k);

// Eigendecomposition of a symmetric matrix, eigenvalues sorted nonincreasing.
SymEig sym_eig(const Matrix& m);

// Symmetric P with P m P = I for symmetric positive definite m.
// Throws RankCollapse if lambda_min <= rank_tol * lambda_max.
Matrix inv_sqrt_psd(const Matrix& m, double rank_tol = kDefaultRankTol);

// Orthonormal polar factor of a tall-thin matrix: argmax tr(A'm) over A'A = I,
// equal to m (m'm)^{-1/2}.
Matrix polar_orth(const Matrix& m, double rank_tol = kDefaultRankTol);

// Pi = v v' for v with orthonormal columns.
Matrix projector(const Matrix& v);

// ||Pi_v - Pi_v_hat||_F for orthonormal-column inputs of identical shape.
// Computed as sqrt(2r - 2||v' v_hat||_F^2), avoiding the p x p projectors.
double subspace_loss(const Matrix& v, const Matrix& v_hat);

// Largest squared singular value of x by power iteration on the Gram operator
// v -> x'(x v); matrix-free, no p x p allocation.
double top_singular_value_squared(const Matrix& x);

}  // namespace spca::numlin
