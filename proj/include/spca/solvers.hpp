#pragma once

#include "spca/numlin.hpp"
#include "spca/types.hpp"

namespace spca::solvers {

struct SolverParams {
    double lambda0 = 0.0;  // ridge weight
    double lambda1 = 0.0;  // l1 weight
    int max_iter = 200;
    // Subspace-change stopping threshold; 0 means "use 1/(n*p)".
    double stop_tol = 0.0;
    double cd_tol = 1e-8;
    int cd_max_sweeps = 1000;
    double rank_tol = numlin::kDefaultRankTol;

    void validate() const;
    double effective_stop_tol(Eigen::Index n, Eigen::Index p) const;
};

enum class Termination { SubspaceTol, MaxIter, RankCollapse };

const char* to_string(Termination t);

struct SolveResult {
    Matrix b_hat;
    Matrix v_hat;  // orthonormalized b_hat (polar factor); empty on rank collapse
    std::vector<double> objective_trace;  // one value per outer iteration, after the B-update
    // Objective evaluated right after each A-update, i.e. f(A^{k+1}, B^{k});
    // interleaving with objective_trace gives the full descent sequence.
    std::vector<double> half_trace;
    int iters = 0;
    bool converged = false;
    Termination termination = Termination::MaxIter;
};

// S(x, a) = sign(x) * max(|x| - a, 0).
double soft_threshold(double x, double a);

// A = polar factor of X'X B; orthonormal columns.
Matrix update_a(const Matrix& x, const Matrix& b, double rank_tol = numlin::kDefaultRankTol);

// Elastic-net B-update: column j minimizes
// ||X b_j - X a_j||^2 + lambda0 ||b_j||^2 + lambda1 ||b_j||_1,
// solved by cyclic coordinate descent warm-started from `warm`.
Matrix update_b_spca(const Matrix& x, const Matrix& a, const SolverParams& params,
                     const Matrix& warm);

// Closed-form B-update: entrywise soft-threshold of X'X A at lambda1 / 2.
Matrix update_b_itps(const Matrix& x, const Matrix& a, double lambda1);

// f(A, B) = sum_i ||x_i - A B' x_i||^2 + lambda0 ||B||_F^2 + lambda1 ||B||_1.
double objective_f(const Matrix& x, const Matrix& a, const Matrix& b, const SolverParams& params);

// f~(A, B) = -2 tr(A' X'X B) + ||B||_F^2 + lambda1 ||B||_1.
double objective_f_tilde(const Matrix& x, const Matrix& a, const Matrix& b, double lambda1);

// Distance from zero to the subgradient of f in B (max over entries), plus the
// A-side stationarity defect ||A - polar(X'X B)||_F.
double kkt_residual_spca(const Matrix& x, const Matrix& a, const Matrix& b,
                         const SolverParams& params);

SolveResult run_spca(const Matrix& x, const Matrix& b0, const SolverParams& params);
SolveResult run_itps(const Matrix& x, const Matrix& b0, const SolverParams& params);

}  // namespace spca::solvers
