#pragma once

#include "spca/numlin.hpp"
#include "spca/types.hpp"

namespace spca::metrics {

inline constexpr double kDefaultRowTol = 1e-12;

struct TrialMetrics {
    double tpr = 0.0;
    double fpr = 0.0;
    double loss = 0.0;
    int iters = 0;
    double wall_seconds = 0.0;
    bool converged = false;
};

// Indices of rows with Euclidean norm strictly above row_tol, sorted.
IndexSet support_of(const Matrix& b, double row_tol = kDefaultRowTol);

// TPR = |S ∩ S_hat| / |S|; FPR = |S_hat \ S| / (p - |S|).
// The FPR denominator follows the magnitudes of the reported tables rather
// than the displayed card(S) formula; see tpr_fpr's p argument.
std::pair<double, double> tpr_fpr(const IndexSet& est, const IndexSet& truth, Eigen::Index p);

// Re-export: the loss is numlin::subspace_loss, single implementation.
inline double subspace_loss(const Matrix& v, const Matrix& v_hat) {
    return numlin::subspace_loss(v, v_hat);
}

}  // namespace spca::metrics
