#pragma once

#include "spca/rng.hpp"
#include "spca/types.hpp"

namespace spca::init {

enum class CthrRule { Theory, Practice, Explicit };

struct InitConfig {
    CthrRule c_thr_rule = CthrRule::Practice;
    double c_thr_value = 0.0;  // used when rule == Explicit; must be > 0
    bool split_data = false;
    Eigen::Index r = 1;
    // If the surviving support has fewer than r columns, widen it to the r
    // largest-norm columns instead of erroring.
    bool widen_deficient_support = false;
};

// Theory: n + 4 sqrt(p n); Practice: n + sqrt(p n).
double c_thr_for(const InitConfig& cfg, Eigen::Index n, Eigen::Index p);

// Random disjoint row partition with |n1 - n2| <= 1 covering all rows.
std::pair<Matrix, Matrix> split_rows(const Matrix& x, RngStream& stream);

// Column indices with squared column norm strictly above c_thr, sorted.
IndexSet dt_support(const Matrix& x, double c_thr);

// Diagonal-thresholding initializer: zero off the estimated support; on the
// support, the top-r right singular vectors of the column-restricted data.
Matrix dt_init(const Matrix& x, const InitConfig& cfg);

}  // namespace spca::init
