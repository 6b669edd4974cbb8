#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace spca {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;
using IndexSet = std::vector<Eigen::Index>;

struct DimensionMismatch : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct NonConvergence : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// The iterate has effectively lost rank: sigma_min <= rank_tol * sigma_max.
struct RankCollapse : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct InnerNonConvergence : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct EmptySupport : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct RankDeficientSupport : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

inline void require_finite(const Matrix& m, const char* what) {
    if (!m.allFinite()) throw std::invalid_argument(std::string(what) + ": non-finite entries");
}

}  // namespace spca
