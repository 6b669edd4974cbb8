#include "spca/metrics.hpp"

#include <algorithm>

namespace spca::metrics {

IndexSet support_of(const Matrix& b, double row_tol) {
    if (row_tol < 0.0) throw std::invalid_argument("support_of: negative row_tol");
    IndexSet rows;
    for (Eigen::Index i = 0; i < b.rows(); ++i)
        if (b.row(i).norm() > row_tol) rows.push_back(i);
    return rows;
}

std::pair<double, double> tpr_fpr(const IndexSet& est, const IndexSet& truth, Eigen::Index p) {
    if (truth.empty()) throw std::invalid_argument("tpr_fpr: empty truth support");

    IndexSet hits, extras;
    std::set_intersection(est.begin(), est.end(), truth.begin(), truth.end(),
                          std::back_inserter(hits));
    std::set_difference(est.begin(), est.end(), truth.begin(), truth.end(),
                        std::back_inserter(extras));

    const double tpr = static_cast<double>(hits.size()) / static_cast<double>(truth.size());
    const auto off = p - static_cast<Eigen::Index>(truth.size());
    if (off <= 0 && !extras.empty())
        throw std::invalid_argument("tpr_fpr: false positives with no null variables");
    const double fpr = off > 0 ? static_cast<double>(extras.size()) / static_cast<double>(off) : 0.0;
    return {tpr, fpr};
}

}  // namespace spca::metrics
