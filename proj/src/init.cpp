#include "spca/init.hpp"

#include "spca/numlin.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace spca::init {

double c_thr_for(const InitConfig& cfg, Eigen::Index n, Eigen::Index p) {
    const double nn = static_cast<double>(n);
    const double pp = static_cast<double>(p);
    switch (cfg.c_thr_rule) {
        case CthrRule::Theory: return nn + 4.0 * std::sqrt(pp * nn);
        case CthrRule::Practice: return nn + std::sqrt(pp * nn);
        case CthrRule::Explicit:
            if (!(cfg.c_thr_value > 0.0))
                throw std::invalid_argument("InitConfig: explicit c_thr must be positive");
            return cfg.c_thr_value;
    }
    throw std::logic_error("c_thr_for: bad rule");
}

std::pair<Matrix, Matrix> split_rows(const Matrix& x, RngStream& stream) {
    const Eigen::Index n = x.rows();
    if (n < 2) throw std::invalid_argument("split_rows: n >= 2 required");

    std::vector<Eigen::Index> perm(n);
    std::iota(perm.begin(), perm.end(), Eigen::Index{0});
    for (Eigen::Index i = 0; i + 1 < n; ++i) {
        const auto j = i + static_cast<Eigen::Index>(stream.next_below(static_cast<std::uint64_t>(n - i)));
        std::swap(perm[i], perm[j]);
    }

    const Eigen::Index n1 = (n + 1) / 2;
    Matrix first(n1, x.cols()), second(n - n1, x.cols());
    for (Eigen::Index i = 0; i < n1; ++i) first.row(i) = x.row(perm[i]);
    for (Eigen::Index i = n1; i < n; ++i) second.row(i - n1) = x.row(perm[i]);
    return {std::move(first), std::move(second)};
}

IndexSet dt_support(const Matrix& x, double c_thr) {
    if (!(c_thr > 0.0)) throw std::invalid_argument("dt_support: c_thr must be positive");
    IndexSet support;
    for (Eigen::Index j = 0; j < x.cols(); ++j)
        if (x.col(j).squaredNorm() > c_thr) support.push_back(j);
    if (support.empty()) throw EmptySupport("dt_support: no column exceeds the threshold");
    return support;
}

Matrix dt_init(const Matrix& x, const InitConfig& cfg) {
    if (cfg.r < 1) throw std::invalid_argument("dt_init: r >= 1 required");
    IndexSet support = dt_support(x, c_thr_for(cfg, x.rows(), x.cols()));

    if (static_cast<Eigen::Index>(support.size()) < cfg.r) {
        if (!cfg.widen_deficient_support)
            throw RankDeficientSupport("dt_init: estimated support smaller than rank");
        // Widen to the r largest-norm columns.
        std::vector<Eigen::Index> order(x.cols());
        std::iota(order.begin(), order.end(), Eigen::Index{0});
        std::stable_sort(order.begin(), order.end(), [&](Eigen::Index a, Eigen::Index b) {
            return x.col(a).squaredNorm() > x.col(b).squaredNorm();
        });
        support.assign(order.begin(), order.begin() + cfg.r);
        std::sort(support.begin(), support.end());
    }

    Matrix restricted(x.rows(), static_cast<Eigen::Index>(support.size()));
    for (std::size_t i = 0; i < support.size(); ++i) restricted.col(static_cast<Eigen::Index>(i)) = x.col(support[i]);

    numlin::ThinSvd svd = numlin::thin_svd(restricted, cfg.r);
    Matrix b0 = Matrix::Zero(x.cols(), cfg.r);
    for (std::size_t i = 0; i < support.size(); ++i)
        b0.row(support[i]) = svd.vt.col(static_cast<Eigen::Index>(i)).transpose();
    return b0;
}

}  // namespace spca::init
