#include "spca/model.hpp"

#include <Eigen/QR>
#include <algorithm>
#include <numeric>

namespace spca::model {

void SpikedSpec::validate() const {
    if (n < 1) throw std::invalid_argument("SpikedSpec: n >= 1 required");
    if (r < 1 || r > s || s > p) throw std::invalid_argument("SpikedSpec: need 1 <= r <= s <= p");
    if (betas.size() != r) throw std::invalid_argument("SpikedSpec: betas length must equal r");
    for (Eigen::Index i = 0; i < r; ++i) {
        if (!(betas(i) > 0.0)) throw std::invalid_argument("SpikedSpec: betas must be positive");
        if (i > 0 && betas(i) > betas(i - 1))
            throw std::invalid_argument("SpikedSpec: betas must be nonincreasing");
    }
}

GroundTruth sample_ground_truth(const SpikedSpec& spec, RngStream& stream) {
    spec.validate();

    // Partial Fisher-Yates for a uniform s-subset of {0..p-1}.
    std::vector<Eigen::Index> idx(spec.p);
    std::iota(idx.begin(), idx.end(), Eigen::Index{0});
    for (Eigen::Index i = 0; i < spec.s; ++i) {
        const auto j = i + static_cast<Eigen::Index>(stream.next_below(static_cast<std::uint64_t>(spec.p - i)));
        std::swap(idx[i], idx[j]);
    }
    IndexSet support(idx.begin(), idx.begin() + spec.s);
    std::sort(support.begin(), support.end());

    Matrix g(spec.s, spec.r);
    for (Eigen::Index i = 0; i < spec.s; ++i)
        for (Eigen::Index j = 0; j < spec.r; ++j) g(i, j) = stream.normal();

    Eigen::HouseholderQR<Matrix> qr(g);
    Matrix q = qr.householderQ() * Matrix::Identity(spec.s, spec.r);
    Matrix rfac = qr.matrixQR().topRows(spec.r).triangularView<Eigen::Upper>();
    for (Eigen::Index j = 0; j < spec.r; ++j)
        if (rfac(j, j) < 0.0) q.col(j) = -q.col(j);

    GroundTruth truth;
    truth.v = Matrix::Zero(spec.p, spec.r);
    for (Eigen::Index i = 0; i < spec.s; ++i) truth.v.row(support[i]) = q.row(i);
    truth.support = std::move(support);
    return truth;
}

Matrix sample_data(const SpikedSpec& spec, const GroundTruth& truth, RngStream& stream) {
    spec.validate();
    if (truth.v.rows() != spec.p || truth.v.cols() != spec.r)
        throw DimensionMismatch("sample_data: truth inconsistent with spec");

    Matrix u(spec.n, spec.r);
    for (Eigen::Index i = 0; i < spec.n; ++i)
        for (Eigen::Index j = 0; j < spec.r; ++j) u(i, j) = stream.normal();

    Matrix x(spec.n, spec.p);
    for (Eigen::Index i = 0; i < spec.n; ++i)
        for (Eigen::Index j = 0; j < spec.p; ++j) x(i, j) = stream.normal();

    x.noalias() += u * spec.betas.asDiagonal() * truth.v.transpose();
    return x;
}

Matrix population_covariance(const SpikedSpec& spec, const GroundTruth& truth) {
    Matrix pi = truth.v * truth.v.transpose();
    Vector spikes = spec.betas.array().square() + 1.0;
    return truth.v * spikes.asDiagonal() * truth.v.transpose() + (Matrix::Identity(spec.p, spec.p) - pi);
}

}  // namespace spca::model
