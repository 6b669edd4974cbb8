#include "spca/numlin.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <cmath>

namespace spca::numlin {

namespace {

// Flip each column of v so its largest-magnitude entry is positive; u columns
// follow so the product is unchanged.
void fix_signs(Matrix& u, Matrix& v) {
    for (Eigen::Index j = 0; j < v.cols(); ++j) {
        Eigen::Index imax;
        v.col(j).cwiseAbs().maxCoeff(&imax);
        if (v(imax, j) < 0.0) {
            v.col(j) = -v.col(j);
            u.col(j) = -u.col(j);
        }
    }
}

}  // namespace

ThinSvd thin_svd(const Matrix& m, Eigen::Index k) {
    if (k < 1 || k > std::min(m.rows(), m.cols()))
        throw std::invalid_argument("thin_svd: k out of range");
    require_finite(m, "thin_svd");

    Eigen::BDCSVD<Matrix> svd(m, Eigen::ComputeThinU | Eigen::ComputeThinV);
    if (svd.info() != Eigen::Success) throw NonConvergence("thin_svd: SVD failed");

    Matrix u = svd.matrixU().leftCols(k);
    Matrix v = svd.matrixV().leftCols(k);
    fix_signs(u, v);

    ThinSvd out;
    out.u = std::move(u);
    out.singular_values = svd.singularValues().head(k);
    out.vt = v.transpose();
    return out;
}

SymEig sym_eig(const Matrix& m) {
    if (m.rows() != m.cols()) throw DimensionMismatch("sym_eig: not square");
    require_finite(m, "sym_eig");

    Eigen::SelfAdjointEigenSolver<Matrix> es(m);
    if (es.info() != Eigen::Success) throw NonConvergence("sym_eig: eigensolver failed");

    // Eigen sorts ascending; we want nonincreasing.
    const Eigen::Index n = m.rows();
    SymEig out;
    out.eigenvalues = es.eigenvalues().reverse();
    out.eigenvectors = es.eigenvectors().rowwise().reverse();
    for (Eigen::Index j = 0; j < n; ++j) {
        Eigen::Index imax;
        out.eigenvectors.col(j).cwiseAbs().maxCoeff(&imax);
        if (out.eigenvectors(imax, j) < 0.0) out.eigenvectors.col(j) = -out.eigenvectors.col(j);
    }
    return out;
}

Matrix inv_sqrt_psd(const Matrix& m, double rank_tol) {
    if (m.rows() != m.cols()) throw DimensionMismatch("inv_sqrt_psd: not square");
    const double scale = m.cwiseAbs().maxCoeff();
    if ((m - m.transpose()).cwiseAbs().maxCoeff() > 1e-10 * std::max(1.0, scale))
        throw std::invalid_argument("inv_sqrt_psd: not symmetric");

    SymEig eig = sym_eig(Matrix(0.5 * (m + m.transpose())));
    const double lmax = eig.eigenvalues(0);
    const double lmin = eig.eigenvalues(eig.eigenvalues.size() - 1);
    if (lmax <= 0.0 || lmin <= rank_tol * lmax)
        throw RankCollapse("inv_sqrt_psd: spectrum below rank tolerance");

    Vector d = eig.eigenvalues.array().rsqrt();
    return eig.eigenvectors * d.asDiagonal() * eig.eigenvectors.transpose();
}

Matrix polar_orth(const Matrix& m, double rank_tol) {
    if (m.rows() < m.cols()) throw DimensionMismatch("polar_orth: expects tall-thin input");
    require_finite(m, "polar_orth");

    Eigen::BDCSVD<Matrix> svd(m, Eigen::ComputeThinU | Eigen::ComputeThinV);
    if (svd.info() != Eigen::Success) throw NonConvergence("polar_orth: SVD failed");
    const auto& sv = svd.singularValues();
    if (sv(0) <= 0.0 || sv(sv.size() - 1) <= rank_tol * sv(0))
        throw RankCollapse("polar_orth: rank-deficient input");
    return svd.matrixU() * svd.matrixV().transpose();
}

Matrix projector(const Matrix& v) {
    require_finite(v, "projector");
    return v * v.transpose();
}

double subspace_loss(const Matrix& v, const Matrix& v_hat) {
    if (v.rows() != v_hat.rows() || v.cols() != v_hat.cols())
        throw DimensionMismatch("subspace_loss: shape mismatch");
    const double r = static_cast<double>(v.cols());
    const double cross = (v.transpose() * v_hat).squaredNorm();
    return std::sqrt(std::max(0.0, 2.0 * r - 2.0 * cross));
}

double top_singular_value_squared(const Matrix& x) {
    if (x.size() == 0) throw std::invalid_argument("top_singular_value_squared: empty input");
    Vector v = Vector::Ones(x.cols()).normalized();
    double lambda = 0.0;
    for (int it = 0; it < 10000; ++it) {
        Vector w = x.transpose() * (x * v);
        const double nw = w.norm();
        if (nw == 0.0) return 0.0;
        w /= nw;
        const double step = (v - w).norm();
        v = w;
        lambda = nw;
        if (step < 1e-14) break;
    }
    return lambda;
}

}  // namespace spca::numlin
