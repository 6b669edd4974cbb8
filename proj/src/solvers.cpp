#include "spca/solvers.hpp"

#include <cmath>

namespace spca::solvers {

void SolverParams::validate() const {
    if (lambda0 < 0.0 || lambda1 < 0.0) throw std::invalid_argument("SolverParams: negative penalty");
    if (max_iter < 1) throw std::invalid_argument("SolverParams: max_iter >= 1 required");
    if (stop_tol < 0.0 || cd_tol <= 0.0 || rank_tol <= 0.0 || cd_max_sweeps < 1)
        throw std::invalid_argument("SolverParams: bad tolerance");
}

double SolverParams::effective_stop_tol(Eigen::Index n, Eigen::Index p) const {
    return stop_tol > 0.0 ? stop_tol : 1.0 / (static_cast<double>(n) * static_cast<double>(p));
}

const char* to_string(Termination t) {
    switch (t) {
        case Termination::SubspaceTol: return "SubspaceTol";
        case Termination::MaxIter: return "MaxIter";
        case Termination::RankCollapse: return "RankCollapse";
    }
    return "?";
}

double soft_threshold(double x, double a) {
    if (a < 0.0) throw std::invalid_argument("soft_threshold: negative threshold");
    const double shrunk = std::abs(x) - a;
    return shrunk > 0.0 ? (x > 0.0 ? shrunk : -shrunk) : 0.0;
}

namespace {

// Coordinate descent on one elastic-net column against precomputed Gram data.
// gcol = X'X a_j; b is updated in place, z tracks X'X b.
void cd_column(const Matrix& gram, const Vector& gcol, const SolverParams& params,
               Eigen::Ref<Vector> b, Vector& z) {
    const Eigen::Index p = gram.rows();
    const double thr = params.lambda1 / 2.0;
    for (int sweep = 0; sweep < params.cd_max_sweeps; ++sweep) {
        double max_change = 0.0;
        for (Eigen::Index i = 0; i < p; ++i) {
            const double old = b(i);
            const double denom = gram(i, i) + params.lambda0;
            double next = 0.0;
            if (denom > 0.0) {
                const double partial = gcol(i) - (z(i) - gram(i, i) * old);
                next = soft_threshold(partial, thr) / denom;
            }
            if (next != old) {
                z.noalias() += gram.col(i) * (next - old);
                b(i) = next;
                max_change = std::max(max_change, std::abs(next - old));
            }
        }
        if (max_change <= params.cd_tol * (1.0 + b.cwiseAbs().maxCoeff())) return;
    }
    throw InnerNonConvergence("update_b_spca: coordinate descent sweep cap exhausted");
}

Matrix update_b_spca_gram(const Matrix& gram, const Matrix& a, const SolverParams& params,
                          const Matrix& warm) {
    Matrix b = warm;
    Matrix ga = gram * a;
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
        Vector z = gram * b.col(j);
        cd_column(gram, ga.col(j), params, b.col(j), z);
    }
    return b;
}

Matrix update_b_itps_gram(const Matrix& gram, const Matrix& a, double lambda1) {
    Matrix b = gram * a;
    const double thr = lambda1 / 2.0;
    for (Eigen::Index j = 0; j < b.cols(); ++j)
        for (Eigen::Index i = 0; i < b.rows(); ++i) b(i, j) = soft_threshold(b(i, j), thr);
    return b;
}

// f via products with X only: ||X||^2 - 2 tr((XA)'(XB)) + ||XB||^2 + penalties.
double objective_f_products(const Matrix& x, const Matrix& a, const Matrix& b,
                            const SolverParams& params) {
    Matrix xa = x * a;
    Matrix xb = x * b;
    return x.squaredNorm() - 2.0 * xa.cwiseProduct(xb).sum() + xb.squaredNorm() +
           params.lambda0 * b.squaredNorm() + params.lambda1 * b.cwiseAbs().sum();
}

double objective_f_tilde_products(const Matrix& x, const Matrix& a, const Matrix& b,
                                  double lambda1) {
    Matrix xa = x * a;
    Matrix xb = x * b;
    return -2.0 * xa.cwiseProduct(xb).sum() + b.squaredNorm() + lambda1 * b.cwiseAbs().sum();
}

bool has_zero_column(const Matrix& b) {
    for (Eigen::Index j = 0; j < b.cols(); ++j)
        if (b.col(j).cwiseAbs().maxCoeff() == 0.0) return true;
    return false;
}

enum class Method { Spca, Itps };

SolveResult run_alternating(const Matrix& x, const Matrix& b0, const SolverParams& params,
                            Method method) {
    params.validate();
    require_finite(x, "run");
    require_finite(b0, "run: b0");
    if (b0.rows() != x.cols()) throw DimensionMismatch("run: b0 rows must equal data columns");

    const double stop_tol = params.effective_stop_tol(x.rows(), x.cols());
    Matrix gram = x.transpose() * x;

    SolveResult res;
    res.b_hat = b0;
    Matrix b = b0;
    Matrix frame;  // orthonormal basis of the current B column space

    try {
        frame = numlin::polar_orth(b, params.rank_tol);
        res.v_hat = frame;
        for (int k = 0; k < params.max_iter; ++k) {
            Matrix a = numlin::polar_orth(gram * b, params.rank_tol);
            res.half_trace.push_back(method == Method::Spca
                                         ? objective_f_products(x, a, b, params)
                                         : objective_f_tilde_products(x, a, b, params.lambda1));

            Matrix b_next = method == Method::Spca
                                ? update_b_spca_gram(gram, a, params, b)
                                : update_b_itps_gram(gram, a, params.lambda1);
            if (has_zero_column(b_next)) throw RankCollapse("run: B column vanished");

            res.objective_trace.push_back(method == Method::Spca
                                              ? objective_f_products(x, a, b_next, params)
                                              : objective_f_tilde_products(x, a, b_next, params.lambda1));

            Matrix next_frame = numlin::polar_orth(b_next, params.rank_tol);
            const double change = numlin::subspace_loss(frame, next_frame);
            b = std::move(b_next);
            frame = std::move(next_frame);
            res.b_hat = b;
            res.v_hat = frame;
            res.iters = k + 1;
            if (change <= stop_tol) {
                res.converged = true;
                res.termination = Termination::SubspaceTol;
                return res;
            }
        }
        res.termination = Termination::MaxIter;
    } catch (const RankCollapse&) {
        // Keep the last valid iterate attached for diagnosis.
        res.converged = false;
        res.termination = Termination::RankCollapse;
    }
    return res;
}

}  // namespace

Matrix update_a(const Matrix& x, const Matrix& b, double rank_tol) {
    return numlin::polar_orth(x.transpose() * (x * b), rank_tol);
}

Matrix update_b_spca(const Matrix& x, const Matrix& a, const SolverParams& params,
                     const Matrix& warm) {
    params.validate();
    if (warm.rows() != x.cols() || warm.cols() != a.cols())
        throw DimensionMismatch("update_b_spca: warm start shape");
    Matrix gram = x.transpose() * x;
    return update_b_spca_gram(gram, a, params, warm);
}

Matrix update_b_itps(const Matrix& x, const Matrix& a, double lambda1) {
    Matrix gram = x.transpose() * x;
    return update_b_itps_gram(gram, a, lambda1);
}

double objective_f(const Matrix& x, const Matrix& a, const Matrix& b, const SolverParams& params) {
    return objective_f_products(x, a, b, params);
}

double objective_f_tilde(const Matrix& x, const Matrix& a, const Matrix& b, double lambda1) {
    return objective_f_tilde_products(x, a, b, lambda1);
}

double kkt_residual_spca(const Matrix& x, const Matrix& a, const Matrix& b,
                         const SolverParams& params) {
    Matrix gram = x.transpose() * x;
    Matrix grad = 2.0 * (gram * (b - a)) + 2.0 * params.lambda0 * b;
    double worst = 0.0;
    for (Eigen::Index j = 0; j < b.cols(); ++j) {
        for (Eigen::Index i = 0; i < b.rows(); ++i) {
            double d;
            if (b(i, j) != 0.0) {
                d = std::abs(grad(i, j) + params.lambda1 * (b(i, j) > 0.0 ? 1.0 : -1.0));
            } else {
                d = std::max(0.0, std::abs(grad(i, j)) - params.lambda1);
            }
            worst = std::max(worst, d);
        }
    }
    const double a_defect = (a - numlin::polar_orth(gram * b, params.rank_tol)).norm();
    return worst + a_defect;
}

SolveResult run_spca(const Matrix& x, const Matrix& b0, const SolverParams& params) {
    return run_alternating(x, b0, params, Method::Spca);
}

SolveResult run_itps(const Matrix& x, const Matrix& b0, const SolverParams& params) {
    return run_alternating(x, b0, params, Method::Itps);
}

}  // namespace spca::solvers
