#include "spca/harness.hpp"
#include "spca/init.hpp"
#include "spca/metrics.hpp"
#include "spca/model.hpp"
#include "spca/numlin.hpp"
#include "spca/solvers.hpp"

#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

namespace py = pybind11;
using namespace spca;

namespace {

solvers::SolverParams make_params(double lambda0, double lambda1, int max_iter, double stop_tol,
                                  double cd_tol, int cd_max_sweeps, double rank_tol) {
    solvers::SolverParams p;
    p.lambda0 = lambda0;
    p.lambda1 = lambda1;
    p.max_iter = max_iter;
    p.stop_tol = stop_tol;
    p.cd_tol = cd_tol;
    p.cd_max_sweeps = cd_max_sweeps;
    p.rank_tol = rank_tol;
    return p;
}

model::SpikedSpec make_spec(Eigen::Index n, Eigen::Index p, Eigen::Index r, Eigen::Index s,
                            const std::vector<double>& betas, std::uint64_t seed) {
    model::SpikedSpec spec;
    spec.n = n;
    spec.p = p;
    spec.r = r;
    spec.s = s;
    spec.betas = Eigen::Map<const Vector>(betas.data(), static_cast<Eigen::Index>(betas.size()));
    spec.seed = seed;
    spec.validate();
    return spec;
}

py::dict result_to_dict(const solvers::SolveResult& res) {
    py::dict d;
    d["b_hat"] = res.b_hat;
    d["v_hat"] = res.v_hat;
    d["trace"] = res.objective_trace;
    d["iters"] = res.iters;
    d["converged"] = res.converged;
    d["termination"] = solvers::to_string(res.termination);
    return d;
}

}  // namespace

PYBIND11_MODULE(_spcakit, m) {
    m.doc() = "Sparse PCA: SPCA alternating minimization and ITPS iterative thresholding";

    m.def("soft_threshold", &solvers::soft_threshold, py::arg("x"), py::arg("a"));
    m.def("subspace_loss", &numlin::subspace_loss, py::arg("v"), py::arg("v_hat"));
    m.def("polar_orth", &numlin::polar_orth, py::arg("m"),
          py::arg("rank_tol") = numlin::kDefaultRankTol);
    m.def("projector", &numlin::projector, py::arg("v"));
    m.def("default_lambda1", &harness::default_lambda1, py::arg("x"));

    m.def(
        "simulate",
        [](Eigen::Index n, Eigen::Index p, Eigen::Index r, Eigen::Index s,
           const std::vector<double>& betas, std::uint64_t seed) {
            model::SpikedSpec spec = make_spec(n, p, r, s, betas, seed);
            RngStream root(seed);
            RngStream truth_stream = root.child("truth");
            RngStream data_stream = root.child("data");
            model::GroundTruth truth = model::sample_ground_truth(spec, truth_stream);
            Matrix x = model::sample_data(spec, truth, data_stream);
            py::dict d;
            d["x"] = x;
            d["v"] = truth.v;
            d["support"] = truth.support;
            return d;
        },
        py::arg("n"), py::arg("p"), py::arg("r"), py::arg("s"), py::arg("betas"),
        py::arg("seed") = 0, "Sample (X, V, support) from the spiked covariance model");

    m.def(
        "dt_init",
        [](const Matrix& x, Eigen::Index r, const std::string& cthr_rule, double cthr_value) {
            init::InitConfig cfg;
            cfg.r = r;
            if (cthr_rule == "theory") {
                cfg.c_thr_rule = init::CthrRule::Theory;
            } else if (cthr_rule == "practice") {
                cfg.c_thr_rule = init::CthrRule::Practice;
            } else {
                cfg.c_thr_rule = init::CthrRule::Explicit;
                cfg.c_thr_value = cthr_value;
            }
            return init::dt_init(x, cfg);
        },
        py::arg("x"), py::arg("r"), py::arg("cthr_rule") = "practice", py::arg("cthr_value") = 0.0,
        "Diagonal-thresholding initializer B0");

    m.def(
        "run_spca",
        [](const Matrix& x, const Matrix& b0, double lambda0, double lambda1, int max_iter,
           double stop_tol, double cd_tol, int cd_max_sweeps, double rank_tol) {
            return result_to_dict(solvers::run_spca(
                x, b0, make_params(lambda0, lambda1, max_iter, stop_tol, cd_tol, cd_max_sweeps, rank_tol)));
        },
        py::arg("x"), py::arg("b0"), py::arg("lambda0") = 500000.0, py::arg("lambda1") = 0.0,
        py::arg("max_iter") = 200, py::arg("stop_tol") = 0.0, py::arg("cd_tol") = 1e-8,
        py::arg("cd_max_sweeps") = 1000, py::arg("rank_tol") = numlin::kDefaultRankTol);

    m.def(
        "run_itps",
        [](const Matrix& x, const Matrix& b0, double lambda1, int max_iter, double stop_tol,
           double rank_tol) {
            return result_to_dict(solvers::run_itps(
                x, b0, make_params(0.0, lambda1, max_iter, stop_tol, 1e-8, 1000, rank_tol)));
        },
        py::arg("x"), py::arg("b0"), py::arg("lambda1") = 0.0, py::arg("max_iter") = 200,
        py::arg("stop_tol") = 0.0, py::arg("rank_tol") = numlin::kDefaultRankTol);

    m.def(
        "tpr_fpr",
        [](const IndexSet& est, const IndexSet& truth, Eigen::Index p) {
            return metrics::tpr_fpr(est, truth, p);
        },
        py::arg("est"), py::arg("truth"), py::arg("p"));
    m.def("support_of", &metrics::support_of, py::arg("b"),
          py::arg("row_tol") = metrics::kDefaultRowTol);

    m.def(
        "diagnostics",
        [](Eigen::Index n, Eigen::Index p, Eigen::Index r, Eigen::Index s,
           const std::vector<double>& betas) {
            harness::Diagnostics d = harness::diagnostics(make_spec(n, p, r, s, betas, 0));
            py::dict out;
            out["kappa"] = d.kappa;
            out["c0_ok"] = d.c0_ok;
            out["c1a_ok"] = d.c1a_ok;
            out["lambda1_bounds"] = py::make_tuple(d.lambda1_lower, d.lambda1_upper);
            out["lambda0_lower"] = d.lambda0_lower;
            return out;
        },
        py::arg("n"), py::arg("p"), py::arg("r"), py::arg("s"), py::arg("betas"));
}
