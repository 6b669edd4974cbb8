#include "spca/harness.hpp"
#include "spca/io.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <iostream>

namespace fs = std::filesystem;
using namespace spca;

namespace {

Vector parse_betas(const std::string& arg) {
    std::vector<double> vals;
    std::stringstream ss(arg);
    std::string field;
    while (std::getline(ss, field, ',')) vals.push_back(std::stod(field));
    if (vals.empty()) throw CLI::ValidationError("--betas", "needs at least one value");
    return Eigen::Map<const Vector>(vals.data(), static_cast<Eigen::Index>(vals.size()));
}

init::InitConfig parse_init(const std::string& cthr, bool split) {
    init::InitConfig cfg;
    if (cthr == "theory") {
        cfg.c_thr_rule = init::CthrRule::Theory;
    } else if (cthr == "practice") {
        cfg.c_thr_rule = init::CthrRule::Practice;
    } else {
        cfg.c_thr_rule = init::CthrRule::Explicit;
        cfg.c_thr_value = std::stod(cthr);
    }
    cfg.split_data = split;
    return cfg;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Sparse PCA toolkit: SPCA / ITPS solvers and Monte-Carlo experiments"};
    app.require_subcommand(1);

    // simulate
    auto* sim = app.add_subcommand("simulate", "Sample data from the spiked covariance model");
    Eigen::Index sim_n = 0, sim_p = 0, sim_r = 0, sim_s = 0;
    std::string sim_betas = "3,3", sim_out = ".";
    std::uint64_t sim_seed = 0;
    sim->add_option("--n", sim_n, "samples")->required();
    sim->add_option("--p", sim_p, "dimension")->required();
    sim->add_option("--r", sim_r, "rank")->required();
    sim->add_option("--s", sim_s, "support size")->required();
    sim->add_option("--betas", sim_betas, "comma-separated spike strengths");
    sim->add_option("--seed", sim_seed, "master seed");
    sim->add_option("--out", sim_out, "output directory");

    // solve
    auto* solve = app.add_subcommand("solve", "Run SPCA or ITPS on a data matrix");
    std::string solve_method = "itps", solve_data, solve_init = "dt", solve_cthr = "practice";
    std::string solve_out = "result.json";
    solvers::SolverParams solve_params;
    solve_params.lambda0 = 500000.0;
    double solve_lambda1 = -1.0;
    bool solve_split = false;
    std::uint64_t solve_seed = 0;
    solve->add_option("--method", solve_method)->check(CLI::IsMember({"spca", "itps"}));
    solve->add_option("--data", solve_data, "X as CSV, one sample per row")->required();
    solve->add_option("--lambda0", solve_params.lambda0, "ridge weight (SPCA)");
    solve->add_option("--lambda1", solve_lambda1, "l1 weight; default (log p) * spectral norm of X");
    solve->add_option("--max-iter", solve_params.max_iter);
    solve->add_option("--stop-tol", solve_params.stop_tol, "subspace-change threshold; default 1/(n*p)");
    solve->add_option("--init", solve_init, "dt or file:PATH with a CSV B0");
    solve->add_option("--cthr", solve_cthr, "theory, practice, or an explicit value");
    solve->add_flag("--split", solve_split, "data-splitting initialization path");
    Eigen::Index solve_r = 2;
    solve->add_option("--rank", solve_r, "subspace rank r");
    solve->add_option("--seed", solve_seed, "seed for the data split");
    solve->add_option("--out", solve_out, "result JSON path");

    // experiment
    auto* exp = app.add_subcommand("experiment", "Run a Monte-Carlo experiment from a JSON config");
    std::string exp_config, exp_out;
    int exp_threads = 0;
    exp->add_option("--config", exp_config)->required();
    exp->add_option("--out", exp_out, "output directory (overrides config output_path)");
    exp->add_option("--threads", exp_threads, "worker threads (overrides config)");

    // diagnostics
    auto* diag = app.add_subcommand("diagnostics", "Report kappa and the (C0)-(C3) reference bounds");
    Eigen::Index d_n = 0, d_p = 0, d_r = 0, d_s = 0;
    std::string d_betas = "3,3";
    double d_lambda0 = 0.0, d_lambda1 = 0.0;
    diag->add_option("--n", d_n)->required();
    diag->add_option("--p", d_p)->required();
    diag->add_option("--r", d_r)->required();
    diag->add_option("--s", d_s)->required();
    diag->add_option("--betas", d_betas);
    diag->add_option("--lambda0", d_lambda0);
    diag->add_option("--lambda1", d_lambda1);

    CLI11_PARSE(app, argc, argv);

    try {
        if (*sim) {
            model::SpikedSpec spec{sim_n, sim_p, sim_r, sim_s, parse_betas(sim_betas), sim_seed};
            RngStream stream(spec.seed);
            RngStream truth_stream = stream.child("truth");
            RngStream data_stream = stream.child("data");
            model::GroundTruth truth = model::sample_ground_truth(spec, truth_stream);
            Matrix x = model::sample_data(spec, truth, data_stream);
            fs::create_directories(sim_out);
            io::write_csv_matrix((fs::path(sim_out) / "X.csv").string(), x);
            io::write_truth_json((fs::path(sim_out) / "truth.json").string(), spec, truth);
        } else if (*solve) {
            Matrix x = io::read_csv_matrix(solve_data);
            Matrix b0;
            if (solve_init == "dt") {
                init::InitConfig icfg = parse_init(solve_cthr, solve_split);
                icfg.r = solve_r;
                if (icfg.split_data) {
                    RngStream stream = RngStream(solve_seed).child("split");
                    auto halves = init::split_rows(x, stream);
                    b0 = init::dt_init(halves.first, icfg);
                    x = std::move(halves.second);
                } else {
                    b0 = init::dt_init(x, icfg);
                }
            } else if (solve_init.rfind("file:", 0) == 0) {
                b0 = io::read_csv_matrix(solve_init.substr(5));
            } else {
                throw CLI::ValidationError("--init", "expected dt or file:PATH");
            }
            solvers::SolverParams params = solve_params;
            params.lambda1 = solve_lambda1 >= 0.0 ? solve_lambda1 : harness::default_lambda1(x);
            solvers::SolveResult res = solve_method == "spca" ? solvers::run_spca(x, b0, params)
                                                              : solvers::run_itps(x, b0, params);
            io::write_solve_result_json(solve_out, res);
        } else if (*exp) {
            harness::ExperimentConfig cfg = io::experiment_config_from_json(exp_config);
            if (!exp_out.empty()) cfg.output_path = exp_out;
            if (exp_threads > 0) cfg.threads = exp_threads;
            auto rows = harness::run_experiment(cfg);
            for (const auto& row : rows) {
                std::cout << row.method << ": tpr=" << row.mean_tpr << " fpr=" << row.mean_fpr
                          << " loss=" << row.mean_loss << " reps=" << row.reps
                          << " failures=" << row.failures << '\n';
            }
        } else if (*diag) {
            model::SpikedSpec spec{d_n, d_p, d_r, d_s, parse_betas(d_betas), 0};
            solvers::SolverParams params;
            params.lambda0 = d_lambda0;
            params.lambda1 = d_lambda1;
            std::cout << io::diagnostics_json(harness::diagnostics(spec, params));
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
