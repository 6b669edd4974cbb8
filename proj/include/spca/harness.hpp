#pragma once

#include "spca/init.hpp"
#include "spca/metrics.hpp"
#include "spca/model.hpp"
#include "spca/solvers.hpp"

#include <string>

namespace spca::harness {

enum class Method { Itps, Spca, Dt };

const char* to_string(Method m);
Method method_from_string(const std::string& name);

enum class Lambda1Rule { PaperSpectral, Explicit };

struct ExperimentConfig {
    model::SpikedSpec spec;  // spec.seed is the master seed
    std::vector<Method> methods;
    int reps = 1;
    solvers::SolverParams params;
    init::InitConfig init;
    Lambda1Rule lambda1_rule = Lambda1Rule::PaperSpectral;
    double lambda1_value = 0.0;  // used when rule == Explicit
    std::string output_path;
    int threads = 1;
    // Wall-clock timing per trial; disable for byte-identical reruns.
    bool timings = true;
    double row_tol = metrics::kDefaultRowTol;

    void validate() const;
};

struct TrialRecord {
    Method method = Method::Itps;
    int rep = 0;
    metrics::TrialMetrics metrics;
    std::uint64_t seed_child = 0;
    std::string termination;
    bool failed = false;  // solver error; excluded from summary means
};

struct SummaryRow {
    std::string method;
    Eigen::Index n = 0, p = 0, r = 0, s = 0;
    Vector betas;
    double mean_tpr = 0.0, mean_fpr = 0.0, mean_loss = 0.0, mean_iters = 0.0;
    int reps = 0;
    int failures = 0;
};

struct Diagnostics {
    double kappa = 0.0;
    bool c0_ok = false;
    bool c1a_ok = false;
    double lambda1_lower = 0.0;  // (C3)(a) at M1 = 1
    double lambda1_upper = 0.0;  // (C3)(a) at M2 = 1
    double lambda0_lower = 0.0;  // (C3)(b)
};

// lambda1 = log(p) * top singular value of X (natural log).
double default_lambda1(const Matrix& x);

Diagnostics diagnostics(const model::SpikedSpec& spec, const solvers::SolverParams& params = {});

TrialRecord run_trial(const ExperimentConfig& config, Method method, int rep);

// Runs methods x reps trials (threaded per config.threads), writes trials.csv
// and summary.json under output_path if nonempty, returns the summary rows.
std::vector<SummaryRow> run_experiment(const ExperimentConfig& config);

// Deterministic CSV/summary serialization, exposed for the determinism tests.
std::string trials_csv(const ExperimentConfig& config, const std::vector<TrialRecord>& records);
std::vector<SummaryRow> summarize(const ExperimentConfig& config,
                                  const std::vector<TrialRecord>& records);

}  // namespace spca::harness
