#include "spca/harness.hpp"

#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <thread>

namespace spca::harness {

const char* to_string(Method m) {
    switch (m) {
        case Method::Itps: return "ITPS";
        case Method::Spca: return "SPCA";
        case Method::Dt: return "DT";
    }
    return "?";
}

Method method_from_string(const std::string& name) {
    if (name == "ITPS" || name == "itps") return Method::Itps;
    if (name == "SPCA" || name == "spca") return Method::Spca;
    if (name == "DT" || name == "dt") return Method::Dt;
    throw std::invalid_argument("unknown method: " + name);
}

void ExperimentConfig::validate() const {
    spec.validate();
    params.validate();
    if (reps < 1) throw std::invalid_argument("ExperimentConfig: reps >= 1 required");
    if (methods.empty()) throw std::invalid_argument("ExperimentConfig: methods nonempty");
    if (threads < 1) throw std::invalid_argument("ExperimentConfig: threads >= 1 required");
}

double default_lambda1(const Matrix& x) {
    // log(p) times the top singular value of X. Using the squared value
    // instead pushes the threshold above every entry of X'X A at all the
    // benchmark sizes and the sparse factor collapses to zero.
    return std::log(static_cast<double>(x.cols())) * std::sqrt(numlin::top_singular_value_squared(x));
}

Diagnostics diagnostics(const model::SpikedSpec& spec, const solvers::SolverParams&) {
    spec.validate();
    const double n = static_cast<double>(spec.n);
    const double p = static_cast<double>(spec.p);
    const double r = static_cast<double>(spec.r);
    const double s = static_cast<double>(spec.s);
    const double b1sq = spec.betas(0) * spec.betas(0);
    const double br = spec.betas(spec.r - 1);
    const double brsq = br * br;
    const double logp = std::log(p);

    Diagnostics d;
    d.kappa = std::sqrt((b1sq + 1.0) * s) / (brsq * std::sqrt(n));
    // log p = o(n) has no finite-sample form; log p <= n / 10 as proxy.
    d.c0_ok = n >= s && p >= 5.0 * s && logp <= n / 10.0;
    // (C1a) at M0' = 1.
    const double c1a_lhs = (std::sqrt(s * (b1sq + 1.0)) + std::sqrt(s) * br * std::pow(n * logp, 0.25)) /
                           (brsq * std::sqrt(n));
    d.c1a_ok = c1a_lhs <= 1.0 / std::sqrt(s);
    // (C3)(a) at M1 = M2 = 1.
    d.lambda1_lower = std::sqrt(logp * (n * (b1sq + 1.0) + p)) +
                      n * std::pow(logp, 1.5) *
                          (std::sqrt(p * r) + r * (1.0 + std::log(r)) * std::sqrt(b1sq + 1.0)) / p;
    d.lambda1_upper = std::min(brsq, 1.0) * std::sqrt((brsq + 1.0) * n * ((brsq + 1.0) * n + p)) /
                      std::sqrt(s * r);
    // (C3)(b).
    d.lambda0_lower = 4.0 * (n * (brsq + 1.0) * s + p);
    return d;
}

namespace {

std::string fmt(double x, const char* spec = "%.17g") {
    char buf[64];
    std::snprintf(buf, sizeof(buf), spec, x);
    return buf;
}

std::string betas_field(const Vector& betas) {
    std::string out;
    for (Eigen::Index i = 0; i < betas.size(); ++i) {
        if (i) out += ';';
        out += fmt(betas(i), "%g");
    }
    return out;
}

}  // namespace

TrialRecord run_trial(const ExperimentConfig& config, Method method, int rep) {
    config.validate();

    RngStream stream = RngStream(config.spec.seed)
                           .child(to_string(method))
                           .child(static_cast<std::uint64_t>(rep));
    TrialRecord rec;
    rec.method = method;
    rec.rep = rep;
    rec.seed_child = stream.seed();

    const auto t0 = std::chrono::steady_clock::now();
    try {
        RngStream truth_stream = stream.child("truth");
        RngStream data_stream = stream.child("data");
        model::GroundTruth truth = model::sample_ground_truth(config.spec, truth_stream);
        Matrix x = model::sample_data(config.spec, truth, data_stream);

        init::InitConfig icfg = config.init;
        icfg.r = config.spec.r;

        Matrix x_init = x;
        Matrix x_solve = std::move(x);
        if (icfg.split_data) {
            RngStream split_stream = stream.child("split");
            auto halves = init::split_rows(x_solve, split_stream);
            x_init = std::move(halves.first);
            x_solve = std::move(halves.second);
        }
        Matrix b0 = init::dt_init(x_init, icfg);

        Matrix b_hat, v_hat;
        if (method == Method::Dt) {
            b_hat = b0;
            v_hat = b0;  // dt_init output already has orthonormal columns
            rec.metrics.converged = true;
            rec.termination = "Init";
        } else {
            solvers::SolverParams params = config.params;
            params.lambda1 = config.lambda1_rule == Lambda1Rule::PaperSpectral
                                 ? default_lambda1(x_solve)
                                 : config.lambda1_value;
            solvers::SolveResult res = method == Method::Spca
                                           ? solvers::run_spca(x_solve, b0, params)
                                           : solvers::run_itps(x_solve, b0, params);
            b_hat = std::move(res.b_hat);
            v_hat = std::move(res.v_hat);
            rec.metrics.iters = res.iters;
            rec.metrics.converged = res.converged;
            rec.termination = solvers::to_string(res.termination);
            rec.failed = res.termination == solvers::Termination::RankCollapse;
        }

        if (!rec.failed) {
            IndexSet est = metrics::support_of(b_hat, config.row_tol);
            auto [tpr, fpr] = metrics::tpr_fpr(est, truth.support, config.spec.p);
            rec.metrics.tpr = tpr;
            rec.metrics.fpr = fpr;
            rec.metrics.loss = metrics::subspace_loss(truth.v, v_hat);
        }
    } catch (const std::exception& e) {
        rec.failed = true;
        rec.metrics.converged = false;
        rec.termination = e.what();
        // The termination column is one CSV field; strip separators.
        for (char& c : rec.termination)
            if (c == ',' || c == '\n') c = ';';
    }
    if (config.timings) {
        rec.metrics.wall_seconds =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    }
    return rec;
}

std::string trials_csv(const ExperimentConfig& config, const std::vector<TrialRecord>& records) {
    std::ostringstream out;
    out << "method,n,p,r,s,betas,rep,tpr,fpr,loss,iters,seconds,converged,termination\n";
    const std::string betas = betas_field(config.spec.betas);
    for (const TrialRecord& rec : records) {
        out << to_string(rec.method) << ',' << config.spec.n << ',' << config.spec.p << ','
            << config.spec.r << ',' << config.spec.s << ',' << betas << ',' << rec.rep << ','
            << fmt(rec.metrics.tpr) << ',' << fmt(rec.metrics.fpr) << ',' << fmt(rec.metrics.loss)
            << ',' << rec.metrics.iters << ',' << fmt(rec.metrics.wall_seconds, "%.6f") << ','
            << (rec.metrics.converged ? 1 : 0) << ',' << rec.termination << '\n';
    }
    return out.str();
}

std::vector<SummaryRow> summarize(const ExperimentConfig& config,
                                  const std::vector<TrialRecord>& records) {
    std::vector<SummaryRow> rows;
    for (Method m : config.methods) {
        SummaryRow row;
        row.method = to_string(m);
        row.n = config.spec.n;
        row.p = config.spec.p;
        row.r = config.spec.r;
        row.s = config.spec.s;
        row.betas = config.spec.betas;
        int used = 0;
        for (const TrialRecord& rec : records) {
            if (rec.method != m) continue;
            if (rec.failed) {
                ++row.failures;
                continue;
            }
            row.mean_tpr += rec.metrics.tpr;
            row.mean_fpr += rec.metrics.fpr;
            row.mean_loss += rec.metrics.loss;
            row.mean_iters += rec.metrics.iters;
            ++used;
        }
        row.reps = used;
        if (used > 0) {
            row.mean_tpr /= used;
            row.mean_fpr /= used;
            row.mean_loss /= used;
            row.mean_iters /= used;
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

std::vector<SummaryRow> run_experiment(const ExperimentConfig& config) {
    config.validate();

    struct Task {
        Method method;
        int rep;
    };
    std::vector<Task> tasks;
    for (Method m : config.methods)
        for (int rep = 0; rep < config.reps; ++rep) tasks.push_back({m, rep});

    std::vector<TrialRecord> records(tasks.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= tasks.size()) return;
            records[i] = run_trial(config, tasks[i].method, tasks[i].rep);
        }
    };
    if (config.threads == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        const int nthreads = std::min<int>(config.threads, static_cast<int>(tasks.size()));
        for (int t = 0; t < nthreads; ++t) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }
    // records is already sorted by (method, rep): tasks were generated in order
    // and written by index, so the output is independent of scheduling.

    std::vector<SummaryRow> rows = summarize(config, records);

    if (!config.output_path.empty()) {
        namespace fs = std::filesystem;
        std::error_code ec;
        fs::create_directories(config.output_path, ec);
        const fs::path dir(config.output_path);

        std::ofstream csv(dir / "trials.csv", std::ios::binary);
        if (!csv) throw IoError("run_experiment: cannot write " + (dir / "trials.csv").string());
        csv << trials_csv(config, records);

        std::ostringstream json;
        json << "[\n";
        for (std::size_t i = 0; i < rows.size(); ++i) {
            const SummaryRow& r = rows[i];
            json << "  {\"method\":\"" << r.method << "\",\"n\":" << r.n << ",\"p\":" << r.p
                 << ",\"r\":" << r.r << ",\"s\":" << r.s << ",\"betas\":\"" << betas_field(r.betas)
                 << "\",\"mean_tpr\":" << fmt(r.mean_tpr) << ",\"mean_fpr\":" << fmt(r.mean_fpr)
                 << ",\"mean_loss\":" << fmt(r.mean_loss) << ",\"mean_iters\":" << fmt(r.mean_iters)
                 << ",\"reps\":" << r.reps << ",\"failures\":" << r.failures << "}"
                 << (i + 1 < rows.size() ? ",\n" : "\n");
        }
        json << "]\n";
        std::ofstream summary(dir / "summary.json", std::ios::binary);
        if (!summary) throw IoError("run_experiment: cannot write " + (dir / "summary.json").string());
        summary << json.str();
    }
    return rows;
}

}  // namespace spca::harness
