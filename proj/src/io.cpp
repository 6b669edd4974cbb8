#include "spca/io.hpp"

#include <nlohmann/json.hpp>

#include <cstdio>
#include <fstream>
#include <sstream>
#include <vector>

namespace spca::io {

using nlohmann::json;

namespace {

std::string fmt(double x) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

json matrix_to_json(const Matrix& m) {
    json rows = json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
        rows.push_back(std::move(row));
    }
    return rows;
}

json load_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open " + path);
    json j;
    in >> j;
    return j;
}

void dump_json(const std::string& path, const json& j) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot write " + path);
    out << j.dump(2) << '\n';
}

}  // namespace

Matrix read_csv_matrix(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open " + path);

    std::vector<std::vector<double>> rows;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::vector<double> row;
        std::stringstream ss(line);
        std::string field;
        while (std::getline(ss, field, ',')) row.push_back(std::stod(field));
        if (!rows.empty() && row.size() != rows.front().size())
            throw IoError(path + ": ragged CSV rows");
        rows.push_back(std::move(row));
    }
    if (rows.empty()) throw IoError(path + ": empty CSV");

    Matrix m(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(rows.front().size()));
    for (Eigen::Index i = 0; i < m.rows(); ++i)
        for (Eigen::Index j = 0; j < m.cols(); ++j) m(i, j) = rows[i][j];
    require_finite(m, path.c_str());
    return m;
}

void write_csv_matrix(const std::string& path, const Matrix& m) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot write " + path);
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        for (Eigen::Index j = 0; j < m.cols(); ++j) {
            if (j) out << ',';
            out << fmt(m(i, j));
        }
        out << '\n';
    }
}

void write_truth_json(const std::string& path, const model::SpikedSpec& spec,
                      const model::GroundTruth& truth) {
    json j;
    j["spec"] = {{"n", spec.n}, {"p", spec.p}, {"r", spec.r}, {"s", spec.s}, {"seed", spec.seed}};
    j["spec"]["betas"] = std::vector<double>(spec.betas.data(), spec.betas.data() + spec.betas.size());
    j["support"] = truth.support;
    j["v"] = matrix_to_json(truth.v);
    dump_json(path, j);
}

void write_solve_result_json(const std::string& path, const solvers::SolveResult& result) {
    json j;
    j["b_hat"] = matrix_to_json(result.b_hat);
    j["v_hat"] = matrix_to_json(result.v_hat);
    j["trace"] = result.objective_trace;
    j["iters"] = result.iters;
    j["converged"] = result.converged;
    j["termination"] = solvers::to_string(result.termination);
    dump_json(path, j);
}

harness::ExperimentConfig experiment_config_from_json(const std::string& path) {
    const json j = load_json(path);
    harness::ExperimentConfig cfg;

    const json& s = j.at("spec");
    cfg.spec.n = s.at("n").get<Eigen::Index>();
    cfg.spec.p = s.at("p").get<Eigen::Index>();
    cfg.spec.r = s.at("r").get<Eigen::Index>();
    cfg.spec.s = s.at("s").get<Eigen::Index>();
    const auto betas = s.at("betas").get<std::vector<double>>();
    cfg.spec.betas = Eigen::Map<const Vector>(betas.data(), static_cast<Eigen::Index>(betas.size()));
    cfg.spec.seed = s.value("seed", std::uint64_t{0});

    for (const auto& name : j.at("methods").get<std::vector<std::string>>())
        cfg.methods.push_back(harness::method_from_string(name));
    cfg.reps = j.value("reps", 1);

    if (j.contains("params")) {
        const json& p = j["params"];
        cfg.params.lambda0 = p.value("lambda0", cfg.params.lambda0);
        cfg.params.lambda1 = p.value("lambda1", cfg.params.lambda1);
        cfg.params.max_iter = p.value("max_iter", cfg.params.max_iter);
        cfg.params.stop_tol = p.value("stop_tol", cfg.params.stop_tol);
        cfg.params.cd_tol = p.value("cd_tol", cfg.params.cd_tol);
        cfg.params.cd_max_sweeps = p.value("cd_max_sweeps", cfg.params.cd_max_sweeps);
        cfg.params.rank_tol = p.value("rank_tol", cfg.params.rank_tol);
    }
    if (j.contains("init")) {
        const json& i = j["init"];
        const std::string rule = i.value("c_thr_rule", std::string("practice"));
        if (rule == "theory") {
            cfg.init.c_thr_rule = init::CthrRule::Theory;
        } else if (rule == "practice") {
            cfg.init.c_thr_rule = init::CthrRule::Practice;
        } else {
            cfg.init.c_thr_rule = init::CthrRule::Explicit;
            cfg.init.c_thr_value = std::stod(rule);
        }
        cfg.init.split_data = i.value("split", false);
        cfg.init.widen_deficient_support = i.value("widen_deficient_support", false);
    }
    if (j.contains("lambda1_rule")) {
        const json& rule = j["lambda1_rule"];
        if (rule.is_string() && rule.get<std::string>() == "paper_spectral") {
            cfg.lambda1_rule = harness::Lambda1Rule::PaperSpectral;
        } else if (rule.is_object() && rule.contains("explicit")) {
            cfg.lambda1_rule = harness::Lambda1Rule::Explicit;
            cfg.lambda1_value = rule["explicit"].get<double>();
        } else if (rule.is_number()) {
            cfg.lambda1_rule = harness::Lambda1Rule::Explicit;
            cfg.lambda1_value = rule.get<double>();
        } else {
            throw IoError(path + ": bad lambda1_rule");
        }
    }
    cfg.output_path = j.value("output_path", std::string());
    cfg.threads = j.value("threads", 1);
    cfg.timings = j.value("timings", true);
    cfg.row_tol = j.value("row_tol", cfg.row_tol);
    return cfg;
}

std::string diagnostics_json(const harness::Diagnostics& d) {
    std::ostringstream out;
    out << "{\n"
        << "  \"kappa\": " << fmt(d.kappa) << ",\n"
        << "  \"c0_ok\": " << (d.c0_ok ? "true" : "false") << ",\n"
        << "  \"c1a_ok\": " << (d.c1a_ok ? "true" : "false") << ",\n"
        << "  \"lambda1_bounds\": [" << fmt(d.lambda1_lower) << ", " << fmt(d.lambda1_upper) << "],\n"
        << "  \"lambda0_lower\": " << fmt(d.lambda0_lower) << "\n"
        << "}\n";
    return out.str();
}

}  // namespace spca::io
