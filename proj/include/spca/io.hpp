#pragma once

#include "spca/harness.hpp"
#include "spca/model.hpp"
#include "spca/solvers.hpp"

#include <string>

namespace spca::io {

// Comma-separated, '.' decimal, no header, one sample per row.
Matrix read_csv_matrix(const std::string& path);
void write_csv_matrix(const std::string& path, const Matrix& m);

// JSON sidecar for simulated data: spec, support, V.
void write_truth_json(const std::string& path, const model::SpikedSpec& spec,
                      const model::GroundTruth& truth);

void write_solve_result_json(const std::string& path, const solvers::SolveResult& result);

harness::ExperimentConfig experiment_config_from_json(const std::string& path);

std::string diagnostics_json(const harness::Diagnostics& d);

}  // namespace spca::io
