#pragma once

#include <string>
#include <vector>

#include "qecco/cli/config.hpp"
#include "qecco/optim/train.hpp"

namespace qecco::cli {

const char* engine_version();

std::uint64_t fnv1a(const std::string& text);

struct ResultRecord {
    ExperimentConfig config;
    std::vector<TrainRun> runs;
    double wall_seconds = 0.0;
    bool interrupted = false;

    std::size_t success_count() const;
};

std::string record_filename(const ExperimentConfig& config);

/// Serializes and writes the record into config.out (content-hash name).
/// Existing files are never overwritten. Returns the file path.
std::string write_record(const ResultRecord& record);

ResultRecord load_record(const std::string& path);

struct EvalReport {
    bool ok = true;
    std::vector<std::string> mismatches;
};

/// Rebuilds evaluators from the stored config and final parameters and
/// recomputes every stored metric; deviations beyond 1e-9 are flagged.
EvalReport eval_record(const ResultRecord& record);

}  // namespace qecco::cli
