#pragma once

#include <iosfwd>

#include "qecco/cli/config.hpp"
#include "qecco/cli/records.hpp"

namespace qecco::cli {

/// Cooperative interrupt: completed runs are flushed, pending work is skipped.
void request_interrupt();
bool interrupted();
void install_signal_handler();

int run_experiment(const ExperimentConfig& config, std::ostream& log);
int run_reproduce_table(const ExperimentConfig& config, std::ostream& log);
int run_gram_export(const ExperimentConfig& config, std::ostream& log);
int run_eval(const ExperimentConfig& config, std::ostream& log);
int run_list_codes(std::ostream& log);
int run_list_gates(std::ostream& log);

/// Dispatches on config.mode.
int run_mode(const ExperimentConfig& config, std::ostream& log);

/// Builds the training pieces shared by modes and the acceptance suite.
TrainConfig train_config_for(const ExperimentConfig& config, const std::string& mode);
TrainRun run_vareftqc_job(const ExperimentConfig& config, std::uint64_t seed);

}  // namespace qecco::cli
