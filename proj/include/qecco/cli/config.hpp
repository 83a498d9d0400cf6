#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "qecco/ansatz/ansatz.hpp"
#include "qecco/losses/two_design.hpp"
#include "qecco/simcore/channel.hpp"

namespace qecco::cli {

/// One experiment description, parsed from "key = value" lines (# comments).
struct ExperimentConfig {
    std::string mode;  // learn-op | varqec | vareftqc | reproduce-table | gram-export | eval

    std::string code = "3_1_1";
    std::size_t rea_qubits = 5;
    std::size_t rea_layers = 3;
    std::uint64_t rea_seed = 1;

    std::vector<std::string> gates;                 // one for learn-op, a set for vareftqc
    std::vector<std::string> gate_ansatzes;         // per-gate variant labels
    std::vector<std::size_t> gate_repetitions;      // per-gate repetition counts
    std::size_t violations = 0;
    std::uint64_t violation_seed = 0;
    bool invert_ctrl = false;

    std::string loss = "block";
    std::string noise;        // "adep" | "bitflip:p" | "depolarizing:p" | "px,py,pz"
    double gamma = -1.0;      // negative = default 1/(2 #gates)
    bool warm_start = true;
    bool gamma_ramp = false;
    std::size_t pretrain_epochs = 5;

    std::size_t runs = 1;
    std::uint64_t seed = 1;
    std::size_t jobs = 0;     // 0 = hardware concurrency

    std::size_t epochs = 0;   // 0 = per-mode default
    std::size_t iters_per_epoch = 20;
    std::size_t history = 100;
    double epsilon = 1e-5;
    std::string gradient = "analytic";  // "analytic" | "fd"

    std::string table = "loss-variants";
    std::vector<std::string> code_subset;

    std::string record_path;  // eval mode
    bool recompute = true;

    std::string out_dir = "results";

    /// Raw key/value pairs in file order, for snapshotting into records.
    std::vector<std::pair<std::string, std::string>> raw;

    static ExperimentConfig from_file(const std::string& path);
    static ExperimentConfig from_text(const std::string& text);
    std::string canonical_text() const;

    PauliChannel parse_noise() const;
    AnsatzClass ansatz_class(std::size_t gate_index) const;
};

/// A commented template documenting every key.
std::string config_template();

}  // namespace qecco::cli
