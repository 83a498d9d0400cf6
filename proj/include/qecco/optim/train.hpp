#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "qecco/losses/composite.hpp"
#include "qecco/losses/operation_loss.hpp"
#include "qecco/optim/lbfgs.hpp"

namespace qecco {

struct TrainConfig {
    LbfgsConfig lbfgs;                // epochs and iterations per epoch live here
    double epsilon = 1e-5;            // success threshold on worst_diag
    bool analytic_gradient = true;    // adjoint fast path for operation losses
    bool gamma_ramp = false;          // ramp the composite weight linearly over epochs
    static TrainConfig operation();   // 50 epochs x 20 iterations
    static TrainConfig varqec();      // 5 epochs
    static TrainConfig vareftqc(bool warm_start);  // 30 warm / 50 cold
};

constexpr double kUnset = std::numeric_limits<double>::quiet_NaN();

struct EpochStats {
    double objective = kUnset;
    double avg_loss = kUnset;
    double worst_diag = kUnset;
    double d_s = kUnset;
    double dbar = kUnset;
};

struct GateOutcome {
    std::string gate;
    std::vector<double> psi;
    double worst_diag = kUnset;
    bool success = false;
};

struct TrainRun {
    std::uint64_t seed = 0;
    std::vector<double> initial_params;
    std::vector<double> final_params;
    std::vector<EpochStats> epochs;      // length = configured epoch count
    std::vector<double> accepted_losses; // iteration-level objective trace
    bool success = false;
    bool converged_early = false;
    double final_worst_diag = kUnset;
    double final_d_s = kUnset;
    double final_dbar = kUnset;
    double dbar_down = kUnset;
    double worst_theta = kUnset;  // Bloch direction attaining the worst case
    double worst_phi = kUnset;
    std::vector<GateOutcome> gates;
};

std::vector<double> random_parameter_vector(std::size_t count, std::uint64_t seed);

/// Trains the operation parameters Ψ of a fixed-encoder loss specification.
TrainRun train_operation(const LossSpec& spec, std::uint64_t seed, const TrainConfig& config);

/// As above, but against a prebuilt evaluator (shareable across restarts;
/// evaluation is const and thread-safe for a frozen encoder).
TrainRun train_operation(const OperationLossEvaluator& evaluator, std::uint64_t seed,
                         const TrainConfig& config);

/// Trains encoder parameters Θ by minimizing the distinguishability proxy.
TrainRun train_varqec(const Code& code, const PauliChannel& noise, std::uint64_t seed,
                      const TrainConfig& config);

/// Joint encoder/operations training on the composite objective. A warm
/// start initializes Θ from a VarQEC pre-training result.
TrainRun train_vareftqc(const CompositeObjective& objective, std::uint64_t seed,
                        const TrainConfig& config,
                        const std::optional<std::vector<double>>& warm_theta = std::nullopt);

}  // namespace qecco
