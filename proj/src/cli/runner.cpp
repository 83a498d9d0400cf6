#include "qecco/cli/runner.hpp"

#include <atomic>
#include <chrono>
#include <csignal>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "json.hpp"
#include "qecco/cli/reference.hpp"
#include "qecco/codes/registry.hpp"
#include "qecco/losses/composite.hpp"
#include "qecco/losses/distinguishability.hpp"
#include "qecco/optim/harness.hpp"

namespace qecco::cli {

namespace {

std::atomic<bool> g_interrupted{false};

std::string format_pct(std::size_t successes, std::size_t runs) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.1f%%", 100.0 * successes / std::max<std::size_t>(1, runs));
    return buf;
}

Code build_code(const ExperimentConfig& config) {
    if (config.code == "rea") {
        return Code::from_rea(config.rea_qubits, config.rea_layers, config.rea_seed);
    }
    return make_code(config.code);
}

}  // namespace

void request_interrupt() { g_interrupted = true; }
bool interrupted() { return g_interrupted; }

void install_signal_handler() {
    std::signal(SIGINT, [](int) { g_interrupted = true; });
}

TrainConfig train_config_for(const ExperimentConfig& config, const std::string& mode) {
    TrainConfig tc;
    if (mode == "varqec") tc = TrainConfig::varqec();
    else if (mode == "vareftqc") tc = TrainConfig::vareftqc(config.warm_start);
    else tc = TrainConfig::operation();
    if (config.epochs > 0) tc.lbfgs.epochs = config.epochs;
    tc.lbfgs.iters_per_epoch = config.iters_per_epoch;
    tc.lbfgs.history = config.history;
    tc.epsilon = config.epsilon;
    tc.analytic_gradient = config.gradient != "fd";
    tc.gamma_ramp = config.gamma_ramp;
    return tc;
}

TrainRun run_vareftqc_job(const ExperimentConfig& config, std::uint64_t seed) {
    const Code code = Code::from_rea(config.rea_qubits, config.rea_layers, config.rea_seed);
    const PauliChannel noise = config.parse_noise();
    std::vector<CompositeObjective::GateTerm> gates;
    for (std::size_t g = 0; g < config.gates.size(); ++g) {
        gates.push_back({TargetGate::from_name(config.gates[g]),
                         OperationAnsatz{config.ansatz_class(g), code.n}});
    }
    CompositeObjective objective(code, noise, std::move(gates), config.gamma);

    std::optional<std::vector<double>> warm;
    if (config.warm_start) {
        TrainConfig pre = TrainConfig::varqec();
        pre.lbfgs.epochs = config.pretrain_epochs;
        const TrainRun pretrain = train_varqec(code, noise, seed, pre);
        warm = pretrain.final_params;
    }
    return train_vareftqc(objective, seed, train_config_for(config, "vareftqc"), warm);
}

int run_experiment(const ExperimentConfig& config, std::ostream& log) {
    const auto t0 = std::chrono::steady_clock::now();
    ResultRecord record;
    record.config = config;

    if (config.mode == "learn-op") {
        const Code code = build_code(config);
        if (code.is_parameterized()) {
            log << "error: learn-op expects a fixed-encoder registry code\n";
            return 2;
        }
        if (config.gates.size() != 1) {
            log << "error: learn-op expects exactly one gate\n";
            return 2;
        }
        const auto variant = pair_set_from_label(config.loss);
        if (!variant) {
            log << "error: unknown loss variant " << config.loss << "\n";
            return 2;
        }
        const TargetGate target = TargetGate::from_name(config.gates[0]);
        const OperationAnsatz ansatz{config.ansatz_class(0), code.n};
        const OperationLossEvaluator evaluator(code, target, ansatz, *variant);
        const TrainConfig tc = train_config_for(config, "learn-op");
        const auto harness = multi_restart(
            [&](std::uint64_t seed) {
                if (interrupted()) return TrainRun{};  // skipped placeholder
                return train_operation(evaluator, seed, tc);
            },
            config.runs, config.seed, config.jobs);
        record.runs = harness.runs;
        record.interrupted = interrupted();
        record.wall_seconds =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        const std::string path = write_record(record);
        log << "learn-op " << config.code << " " << config.gates[0] << " " << config.loss
            << " r=" << ansatz.cls.repetitions << ": " << harness.success_count << "/"
            << config.runs << " (" << format_pct(harness.success_count, config.runs) << ")";
        if (harness.success_count == 0) log << "  [no realization found]";
        log << "  -> " << path << "\n";
        return 0;
    }

    if (config.mode == "varqec") {
        const Code code = Code::from_rea(config.rea_qubits, config.rea_layers, config.rea_seed);
        const PauliChannel noise = config.parse_noise();
        const TrainConfig tc = train_config_for(config, "varqec");
        const auto harness = multi_restart(
            [&](std::uint64_t seed) {
                if (interrupted()) return TrainRun{};
                return train_varqec(code, noise, seed, tc);
            },
            config.runs, config.seed, config.jobs);
        record.runs = harness.runs;
        record.interrupted = interrupted();
        record.wall_seconds =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        const std::string path = write_record(record);
        double best = std::numeric_limits<double>::infinity();
        double best_down = 0.0;
        for (const auto& r : record.runs) {
            if (r.final_dbar < best) {
                best = r.final_dbar;
                best_down = r.dbar_down;
            }
        }
        log << "varqec ((" << code.n << ",2)) noise=" << config.noise << ": best dbar=" << best
            << " (reduction " << best_down << "x) over " << config.runs << " seeds  -> " << path
            << "\n";
        return 0;
    }

    if (config.mode == "vareftqc") {
        const auto harness = multi_restart(
            [&](std::uint64_t seed) {
                if (interrupted()) return TrainRun{};
                return run_vareftqc_job(config, seed);
            },
            config.runs, config.seed, config.jobs);
        record.runs = harness.runs;
        record.interrupted = interrupted();
        record.wall_seconds =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        const std::string path = write_record(record);
        double best_down = 0.0;
        for (const auto& r : record.runs) {
            if (r.success) best_down = std::max(best_down, r.dbar_down);
        }
        log << "vareftqc ((" << config.rea_qubits << ",2)) gates=";
        for (std::size_t g = 0; g < config.gates.size(); ++g) {
            log << (g ? "," : "") << config.gates[g];
        }
        log << ": " << harness.success_count << "/" << config.runs
            << " runs realized all gates; best reduction " << best_down << "x  -> " << path << "\n";
        return 0;
    }

    log << "error: unknown mode " << config.mode << "\n";
    return 2;
}

int run_reproduce_table(const ExperimentConfig& config, std::ostream& log) {
    const bool repetition_table = config.table == "repetitions";
    if (!repetition_table && config.table != "loss-variants") {
        log << "error: table must be loss-variants or repetitions\n";
        return 2;
    }
    std::vector<std::string> codes = config.code_subset;
    if (codes.empty()) {
        for (const auto& row : ground_truth_table()) codes.push_back(row.code);
    }
    const auto& gate_order = ground_truth_gate_order();
    const std::vector<std::string> loss_rows = {"diag", "block", "eblock", "full"};
    const std::vector<std::size_t> rep_rows = {1, 2, 3, 4, 5};

    std::stringstream md;
    md << "| code | " << (repetition_table ? "r" : "loss") << " |";
    for (const auto* g : gate_order) md << " " << g << " |";
    md << "\n|---|---|";
    for (std::size_t i = 0; i < gate_order.size(); ++i) md << "---|";
    md << "\n";

    nlohmann::json jout;
    jout["table"] = config.table;
    jout["runs_per_cell"] = config.runs;
    jout["base_seed"] = config.seed;
    nlohmann::json cells = nlohmann::json::array();

    for (const auto& code_name : codes) {
        if (!code_available(code_name)) {
            md << "| " << code_name << " | n/a |";
            for (std::size_t i = 0; i < gate_order.size(); ++i) md << " n/a |";
            md << "\n";
            continue;
        }
        const Code code = make_code(code_name);
        const std::size_t row_count = repetition_table ? rep_rows.size() : loss_rows.size();
        for (std::size_t row = 0; row < row_count; ++row) {
            const std::string row_label =
                repetition_table ? std::to_string(rep_rows[row]) : loss_rows[row];
            md << "| " << code_name << " | " << row_label << " |";
            for (const auto* gate_name : gate_order) {
                if (interrupted()) break;
                const auto truth = ground_truth(code_name, gate_name);
                const bool two_qubit = gate_name[0] == 'C';
                const auto variant =
                    repetition_table ? PairSetVariant::Block : *pair_set_from_label(loss_rows[row]);
                const std::size_t reps = repetition_table ? rep_rows[row] : 1;
                if (!truth || *truth == Realizability::None) {
                    md << " - |";
                    continue;
                }
                if (*truth == Realizability::Excluded) {
                    md << " excl |";
                    continue;
                }
                if (!repetition_table && loss_rows[row] == "eblock" && !two_qubit) {
                    md << " - |";
                    continue;
                }

                AnsatzClass cls = two_qubit ? AnsatzClass::transversal_ctrl_2q(reps)
                                            : AnsatzClass::transversal_1q(reps);
                for (const auto& gt : ground_truth_table()) {
                    if (gt.code == code_name) cls.invert_ctrl = gt.cx_inverted && two_qubit;
                }
                const TargetGate target = TargetGate::from_name(gate_name);
                const OperationAnsatz ansatz{cls, code.n};
                const OperationLossEvaluator evaluator(code, target, ansatz, variant);
                TrainConfig tc = train_config_for(config, "learn-op");
                const std::uint64_t cell_seed =
                    config.seed ^ fnv1a(code_name + "/" + gate_name + "/" + row_label);
                const auto harness = multi_restart(
                    [&](std::uint64_t seed) { return train_operation(evaluator, seed, tc); },
                    config.runs, cell_seed, config.jobs);

                const auto reference =
                    repetition_table
                        ? reference_count_repetition(code_name, reps, gate_name)
                        : reference_count_loss(code_name, loss_rows[row], gate_name);
                md << " " << harness.success_count << "/" << config.runs;
                if (reference) md << " (ref " << *reference << "/100)";
                md << " |";
                cells.push_back({{"code", code_name},
                                 {"gate", gate_name},
                                 {"row", row_label},
                                 {"successes", harness.success_count},
                                 {"runs", config.runs},
                                 {"cell_seed", cell_seed},
                                 {"published_per_100", reference ? nlohmann::json(*reference)
                                                             : nlohmann::json(nullptr)}});
            }
            md << "\n";
        }
    }
    jout["cells"] = cells;
    jout["interrupted"] = interrupted();

    namespace fs = std::filesystem;
    fs::create_directories(config.out_dir);
    const std::string stem =
        "table-" + config.table + "-" +
        std::to_string(fnv1a(config.canonical_text() + std::to_string(config.seed)));
    const fs::path md_path = fs::path(config.out_dir) / (stem + ".md");
    const fs::path json_path = fs::path(config.out_dir) / (stem + ".json");
    std::ofstream(md_path) << md.str();
    std::ofstream(json_path) << jout.dump(2) << "\n";
    log << md.str();
    log << "written " << md_path.string() << " and " << json_path.string() << "\n";
    return 0;
}

int run_gram_export(const ExperimentConfig& config, std::ostream& log) {
    const Code code = build_code(config);
    if (config.gates.size() != 1) {
        log << "error: gram-export expects exactly one gate\n";
        return 2;
    }
    const TargetGate target = TargetGate::from_name(config.gates[0]);
    const OperationAnsatz ansatz{config.ansatz_class(0), code.n};
    const OperationLossEvaluator evaluator(code, target, ansatz, PairSetVariant::Full);
    const auto psi = random_parameter_vector(evaluator.param_count(), config.seed);

    auto write_csv = [&](const GramMatrix& gram, const std::string& name) {
        namespace fs = std::filesystem;
        fs::create_directories(config.out_dir);
        const fs::path path = fs::path(config.out_dir) /
                              ("gram-" + config.code + "-" + config.gates[0] + "-" + name + ".csv");
        std::ofstream out(path);
        const auto& labels = evaluator.design().labels;
        out << "state";
        for (const auto& l : labels) out << "," << l;
        out << "\n";
        for (std::size_t i = 0; i < gram.m; ++i) {
            out << labels[i];
            for (std::size_t j = 0; j < gram.m; ++j) {
                char buf[32];
                std::snprintf(buf, sizeof(buf), "%.12g", gram.at(i, j));
                out << "," << buf;
            }
            out << "\n";
        }
        return path.string();
    };

    const std::string target_path = write_csv(evaluator.gram_target(), "target");
    const std::string pred_path = write_csv(evaluator.gram_prediction(psi), "prediction");
    log << "gram-export " << config.code << " " << config.gates[0] << " seed=" << config.seed
        << ": " << target_path << ", " << pred_path << "\n";
    return 0;
}

int run_eval(const ExperimentConfig& config, std::ostream& log) {
    if (config.record_path.empty()) {
        log << "error: eval needs record = <path>\n";
        return 2;
    }
    const ResultRecord record = load_record(config.record_path);
    const EvalReport report = eval_record(record);
    if (report.ok) {
        log << "eval " << config.record_path << ": " << record.runs.size()
            << " runs, zero mismatches\n";
        return 0;
    }
    log << "eval " << config.record_path << ": " << report.mismatches.size() << " mismatches\n";
    for (const auto& m : report.mismatches) log << "  " << m << "\n";
    return 1;
}

int run_list_codes(std::ostream& log) {
    for (const auto& info : list_codes()) {
        log << info.name;
        if (!info.alias.empty()) log << " (" << info.alias << ")";
        log << ": n=" << info.n;
        if (info.distance) log << " d=" << *info.distance;
        if (!info.available) log << "  [unavailable: " << info.note << "]";
        log << "\n";
    }
    return 0;
}

int run_list_gates(std::ostream& log) {
    for (const auto& name : known_target_gates()) log << name << "\n";
    return 0;
}

int run_mode(const ExperimentConfig& config, std::ostream& log) {
    if (config.mode == "learn-op" || config.mode == "varqec" || config.mode == "vareftqc") {
        return run_experiment(config, log);
    }
    if (config.mode == "reproduce-table") return run_reproduce_table(config, log);
    if (config.mode == "gram-export") return run_gram_export(config, log);
    if (config.mode == "eval") return run_eval(config, log);
    log << "error: unknown mode " << config.mode << "\n";
    return 2;
}

}  // namespace qecco::cli
