#include "qecco/cli/records.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>

#include "json.hpp"
#include "qecco/codes/registry.hpp"
#include "qecco/losses/composite.hpp"
#include "qecco/losses/distinguishability.hpp"

namespace qecco::cli {

using nlohmann::json;

const char* engine_version() { return "0.1.0"; }

std::uint64_t fnv1a(const std::string& text) {
    std::uint64_t hash = 0xcbf29ce484222325ull;
    for (unsigned char c : text) {
        hash ^= c;
        hash *= 0x100000001b3ull;
    }
    return hash;
}

std::size_t ResultRecord::success_count() const {
    std::size_t n = 0;
    for (const auto& r : runs) n += r.success ? 1 : 0;
    return n;
}

namespace {

json doubles_or_null(const std::vector<double>& v) {
    json out = json::array();
    for (double x : v) {
        if (std::isnan(x)) out.push_back(nullptr);
        else out.push_back(x);
    }
    return out;
}

void put_if_set(json& j, const char* key, double v) {
    if (!std::isnan(v)) j[key] = v;
}

double get_or_nan(const json& j, const char* key) {
    if (!j.contains(key) || j[key].is_null()) return kUnset;
    return j[key].get<double>();
}

json run_to_json(const TrainRun& run) {
    json j;
    j["seed"] = run.seed;
    j["success"] = run.success;
    j["converged_early"] = run.converged_early;
    put_if_set(j, "worst_diag", run.final_worst_diag);
    put_if_set(j, "d_s", run.final_d_s);
    put_if_set(j, "dbar", run.final_dbar);
    put_if_set(j, "dbar_down", run.dbar_down);
    if (!std::isnan(run.worst_theta)) j["worst_direction"] = {run.worst_theta, run.worst_phi};
    j["initial_params"] = run.initial_params;
    j["final_params"] = run.final_params;

    json trace;
    std::vector<double> avg, worst, ds, dbar, objective;
    for (const auto& e : run.epochs) {
        objective.push_back(e.objective);
        avg.push_back(e.avg_loss);
        worst.push_back(e.worst_diag);
        ds.push_back(e.d_s);
        dbar.push_back(e.dbar);
    }
    trace["objective"] = doubles_or_null(objective);
    trace["avg_loss"] = doubles_or_null(avg);
    trace["worst_diag"] = doubles_or_null(worst);
    trace["d_s"] = doubles_or_null(ds);
    trace["dbar"] = doubles_or_null(dbar);
    j["trace"] = trace;
    j["accepted_losses"] = run.accepted_losses;

    if (!run.gates.empty()) {
        json gates = json::array();
        for (const auto& g : run.gates) {
            gates.push_back({{"gate", g.gate},
                             {"worst_diag", g.worst_diag},
                             {"success", g.success},
                             {"psi", g.psi}});
        }
        j["gates"] = gates;
    }
    return j;
}

std::vector<double> nullable_array(const json& arr) {
    std::vector<double> out;
    for (const auto& v : arr) out.push_back(v.is_null() ? kUnset : v.get<double>());
    return out;
}

TrainRun run_from_json(const json& j) {
    TrainRun run;
    run.seed = j["seed"].get<std::uint64_t>();
    run.success = j["success"].get<bool>();
    run.converged_early = j.value("converged_early", false);
    run.final_worst_diag = get_or_nan(j, "worst_diag");
    run.final_d_s = get_or_nan(j, "d_s");
    run.final_dbar = get_or_nan(j, "dbar");
    run.dbar_down = get_or_nan(j, "dbar_down");
    if (j.contains("worst_direction")) {
        run.worst_theta = j["worst_direction"][0].get<double>();
        run.worst_phi = j["worst_direction"][1].get<double>();
    }
    run.initial_params = j["initial_params"].get<std::vector<double>>();
    run.final_params = j["final_params"].get<std::vector<double>>();
    const auto& trace = j["trace"];
    const auto objective = nullable_array(trace["objective"]);
    const auto avg = nullable_array(trace["avg_loss"]);
    const auto worst = nullable_array(trace["worst_diag"]);
    const auto ds = nullable_array(trace["d_s"]);
    const auto dbar = nullable_array(trace["dbar"]);
    for (std::size_t i = 0; i < avg.size(); ++i) {
        EpochStats e;
        e.objective = objective[i];
        e.avg_loss = avg[i];
        e.worst_diag = worst[i];
        e.d_s = ds[i];
        e.dbar = dbar[i];
        run.epochs.push_back(e);
    }
    run.accepted_losses = j["accepted_losses"].get<std::vector<double>>();
    if (j.contains("gates")) {
        for (const auto& g : j["gates"]) {
            GateOutcome out;
            out.gate = g["gate"].get<std::string>();
            out.worst_diag = g["worst_diag"].get<double>();
            out.success = g["success"].get<bool>();
            out.psi = g["psi"].get<std::vector<double>>();
            run.gates.push_back(std::move(out));
        }
    }
    return run;
}

}  // namespace

std::string record_filename(const ExperimentConfig& config) {
    std::string stem = config.mode;
    if (config.mode == "learn-op" || config.mode == "varqec" || config.mode == "vareftqc") {
        stem += "-" + config.code;
        for (const auto& g : config.gates) stem += "-" + g;
    }
    char hash[20];
    std::snprintf(hash, sizeof(hash), "%016llx",
                  static_cast<unsigned long long>(
                      fnv1a(config.canonical_text() + "#" + std::to_string(config.seed))));
    return stem + "-" + hash + ".json";
}

std::string write_record(const ResultRecord& record) {
    json j;
    j["schema"] = 1;
    j["engine_version"] = engine_version();
    j["mode"] = record.config.mode;
    json cfg = json::array();
    for (const auto& [k, v] : record.config.raw) cfg.push_back({{"key", k}, {"value", v}});
    j["config"] = cfg;
    if (record.config.code == "rea") {
        // Entangler placements are reproducible from the seed; stored anyway
        // so records are self-describing.
        const ReaEncoder rea = build_rea(record.config.rea_qubits, record.config.rea_layers,
                                         record.config.rea_seed);
        json layers = json::array();
        for (const auto& layer : rea.entangler_placements) {
            json pairs = json::array();
            for (const auto& [a, b] : layer) pairs.push_back({a, b});
            layers.push_back(pairs);
        }
        j["rea_placements"] = layers;
    }
    j["base_seed"] = record.config.seed;
    j["wall_seconds"] = record.wall_seconds;
    j["interrupted"] = record.interrupted;
    json runs = json::array();
    for (const auto& r : record.runs) runs.push_back(run_to_json(r));
    j["runs"] = runs;
    j["summary"] = {{"runs", record.runs.size()},
                    {"successes", record.success_count()},
                    {"success_percentage",
                     record.runs.empty()
                         ? 0.0
                         : 100.0 * static_cast<double>(record.success_count()) /
                               static_cast<double>(record.runs.size())}};

    namespace fs = std::filesystem;
    fs::create_directories(record.config.out_dir);
    const fs::path path = fs::path(record.config.out_dir) / record_filename(record.config);
    if (!fs::exists(path)) {
        const fs::path tmp = path.string() + ".tmp";
        std::ofstream out(tmp);
        out << j.dump(2) << "\n";
        out.close();
        fs::rename(tmp, path);
    }
    return path.string();
}

ResultRecord load_record(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open record: " + path);
    json j;
    in >> j;
    ResultRecord record;
    std::string text;
    for (const auto& kv : j["config"]) {
        text += kv["key"].get<std::string>() + " = " + kv["value"].get<std::string>() + "\n";
    }
    record.config = ExperimentConfig::from_text(text);
    record.wall_seconds = j.value("wall_seconds", 0.0);
    record.interrupted = j.value("interrupted", false);
    for (const auto& r : j["runs"]) record.runs.push_back(run_from_json(r));
    return record;
}

EvalReport eval_record(const ResultRecord& record) {
    EvalReport report;
    auto flag = [&](std::string msg) {
        report.ok = false;
        report.mismatches.push_back(std::move(msg));
    };
    const auto& cfg = record.config;
    const double tol = 1e-9;

    if (cfg.mode == "learn-op") {
        const Code code = make_code(cfg.code);
        const TargetGate target = TargetGate::from_name(cfg.gates.at(0));
        const OperationAnsatz ansatz{cfg.ansatz_class(0), code.n};
        const auto variant = pair_set_from_label(cfg.loss);
        OperationLossEvaluator evaluator(code, target, ansatz, *variant);
        for (const auto& run : record.runs) {
            const double worst = evaluator.worst_diag(run.final_params);
            if (std::abs(worst - run.final_worst_diag) > tol) {
                flag("seed " + std::to_string(run.seed) + ": worst_diag stored " +
                     std::to_string(run.final_worst_diag) + " recomputed " + std::to_string(worst));
            }
            if (run.success != (run.final_worst_diag <= cfg.epsilon)) {
                flag("seed " + std::to_string(run.seed) + ": success flag inconsistent");
            }
        }
        return report;
    }

    if (cfg.mode == "varqec" || cfg.mode == "vareftqc") {
        const Code code = Code::from_rea(cfg.rea_qubits, cfg.rea_layers, cfg.rea_seed);
        const PauliChannel noise = cfg.parse_noise();
        for (const auto& run : record.runs) {
            const auto theta = std::span<const double>(run.final_params)
                                   .subspan(0, code.encoder_param_count());
            const double ds = distinguishability_loss(code, theta, noise);
            if (std::abs(ds - run.final_d_s) > tol) {
                flag("seed " + std::to_string(run.seed) + ": d_s mismatch");
            }
            const double dbar = worst_distinguishability(code, theta, noise).value;
            if (std::abs(dbar - run.final_dbar) > 1e-6) {  // refinement tolerance
                flag("seed " + std::to_string(run.seed) + ": dbar mismatch");
            }
            if (cfg.mode == "vareftqc") {
                for (std::size_t g = 0; g < run.gates.size(); ++g) {
                    const TargetGate target = TargetGate::from_name(cfg.gates.at(g));
                    const OperationAnsatz ansatz{cfg.ansatz_class(g), code.n};
                    OperationLossEvaluator evaluator(code, target, ansatz, PairSetVariant::Block,
                                                     theta);
                    const double worst = evaluator.worst_diag(run.gates[g].psi);
                    if (std::abs(worst - run.gates[g].worst_diag) > tol) {
                        flag("seed " + std::to_string(run.seed) + ": gate " + cfg.gates[g] +
                             " worst_diag mismatch");
                    }
                }
            }
        }
        return report;
    }

    flag("records of mode " + cfg.mode + " cannot be re-evaluated");
    return report;
}

}  // namespace qecco::cli
