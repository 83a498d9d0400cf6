#include "qecco/cli/config.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

namespace qecco::cli {

namespace {

std::string trim(const std::string& s) {
    const auto begin = s.find_first_not_of(" \t\r\n");
    if (begin == std::string::npos) return "";
    const auto end = s.find_last_not_of(" \t\r\n");
    return s.substr(begin, end - begin + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string part;
    while (std::getline(ss, part, sep)) {
        part = trim(part);
        if (!part.empty()) out.push_back(part);
    }
    return out;
}

bool parse_bool(const std::string& v) {
    if (v == "true" || v == "1" || v == "yes" || v == "on") return true;
    if (v == "false" || v == "0" || v == "no" || v == "off") return false;
    throw std::invalid_argument("expected a boolean, got: " + v);
}

}  // namespace

ExperimentConfig ExperimentConfig::from_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open config file: " + path);
    std::stringstream buffer;
    buffer << in.rdbuf();
    return from_text(buffer.str());
}

ExperimentConfig ExperimentConfig::from_text(const std::string& text) {
    ExperimentConfig cfg;
    std::stringstream ss(text);
    std::string line;
    while (std::getline(ss, line)) {
        const auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) throw std::invalid_argument("expected key = value: " + line);
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        cfg.raw.emplace_back(key, value);

        if (key == "mode") cfg.mode = value;
        else if (key == "code") cfg.code = value;
        else if (key == "rea_qubits") cfg.rea_qubits = std::stoul(value);
        else if (key == "rea_layers") cfg.rea_layers = std::stoul(value);
        else if (key == "rea_seed") cfg.rea_seed = std::stoull(value);
        else if (key == "gate" || key == "gates") cfg.gates = split(value, ',');
        else if (key == "ansatz" || key == "ansatzes") cfg.gate_ansatzes = split(value, ',');
        else if (key == "repetitions") {
            cfg.gate_repetitions.clear();
            for (const auto& r : split(value, ',')) cfg.gate_repetitions.push_back(std::stoul(r));
        }
        else if (key == "violations") cfg.violations = std::stoul(value);
        else if (key == "violation_seed") cfg.violation_seed = std::stoull(value);
        else if (key == "invert_ctrl") cfg.invert_ctrl = parse_bool(value);
        else if (key == "loss") cfg.loss = value;
        else if (key == "noise") cfg.noise = value;
        else if (key == "gamma") cfg.gamma = std::stod(value);
        else if (key == "warm_start") cfg.warm_start = parse_bool(value);
        else if (key == "gamma_ramp") cfg.gamma_ramp = parse_bool(value);
        else if (key == "pretrain_epochs") cfg.pretrain_epochs = std::stoul(value);
        else if (key == "runs") cfg.runs = std::stoul(value);
        else if (key == "seed") cfg.seed = std::stoull(value);
        else if (key == "jobs") cfg.jobs = std::stoul(value);
        else if (key == "epochs") cfg.epochs = std::stoul(value);
        else if (key == "iters_per_epoch") cfg.iters_per_epoch = std::stoul(value);
        else if (key == "history") cfg.history = std::stoul(value);
        else if (key == "epsilon") cfg.epsilon = std::stod(value);
        else if (key == "gradient") cfg.gradient = value;
        else if (key == "table") cfg.table = value;
        else if (key == "codes") cfg.code_subset = split(value, ',');
        else if (key == "record") cfg.record_path = value;
        else if (key == "recompute") cfg.recompute = parse_bool(value);
        else if (key == "out") cfg.out_dir = value;
        else throw std::invalid_argument("unknown config key: " + key);
    }
    return cfg;
}

std::string ExperimentConfig::canonical_text() const {
    std::stringstream out;
    for (const auto& [k, v] : raw) out << k << " = " << v << "\n";
    return out.str();
}

PauliChannel ExperimentConfig::parse_noise() const {
    if (noise.empty()) throw std::invalid_argument("mode requires a noise = ... entry");
    if (noise == "adep") return PauliChannel::asymmetric_depolarizing();
    const auto colon = noise.find(':');
    if (colon != std::string::npos) {
        const std::string kind = noise.substr(0, colon);
        const double p = std::stod(noise.substr(colon + 1));
        if (kind == "bitflip") return PauliChannel::bitflip(p);
        if (kind == "depolarizing") return PauliChannel::depolarizing(p);
        throw std::invalid_argument("unknown noise kind: " + kind);
    }
    const auto parts = split(noise, ',');
    if (parts.size() != 3) throw std::invalid_argument("noise expects px,py,pz or a named channel");
    return PauliChannel(std::stod(parts[0]), std::stod(parts[1]), std::stod(parts[2]));
}

AnsatzClass ExperimentConfig::ansatz_class(std::size_t g) const {
    std::string label = g < gate_ansatzes.size() ? gate_ansatzes[g]
                        : gate_ansatzes.empty() ? "" : gate_ansatzes.back();
    const std::size_t reps = g < gate_repetitions.size() ? gate_repetitions[g]
                             : gate_repetitions.empty() ? 1 : gate_repetitions.back();
    if (g >= gates.size()) throw std::out_of_range("gate index");
    const bool two_qubit = gates[g].size() >= 2 && gates[g][0] == 'C';
    if (label.empty()) label = two_qubit ? "transversal-ctrl" : "transversal";

    const auto variant = ansatz_variant_from_label(label);
    if (!variant) throw std::invalid_argument("unknown ansatz: " + label);
    AnsatzClass cls;
    cls.variant = *variant;
    cls.repetitions = reps;
    cls.violations = violations;
    cls.violation_seed = violation_seed;
    cls.invert_ctrl = invert_ctrl;
    if (ansatz_variant_is_two_qubit(*variant) != two_qubit) {
        throw std::invalid_argument("ansatz " + label + " does not fit gate " + gates[g]);
    }
    return cls;
}

std::string config_template() {
    return R"(# experiment configuration
# mode: learn-op | varqec | vareftqc | reproduce-table | gram-export | eval
mode = learn-op

# registry code name or alias ("3_1_1", "steane", ...); "rea" selects the
# randomized entangling encoder with rea_qubits / rea_layers / rea_seed
code = 7_1_3
# rea_qubits = 5
# rea_layers = 3
# rea_seed = 1

# target logical gate(s): X Z H S T CX CZ CS; vareftqc takes a comma list
gate = S
# ansatz per gate: strict | transversal | non-transversal | strict-ctrl |
#                  transversal-ctrl | weak-transversal (default by arity)
ansatz = transversal
repetitions = 1
# violations = 1          # non-transversal only
# violation_seed = 7
# invert_ctrl = false     # swap control/target blocks for 2-qubit ansätze

# loss variant: diag | block | eblock | full
loss = block

# noise: adep | bitflip:0.1 | depolarizing:0.1 | px,py,pz   (varqec/vareftqc)
# noise = adep
# gamma = -1              # composite weight; negative = 1/(2 * #gates)
# warm_start = true
# gamma_ramp = false     # ramp gamma linearly over the epochs
# pretrain_epochs = 5

runs = 100
seed = 1
jobs = 0                  # worker threads; 0 = all cores

# optimizer overrides (0 = per-mode default epochs)
# epochs = 50
# iters_per_epoch = 20
# history = 100
# epsilon = 1e-5
# gradient = analytic     # analytic | fd

# reproduce-table: table = loss-variants | repetitions, codes = comma subset
# eval: record = results/xxx.json

out = results
)";
}

}  // namespace qecco::cli
