// Acceptance suite: one pass/fail line per criterion, tolerances pinned.
// Usage: acceptance [--criterion N] [--jobs N] [--stretch]

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdarg>
#include <cstring>
#include <numbers>
#include <string>
#include <vector>

#include "qecco/cli/runner.hpp"
#include "qecco/codes/registry.hpp"
#include "qecco/losses/composite.hpp"
#include "qecco/losses/distinguishability.hpp"
#include "qecco/losses/operation_loss.hpp"
#include "qecco/optim/gradient.hpp"
#include "qecco/optim/harness.hpp"
#include "qecco/simcore/linalg.hpp"
#include "qecco/simcore/random.hpp"

using namespace qecco;

namespace {

std::size_t g_jobs = 2;
bool g_stretch = false;
int g_failures = 0;

void report(int id, bool pass, const std::string& detail, bool gating = true) {
    std::printf("[%s] criterion %2d: %s\n", pass ? "PASS" : (gating ? "FAIL" : "info"), id,
                detail.c_str());
    std::fflush(stdout);
    if (!pass && gating) ++g_failures;
}

std::string fmt(const char* format, ...) {
    char buf[512];
    va_list args;
    va_start(args, format);
    std::vsnprintf(buf, sizeof(buf), format, args);
    va_end(args);
    return buf;
}

OperationAnsatz ansatz_for(const Code& code, const std::string& gate, std::size_t r) {
    const bool two_qubit = gate[0] == 'C';
    AnsatzClass cls = two_qubit ? AnsatzClass::transversal_ctrl_2q(r) : AnsatzClass::transversal_1q(r);
    return OperationAnsatz{cls, code.n};
}

HarnessResult run_cell(const Code& code, const std::string& gate, PairSetVariant variant,
                       std::size_t r, std::size_t runs, std::uint64_t base_seed,
                       bool stop_on_success = false) {
    const TargetGate target = TargetGate::from_name(gate);
    const OperationLossEvaluator evaluator(code, target, ansatz_for(code, gate, r), variant);
    const TrainConfig config = TrainConfig::operation();
    auto job = [&](std::uint64_t seed) { return train_operation(evaluator, seed, config); };
    if (!stop_on_success) return multi_restart(job, runs, base_seed, g_jobs);

    // Deterministic early stop: waves of g_jobs seeds, halting after the
    // first wave that contains a success.
    HarnessResult result;
    for (std::size_t start = 0; start < runs; start += g_jobs) {
        const std::size_t count = std::min(g_jobs, runs - start);
        const HarnessResult wave = multi_restart(job, count, base_seed + start, g_jobs);
        for (const auto& run : wave.runs) result.runs.push_back(run);
        result.success_count += wave.success_count;
        if (wave.success_count > 0) break;
    }
    return result;
}

// ---------------------------------------------------------------------------

void criterion_1() {
    const std::uint64_t base = 4242;
    const std::vector<std::string> codes = {"3_1_1", "4_1_2", "5_1_3", "7_1_3"};
    bool pass = true;
    std::string failures;
    std::size_t positives = 0, negatives = 0;
    for (const auto& code_name : codes) {
        const Code code = make_code(code_name);
        for (const char* gate : ground_truth_gate_order()) {
            const auto truth = ground_truth(code_name, gate);
            if (!truth || *truth == Realizability::Excluded) continue;
            const std::uint64_t seed = base ^ cli::fnv1a(code_name + ":" + gate);
            const bool exists = *truth != Realizability::None;
            const auto result =
                run_cell(code, gate, PairSetVariant::Block, 3, 20, seed, exists);
            if (exists) {
                ++positives;
                if (result.success_count == 0) {
                    pass = false;
                    failures += fmt(" %s/%s not found in 20;", code_name.c_str(), gate);
                }
            } else {
                ++negatives;
                bool all_far = true;
                for (const auto& run : result.runs) all_far &= run.final_worst_diag > 1e-3;
                if (result.success_count != 0 || !all_far) {
                    pass = false;
                    failures += fmt(" %s/%s spurious realization;", code_name.c_str(), gate);
                }
            }
        }
    }
    report(1, pass,
           fmt("ground truth rediscovery: %zu realizable gates found, %zu nonexistent gates "
               "yield zero successes (block, r=3, 20 restarts, base seed %llu)%s",
               positives, negatives, static_cast<unsigned long long>(base), failures.c_str()));
}

struct CellStats {
    std::size_t successes = 0;
    std::size_t runs = 0;
    std::vector<double> failed_avgs;
};

CellStats stats_cell(const std::string& code_name, const std::string& gate,
                     PairSetVariant variant, std::size_t r, std::size_t runs,
                     std::uint64_t base_seed) {
    const Code code = make_code(code_name);
    const TargetGate target = TargetGate::from_name(gate);
    const OperationLossEvaluator evaluator(code, target, ansatz_for(code, gate, r), variant);
    const TrainConfig config = TrainConfig::operation();
    const auto result = multi_restart(
        [&](std::uint64_t seed) { return train_operation(evaluator, seed, config); }, runs,
        base_seed, g_jobs);
    CellStats stats;
    stats.runs = runs;
    stats.successes = result.success_count;
    // Final diagonal average loss of failed runs, for the plateau analysis.
    OperationLossEvaluator diag(code, target, ansatz_for(code, gate, r), PairSetVariant::Diag);
    for (const auto& run : result.runs) {
        if (!run.success) stats.failed_avgs.push_back(diag.avg_loss(run.final_params));
    }
    return stats;
}

std::vector<double> g_s_diag_failed_avgs;  // shared between criteria 2 and 4

void criterion_2() {
    const std::uint64_t base = 9003;
    const CellStats x_diag = stats_cell("3_1_1", "X", PairSetVariant::Diag, 1, 50, base);
    const CellStats x_block = stats_cell("3_1_1", "X", PairSetVariant::Block, 1, 50, base);
    const CellStats s_diag = stats_cell("7_1_3", "S", PairSetVariant::Diag, 1, 50, base);
    const CellStats s_block = stats_cell("7_1_3", "S", PairSetVariant::Block, 1, 50, base);
    g_s_diag_failed_avgs = s_diag.failed_avgs;

    const double x_margin = 2.0 * (static_cast<double>(x_block.successes) - x_diag.successes);
    const double s_margin = 2.0 * (static_cast<double>(s_block.successes) - s_diag.successes);
    const bool pass = x_margin >= 20.0 && s_margin >= 20.0;
    report(2, pass,
           fmt("loss-variant ordering at 50 restarts (base seed %llu): [[3,1,1]] X block %zu vs "
               "diag %zu (+%.0fpp, published 69 vs 2), [[7,1,3]] S block %zu vs diag %zu (+%.0fpp, "
               "published 92 vs 26); required >= +20pp",
               static_cast<unsigned long long>(base), x_block.successes, x_diag.successes,
               x_margin, s_block.successes, s_diag.successes, s_margin));
}

void criterion_3() {
    const std::uint64_t base = 9003;
    const CellStats r1 = stats_cell("7_1_3", "H", PairSetVariant::Block, 1, 30, base);
    const CellStats r2 = stats_cell("7_1_3", "H", PairSetVariant::Block, 2, 30, base);
    const double margin =
        100.0 * (static_cast<double>(r2.successes) - r1.successes) / 30.0;
    report(3, margin >= 30.0,
           fmt("overparameterization on [[7,1,3]] H at 30 restarts (base seed %llu): r=2 %zu/30 "
               "vs r=1 %zu/30 (+%.0fpp, published 87 vs 21); required >= +30pp",
               static_cast<unsigned long long>(base), r2.successes, r1.successes, margin));
}

void criterion_4() {
    std::vector<double> avgs = g_s_diag_failed_avgs;
    std::uint64_t extra = 9500;
    while (avgs.size() < 30) {  // top up if criterion 2 left fewer than 30 failures
        const CellStats more = stats_cell("7_1_3", "S", PairSetVariant::Diag, 1, 10, extra);
        avgs.insert(avgs.end(), more.failed_avgs.begin(), more.failed_avgs.end());
        extra += 10;
    }
    std::size_t off_plateau = 0;
    for (double avg : avgs) {
        const bool near = std::abs(avg - 1.0 / 3.0) <= 0.05 || std::abs(avg - 0.5) <= 0.05 ||
                          std::abs(avg - 2.0 / 3.0) <= 0.05;
        if (!near) ++off_plateau;
    }
    report(4, off_plateau == 0,
           fmt("local-minima plateaus: %zu failed [[7,1,3]] S diag runs all lie within 0.05 of "
               "{1/3, 1/2, 2/3} (%zu off-plateau)",
               avgs.size(), off_plateau));
}

void criterion_5() {
    const Code code = make_code("3_1_1");
    OperationLossEvaluator eval(code, TargetGate::from_name("X"),
                                ansatz_for(code, "X", 1), PairSetVariant::Diag);
    const GramMatrix g = eval.gram_target();
    const auto& design = single_qubit_design();
    double worst = 0.0;
    for (std::size_t i = 0; i < 6; ++i) {
        for (std::size_t j = 0; j < 6; ++j) {
            double expect = (i == j) ? 1.0 : 0.5;
            for (const auto& [a, b] : design.orthogonal_pairs) {
                if ((i == a && j == b) || (i == b && j == a)) expect = 0.0;
            }
            worst = std::max(worst, std::abs(g.at(i, j) - expect));
        }
    }
    report(5, worst <= 1e-12,
           fmt("single-qubit target Gram is exactly {1, 0, 1/2} (max deviation %.2e <= 1e-12)",
               worst));
}

void criterion_6() {
    const std::vector<std::string> codes = {"3_1_1", "4_1_2", "5_1_3"};
    const std::vector<std::string> gates = {"X", "Z", "H", "S", "T"};
    const int samples = 20000;
    bool pass = true;
    double worst_sigma = 0.0;
    for (int cfg = 0; cfg < 20; ++cfg) {
        const Code code = make_code(codes[cfg % codes.size()]);
        const TargetGate target = TargetGate::from_name(gates[cfg % gates.size()]);
        const OperationAnsatz ansatz = ansatz_for(code, gates[cfg % gates.size()], 1 + cfg % 2);
        const auto psi = random_parameter_vector(ansatz.param_count(), 7000 + cfg);
        OperationLossEvaluator eval(code, target, ansatz, PairSetVariant::Diag);
        const double design_avg = eval.avg_loss(psi);

        // Independent Monte Carlo oracle over Haar logical states.
        const Circuit circuit = ansatz.build();
        Rng rng(8000 + cfg);
        double sum = 0.0, sum_sq = 0.0;
        for (int s = 0; s < samples; ++s) {
            const StateVector logical = haar_random_state(1, rng);
            const StateVector ideal = encode(code, target.apply(logical));
            const StateVector pred = circuit.apply(encode(code, logical), psi);
            const double delta = 1.0 - fidelity_pure(ideal, pred);
            sum += delta;
            sum_sq += delta * delta;
        }
        const double mc = sum / samples;
        const double se = std::sqrt(std::max(0.0, sum_sq / samples - mc * mc) / samples);
        const double sigmas = std::abs(design_avg - mc) / std::max(se, 1e-12);
        worst_sigma = std::max(worst_sigma, sigmas);
        if (sigmas > 3.0) pass = false;
    }
    report(6, pass,
           fmt("two-design exactness: 20 configurations, diagonal design average within 3 "
               "standard errors of a 20k-sample Haar Monte Carlo (worst %.2f sigma)",
               worst_sigma));
}

void criterion_7() {
    Rng rng(4100);
    bool pass = true;
    std::size_t checked = 0;
    const std::vector<std::string> codes = {"3_1_1", "4_1_2"};
    const std::vector<std::string> gates1 = {"X", "Z", "H", "S", "T"};
    const std::vector<std::string> gates2 = {"CX", "CZ", "CS"};
    for (int trial = 0; trial < 1000; ++trial) {
        const Code code = make_code(codes[trial % 2]);
        const bool two_q = trial % 3 == 2;
        const std::string gate =
            two_q ? gates2[trial % gates2.size()] : gates1[trial % gates1.size()];
        const OperationAnsatz ansatz = ansatz_for(code, gate, 1);
        std::vector<double> psi(ansatz.param_count());
        for (auto& v : psi) v = rng.uniform_angle();
        OperationLossEvaluator eval(code, TargetGate::from_name(gate), ansatz,
                                    PairSetVariant::Full);
        const GramMatrix target = eval.gram_target();
        const GramMatrix pred = eval.gram_prediction(psi);
        const auto& design = eval.design();
        auto worst_over = [&](PairSetVariant v) {
            double worst = 0.0;
            for (const auto& [i, j] : pair_set(design, v)) {
                worst = std::max(worst, std::abs(target.at(i, j) - pred.at(i, j)));
            }
            return worst;
        };
        const double wd = worst_over(PairSetVariant::Diag);
        const double wb = worst_over(PairSetVariant::Block);
        const double wf = worst_over(PairSetVariant::Full);
        if (!(wd <= wb && wb <= wf)) pass = false;
        if (two_q) {
            const double we = worst_over(PairSetVariant::EBlock);
            if (!(wb <= we && we <= wf)) pass = false;
        }
        ++checked;
    }
    report(7, pass,
           fmt("worst-case ordering diag <= block <= full holds exactly on %zu random "
               "configurations",
               checked));
}

void criterion_8() {
    const auto result =
        worst_distinguishability(Code::bare(), {}, PauliChannel::asymmetric_depolarizing());
    report(8, std::abs(result.value - 0.186) <= 0.005,
           fmt("bare-qubit worst-case distinguishability loss under adep: %.4f (target 0.186 "
               "+/- 0.005, published ~0.185)",
               result.value));
}

void criterion_9() {
    const PauliChannel adep = PauliChannel::asymmetric_depolarizing();
    const double bare = worst_distinguishability(Code::bare(), {}, adep).value;
    const double enc = worst_distinguishability(make_code("5_1_3"), {}, adep).value;
    const double ratio = bare / enc;
    report(9, std::abs(ratio - 1.35) <= 0.10,
           fmt("[[5,1,3]] baseline under adep: reduction %.3fx (target 1.35 +/- 0.10)", ratio));
}

void criterion_10() {
    const Code code = Code::from_rea(5, 3, 8);
    const PauliChannel adep = PauliChannel::asymmetric_depolarizing();
    const TrainConfig config = TrainConfig::varqec();
    const auto result = multi_restart(
        [&](std::uint64_t seed) { return train_varqec(code, adep, seed, config); }, 10, 301,
        g_jobs);
    double best = std::numeric_limits<double>::infinity();
    double best_down = 0.0;
    for (const auto& run : result.runs) {
        if (run.final_dbar < best) {
            best = run.final_dbar;
            best_down = run.dbar_down;
        }
    }
    report(10, best <= 0.10 && best_down >= 1.85,
           fmt("varqec ((5,2)) under adep, best of 10 seeds (base 301): dbar %.4f <= 0.10 "
               "(published 0.091), reduction %.2fx >= 1.85 (published 2.03)",
               best, best_down));
}

TrainRun vareftqc_32_job(std::uint64_t seed, std::size_t n, std::uint64_t rea_seed,
                         const PauliChannel& noise, bool gamma_ramp = false) {
    const Code code = Code::from_rea(n, 3, rea_seed);
    std::vector<CompositeObjective::GateTerm> gates;
    gates.push_back({TargetGate::from_name("CZ"),
                     OperationAnsatz{AnsatzClass::transversal_ctrl_2q(3), n}});
    gates.push_back(
        {TargetGate::from_name("T"), OperationAnsatz{AnsatzClass::transversal_1q(3), n}});
    CompositeObjective objective(code, noise, std::move(gates), -1.0);

    TrainConfig pre = TrainConfig::varqec();
    const TrainRun pretrain = train_varqec(code, noise, seed, pre);
    TrainConfig config = TrainConfig::vareftqc(true);
    config.gamma_ramp = gamma_ramp;
    return train_vareftqc(objective, seed, config, pretrain.final_params);
}

void criterion_11() {
    const PauliChannel bitflip = PauliChannel::bitflip(0.1);
    const auto result = multi_restart(
        [&](std::uint64_t seed) { return vareftqc_32_job(seed, 3, 5, bitflip); }, 10, 21, g_jobs);
    double best_down = 0.0;
    std::size_t successes = 0;
    for (const auto& run : result.runs) {
        if (run.success) {
            ++successes;
            best_down = std::max(best_down, run.dbar_down);
        }
    }
    report(11, successes > 0 && best_down >= 3.0,
           fmt("vareftqc ((3,2)) under bitflip 0.1 with {CZ_L, T_L}, warm-started, best of 10 "
               "seeds (base 21): %zu runs realized both gates (worst_diag <= 1e-5), best "
               "reduction %.2fx >= 3.0 (published 3.6)",
               successes, best_down));

    if (!g_stretch) {
        report(11, true,
               "stretch target ((5,2)) bitflip reduction >= 8 skipped (non-gating; rerun with "
               "--stretch)",
               false);
        return;
    }
    const auto big = multi_restart(
        [&](std::uint64_t seed) { return vareftqc_32_job(seed, 5, 1, bitflip, true); }, 10, 31,
        g_jobs);
    double big_down = 0.0;
    for (const auto& run : big.runs) {
        if (run.success) big_down = std::max(big_down, run.dbar_down);
    }
    report(11, big_down >= 8.0,
           fmt("stretch: vareftqc ((5,2)) bitflip best reduction %.2fx (target >= 8, published 11.8)",
               big_down),
           false);
}

void criterion_12() {
    Rng rng(1200);
    double worst = 0.0;
    std::size_t checked = 0;
    const std::vector<std::string> codes = {"3_1_1", "4_1_2"};
    for (int trial = 0; trial < 100; ++trial) {
        const Code code = make_code(codes[trial % 2]);
        const std::size_t r = 2 + trial % 4;
        const AnsatzClass cls =
            (trial % 3 == 0) ? AnsatzClass::strict_1q(r) : AnsatzClass::transversal_1q(r);
        const OperationAnsatz ansatz{cls, code.n};
        const std::string gate = (trial % 2 == 0) ? "S" : "H";
        OperationLossEvaluator eval(code, TargetGate::from_name(gate), ansatz,
                                    PairSetVariant::Block);

        std::vector<double> psi(ansatz.param_count());
        if (trial % 5 == 0) {  // trained instance
            LossSpec spec;
            spec.code = code;
            spec.target = TargetGate::from_name(gate);
            spec.ansatz = ansatz;
            spec.pairs = PairSetVariant::Block;
            psi = train_operation(spec, 100 + trial, TrainConfig::operation()).final_params;
        } else {
            for (auto& v : psi) v = rng.uniform_angle();
        }

        const auto folded = condense(ansatz, psi);
        OperationLossEvaluator eval_folded(code, TargetGate::from_name(gate), folded.ansatz,
                                           PairSetVariant::Block);
        worst = std::max(worst,
                         std::abs(eval.worst_diag(psi) - eval_folded.worst_diag(folded.params)));
        ++checked;
    }
    report(12, worst < 1e-9,
           fmt("condensation equivalence on %zu transversal ansätze with r in {2..5}: max "
               "worst_diag change %.2e < 1e-9",
               checked, worst));
}

void criterion_13() {
    Rng rng(1300);
    const std::vector<std::string> codes = {"3_1_1", "4_1_2"};
    double worst_fd = 0.0, worst_analytic = 0.0;
    for (int trial = 0; trial < 20; ++trial) {
        const Code code = make_code(codes[trial % 2]);
        const std::string gate = (trial % 4 < 2) ? "S" : "CZ";
        const OperationAnsatz ansatz = ansatz_for(code, gate, 1 + trial % 2);
        OperationLossEvaluator eval(code, TargetGate::from_name(gate), ansatz,
                                    PairSetVariant::Block);
        std::vector<double> psi(ansatz.param_count());
        for (auto& v : psi) v = rng.uniform_angle();

        LossFn loss = [&](std::span<const double> p) { return eval.avg_loss(p); };
        const auto fd = central_difference_gradient(loss, psi, 1e-6);
        const auto ref = fourth_order_gradient(loss, psi, 1e-4);
        const auto analytic = eval.gradient(psi);
        auto rel = [](const std::vector<double>& a, const std::vector<double>& b) {
            double num = 0.0, den = 0.0;
            for (std::size_t i = 0; i < a.size(); ++i) {
                num += (a[i] - b[i]) * (a[i] - b[i]);
                den += b[i] * b[i];
            }
            return std::sqrt(num) / std::max(std::sqrt(den), 1e-12);
        };
        worst_fd = std::max(worst_fd, rel(fd, ref));
        worst_analytic = std::max(worst_analytic, rel(analytic, fd));
    }
    report(13, worst_fd < 1e-4 && worst_analytic < 1e-5,
           fmt("gradient correctness on 20 random operation-loss points: central differences vs "
               "4th-order stencil %.2e < 1e-4; analytic vs central differences %.2e < 1e-5",
               worst_fd, worst_analytic));
}

}  // namespace

int main(int argc, char** argv) {
    int only = 0;
    for (int i = 1; i < argc; ++i) {
        if (std::strcmp(argv[i], "--criterion") == 0 && i + 1 < argc) only = std::atoi(argv[++i]);
        else if (std::strcmp(argv[i], "--jobs") == 0 && i + 1 < argc) {
            g_jobs = std::strtoul(argv[++i], nullptr, 10);
        }
        else if (std::strcmp(argv[i], "--stretch") == 0) g_stretch = true;
    }

    const auto t0 = std::chrono::steady_clock::now();
    auto want = [&](int id) { return only == 0 || only == id; };
    if (want(5)) criterion_5();
    if (want(8)) criterion_8();
    if (want(9)) criterion_9();
    if (want(13)) criterion_13();
    if (want(12)) criterion_12();
    if (want(6)) criterion_6();
    if (want(7)) criterion_7();
    if (want(2)) criterion_2();
    if (want(4)) criterion_4();
    if (want(3)) criterion_3();
    if (want(10)) criterion_10();
    if (want(11)) criterion_11();
    if (want(1)) criterion_1();
    const double minutes =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count() / 60.0;
    std::printf("%d gating failure(s); %.1f minutes\n", g_failures, minutes);
    return g_failures == 0 ? 0 : 1;
}
