#include <cmath>

#include "doctest.h"
#include "qecco/codes/registry.hpp"
#include "qecco/losses/distinguishability.hpp"
#include "qecco/optim/gradient.hpp"
#include "qecco/optim/harness.hpp"
#include "qecco/optim/nelder_mead.hpp"
#include "qecco/optim/train.hpp"
#include "qecco/simcore/random.hpp"

using namespace qecco;

TEST_CASE("finite difference gradients") {
    LossFn quadratic = [](std::span<const double> x) {
        double s = 0.0;
        for (double v : x) s += v * v;
        return s;
    };
    const std::vector<double> x = {1.0, 2.0};
    const auto g = central_difference_gradient(quadratic, x);
    CHECK(g[0] == doctest::Approx(2.0).epsilon(1e-6));
    CHECK(g[1] == doctest::Approx(4.0).epsilon(1e-6));

    LossFn constant = [](std::span<const double>) { return 7.5; };
    for (double v : central_difference_gradient(constant, x)) CHECK(v == doctest::Approx(0.0));

    const auto g4 = fourth_order_gradient(quadratic, x);
    CHECK(g4[0] == doctest::Approx(2.0).epsilon(1e-9));
}

TEST_CASE("finite differences match the fourth-order stencil on operation losses") {
    const Code code = make_code("4_1_2");
    const OperationAnsatz ansatz{AnsatzClass::transversal_1q(2), 4};
    OperationLossEvaluator eval(code, TargetGate::from_name("Z"), ansatz, PairSetVariant::Block);
    LossFn loss = [&](std::span<const double> psi) { return eval.avg_loss(psi); };
    Rng rng(3);
    for (int trial = 0; trial < 4; ++trial) {
        std::vector<double> psi(ansatz.param_count());
        for (auto& v : psi) v = rng.uniform_angle();
        const auto fd = central_difference_gradient(loss, psi, 1e-6);
        const auto ref = fourth_order_gradient(loss, psi, 1e-4);
        const auto analytic = eval.gradient(psi);
        for (std::size_t i = 0; i < psi.size(); ++i) {
            const double scale = std::max(1.0, std::abs(ref[i]));
            CHECK(std::abs(fd[i] - ref[i]) / scale < 1e-4);
            CHECK(std::abs(analytic[i] - fd[i]) / scale < 1e-5);
        }
    }
}

TEST_CASE("lbfgs on standard benchmarks") {
    LbfgsConfig config;
    config.epochs = 50;

    LossFn quadratic = [](std::span<const double> x) {
        double s = 0.0;
        for (double v : x) s += (v - 3.0) * (v - 3.0);
        return s;
    };
    const auto q = lbfgs_minimize(quadratic, nullptr, {0.0, 0.0, 0.0}, config);
    for (double v : q.x) CHECK(std::abs(v - 3.0) < 1e-8);

    LossFn rosenbrock = [](std::span<const double> x) {
        const double a = 1.0 - x[0];
        const double b = x[1] - x[0] * x[0];
        return a * a + 100.0 * b * b;
    };
    const auto r = lbfgs_minimize(rosenbrock, nullptr, {-1.2, 1.0}, config);
    CHECK(std::abs(r.x[0] - 1.0) < 1e-5);
    CHECK(std::abs(r.x[1] - 1.0) < 1e-5);

    // Accepted losses never increase.
    for (std::size_t i = 1; i < r.trace.size(); ++i) CHECK(r.trace[i] <= r.trace[i - 1] + 1e-15);
}

TEST_CASE("nelder-mead on a quadratic bowl") {
    const auto res = nelder_mead(
        [](const std::vector<double>& x) {
            return (x[0] - 0.5) * (x[0] - 0.5) + 2.0 * (x[1] + 1.0) * (x[1] + 1.0);
        },
        {0.0, 0.0}, 0.5, 1e-12, 300);
    CHECK(std::abs(res.x[0] - 0.5) < 1e-5);
    CHECK(std::abs(res.x[1] + 1.0) < 1e-5);
}

TEST_CASE("train_operation learns X on the bitflip code with a strict ansatz") {
    LossSpec spec;
    spec.code = make_code("3_1_1");
    spec.target = TargetGate::from_name("X");
    spec.ansatz = OperationAnsatz{AnsatzClass::strict_1q(1), 3};
    spec.pairs = PairSetVariant::Block;

    const TrainConfig config = TrainConfig::operation();
    TrainRun run = train_operation(spec, 5, config);
    CHECK(run.success);
    CHECK(run.final_worst_diag <= 1e-5);
    CHECK(run.epochs.size() == config.lbfgs.epochs);

    // First-order condition at the optimum.
    OperationLossEvaluator eval(spec);
    const auto grad = central_difference_gradient(
        [&](std::span<const double> psi) { return eval.avg_loss(psi); }, run.final_params);
    double gnorm = 0.0;
    for (double g : grad) gnorm += g * g;
    CHECK(std::sqrt(gnorm) < 1e-4);

    // The learned gate acts as X on every design state (phase-free check).
    const auto folded = condense(spec.ansatz, run.final_params);
    OperationLossEvaluator check(spec.code, spec.target, folded.ansatz, PairSetVariant::Diag);
    CHECK(check.worst_diag(folded.params) < 1e-5);

    // Determinism: identical seed reproduces the trace bit for bit.
    TrainRun again = train_operation(spec, 5, config);
    REQUIRE(again.accepted_losses.size() == run.accepted_losses.size());
    for (std::size_t i = 0; i < run.accepted_losses.size(); ++i) {
        CHECK(again.accepted_losses[i] == run.accepted_losses[i]);
    }
    for (std::size_t i = 1; i < run.accepted_losses.size(); ++i) {
        CHECK(run.accepted_losses[i] <= run.accepted_losses[i - 1] + 1e-15);
    }
}

TEST_CASE("train_operation finds no transversal H on the bitflip code") {
    LossSpec spec;
    spec.code = make_code("3_1_1");
    spec.target = TargetGate::from_name("H");
    spec.ansatz = OperationAnsatz{AnsatzClass::transversal_1q(1), 3};
    spec.pairs = PairSetVariant::Block;

    const auto harness = multi_restart(
        [&](std::uint64_t seed) { return train_operation(spec, seed, TrainConfig::operation()); },
        20, 1000, 2);
    CHECK(harness.success_count == 0);
    for (const auto& run : harness.runs) CHECK(run.final_worst_diag > 1e-3);
}

TEST_CASE("multi restart determinism and trivial wrap") {
    LossSpec spec;
    spec.code = make_code("3_1_1");
    spec.target = TargetGate::from_name("Z");
    spec.ansatz = OperationAnsatz{AnsatzClass::transversal_1q(1), 3};
    spec.pairs = PairSetVariant::Block;
    auto job = [&](std::uint64_t seed) {
        return train_operation(spec, seed, TrainConfig::operation());
    };

    const auto single = multi_restart(job, 1, 42, 1);
    const TrainRun direct = train_operation(spec, 42, TrainConfig::operation());
    CHECK(single.runs[0].final_worst_diag == direct.final_worst_diag);

    const auto a = multi_restart(job, 6, 7, 2);
    const auto b = multi_restart(job, 6, 7, 2);
    CHECK(a.success_count == b.success_count);
    CHECK(a.success_count >= 5);  // logical Z trains reliably on the bitflip code
    for (std::size_t i = 0; i < a.runs.size(); ++i) {
        CHECK(a.runs[i].final_worst_diag == b.runs[i].final_worst_diag);
    }
}

TEST_CASE("train_varqec on zero noise is a no-op") {
    const Code code = Code::from_rea(3, 2, 11);
    TrainConfig config = TrainConfig::varqec();
    config.lbfgs.epochs = 2;
    const TrainRun run = train_varqec(code, PauliChannel{0, 0, 0}, 3, config);
    CHECK(run.final_d_s == doctest::Approx(0.0).epsilon(1e-10));
    CHECK(run.final_dbar < 1e-6);
    CHECK(run.converged_early);
}

TEST_CASE("train_varqec improves the bitflip distinguishability") {
    const Code code = Code::from_rea(3, 3, 21);
    const PauliChannel noise = PauliChannel::bitflip(0.1);
    const TrainRun run = train_varqec(code, noise, 1, TrainConfig::varqec());
    const double random_ds =
        distinguishability_loss(code, run.initial_params, noise);
    CHECK(run.final_d_s < random_ds);
    CHECK(run.dbar_down > 1.0);
    CHECK(run.epochs.size() == TrainConfig::varqec().lbfgs.epochs);
}

TEST_CASE("vareftqc with zero gamma follows the varqec trajectory") {
    const Code code = Code::from_rea(3, 2, 17);
    const PauliChannel noise = PauliChannel::bitflip(0.1);
    std::vector<CompositeObjective::GateTerm> gates;
    gates.push_back(
        {TargetGate::from_name("T"), OperationAnsatz{AnsatzClass::transversal_1q(1), 3}});
    CompositeObjective objective(code, noise, gates, 0.0);

    TrainConfig config = TrainConfig::varqec();
    config.lbfgs.epochs = 2;
    const TrainRun joint = train_vareftqc(objective, 9, config);
    const TrainRun plain = train_varqec(code, noise, 9, config);
    CHECK(joint.final_d_s == doctest::Approx(plain.final_d_s).epsilon(1e-9));
}
