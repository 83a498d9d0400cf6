#pragma once

#include <deque>
#include <span>
#include <vector>

#include "qecco/optim/gradient.hpp"

namespace qecco {

enum class LineSearch { Backtracking, StrongWolfe };

struct LbfgsConfig {
    std::size_t history = 100;
    std::size_t iters_per_epoch = 20;
    std::size_t epochs = 50;
    LineSearch line_search = LineSearch::StrongWolfe;
    double armijo_c1 = 1e-4;
    double wolfe_c2 = 0.9;
    double backtrack_shrink = 0.5;
    std::size_t max_line_search = 40;
    double fd_step = 1e-6;
    double grad_tol = 1e-9;
};

enum class LbfgsStatus { IterationBudget, GradientConverged, StepRejected };

struct LbfgsOutcome {
    LbfgsStatus status = LbfgsStatus::IterationBudget;
    std::size_t iterations = 0;  // accepted steps in this run() call
    double loss = 0.0;
};

/// Two-loop-recursion L-BFGS with backtracking Armijo line search and a
/// one-shot steepest-descent fallback. History persists across run() calls
/// so that epoch-structured training continues one optimization trajectory.
class LbfgsOptimizer {
  public:
    LbfgsOptimizer(LossFn loss, GradFn grad, std::vector<double> x0, LbfgsConfig config);

    /// Runs up to max_iters accepted iterations; stops early on convergence
    /// or when no acceptable step exists.
    LbfgsOutcome run(std::size_t max_iters);

    const std::vector<double>& x() const { return x_; }
    double loss() const { return fx_; }
    /// Accepted loss after every iteration since construction (monotone
    /// non-increasing by the Armijo condition).
    const std::vector<double>& accepted_trace() const { return trace_; }

  private:
    std::vector<double> direction() const;
    bool backtracking_search(const std::vector<double>& d, double& step_out,
                             std::vector<double>& xnew, double& fnew, std::vector<double>& gnew);
    bool wolfe_search(const std::vector<double>& d, double& step_out, std::vector<double>& xnew,
                      double& fnew, std::vector<double>& gnew);

    LossFn loss_fn_;
    GradFn grad_fn_;
    LbfgsConfig config_;
    std::vector<double> x_;
    std::vector<double> grad_;
    double fx_ = 0.0;
    double last_step_ = 1.0;
    std::deque<std::pair<std::vector<double>, std::vector<double>>> history_;  // (s, y)
    std::vector<double> trace_;
};

struct LbfgsResult {
    std::vector<double> x;
    double loss = 0.0;
    LbfgsStatus status = LbfgsStatus::IterationBudget;
    std::vector<double> trace;
};

/// Convenience wrapper: epochs * iters_per_epoch iterations in one call.
/// Passing a null grad uses central finite differences with config.fd_step.
LbfgsResult lbfgs_minimize(const LossFn& loss, const GradFn& grad, std::vector<double> x0,
                           const LbfgsConfig& config);

}  // namespace qecco
