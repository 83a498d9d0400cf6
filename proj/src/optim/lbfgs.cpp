#include "qecco/optim/lbfgs.hpp"

#include <cmath>
#include <stdexcept>

namespace qecco {

namespace {

double dot(std::span<const double> a, std::span<const double> b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

double norm2(std::span<const double> a) { return std::sqrt(dot(a, a)); }

}  // namespace

LbfgsOptimizer::LbfgsOptimizer(LossFn loss, GradFn grad, std::vector<double> x0,
                               LbfgsConfig config)
    : loss_fn_(std::move(loss)), grad_fn_(std::move(grad)), config_(config), x_(std::move(x0)) {
    if (!grad_fn_) {
        const double h = config_.fd_step;
        grad_fn_ = [this, h](std::span<const double> x) {
            return central_difference_gradient(loss_fn_, x, h);
        };
    }
    fx_ = loss_fn_(x_);
    if (!std::isfinite(fx_)) throw std::runtime_error("initial loss is not finite");
    grad_ = grad_fn_(x_);
}

std::vector<double> LbfgsOptimizer::direction() const {
    // Two-loop recursion on the stored (s, y) pairs.
    std::vector<double> q = grad_;
    const std::size_t k = history_.size();
    std::vector<double> alpha(k);
    for (std::size_t idx = k; idx-- > 0;) {
        const auto& [s, y] = history_[idx];
        const double rho = 1.0 / dot(y, s);
        alpha[idx] = rho * dot(s, q);
        for (std::size_t i = 0; i < q.size(); ++i) q[i] -= alpha[idx] * y[i];
    }
    if (k > 0) {
        const auto& [s, y] = history_.back();
        const double gamma = dot(s, y) / dot(y, y);
        for (auto& v : q) v *= gamma;
    }
    for (std::size_t idx = 0; idx < k; ++idx) {
        const auto& [s, y] = history_[idx];
        const double rho = 1.0 / dot(y, s);
        const double beta = rho * dot(y, q);
        for (std::size_t i = 0; i < q.size(); ++i) q[i] += (alpha[idx] - beta) * s[i];
    }
    for (auto& v : q) v = -v;
    return q;
}

bool LbfgsOptimizer::backtracking_search(const std::vector<double>& d, double& step_out,
                                         std::vector<double>& xnew, double& fnew,
                                         std::vector<double>& gnew) {
    const double slope = dot(grad_, d);
    if (slope >= 0.0) return false;
    // Warm-start near plateaus: repeated deep backtracking is wasted work, so
    // resume close to the previously accepted step length.
    double t = std::min(1.0, 4.0 * last_step_);
    for (std::size_t ls = 0; ls < config_.max_line_search; ++ls) {
        xnew.resize(x_.size());
        for (std::size_t i = 0; i < x_.size(); ++i) xnew[i] = x_[i] + t * d[i];
        fnew = loss_fn_(xnew);
        if (std::isfinite(fnew) && fnew <= fx_ + config_.armijo_c1 * t * slope) {
            step_out = t;
            gnew = grad_fn_(xnew);
            return true;
        }
        t *= config_.backtrack_shrink;
    }
    return false;
}

bool LbfgsOptimizer::wolfe_search(const std::vector<double>& d, double& step_out,
                                  std::vector<double>& xnew, double& fnew,
                                  std::vector<double>& gnew) {
    const double slope0 = dot(grad_, d);
    if (slope0 >= 0.0) return false;
    const double c1 = config_.armijo_c1;
    const double c2 = config_.wolfe_c2;

    auto eval_at = [&](double t, double& f, double& slope) {
        xnew.resize(x_.size());
        for (std::size_t i = 0; i < x_.size(); ++i) xnew[i] = x_[i] + t * d[i];
        f = loss_fn_(xnew);
        gnew = grad_fn_(xnew);
        slope = dot(gnew, d);
    };

    // Bracket phase (Nocedal & Wright alg. 3.5), then bisection zoom.
    double t_prev = 0.0, f_prev = fx_, slope_prev = slope0;
    double t = 1.0;
    double lo = 0.0, hi = -1.0, f_lo = fx_;
    bool bracketed = false;
    std::size_t evals = 0;
    for (; evals < config_.max_line_search; ++evals) {
        double f, slope;
        eval_at(t, f, slope);
        if (!std::isfinite(f) || f > fx_ + c1 * t * slope0 || (evals > 0 && f >= f_prev)) {
            lo = t_prev;
            f_lo = f_prev;
            hi = t;
            bracketed = true;
            break;
        }
        if (std::abs(slope) <= -c2 * slope0) {
            step_out = t;
            fnew = f;
            return true;
        }
        if (slope >= 0.0) {
            lo = t;
            f_lo = f;
            hi = t_prev;
            bracketed = true;
            break;
        }
        t_prev = t;
        f_prev = f;
        slope_prev = slope;
        t *= 2.0;
        if (t > 1e8) break;
    }
    (void)slope_prev;
    if (!bracketed) return false;

    for (; evals < config_.max_line_search; ++evals) {
        t = 0.5 * (lo + hi);
        double f, slope;
        eval_at(t, f, slope);
        if (!std::isfinite(f) || f > fx_ + c1 * t * slope0 || f >= f_lo) {
            hi = t;
        } else {
            if (std::abs(slope) <= -c2 * slope0) {
                step_out = t;
                fnew = f;
                return true;
            }
            if (slope * (hi - lo) >= 0.0) hi = lo;
            lo = t;
            f_lo = f;
        }
        if (std::abs(hi - lo) * norm2(d) < 1e-16) break;
    }
    // Fall back to the best sufficient-decrease point found by the zoom.
    if (lo > 0.0 && f_lo <= fx_ + c1 * lo * slope0 && std::isfinite(f_lo)) {
        double f, slope;
        eval_at(lo, f, slope);
        step_out = lo;
        fnew = f;
        return true;
    }
    return false;
}

LbfgsOutcome LbfgsOptimizer::run(std::size_t max_iters) {
    LbfgsOutcome out;
    for (std::size_t iter = 0; iter < max_iters; ++iter) {
        const double gnorm = norm2(grad_);
        if (gnorm < config_.grad_tol) {
            out.status = LbfgsStatus::GradientConverged;
            out.loss = fx_;
            return out;
        }

        auto search = [&](const std::vector<double>& dir, double& step_out,
                          std::vector<double>& xnew, double& fnew, std::vector<double>& gnew) {
            return config_.line_search == LineSearch::StrongWolfe
                       ? wolfe_search(dir, step_out, xnew, fnew, gnew)
                       : backtracking_search(dir, step_out, xnew, fnew, gnew);
        };

        std::vector<double> d = direction();
        std::vector<double> xnew, gnew;
        double fnew = 0.0;
        double step = 0.0;
        bool ok = search(d, step, xnew, fnew, gnew);
        if (!ok) {
            // One steepest-descent attempt, then give up on this trajectory.
            d = grad_;
            for (auto& v : d) v = -v;
            ok = search(d, step, xnew, fnew, gnew);
            if (!ok) {
                out.status = LbfgsStatus::StepRejected;
                out.loss = fx_;
                return out;
            }
            history_.clear();
        }

        std::vector<double> s(x_.size()), y(x_.size());
        for (std::size_t i = 0; i < x_.size(); ++i) {
            s[i] = xnew[i] - x_[i];
            y[i] = gnew[i] - grad_[i];
        }
        const double sy = dot(s, y);
        if (sy > 1e-12) {
            history_.emplace_back(std::move(s), std::move(y));
            if (history_.size() > config_.history) history_.pop_front();
        }
        last_step_ = step;
        x_ = std::move(xnew);
        fx_ = fnew;
        grad_ = std::move(gnew);
        trace_.push_back(fx_);
        ++out.iterations;
    }
    out.status = LbfgsStatus::IterationBudget;
    out.loss = fx_;
    return out;
}

LbfgsResult lbfgs_minimize(const LossFn& loss, const GradFn& grad, std::vector<double> x0,
                           const LbfgsConfig& config) {
    LbfgsOptimizer opt(loss, grad, std::move(x0), config);
    LbfgsResult result;
    for (std::size_t epoch = 0; epoch < config.epochs; ++epoch) {
        const LbfgsOutcome out = opt.run(config.iters_per_epoch);
        result.status = out.status;
        if (out.status != LbfgsStatus::IterationBudget && out.iterations == 0) break;
    }
    result.x = opt.x();
    result.loss = opt.loss();
    result.trace = opt.accepted_trace();
    return result;
}

}  // namespace qecco
