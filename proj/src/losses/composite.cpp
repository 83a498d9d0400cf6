#include "qecco/losses/composite.hpp"

#include <stdexcept>

namespace qecco {

CompositeObjective::CompositeObjective(Code code, PauliChannel noise, std::vector<GateTerm> gates,
                                       double gamma)
    : code_(std::move(code)), noise_(noise), gates_(std::move(gates)) {
    if (gates_.empty()) throw std::invalid_argument("composite objective needs at least one gate");
    gamma_ = gamma >= 0.0 ? gamma : 1.0 / (2.0 * static_cast<double>(gates_.size()));
    theta_count_ = code_.encoder_param_count();
    total_count_ = theta_count_;
    const std::vector<double> theta0(theta_count_, 0.0);
    for (const auto& term : gates_) {
        psi_offsets_.push_back(total_count_);
        total_count_ += OperationAnsatz{term.ansatz.cls, term.ansatz.n}.param_count();
        evaluators_.push_back(std::make_unique<OperationLossEvaluator>(
            code_, term.target, term.ansatz, PairSetVariant::Block, theta0));
    }
}

std::span<const double> CompositeObjective::theta_of(std::span<const double> x) const {
    return x.subspan(0, theta_count_);
}

std::span<const double> CompositeObjective::psi_of(std::size_t g, std::span<const double> x) const {
    const std::size_t end =
        (g + 1 < psi_offsets_.size()) ? psi_offsets_[g + 1] : total_count_;
    return x.subspan(psi_offsets_[g], end - psi_offsets_[g]);
}

double CompositeObjective::d_s(std::span<const double> x) const {
    return distinguishability_loss(code_, theta_of(x), noise_);
}

double CompositeObjective::eval_ops(std::span<const double> x) const {
    double sum = 0.0;
    for (std::size_t g = 0; g < evaluators_.size(); ++g) {
        evaluators_[g]->rebind_encoder(theta_of(x));
        sum += evaluators_[g]->avg_loss(psi_of(g, x));
    }
    return sum;
}

double CompositeObjective::eval(std::span<const double> x) const {
    if (x.size() != total_count_) throw std::invalid_argument("parameter layout mismatch");
    return d_s(x) + gamma_ * eval_ops(x);
}

LossValues CompositeObjective::op_losses(std::size_t g, std::span<const double> x) const {
    evaluators_[g]->rebind_encoder(theta_of(x));
    return evaluators_[g]->evaluate(psi_of(g, x));
}

std::vector<double> CompositeObjective::gradient(std::span<const double> x, double) const {
    if (x.size() != total_count_) throw std::invalid_argument("parameter layout mismatch");
    std::vector<double> grad(total_count_, 0.0);

    // Θ block: analytic distinguishability gradient plus the adjoint encoder
    // gradients of every operation term; Ψ blocks: adjoint ansatz gradients.
    const auto ds_grad = distinguishability_gradient(code_, theta_of(x), noise_);
    for (std::size_t i = 0; i < theta_count_; ++i) grad[i] = ds_grad[i];
    for (std::size_t g = 0; g < evaluators_.size(); ++g) {
        evaluators_[g]->rebind_encoder(theta_of(x));
        const auto theta_part = evaluators_[g]->gradient_encoder(psi_of(g, x));
        for (std::size_t i = 0; i < theta_part.size(); ++i) grad[i] += gamma_ * theta_part[i];
        const auto psi_part = evaluators_[g]->gradient(psi_of(g, x));
        for (std::size_t i = 0; i < psi_part.size(); ++i) {
            grad[psi_offsets_[g] + i] = gamma_ * psi_part[i];
        }
    }
    return grad;
}

}  // namespace qecco
