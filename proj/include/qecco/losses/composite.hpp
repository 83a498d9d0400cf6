#pragma once

#include <memory>
#include <span>
#include <vector>

#include "qecco/losses/distinguishability.hpp"
#include "qecco/losses/operation_loss.hpp"

namespace qecco {

/// Joint code/operation objective: D_S(noise; Θ) + γ Σ_U O_block(C_Θ; Ψ^U).
/// Parameter layout: [Θ | Ψ^1 | ... | Ψ^G].
class CompositeObjective {
  public:
    struct GateTerm {
        TargetGate target;
        OperationAnsatz ansatz;
    };

    /// A negative gamma selects the default 1/(2 * #gates); zero is honored.
    CompositeObjective(Code code, PauliChannel noise, std::vector<GateTerm> gates,
                       double gamma = -1.0);

    std::size_t theta_count() const { return theta_count_; }
    std::size_t param_count() const { return total_count_; }
    std::size_t gate_count() const { return evaluators_.size(); }
    double gamma() const { return gamma_; }
    void set_gamma(double g) const { gamma_ = g; }
    const Code& code() const { return code_; }
    const PauliChannel& noise() const { return noise_; }
    const GateTerm& gate(std::size_t g) const { return gates_[g]; }

    std::span<const double> theta_of(std::span<const double> x) const;
    std::span<const double> psi_of(std::size_t g, std::span<const double> x) const;

    double eval(std::span<const double> x) const;
    /// Central differences on Θ; adjoint gradients on each Ψ block.
    std::vector<double> gradient(std::span<const double> x, double h = 1e-6) const;

    double d_s(std::span<const double> x) const;
    LossValues op_losses(std::size_t g, std::span<const double> x) const;

  private:
    double eval_ops(std::span<const double> x) const;

    Code code_;
    PauliChannel noise_;
    std::vector<GateTerm> gates_;
    mutable double gamma_;
    std::size_t theta_count_ = 0;
    std::size_t total_count_ = 0;
    std::vector<std::size_t> psi_offsets_;
    mutable std::vector<std::unique_ptr<OperationLossEvaluator>> evaluators_;
};

}  // namespace qecco
