#pragma once

#include <optional>
#include <span>
#include <vector>

#include "qecco/ansatz/ansatz.hpp"
#include "qecco/codes/code.hpp"
#include "qecco/losses/two_design.hpp"
#include "qecco/simcore/channel.hpp"

namespace qecco {

/// Losses for one (code, target, ansatz, pair-set) configuration.
struct LossSpec {
    Code code;
    TargetGate target;
    OperationAnsatz ansatz;
    PairSetVariant pairs = PairSetVariant::Block;
    std::vector<double> encoder_params;   // empty for fixed encoders
    std::optional<PauliChannel> noise;    // distinguishability term only
    double gamma = 0.0;                   // composite weight (vareftqc)
};

struct LossValues {
    double avg = 0.0;         // mean |Δ_F| over the selected pair set
    double worst = 0.0;       // max |Δ_F| over the selected pair set
    double worst_diag = 0.0;  // max over diagonal pairs; the ε-quality metric
};

/// Evaluates operation errors, pairwise losses, Gram matrices, and the
/// adjoint-mode gradient of the average loss for a fixed code and target.
/// Encoded design states are prepared once per encoder binding; evaluation
/// composes the ansatz into per-qubit / per-pair matrix chains.
class OperationLossEvaluator {
  public:
    OperationLossEvaluator(const Code& code, const TargetGate& target,
                           const OperationAnsatz& ansatz, PairSetVariant pairs,
                           std::span<const double> encoder_params = {});
    explicit OperationLossEvaluator(const LossSpec& spec);

    /// Re-encodes all design states against new encoder parameters.
    void rebind_encoder(std::span<const double> theta);

    std::size_t param_count() const { return ansatz_.param_count(); }
    const OperationAnsatz& ansatz() const { return ansatz_; }
    const TwoDesign& design() const { return *design_; }
    PairSetVariant variant() const { return variant_; }

    LossValues evaluate(std::span<const double> psi) const;
    double avg_loss(std::span<const double> psi) const { return evaluate(psi).avg; }
    double worst_loss(std::span<const double> psi) const { return evaluate(psi).worst; }
    double worst_diag(std::span<const double> psi) const { return evaluate(psi).worst_diag; }

    /// Signed pairwise operation error F_target(i,j) - F_pred(i,j); reduces
    /// to 1 - F for i = j. The aggregated losses take absolute values.
    double operation_error(std::size_t i, std::size_t j, std::span<const double> psi) const;

    /// d(avg_loss)/dΨ by adjoint back-propagation through the ansatz.
    std::vector<double> gradient(std::span<const double> psi) const;

    /// d(avg_loss)/dΘ through the encoder dependence of both the encoded
    /// inputs and the encoded targets, at the currently bound encoder.
    std::vector<double> gradient_encoder(std::span<const double> psi) const;

    GramMatrix gram_target() const;
    GramMatrix gram_prediction(std::span<const double> psi) const;

  private:
    struct Factor {
        enum class Kind { Fixed, U3Low, U3High, CU3 } kind = Kind::Fixed;
        Mat4 fixed{};
        int slot = -1;
    };
    struct Macro {
        bool two_qubit = false;
        std::size_t qa = 0;  // low local bit (target qubit for controlled gates)
        std::size_t qb = 0;  // high local bit (control qubit)
        std::vector<int> slots_1q;     // temporal U3 chain (1-qubit macros)
        std::vector<Factor> factors;   // temporal chain (2-qubit macros)
    };

    void compile();
    void prepare_states(std::span<const double> theta);
    StateVector embed_logical(const StateVector& logical) const;
    Mat2 macro_matrix_1q(const Macro& m, std::span<const double> psi) const;
    Mat4 macro_matrix_2q(const Macro& m, std::span<const double> psi) const;
    static Mat4 factor_matrix(const Factor& f, std::span<const double> psi);
    void apply_all(std::span<cplx> amps, std::span<const double> psi) const;
    std::vector<double> prediction_column(std::size_t j, std::span<const double> psi,
                                          const std::vector<std::size_t>& rows) const;

    Code code_;
    TargetGate target_;
    OperationAnsatz ansatz_;
    PairSetVariant variant_;
    const TwoDesign* design_;
    std::vector<std::pair<std::size_t, std::size_t>> pairs_;
    std::vector<std::vector<std::size_t>> rows_by_column_;  // needed Gram rows per state column
    std::vector<StateVector> encoded_;   // e_j
    std::vector<StateVector> targets_;   // t_i
    std::vector<double> bound_theta_;
    std::vector<double> target_gram_;
    std::vector<Macro> macros_;
};

}  // namespace qecco
