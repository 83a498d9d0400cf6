#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "qecco/simcore/circuit.hpp"

namespace qecco {

enum class AnsatzVariant {
    Strict1Q,
    Transversal1Q,
    NonTransversal1Q,
    StrictCtrl2Q,
    TransversalCtrl2Q,
    WeakTransversal2Q,
};

const char* ansatz_variant_label(AnsatzVariant v);
std::optional<AnsatzVariant> ansatz_variant_from_label(const std::string& label);
bool ansatz_variant_is_two_qubit(AnsatzVariant v);

/// Constrained physical circuit family for a candidate logical operation.
///
/// Parameter layout (angles grouped in U3 triples):
///   Strict1Q            3r    repetition-major, one shared triple per layer
///   Transversal1Q       3nr   (rep, qubit)
///   NonTransversal1Q    3nr + 3*violations, violations appended last
///   StrictCtrl2Q        3r
///   TransversalCtrl2Q   3nr   (rep, pair)
///   WeakTransversal2Q   24nr  (rep, pair, position 0..7)
struct AnsatzClass {
    AnsatzVariant variant = AnsatzVariant::Transversal1Q;
    std::size_t repetitions = 1;
    std::size_t violations = 0;     // NonTransversal1Q only
    std::uint64_t violation_seed = 0;
    bool invert_ctrl = false;       // 2Q classes: block B controls block A

    static AnsatzClass strict_1q(std::size_t r = 1);
    static AnsatzClass transversal_1q(std::size_t r = 1);
    static AnsatzClass non_transversal_1q(std::size_t violations, std::uint64_t seed,
                                          std::size_t r = 1);
    static AnsatzClass strict_ctrl_2q(std::size_t r = 1);
    static AnsatzClass transversal_ctrl_2q(std::size_t r = 1);
    static AnsatzClass weak_transversal_2q(std::size_t r = 1);
};

struct OperationAnsatz {
    AnsatzClass cls;
    std::size_t n = 0;  // physical qubits per block

    std::size_t param_count() const;
    bool is_two_qubit() const { return ansatz_variant_is_two_qubit(cls.variant); }
    std::size_t register_width() const { return is_two_qubit() ? 2 * n : n; }

    /// Materializes the constrained circuit; parameter slots follow the
    /// documented layout. Throws on parameter-count mismatch.
    Circuit build() const;
};

/// Seeded distinct ordered intra-block pairs for transversality violations.
std::vector<std::pair<std::size_t, std::size_t>> place_violations(std::size_t n,
                                                                  std::size_t violations,
                                                                  std::uint64_t seed);

/// ZYZ-style angle extraction: returns (θ, φ, λ) with u3_matrix(θ, φ, λ)
/// equal to `m` up to a global phase. Gimbal branches fix λ = 0.
std::array<double, 3> u3_angles_from_unitary(const Mat2& m);

/// Folds the r repeated layers of a strict/transversal ansatz into r = 1 by
/// multiplying each qubit's (or pair's) U3 chain and re-extracting angles.
/// The built unitary is unchanged up to a global phase per factor.
struct CondensedAnsatz {
    OperationAnsatz ansatz;
    std::vector<double> params;
};
CondensedAnsatz condense(const OperationAnsatz& ansatz, std::span<const double> params);

}  // namespace qecco
