#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "qecco/simcore/gates.hpp"
#include "qecco/simcore/state.hpp"

namespace qecco {

/// Ordered list of gate applications on a fixed-width qubit register.
class Circuit {
  public:
    Circuit() = default;
    explicit Circuit(std::size_t num_qubits) : num_qubits_(num_qubits) {}

    std::size_t num_qubits() const { return num_qubits_; }
    std::size_t param_count() const { return param_count_; }
    const std::vector<GateOp>& gates() const { return gates_; }
    bool empty() const { return gates_.empty(); }

    void append(GateOp op);
    /// Appends a parameterized U3 and returns its slot; allocates 3 parameters.
    std::size_t append_u3(std::size_t q);
    std::size_t append_controlled_u3(std::size_t control, std::size_t target);

    /// Same circuit acting on (qubit + offset) in a wider register.
    Circuit shifted(std::size_t offset, std::size_t new_width) const;

    /// Gates reversed and conjugated; parameterized gates are frozen at `params`.
    Circuit inverse(std::span<const double> params) const;

    void apply_in_place(StateVector& state, std::span<const double> params = {}) const;
    StateVector apply(const StateVector& state, std::span<const double> params = {}) const;

    /// Full 2^n x 2^n unitary, column by column. Intended for small n in tests.
    std::vector<cplx> unitary(std::span<const double> params = {}) const;

  private:
    std::size_t num_qubits_ = 0;
    std::size_t param_count_ = 0;
    std::vector<GateOp> gates_;
};

/// Applies a single gate, dispatching on arity. Norm is preserved for unitary gates.
void apply_gate(StateVector& state, const GateOp& gate, std::span<const double> params = {});

/// Adds weight * d/dθ_l Re<costate| U(θ) |input> to grad for every circuit
/// parameter, via one backward adjoint sweep.
void circuit_overlap_gradient(const Circuit& circuit, std::span<const double> params,
                              const StateVector& input, std::span<const cplx> costate,
                              double weight, std::span<double> grad);

StateVector apply_circuit(const StateVector& state, const Circuit& circuit,
                          std::span<const double> params = {});

}  // namespace qecco
