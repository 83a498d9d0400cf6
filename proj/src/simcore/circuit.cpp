#include "qecco/simcore/circuit.hpp"

#include <algorithm>
#include <stdexcept>

#include "qecco/simcore/kernels.hpp"


namespace qecco {

void Circuit::append(GateOp op) {
    if (op.max_target() >= num_qubits_) throw std::out_of_range("gate target out of range");
    if (op.is_parameterized()) {
        param_count_ = std::max(param_count_, static_cast<std::size_t>(op.param_slot) + 3);
    }
    gates_.push_back(std::move(op));
}

std::size_t Circuit::append_u3(std::size_t q) {
    const std::size_t slot = param_count_;
    append(GateOp::u3(q, static_cast<int>(slot)));
    return slot;
}

std::size_t Circuit::append_controlled_u3(std::size_t control, std::size_t target) {
    const std::size_t slot = param_count_;
    append(GateOp::controlled_u3(control, target, static_cast<int>(slot)));
    return slot;
}

Circuit Circuit::shifted(std::size_t offset, std::size_t new_width) const {
    Circuit out(new_width);
    for (const GateOp& g : gates_) {
        GateOp moved = g;
        for (std::size_t& t : moved.targets) t += offset;
        out.append(std::move(moved));
    }
    out.param_count_ = param_count_;
    return out;
}

Circuit Circuit::inverse(std::span<const double> params) const {
    Circuit out(num_qubits_);
    for (auto it = gates_.rbegin(); it != gates_.rend(); ++it) {
        out.append(it->inverse(params));
    }
    return out;
}

void Circuit::apply_in_place(StateVector& state, std::span<const double> params) const {
    if (state.num_qubits() != num_qubits_) throw std::invalid_argument("register width mismatch");
    for (const GateOp& g : gates_) apply_gate(state, g, params);
}

StateVector Circuit::apply(const StateVector& state, std::span<const double> params) const {
    StateVector out = state;
    apply_in_place(out, params);
    return out;
}

std::vector<cplx> Circuit::unitary(std::span<const double> params) const {
    const std::size_t dim = std::size_t{1} << num_qubits_;
    std::vector<cplx> u(dim * dim, cplx{0.0, 0.0});
    for (std::size_t col = 0; col < dim; ++col) {
        StateVector psi = StateVector::basis(num_qubits_, col);
        apply_in_place(psi, params);
        for (std::size_t row = 0; row < dim; ++row) u[row * dim + col] = psi[row];
    }
    return u;
}

void apply_gate(StateVector& state, const GateOp& gate, std::span<const double> params) {
    if (gate.max_target() >= state.num_qubits()) throw std::out_of_range("gate target out of range");
    auto amps = std::span<cplx>(state.data());
    if (gate.is_two_qubit()) {
        // Local matrix convention: bit0 = target (targets[1]), bit1 = control (targets[0]).
        apply_2q_kernel(amps, gate.matrix_2q(params), gate.targets[1], gate.targets[0]);
    } else {
        apply_1q_kernel(amps, gate.matrix_1q(params), gate.targets[0]);
    }
}

StateVector apply_circuit(const StateVector& state, const Circuit& circuit,
                          std::span<const double> params) {
    return circuit.apply(state, params);
}

void circuit_overlap_gradient(const Circuit& circuit, std::span<const double> params,
                                 const StateVector& input, std::span<const cplx> costate,
                                 double weight, std::span<double> grad) {
    std::vector<cplx> ket = input.data();
    for (const GateOp& g : circuit.gates()) {
        if (g.is_two_qubit()) apply_2q_kernel(ket, g.matrix_2q(params), g.targets[1], g.targets[0]);
        else apply_1q_kernel(ket, g.matrix_1q(params), g.targets[0]);
    }
    std::vector<cplx> lam(costate.begin(), costate.end());

    const auto& gates = circuit.gates();
    for (std::size_t gi = gates.size(); gi-- > 0;) {
        const GateOp& g = gates[gi];
        if (g.is_two_qubit()) {
            const Mat4 m = g.matrix_2q(params);
            const Mat4 md = mat4_dagger(m);
            apply_2q_kernel(ket, md, g.targets[1], g.targets[0]);
            if (g.kind == GateKind::ControlledU3) {
                const Mat4 transfer = transfer_2q(lam, g.targets[1], g.targets[0], ket);
                const auto d = u3_matrix_derivatives(params[g.param_slot], params[g.param_slot + 1],
                                                     params[g.param_slot + 2]);
                for (int a = 0; a < 3; ++a) {
                    Mat4 embedded{};
                    embedded[2 * 4 + 2] = d[a][0];
                    embedded[2 * 4 + 3] = d[a][1];
                    embedded[3 * 4 + 2] = d[a][2];
                    embedded[3 * 4 + 3] = d[a][3];
                    grad[g.param_slot + a] += weight * contract(embedded, transfer).real();
                }
            }
            apply_2q_kernel(lam, md, g.targets[1], g.targets[0]);
        } else {
            const Mat2 m = g.matrix_1q(params);
            const Mat2 md = mat2_dagger(m);
            apply_1q_kernel(ket, md, g.targets[0]);
            if (g.kind == GateKind::U3Gate) {
                const Mat2 transfer = transfer_1q(lam, g.targets[0], ket);
                const auto d = u3_matrix_derivatives(params[g.param_slot], params[g.param_slot + 1],
                                                     params[g.param_slot + 2]);
                for (int a = 0; a < 3; ++a) {
                    grad[g.param_slot + a] += weight * contract(d[a], transfer).real();
                }
            }
            apply_1q_kernel(lam, md, g.targets[0]);
        }
    }
}


}  // namespace qecco
