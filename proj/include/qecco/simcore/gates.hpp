#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "qecco/simcore/types.hpp"

namespace qecco {

/// 2x2 and 4x4 complex matrices, row-major.
using Mat2 = std::array<cplx, 4>;
using Mat4 = std::array<cplx, 16>;

Mat2 mat2_mul(const Mat2& a, const Mat2& b);
Mat4 mat4_mul(const Mat4& a, const Mat4& b);
Mat2 mat2_dagger(const Mat2& m);
Mat4 mat4_dagger(const Mat4& m);
Mat2 mat2_identity();
Mat4 mat4_identity();
/// Kronecker product low ⊗ high: `low` acts on the low-order qubit of the pair.
Mat4 mat4_kron(const Mat2& low, const Mat2& high);
double mat2_unitarity_error(const Mat2& m);
double mat4_unitarity_error(const Mat4& m);

enum class NamedGate { X, Y, Z, H, S, Sdg, T, Tdg, CX, CZ, CS };

const char* named_gate_label(NamedGate g);
std::optional<NamedGate> named_gate_from_label(const std::string& label);
bool named_gate_is_two_qubit(NamedGate g);
Mat2 named_gate_matrix_1q(NamedGate g);
Mat4 named_gate_matrix_2q(NamedGate g);

/// U3(θ,φ,λ) = [[cos(θ/2), -e^{iλ} sin(θ/2)], [e^{iφ} sin(θ/2), e^{i(φ+λ)} cos(θ/2)]]
Mat2 u3_matrix(double theta, double phi, double lambda);
/// Partial derivatives of u3_matrix with respect to (θ, φ, λ).
std::array<Mat2, 3> u3_matrix_derivatives(double theta, double phi, double lambda);

/// Controlled-V on (control, target) = |0><0| ⊗ I + |1><1| ⊗ V.
/// Row-major in the basis index (t + 2c): control is the high-order bit.
Mat4 controlled(const Mat2& v);

enum class GateKind { Named, FixedMatrix1Q, FixedMatrix2Q, U3Gate, ControlledU3 };

/// One gate application. Parameterized kinds (U3Gate, ControlledU3) draw three
/// consecutive angles (θ,φ,λ) from a parameter vector starting at param_slot.
struct GateOp {
    GateKind kind = GateKind::Named;
    NamedGate name = NamedGate::X;
    std::vector<std::size_t> targets;  // (control, target) for 2-qubit gates
    Mat2 fixed1q{};
    Mat4 fixed2q{};
    int param_slot = -1;

    static GateOp named(NamedGate g, std::size_t q);
    static GateOp named(NamedGate g, std::size_t control, std::size_t target);
    static GateOp fixed(const Mat2& m, std::size_t q);
    static GateOp fixed(const Mat4& m, std::size_t control, std::size_t target);
    static GateOp u3(std::size_t q, int param_slot);
    static GateOp controlled_u3(std::size_t control, std::size_t target, int param_slot);

    bool is_two_qubit() const;
    bool is_parameterized() const { return param_slot >= 0; }
    std::size_t max_target() const;

    /// Inverse gate with the same shape; parameterized gates are materialized
    /// against `params` and inverted as fixed matrices.
    GateOp inverse(std::span<const double> params) const;

    /// Concrete matrix, validated to be unitary within kUnitaryTol.
    Mat2 matrix_1q(std::span<const double> params) const;
    Mat4 matrix_2q(std::span<const double> params) const;
};

}  // namespace qecco
