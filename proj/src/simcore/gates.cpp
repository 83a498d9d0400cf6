#include "qecco/simcore/gates.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace qecco {

namespace {
constexpr cplx kZero{0.0, 0.0};
constexpr cplx kOne{1.0, 0.0};
constexpr cplx kImag{0.0, 1.0};
}  // namespace

Mat2 mat2_mul(const Mat2& a, const Mat2& b) {
    return {a[0] * b[0] + a[1] * b[2], a[0] * b[1] + a[1] * b[3],
            a[2] * b[0] + a[3] * b[2], a[2] * b[1] + a[3] * b[3]};
}

Mat4 mat4_mul(const Mat4& a, const Mat4& b) {
    Mat4 out{};
    for (std::size_t r = 0; r < 4; ++r) {
        for (std::size_t c = 0; c < 4; ++c) {
            cplx acc = kZero;
            for (std::size_t k = 0; k < 4; ++k) acc += a[r * 4 + k] * b[k * 4 + c];
            out[r * 4 + c] = acc;
        }
    }
    return out;
}

Mat2 mat2_dagger(const Mat2& m) {
    return {std::conj(m[0]), std::conj(m[2]), std::conj(m[1]), std::conj(m[3])};
}

Mat4 mat4_dagger(const Mat4& m) {
    Mat4 out{};
    for (std::size_t r = 0; r < 4; ++r) {
        for (std::size_t c = 0; c < 4; ++c) out[r * 4 + c] = std::conj(m[c * 4 + r]);
    }
    return out;
}

Mat2 mat2_identity() { return {kOne, kZero, kZero, kOne}; }

Mat4 mat4_identity() {
    Mat4 out{};
    for (std::size_t i = 0; i < 4; ++i) out[i * 4 + i] = kOne;
    return out;
}

Mat4 mat4_kron(const Mat2& low, const Mat2& high) {
    // Local index = bit0 (low qubit) + 2*bit1 (high qubit).
    Mat4 out{};
    for (std::size_t rh = 0; rh < 2; ++rh)
        for (std::size_t rl = 0; rl < 2; ++rl)
            for (std::size_t ch = 0; ch < 2; ++ch)
                for (std::size_t cl = 0; cl < 2; ++cl)
                    out[(rh * 2 + rl) * 4 + (ch * 2 + cl)] = high[rh * 2 + ch] * low[rl * 2 + cl];
    return out;
}

double mat2_unitarity_error(const Mat2& m) {
    const Mat2 p = mat2_mul(mat2_dagger(m), m);
    double worst = 0.0;
    worst = std::max(worst, std::abs(p[0] - kOne));
    worst = std::max(worst, std::abs(p[1]));
    worst = std::max(worst, std::abs(p[2]));
    worst = std::max(worst, std::abs(p[3] - kOne));
    return worst;
}

double mat4_unitarity_error(const Mat4& m) {
    const Mat4 p = mat4_mul(mat4_dagger(m), m);
    double worst = 0.0;
    for (std::size_t r = 0; r < 4; ++r) {
        for (std::size_t c = 0; c < 4; ++c) {
            const cplx expect = (r == c) ? kOne : kZero;
            worst = std::max(worst, std::abs(p[r * 4 + c] - expect));
        }
    }
    return worst;
}

const char* named_gate_label(NamedGate g) {
    switch (g) {
        case NamedGate::X: return "X";
        case NamedGate::Y: return "Y";
        case NamedGate::Z: return "Z";
        case NamedGate::H: return "H";
        case NamedGate::S: return "S";
        case NamedGate::Sdg: return "Sdg";
        case NamedGate::T: return "T";
        case NamedGate::Tdg: return "Tdg";
        case NamedGate::CX: return "CX";
        case NamedGate::CZ: return "CZ";
        case NamedGate::CS: return "CS";
    }
    return "?";
}

std::optional<NamedGate> named_gate_from_label(const std::string& label) {
    static const std::pair<const char*, NamedGate> table[] = {
        {"X", NamedGate::X},     {"Y", NamedGate::Y},     {"Z", NamedGate::Z},
        {"H", NamedGate::H},     {"S", NamedGate::S},     {"Sdg", NamedGate::Sdg},
        {"T", NamedGate::T},     {"Tdg", NamedGate::Tdg}, {"CX", NamedGate::CX},
        {"CZ", NamedGate::CZ},   {"CS", NamedGate::CS},
    };
    for (const auto& [name, gate] : table) {
        if (label == name) return gate;
    }
    return std::nullopt;
}

bool named_gate_is_two_qubit(NamedGate g) {
    return g == NamedGate::CX || g == NamedGate::CZ || g == NamedGate::CS;
}

Mat2 named_gate_matrix_1q(NamedGate g) {
    const double inv_sqrt2 = 1.0 / std::numbers::sqrt2;
    switch (g) {
        case NamedGate::X: return {kZero, kOne, kOne, kZero};
        case NamedGate::Y: return {kZero, -kImag, kImag, kZero};
        case NamedGate::Z: return {kOne, kZero, kZero, -kOne};
        case NamedGate::H: return {cplx{inv_sqrt2, 0}, cplx{inv_sqrt2, 0},
                                   cplx{inv_sqrt2, 0}, cplx{-inv_sqrt2, 0}};
        case NamedGate::S: return {kOne, kZero, kZero, kImag};
        case NamedGate::Sdg: return {kOne, kZero, kZero, -kImag};
        case NamedGate::T: return {kOne, kZero, kZero, std::polar(1.0, std::numbers::pi / 4)};
        case NamedGate::Tdg: return {kOne, kZero, kZero, std::polar(1.0, -std::numbers::pi / 4)};
        default: throw std::invalid_argument("not a single-qubit gate");
    }
}

Mat4 named_gate_matrix_2q(NamedGate g) {
    switch (g) {
        case NamedGate::CX: return controlled(named_gate_matrix_1q(NamedGate::X));
        case NamedGate::CZ: return controlled(named_gate_matrix_1q(NamedGate::Z));
        case NamedGate::CS: return controlled(named_gate_matrix_1q(NamedGate::S));
        default: throw std::invalid_argument("not a two-qubit gate");
    }
}

Mat2 u3_matrix(double theta, double phi, double lambda) {
    const double c = std::cos(theta / 2.0);
    const double s = std::sin(theta / 2.0);
    return {cplx{c, 0.0}, -std::polar(s, lambda), std::polar(s, phi), std::polar(c, phi + lambda)};
}

std::array<Mat2, 3> u3_matrix_derivatives(double theta, double phi, double lambda) {
    const double c = std::cos(theta / 2.0);
    const double s = std::sin(theta / 2.0);
    const Mat2 d_theta = {cplx{-s / 2.0, 0.0}, -std::polar(c / 2.0, lambda),
                          std::polar(c / 2.0, phi), -std::polar(s / 2.0, phi + lambda)};
    const Mat2 d_phi = {kZero, kZero, kImag * std::polar(s, phi),
                        kImag * std::polar(c, phi + lambda)};
    const Mat2 d_lambda = {kZero, -kImag * std::polar(s, lambda), kZero,
                           kImag * std::polar(c, phi + lambda)};
    return {d_theta, d_phi, d_lambda};
}

Mat4 controlled(const Mat2& v) {
    Mat4 out = mat4_identity();
    // Control is the high bit of the local index: rows/cols 2,3 carry V.
    out[2 * 4 + 2] = v[0];
    out[2 * 4 + 3] = v[1];
    out[3 * 4 + 2] = v[2];
    out[3 * 4 + 3] = v[3];
    return out;
}

GateOp GateOp::named(NamedGate g, std::size_t q) {
    if (named_gate_is_two_qubit(g)) throw std::invalid_argument("gate needs two targets");
    GateOp op;
    op.kind = GateKind::Named;
    op.name = g;
    op.targets = {q};
    return op;
}

GateOp GateOp::named(NamedGate g, std::size_t control, std::size_t target) {
    if (!named_gate_is_two_qubit(g)) throw std::invalid_argument("gate takes one target");
    if (control == target) throw std::invalid_argument("control equals target");
    GateOp op;
    op.kind = GateKind::Named;
    op.name = g;
    op.targets = {control, target};
    return op;
}

GateOp GateOp::fixed(const Mat2& m, std::size_t q) {
    if (mat2_unitarity_error(m) > kUnitaryTol) throw std::invalid_argument("matrix is not unitary");
    GateOp op;
    op.kind = GateKind::FixedMatrix1Q;
    op.fixed1q = m;
    op.targets = {q};
    return op;
}

GateOp GateOp::fixed(const Mat4& m, std::size_t control, std::size_t target) {
    if (control == target) throw std::invalid_argument("control equals target");
    if (mat4_unitarity_error(m) > kUnitaryTol) throw std::invalid_argument("matrix is not unitary");
    GateOp op;
    op.kind = GateKind::FixedMatrix2Q;
    op.fixed2q = m;
    op.targets = {control, target};
    return op;
}

GateOp GateOp::u3(std::size_t q, int param_slot) {
    GateOp op;
    op.kind = GateKind::U3Gate;
    op.targets = {q};
    op.param_slot = param_slot;
    return op;
}

GateOp GateOp::controlled_u3(std::size_t control, std::size_t target, int param_slot) {
    if (control == target) throw std::invalid_argument("control equals target");
    GateOp op;
    op.kind = GateKind::ControlledU3;
    op.targets = {control, target};
    op.param_slot = param_slot;
    return op;
}

bool GateOp::is_two_qubit() const { return targets.size() == 2; }

std::size_t GateOp::max_target() const {
    std::size_t m = 0;
    for (std::size_t t : targets) m = std::max(m, t);
    return m;
}

namespace {
void check_params(const GateOp& op, std::span<const double> params) {
    if (op.param_slot < 0) throw std::logic_error("gate is not parameterized");
    if (static_cast<std::size_t>(op.param_slot) + 3 > params.size()) {
        throw std::out_of_range("parameter slot not resolvable");
    }
}
}  // namespace

Mat2 GateOp::matrix_1q(std::span<const double> params) const {
    switch (kind) {
        case GateKind::Named: return named_gate_matrix_1q(name);
        case GateKind::FixedMatrix1Q: return fixed1q;
        case GateKind::U3Gate: {
            check_params(*this, params);
            return u3_matrix(params[param_slot], params[param_slot + 1], params[param_slot + 2]);
        }
        default: throw std::logic_error("not a single-qubit gate");
    }
}

Mat4 GateOp::matrix_2q(std::span<const double> params) const {
    switch (kind) {
        case GateKind::Named: return named_gate_matrix_2q(name);
        case GateKind::FixedMatrix2Q: return fixed2q;
        case GateKind::ControlledU3: {
            check_params(*this, params);
            return controlled(
                u3_matrix(params[param_slot], params[param_slot + 1], params[param_slot + 2]));
        }
        default: throw std::logic_error("not a two-qubit gate");
    }
}

GateOp GateOp::inverse(std::span<const double> params) const {
    GateOp op = *this;
    op.param_slot = -1;
    if (is_two_qubit()) {
        op.kind = GateKind::FixedMatrix2Q;
        op.fixed2q = mat4_dagger(matrix_2q(params));
    } else {
        op.kind = GateKind::FixedMatrix1Q;
        op.fixed1q = mat2_dagger(matrix_1q(params));
    }
    return op;
}

}  // namespace qecco
