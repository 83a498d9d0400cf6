#include "qecco/losses/two_design.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace qecco {

namespace {

StateVector sv1(cplx a0, cplx a1) { return StateVector(1, {a0, a1}); }

TwoDesign build_single_qubit_design() {
    const double s = 1.0 / std::numbers::sqrt2;
    TwoDesign d;
    d.logical_qubits = 1;
    d.states = {
        sv1({1, 0}, {0, 0}), sv1({0, 0}, {1, 0}),
        sv1({s, 0}, {s, 0}), sv1({s, 0}, {-s, 0}),
        sv1({s, 0}, {0, s}), sv1({s, 0}, {0, -s}),
    };
    d.labels = {"0", "1", "+", "-", "+i", "-i"};
    d.orthogonal_pairs = {{0, 1}, {2, 3}, {4, 5}};
    d.block_partition = {{0, 1}, {2, 3}, {4, 5}};
    return d;
}

TwoDesign build_two_qubit_design() {
    const double s = 1.0 / std::numbers::sqrt2;
    const StateVector k0 = sv1({1, 0}, {0, 0});
    const StateVector k1 = sv1({0, 0}, {1, 0});
    const StateVector kp = sv1({s, 0}, {s, 0});
    const StateVector km = sv1({s, 0}, {-s, 0});
    const StateVector kpi = sv1({s, 0}, {0, s});
    const StateVector kmi = sv1({s, 0}, {0, -s});

    auto prod = [](const StateVector& a, const StateVector& b) { return a.tensor(b); };
    auto bell = [&](std::size_t i, std::size_t j, double sign) {
        StateVector v(2);
        v[0] = cplx{0, 0};
        v[i] = cplx{s, 0};
        v[j] = cplx{sign * s, 0};
        return v;
    };

    TwoDesign d;
    d.logical_qubits = 2;
    d.states = {
        prod(k0, k0), prod(k0, k1), prod(k1, k0), prod(k1, k1),
        prod(kp, kp), prod(kp, km), prod(km, kp), prod(km, km),
        prod(kpi, kpi), prod(kpi, kmi), prod(kmi, kpi), prod(kmi, kmi),
        bell(0, 3, +1.0), bell(0, 3, -1.0), bell(2, 1, +1.0), bell(2, 1, -1.0),
    };
    d.labels = {"00", "01", "10", "11", "++", "+-", "-+", "--",
                "+i+i", "+i-i", "-i+i", "-i-i", "00+11", "00-11", "01+10", "01-10"};
    d.block_partition = {{0, 1, 2, 3}, {4, 5, 6, 7}, {8, 9, 10, 11}, {12, 13, 14, 15}};
    for (const auto& group : d.block_partition) {
        for (std::size_t a = 0; a < group.size(); ++a) {
            for (std::size_t b = a + 1; b < group.size(); ++b) {
                d.orthogonal_pairs.emplace_back(group[a], group[b]);
            }
        }
    }
    return d;
}

}  // namespace

const TwoDesign& single_qubit_design() {
    static const TwoDesign d = build_single_qubit_design();
    return d;
}

const TwoDesign& two_qubit_design() {
    static const TwoDesign d = build_two_qubit_design();
    return d;
}

const char* pair_set_label(PairSetVariant v) {
    switch (v) {
        case PairSetVariant::Diag: return "diag";
        case PairSetVariant::Block: return "block";
        case PairSetVariant::EBlock: return "eblock";
        case PairSetVariant::Full: return "full";
    }
    return "?";
}

std::optional<PairSetVariant> pair_set_from_label(const std::string& label) {
    if (label == "diag") return PairSetVariant::Diag;
    if (label == "block") return PairSetVariant::Block;
    if (label == "eblock") return PairSetVariant::EBlock;
    if (label == "full") return PairSetVariant::Full;
    return std::nullopt;
}

std::vector<std::pair<std::size_t, std::size_t>> pair_set(const TwoDesign& design,
                                                          PairSetVariant variant) {
    const std::size_t m = design.size();
    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    if (variant == PairSetVariant::Full) {
        for (std::size_t i = 0; i < m; ++i) {
            for (std::size_t j = 0; j < m; ++j) pairs.emplace_back(i, j);
        }
        return pairs;
    }
    for (std::size_t i = 0; i < m; ++i) pairs.emplace_back(i, i);
    if (variant == PairSetVariant::Diag) return pairs;

    for (const auto& group : design.block_partition) {
        for (std::size_t a = 0; a < group.size(); ++a) {
            for (std::size_t b = a + 1; b < group.size(); ++b) {
                pairs.emplace_back(group[a], group[b]);
            }
        }
    }
    if (variant == PairSetVariant::Block) return pairs;

    if (design.logical_qubits != 2) {
        throw std::invalid_argument("eblock is defined for two-qubit designs only");
    }
    const auto& bell = design.block_partition.back();
    const std::size_t bell_start = bell.front();
    for (std::size_t i = 0; i < bell_start; ++i) {
        for (std::size_t j : bell) pairs.emplace_back(i, j);
    }
    return pairs;
}

TargetGate TargetGate::from_name(const std::string& name) {
    TargetGate g;
    g.name = name;
    if (name == "X" || name == "Y" || name == "Z" || name == "H" || name == "S" ||
        name == "Sdg" || name == "T" || name == "Tdg") {
        g.two_qubit = false;
        g.m2 = named_gate_matrix_1q(*named_gate_from_label(name));
        return g;
    }
    if (name == "CZ" || name == "CS") {
        g.two_qubit = true;
        g.m4 = mat4_identity();
        g.m4[15] = (name == "CZ") ? cplx{-1, 0} : cplx{0, 1};
        return g;
    }
    if (name == "CX") {
        // Control = logical qubit 0 = low bit: swaps indices 1 and 3.
        g.two_qubit = true;
        g.m4 = Mat4{};
        g.m4[0 * 4 + 0] = cplx{1, 0};
        g.m4[1 * 4 + 3] = cplx{1, 0};
        g.m4[2 * 4 + 2] = cplx{1, 0};
        g.m4[3 * 4 + 1] = cplx{1, 0};
        return g;
    }
    throw std::invalid_argument("unknown target gate: " + name);
}

TargetGate TargetGate::from_matrix(const Mat2& m, std::string name) {
    if (mat2_unitarity_error(m) > 1e-12) throw std::invalid_argument("target is not unitary");
    TargetGate g;
    g.name = std::move(name);
    g.two_qubit = false;
    g.m2 = m;
    return g;
}

TargetGate TargetGate::from_matrix(const Mat4& m, std::string name) {
    if (mat4_unitarity_error(m) > 1e-12) throw std::invalid_argument("target is not unitary");
    TargetGate g;
    g.name = std::move(name);
    g.two_qubit = true;
    g.m4 = m;
    return g;
}

StateVector TargetGate::apply(const StateVector& logical) const {
    if (two_qubit) {
        if (logical.num_qubits() != 2) throw std::invalid_argument("target arity mismatch");
        StateVector out(2);
        for (std::size_t r = 0; r < 4; ++r) {
            cplx acc{0, 0};
            for (std::size_t c = 0; c < 4; ++c) acc += m4[r * 4 + c] * logical[c];
            out[r] = acc;
        }
        return out;
    }
    if (logical.num_qubits() != 1) throw std::invalid_argument("target arity mismatch");
    StateVector out(1);
    out[0] = m2[0] * logical[0] + m2[1] * logical[1];
    out[1] = m2[2] * logical[0] + m2[3] * logical[1];
    return out;
}

const std::vector<std::string>& known_target_gates() {
    static const std::vector<std::string> names = {"X", "Y", "Z", "H", "S", "T", "CX", "CZ", "CS"};
    return names;
}

}  // namespace qecco
