#pragma once

#include <string>
#include <vector>

#include "qecco/simcore/gates.hpp"
#include "qecco/simcore/state.hpp"

namespace qecco {

/// Finite set of logical pure states whose first and second moments are used
/// in place of Haar averages. block_partition groups mutually orthogonal
/// states (the Gram-matrix blocks); orthogonal_pairs lists all in-block pairs.
struct TwoDesign {
    std::size_t logical_qubits = 1;
    std::vector<StateVector> states;
    std::vector<std::string> labels;
    std::vector<std::pair<std::size_t, std::size_t>> orthogonal_pairs;
    std::vector<std::vector<std::size_t>> block_partition;

    std::size_t size() const { return states.size(); }
};

/// {|0>, |1>, |+>, |->, |+i>, |-i>}
const TwoDesign& single_qubit_design();

/// The 16 two-qubit states: computational, |±±>, |±i±i>, and Bell combinations.
/// Logical qubit 0 is the low index bit.
const TwoDesign& two_qubit_design();

enum class PairSetVariant { Diag, Block, EBlock, Full };

const char* pair_set_label(PairSetVariant v);
std::optional<PairSetVariant> pair_set_from_label(const std::string& label);

/// Pair list for a loss variant: Diag and Block use unordered pairs with the
/// diagonal, EBlock adds the pairs touching the last (Bell) block, Full uses
/// all ordered pairs.
std::vector<std::pair<std::size_t, std::size_t>> pair_set(const TwoDesign& design,
                                                          PairSetVariant variant);

/// Logical target unitary, 2x2 or 4x4. Two-qubit matrices use logical qubit 0
/// (block A) as the low bit; CX has logical qubit 0 as control.
struct TargetGate {
    std::string name;
    bool two_qubit = false;
    Mat2 m2{};
    Mat4 m4{};

    static TargetGate from_name(const std::string& name);
    static TargetGate from_matrix(const Mat2& m, std::string name = "custom");
    static TargetGate from_matrix(const Mat4& m, std::string name = "custom");

    StateVector apply(const StateVector& logical) const;
};

/// Names accepted by TargetGate::from_name.
const std::vector<std::string>& known_target_gates();

struct GramMatrix {
    std::size_t m = 0;
    bool target_role = true;
    std::vector<double> entries;  // row-major, m x m

    double at(std::size_t i, std::size_t j) const { return entries[i * m + j]; }
};

}  // namespace qecco
