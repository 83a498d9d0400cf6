#pragma once

#include <optional>
#include <string>
#include <vector>

#include "qecco/codes/code.hpp"

namespace qecco {

struct CodeInfo {
    std::string name;
    std::string alias;
    std::size_t n = 0;
    std::optional<int> distance;
    bool available = true;
    std::string note;
};

/// Shipped stabilizer codes, addressable by name or alias.
const std::vector<CodeInfo>& list_codes();

/// Builds a registry code. Accepts either the parameter name ("5_1_3") or the
/// alias ("perfect"). Throws for unknown or unavailable entries.
Code make_code(const std::string& name);

bool code_available(const std::string& name);

/// Literature ground truth for transversal realizability per code and gate.
enum class Realizability { Strict, Transversal, None, Excluded };

struct GroundTruthRow {
    std::string code;
    // Order: X, Z, H, S, T, CX, CZ, CS
    std::array<Realizability, 8> gates;
    bool cx_inverted = false;  // physical control/target order swapped
};

const std::vector<GroundTruthRow>& ground_truth_table();
const std::array<const char*, 8>& ground_truth_gate_order();
std::optional<Realizability> ground_truth(const std::string& code, const std::string& gate);

}  // namespace qecco
