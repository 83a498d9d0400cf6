#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "qecco/codes/stabilizer.hpp"
#include "qecco/simcore/circuit.hpp"

namespace qecco {

/// Placement data for the randomized entangling encoder ansatz: layers+1
/// rungs of per-qubit rotations interleaved with seeded CZ pairings.
struct ReaEncoder {
    std::size_t n = 0;
    std::size_t layers = 0;
    std::uint64_t seed = 0;
    std::vector<std::vector<std::pair<std::size_t, std::size_t>>> entangler_placements;

    std::size_t param_count() const { return 3 * n * (layers + 1); }
    Circuit to_circuit() const;
};

/// Seeded construction: each entangling rung holds floor(n/2) CZ gates on
/// random disjoint pairs (all-to-all connectivity).
ReaEncoder build_rea(std::size_t n, std::size_t layers, std::uint64_t seed);

/// A k=1 code: name, parameters, and its encoding circuit (fixed or
/// parameterized through an REA).
struct Code {
    std::string name;
    std::size_t n = 0;
    std::size_t k = 1;
    std::optional<int> distance;
    Circuit encoder;
    std::optional<StabilizerSpec> spec;
    std::optional<ReaEncoder> rea;

    std::size_t encoder_param_count() const { return encoder.param_count(); }
    bool is_parameterized() const { return encoder.param_count() > 0; }

    static Code from_spec(std::string name, std::optional<int> distance, StabilizerSpec spec);
    static Code from_rea(std::size_t n, std::size_t layers, std::uint64_t seed);
    /// Single unencoded qubit with the identity encoder.
    static Code bare();
};

/// U_enc(Θ) (|logical> ⊗ |0...0>) with the data qubit at index 0.
StateVector encode(const Code& code, const StateVector& logical,
                   std::span<const double> params = {});

/// Two blocks of the same code: block A on qubits [0, n), block B on [n, 2n).
/// Logical qubit 0 lives in block A, logical qubit 1 in block B.
StateVector encode_two_block(const Code& code, const StateVector& logical,
                             std::span<const double> params = {});

struct ValidationReport {
    bool passed = true;
    std::vector<std::string> failures;
};

/// Checks that every generator stabilizes the encoded basis and that the
/// logical operators act as X/Z on it, within 1e-9.
ValidationReport validate_encoder(const Code& code, const StabilizerSpec& spec);

}  // namespace qecco
