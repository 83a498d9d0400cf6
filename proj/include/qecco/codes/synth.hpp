#pragma once

#include "qecco/codes/stabilizer.hpp"
#include "qecco/simcore/circuit.hpp"

namespace qecco {

/// Builds a Clifford encoding circuit U from a stabilizer description such
/// that U Z_a U† = S_a for every generator (ancilla qubits a = 1..n-1),
/// U X_0 U† = logical_x and U Z_0 U† = logical_z, signs included. The data
/// qubit is qubit 0; ancillas enter in |0>.
Circuit synthesize_encoder(const StabilizerSpec& spec);

}  // namespace qecco
