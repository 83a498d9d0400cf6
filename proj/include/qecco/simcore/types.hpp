#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <vector>

namespace qecco {

using cplx = std::complex<double>;

inline constexpr double kNormTol = 1e-10;
inline constexpr double kUnitaryTol = 1e-10;
inline constexpr double kCptpTol = 1e-9;

/// Number of qubits addressed by a state of dimension `dim` (dim must be 2^q).
std::size_t qubit_count(std::size_t dim);

}  // namespace qecco
