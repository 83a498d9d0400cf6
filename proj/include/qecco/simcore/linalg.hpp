#pragma once

#include <cstddef>
#include <vector>

#include "qecco/simcore/state.hpp"
#include "qecco/simcore/types.hpp"

namespace qecco {

/// Eigenvalues (ascending) of a Hermitian matrix via cyclic complex Jacobi
/// rotations. Off-diagonal tolerance 1e-12, at most 100 sweeps. If `vectors`
/// is non-null it receives the eigenvectors as columns (row-major, dim x dim).
std::vector<double> jacobi_eigh(std::vector<cplx> matrix, std::size_t dim,
                                std::vector<cplx>* vectors = nullptr);

/// |<a|b>|^2 for normalized pure states of equal dimension.
double fidelity_pure(const StateVector& a, const StateVector& b);

/// sqrt(1 - |<a|b>|^2), evaluated through the phase-aligned difference so
/// that nearly identical states do not lose precision to cancellation.
double trace_distance_pure(const StateVector& a, const StateVector& b);

/// (1/2) Σ |λ_i| over the eigenvalues of (a - b).
double trace_distance(const DensityMatrix& a, const DensityMatrix& b);

}  // namespace qecco
