#pragma once

#include <cstddef>
#include <span>

#include "qecco/simcore/gates.hpp"
#include "qecco/simcore/types.hpp"

namespace qecco {

// In-place stride kernels on raw amplitude arrays. The amplitude array length
// must be a power of two and the qubit indices must address bits within it.

void apply_1q_kernel(std::span<cplx> amps, const Mat2& m, std::size_t qubit);

/// `m` is row-major in the local basis index (bit0 = qa, bit1 = qb).
void apply_2q_kernel(std::span<cplx> amps, const Mat4& m, std::size_t qa, std::size_t qb);

/// <bra| (M embedded on qubit) |ket> without materializing M|ket>.
cplx sandwich_1q(std::span<const cplx> bra, const Mat2& m, std::size_t qubit,
                 std::span<const cplx> ket);
cplx sandwich_2q(std::span<const cplx> bra, const Mat4& m, std::size_t qa, std::size_t qb,
                 std::span<const cplx> ket);

/// Local transfer matrix T[r][c] = Σ conj(bra[idx_r]) ket[idx_c] over the
/// embedding strides, so that <bra|M⊗I|ket> = Σ_rc M[r][c] T[r][c] for any M.
Mat2 transfer_1q(std::span<const cplx> bra, std::size_t qubit, std::span<const cplx> ket);
Mat4 transfer_2q(std::span<const cplx> bra, std::size_t qa, std::size_t qb,
                 std::span<const cplx> ket);

cplx contract(const Mat2& m, const Mat2& transfer);
cplx contract(const Mat4& m, const Mat4& transfer);

}  // namespace qecco
