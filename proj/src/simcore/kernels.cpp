#include "qecco/simcore/kernels.hpp"

#include <stdexcept>

namespace qecco {

void apply_1q_kernel(std::span<cplx> amps, const Mat2& m, std::size_t qubit) {
    const std::size_t n = amps.size();
    const std::size_t step = std::size_t{1} << qubit;
    if (step >= n) throw std::out_of_range("qubit index out of range");
    for (std::size_t base = 0; base < n; base += 2 * step) {
        for (std::size_t off = 0; off < step; ++off) {
            const std::size_t i0 = base + off;
            const std::size_t i1 = i0 + step;
            const cplx a = amps[i0];
            const cplx b = amps[i1];
            amps[i0] = m[0] * a + m[1] * b;
            amps[i1] = m[2] * a + m[3] * b;
        }
    }
}

void apply_2q_kernel(std::span<cplx> amps, const Mat4& m, std::size_t qa, std::size_t qb) {
    const std::size_t n = amps.size();
    const std::size_t sa = std::size_t{1} << qa;
    const std::size_t sb = std::size_t{1} << qb;
    if (sa >= n || sb >= n || qa == qb) throw std::out_of_range("qubit indices invalid");
    const std::size_t mask = sa | sb;
    for (std::size_t i = 0; i < n; ++i) {
        if (i & mask) continue;  // visit each 4-amplitude group once
        const std::size_t i00 = i;
        const std::size_t i01 = i | sa;
        const std::size_t i10 = i | sb;
        const std::size_t i11 = i | mask;
        const cplx v0 = amps[i00];
        const cplx v1 = amps[i01];
        const cplx v2 = amps[i10];
        const cplx v3 = amps[i11];
        amps[i00] = m[0] * v0 + m[1] * v1 + m[2] * v2 + m[3] * v3;
        amps[i01] = m[4] * v0 + m[5] * v1 + m[6] * v2 + m[7] * v3;
        amps[i10] = m[8] * v0 + m[9] * v1 + m[10] * v2 + m[11] * v3;
        amps[i11] = m[12] * v0 + m[13] * v1 + m[14] * v2 + m[15] * v3;
    }
}

cplx sandwich_1q(std::span<const cplx> bra, const Mat2& m, std::size_t qubit,
                 std::span<const cplx> ket) {
    const std::size_t n = ket.size();
    const std::size_t step = std::size_t{1} << qubit;
    cplx acc{0.0, 0.0};
    for (std::size_t base = 0; base < n; base += 2 * step) {
        for (std::size_t off = 0; off < step; ++off) {
            const std::size_t i0 = base + off;
            const std::size_t i1 = i0 + step;
            acc += std::conj(bra[i0]) * (m[0] * ket[i0] + m[1] * ket[i1]);
            acc += std::conj(bra[i1]) * (m[2] * ket[i0] + m[3] * ket[i1]);
        }
    }
    return acc;
}

Mat2 transfer_1q(std::span<const cplx> bra, std::size_t qubit, std::span<const cplx> ket) {
    const std::size_t n = ket.size();
    const std::size_t step = std::size_t{1} << qubit;
    cplx t00{0, 0}, t01{0, 0}, t10{0, 0}, t11{0, 0};
    for (std::size_t base = 0; base < n; base += 2 * step) {
        for (std::size_t off = 0; off < step; ++off) {
            const std::size_t i0 = base + off;
            const std::size_t i1 = i0 + step;
            const cplx b0 = std::conj(bra[i0]);
            const cplx b1 = std::conj(bra[i1]);
            t00 += b0 * ket[i0];
            t01 += b0 * ket[i1];
            t10 += b1 * ket[i0];
            t11 += b1 * ket[i1];
        }
    }
    return {t00, t01, t10, t11};
}

Mat4 transfer_2q(std::span<const cplx> bra, std::size_t qa, std::size_t qb,
                 std::span<const cplx> ket) {
    const std::size_t n = ket.size();
    const std::size_t sa = std::size_t{1} << qa;
    const std::size_t sb = std::size_t{1} << qb;
    const std::size_t mask = sa | sb;
    Mat4 t{};
    for (std::size_t i = 0; i < n; ++i) {
        if (i & mask) continue;
        const std::size_t idx[4] = {i, i | sa, i | sb, i | mask};
        cplx b[4], k[4];
        for (std::size_t r = 0; r < 4; ++r) {
            b[r] = std::conj(bra[idx[r]]);
            k[r] = ket[idx[r]];
        }
        for (std::size_t r = 0; r < 4; ++r) {
            for (std::size_t c = 0; c < 4; ++c) t[r * 4 + c] += b[r] * k[c];
        }
    }
    return t;
}

cplx contract(const Mat2& m, const Mat2& transfer) {
    cplx acc{0, 0};
    for (std::size_t i = 0; i < 4; ++i) acc += m[i] * transfer[i];
    return acc;
}

cplx contract(const Mat4& m, const Mat4& transfer) {
    cplx acc{0, 0};
    for (std::size_t i = 0; i < 16; ++i) acc += m[i] * transfer[i];
    return acc;
}

cplx sandwich_2q(std::span<const cplx> bra, const Mat4& m, std::size_t qa, std::size_t qb,
                 std::span<const cplx> ket) {
    const std::size_t n = ket.size();
    const std::size_t sa = std::size_t{1} << qa;
    const std::size_t sb = std::size_t{1} << qb;
    const std::size_t mask = sa | sb;
    cplx acc{0.0, 0.0};
    for (std::size_t i = 0; i < n; ++i) {
        if (i & mask) continue;
        const std::size_t idx[4] = {i, i | sa, i | sb, i | mask};
        for (std::size_t r = 0; r < 4; ++r) {
            cplx row{0.0, 0.0};
            for (std::size_t c = 0; c < 4; ++c) row += m[r * 4 + c] * ket[idx[c]];
            acc += std::conj(bra[idx[r]]) * row;
        }
    }
    return acc;
}

}  // namespace qecco
