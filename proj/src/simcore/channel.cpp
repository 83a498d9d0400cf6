#include "qecco/simcore/channel.hpp"

#include <cmath>
#include <stdexcept>

namespace qecco {

PauliChannel::PauliChannel(double x, double y, double z) : px(x), py(y), pz(z) {
    if (px < 0.0 || py < 0.0 || pz < 0.0 || px + py + pz > 1.0 + 1e-12) {
        throw std::invalid_argument("pauli probabilities must be nonnegative with sum <= 1");
    }
}

PauliChannel PauliChannel::asymmetric_depolarizing(double p, double c) {
    if (std::abs(p - 0.1) > 1e-12 || std::abs(c - 0.5) > 1e-12) {
        throw std::invalid_argument(
            "only the published instance (p=0.1, c=0.5) is supported; "
            "construct from explicit probabilities otherwise");
    }
    return {0.007, 0.007, 0.086};
}

std::vector<Mat2> PauliChannel::kraus() const {
    const double p0 = 1.0 - total();
    std::vector<Mat2> ops;
    auto scaled = [](NamedGate g, double w) {
        Mat2 m = named_gate_matrix_1q(g);
        const double f = std::sqrt(w);
        for (auto& e : m) e *= f;
        return m;
    };
    if (p0 > 0.0) {
        Mat2 id = mat2_identity();
        const double f = std::sqrt(p0);
        for (auto& e : id) e *= f;
        ops.push_back(id);
    }
    if (px > 0.0) ops.push_back(scaled(NamedGate::X, px));
    if (py > 0.0) ops.push_back(scaled(NamedGate::Y, py));
    if (pz > 0.0) ops.push_back(scaled(NamedGate::Z, pz));
    if (ops.empty()) ops.push_back(mat2_identity());
    return ops;
}

KrausChannel::KrausChannel(std::vector<Mat2> ops) : operators(std::move(ops)) {
    if (operators.empty()) throw std::invalid_argument("channel needs at least one Kraus operator");
    if (completeness_error() > kCptpTol) {
        throw std::invalid_argument("Kraus operators do not satisfy the completeness relation");
    }
}

KrausChannel KrausChannel::from_pauli(const PauliChannel& p) { return KrausChannel(p.kraus()); }

double KrausChannel::completeness_error() const {
    Mat2 sum{};
    for (const Mat2& e : operators) {
        const Mat2 p = mat2_mul(mat2_dagger(e), e);
        for (std::size_t i = 0; i < 4; ++i) sum[i] += p[i];
    }
    double worst = 0.0;
    worst = std::max(worst, std::abs(sum[0] - cplx{1.0, 0.0}));
    worst = std::max(worst, std::abs(sum[1]));
    worst = std::max(worst, std::abs(sum[2]));
    worst = std::max(worst, std::abs(sum[3] - cplx{1.0, 0.0}));
    return worst;
}

DensityMatrix apply_channel(const DensityMatrix& rho, const KrausChannel& channel,
                            std::size_t target) {
    const std::size_t dim = rho.dim();
    const std::size_t step = std::size_t{1} << target;
    if (step >= dim) throw std::out_of_range("target qubit out of range");

    DensityMatrix out(rho.num_qubits());
    auto& o = out.data();
    const auto& r = rho.data();
    for (const Mat2& e : channel.operators) {
        const Mat2 ed = mat2_dagger(e);
        for (std::size_t row = 0; row < dim; ++row) {
            const std::size_t rbit = (row & step) ? 1 : 0;
            const std::size_t rflip = row ^ step;
            for (std::size_t col = 0; col < dim; ++col) {
                const std::size_t cbit = (col & step) ? 1 : 0;
                const std::size_t cflip = col ^ step;
                // (E rho E†)[row,col] = Σ_{a,b} E[rbit,a] rho[row_a, col_b] E†[b,cbit]
                cplx acc{0.0, 0.0};
                acc += e[rbit * 2 + rbit] * r[row * dim + col] * ed[cbit * 2 + cbit];
                acc += e[rbit * 2 + rbit] * r[row * dim + cflip] * ed[(1 - cbit) * 2 + cbit];
                acc += e[rbit * 2 + (1 - rbit)] * r[rflip * dim + col] * ed[cbit * 2 + cbit];
                acc += e[rbit * 2 + (1 - rbit)] * r[rflip * dim + cflip] * ed[(1 - cbit) * 2 + cbit];
                o[row * dim + col] += acc;
            }
        }
    }
    return out;
}

void apply_channel_in_place(DensityMatrix& rho, const PauliChannel& channel, std::size_t target) {
    const std::size_t dim = rho.dim();
    const std::size_t step = std::size_t{1} << target;
    if (step >= dim) throw std::out_of_range("target qubit out of range");
    if (channel.is_zero()) return;

    // Pauli channels mix only (row,col) with (row^step, col^step):
    //   rho'[i,j] = (a ± pz) rho[i,j] + (px ± py) rho[i^,j^],
    // sign - when the target bits of i and j differ.
    const double a = 1.0 - channel.total();
    auto& d = rho.data();
    for (std::size_t row = 0; row < dim; ++row) {
        if (row & step) continue;
        const std::size_t rflip = row | step;
        for (std::size_t col = 0; col < dim; ++col) {
            if (col & step) continue;
            const std::size_t cflip = col | step;
            const cplx v00 = d[row * dim + col];    // bits equal (0,0)
            const cplx v01 = d[row * dim + cflip];  // bits differ
            const cplx v10 = d[rflip * dim + col];  // bits differ
            const cplx v11 = d[rflip * dim + cflip];
            d[row * dim + col] = (a + channel.pz) * v00 + (channel.px + channel.py) * v11;
            d[rflip * dim + cflip] = (a + channel.pz) * v11 + (channel.px + channel.py) * v00;
            d[row * dim + cflip] = (a - channel.pz) * v01 + (channel.px - channel.py) * v10;
            d[rflip * dim + col] = (a - channel.pz) * v10 + (channel.px - channel.py) * v01;
        }
    }
}

DensityMatrix apply_channel(const DensityMatrix& rho, const PauliChannel& channel,
                            std::size_t target) {
    DensityMatrix out = rho;
    apply_channel_in_place(out, channel, target);
    return out;
}

DensityMatrix apply_channel_all(const DensityMatrix& rho, const PauliChannel& channel) {
    DensityMatrix out = rho;
    for (std::size_t q = 0; q < rho.num_qubits(); ++q) apply_channel_in_place(out, channel, q);
    return out;
}

}  // namespace qecco
