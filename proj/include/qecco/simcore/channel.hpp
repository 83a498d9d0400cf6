#pragma once

#include <cstddef>
#include <vector>

#include "qecco/simcore/gates.hpp"
#include "qecco/simcore/state.hpp"

namespace qecco {

/// Single-qubit Pauli channel rho -> (1-p) rho + px X rho X + py Y rho Y + pz Z rho Z.
struct PauliChannel {
    double px = 0.0;
    double py = 0.0;
    double pz = 0.0;

    PauliChannel() = default;
    PauliChannel(double x, double y, double z);

    double total() const { return px + py + pz; }
    bool is_zero() const { return px == 0.0 && py == 0.0 && pz == 0.0; }

    static PauliChannel bitflip(double p) { return {p, 0.0, 0.0}; }
    static PauliChannel depolarizing(double p) { return {p / 3.0, p / 3.0, p / 3.0}; }
    /// Asymmetric depolarizing instance published for (p=0.1, c=0.5); other
    /// (p, c) combinations are rejected, pass explicit probabilities instead.
    static PauliChannel asymmetric_depolarizing(double p = 0.1, double c = 0.5);

    std::vector<Mat2> kraus() const;
};

/// General single-qubit channel in Kraus form.
struct KrausChannel {
    std::vector<Mat2> operators;

    explicit KrausChannel(std::vector<Mat2> ops);
    static KrausChannel from_pauli(const PauliChannel& p);

    /// Σ E_k† E_k - I, largest absolute entry.
    double completeness_error() const;
};

DensityMatrix apply_channel(const DensityMatrix& rho, const KrausChannel& channel,
                            std::size_t target);
DensityMatrix apply_channel(const DensityMatrix& rho, const PauliChannel& channel,
                            std::size_t target);
void apply_channel_in_place(DensityMatrix& rho, const PauliChannel& channel, std::size_t target);

/// Channel applied independently to every qubit (N^{⊗n}).
DensityMatrix apply_channel_all(const DensityMatrix& rho, const PauliChannel& channel);

}  // namespace qecco
