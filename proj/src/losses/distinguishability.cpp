#include "qecco/losses/distinguishability.hpp"

#include <cmath>
#include <numbers>

#include "qecco/optim/nelder_mead.hpp"
#include "qecco/simcore/kernels.hpp"
#include "qecco/simcore/linalg.hpp"

namespace qecco {

namespace {


/// T between the noisy encodings of two pure logical states.
double noisy_encoded_distance(const Code& code, std::span<const double> theta,
                              const PauliChannel& noise, const StateVector& rho,
                              const StateVector& sigma) {
    const StateVector er = encode(code, rho, theta);
    const StateVector es = encode(code, sigma, theta);
    DensityMatrix delta = DensityMatrix::from_pure(er) - DensityMatrix::from_pure(es);
    for (std::size_t q = 0; q < code.n; ++q) apply_channel_in_place(delta, noise, q);
    const auto eig = jacobi_eigh(delta.data(), delta.dim());
    double sum = 0.0;
    for (double e : eig) sum += std::abs(e);
    return 0.5 * sum;
}

}  // namespace

StateVector bloch_state(double theta, double phi) {
    return StateVector(1, {cplx{std::cos(theta / 2.0), 0.0},
                           std::polar(std::sin(theta / 2.0), phi)});
}

double lost_trace_distance(const Code& code, std::span<const double> theta,
                           const PauliChannel& noise, const StateVector& rho,
                           const StateVector& sigma) {
    if (rho.num_qubits() != 1 || sigma.num_qubits() != 1) {
        throw std::invalid_argument("lost trace distance expects single-qubit logical states");
    }
    return trace_distance_pure(rho, sigma) - noisy_encoded_distance(code, theta, noise, rho, sigma);
}

double distinguishability_loss(const Code& code, std::span<const double> theta,
                               const PauliChannel& noise, const TwoDesign& design) {
    const std::size_t m = design.size();
    double sum = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = i + 1; j < m; ++j) {
            sum += 2.0 * lost_trace_distance(code, theta, noise, design.states[i],
                                             design.states[j]);
        }
    }
    return sum / static_cast<double>(m * m);
}

std::vector<double> distinguishability_gradient(const Code& code, std::span<const double> theta,
                                                const PauliChannel& noise,
                                                const TwoDesign& design) {
    const std::size_t m = design.size();
    const std::size_t dim = std::size_t{1} << code.n;
    std::vector<double> grad(theta.size(), 0.0);

    std::vector<StateVector> encoded;
    encoded.reserve(m);
    for (const auto& s : design.states) encoded.push_back(encode(code, s, theta));

    // Per design state: Σ over its pairs of ±N(W_pair) |e_state>, where
    // W = V sign(Λ) V† for the noisy pair difference. The channel is
    // self-adjoint for Pauli noise, so N moves onto W.
    std::vector<std::vector<cplx>> costates(m, std::vector<cplx>(dim, cplx{0, 0}));
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = i + 1; j < m; ++j) {
            DensityMatrix delta =
                DensityMatrix::from_pure(encoded[i]) - DensityMatrix::from_pure(encoded[j]);
            for (std::size_t q = 0; q < code.n; ++q) apply_channel_in_place(delta, noise, q);
            std::vector<cplx> vecs;
            const auto eig = jacobi_eigh(delta.data(), dim, &vecs);

            DensityMatrix w(code.n);
            for (std::size_t k = 0; k < dim; ++k) {
                const double sign = eig[k] > 1e-14 ? 1.0 : (eig[k] < -1e-14 ? -1.0 : 0.0);
                if (sign == 0.0) continue;
                for (std::size_t r = 0; r < dim; ++r) {
                    for (std::size_t c = 0; c < dim; ++c) {
                        w.at(r, c) += sign * vecs[r * dim + k] * std::conj(vecs[c * dim + k]);
                    }
                }
            }
            for (std::size_t q = 0; q < code.n; ++q) apply_channel_in_place(w, noise, q);

            for (std::size_t r = 0; r < dim; ++r) {
                cplx acc_i{0, 0}, acc_j{0, 0};
                for (std::size_t c = 0; c < dim; ++c) {
                    acc_i += w.at(r, c) * encoded[i][c];
                    acc_j += w.at(r, c) * encoded[j][c];
                }
                costates[i][r] += acc_i;
                costates[j][r] -= acc_j;
            }
        }
    }

    // d D_S / dθ = -(2/m²) Σ_states Re <costate | ∂U_enc |input>; the factor 2
    // merges the ordered-pair double count with d|λ|-sum / 2.
    const double weight = -2.0 / static_cast<double>(m * m);
    for (std::size_t i = 0; i < m; ++i) {
        StateVector input(code.n);
        input[0] = cplx{0, 0};
        for (std::size_t b = 0; b < design.states[i].dim(); ++b) input[b] = design.states[i][b];
        circuit_overlap_gradient(code.encoder, theta, input, costates[i], weight, grad);
    }
    return grad;
}

WorstCaseResult worst_distinguishability(const Code& code, std::span<const double> theta,
                                         const PauliChannel& noise) {
    // Antipodal pairs have logical trace distance 1.
    auto loss_at = [&](double th, double ph) {
        const StateVector rho = bloch_state(th, ph);
        const StateVector sigma = bloch_state(std::numbers::pi - th, ph + std::numbers::pi);
        return 1.0 - noisy_encoded_distance(code, theta, noise, rho, sigma);
    };

    constexpr std::size_t kGridPoints = 192;  // hemisphere; 2x as antipodal directions
    const double golden = std::numbers::pi * (3.0 - std::sqrt(5.0));
    WorstCaseResult best;
    best.value = -1.0;
    for (std::size_t i = 0; i < kGridPoints; ++i) {
        const double z = 1.0 - (static_cast<double>(i) + 0.5) / kGridPoints;  // (0, 1]
        const double th = std::acos(z);
        const double ph = std::fmod(golden * static_cast<double>(i), 2.0 * std::numbers::pi);
        const double v = loss_at(th, ph);
        if (v > best.value) {
            best.value = v;
            best.theta = th;
            best.phi = ph;
        }
    }

    const auto refined = nelder_mead(
        [&](const std::vector<double>& x) { return -loss_at(x[0], x[1]); },
        {best.theta, best.phi}, 0.15, 1e-6, 200);
    if (-refined.value > best.value) {
        best.value = -refined.value;
        best.theta = refined.x[0];
        best.phi = refined.x[1];
    }
    return best;
}

}  // namespace qecco
