#pragma once

#include <span>

#include "qecco/codes/code.hpp"
#include "qecco/losses/two_design.hpp"
#include "qecco/simcore/channel.hpp"

namespace qecco {

/// T(rho, sigma) - T(N^{⊗n}(rho_L), N^{⊗n}(sigma_L)) for pure single-qubit
/// logical states.
double lost_trace_distance(const Code& code, std::span<const double> theta,
                           const PauliChannel& noise, const StateVector& rho,
                           const StateVector& sigma);

/// Average of the lost trace distance over all ordered design-state pairs.
double distinguishability_loss(const Code& code, std::span<const double> theta,
                               const PauliChannel& noise,
                               const TwoDesign& design = single_qubit_design());

/// Adjoint-mode gradient of distinguishability_loss with respect to the
/// encoder parameters: dT/dΘ contracts the eigen-sign matrix of each noisy
/// pair difference against the channel-transported encoder derivatives.
std::vector<double> distinguishability_gradient(const Code& code, std::span<const double> theta,
                                                const PauliChannel& noise,
                                                const TwoDesign& design = single_qubit_design());

struct WorstCaseResult {
    double value = 0.0;
    double theta = 0.0;  // Bloch polar angle of the maximizing direction
    double phi = 0.0;    // Bloch azimuth
};

/// Worst-case distinguishability loss over antipodal pure-state pairs:
/// a Fibonacci grid of at least 162 directions followed by Nelder-Mead
/// refinement to tolerance 1e-6.
WorstCaseResult worst_distinguishability(const Code& code, std::span<const double> theta,
                                         const PauliChannel& noise);

/// Pure state at Bloch angles (theta, phi).
StateVector bloch_state(double theta, double phi);

}  // namespace qecco
