#pragma once

#include <cstdint>
#include <random>

#include "qecco/simcore/state.hpp"

namespace qecco {

/// Deterministic random stream. Distributions are implemented explicitly on
/// top of the mt19937_64 output so that sequences are identical across
/// standard libraries.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    /// Uniform in [0, 1) with 53-bit resolution.
    double uniform01();
    /// Uniform in [0, 2π).
    double uniform_angle();
    /// Uniform integer in [0, bound).
    std::uint64_t uniform_int(std::uint64_t bound);
    /// Standard normal via Box-Muller.
    double gaussian();

    std::uint64_t raw() { return engine_(); }

  private:
    std::mt19937_64 engine_;
    bool have_spare_ = false;
    double spare_ = 0.0;
};

/// State drawn from the Haar measure: normalized vector of independent
/// standard complex Gaussians. Deterministic per seed.
StateVector haar_random_state(std::size_t num_qubits, std::uint64_t seed);
StateVector haar_random_state(std::size_t num_qubits, Rng& rng);

}  // namespace qecco
