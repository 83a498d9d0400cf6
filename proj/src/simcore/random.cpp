#include "qecco/simcore/random.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace qecco {

double Rng::uniform01() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

double Rng::uniform_angle() { return 2.0 * std::numbers::pi * uniform01(); }

std::uint64_t Rng::uniform_int(std::uint64_t bound) {
    if (bound == 0) throw std::invalid_argument("bound must be positive");
    const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                                std::numeric_limits<std::uint64_t>::max() % bound;
    std::uint64_t r;
    do {
        r = engine_();
    } while (r >= limit);
    return r % bound;
}

double Rng::gaussian() {
    if (have_spare_) {
        have_spare_ = false;
        return spare_;
    }
    double u1;
    do {
        u1 = uniform01();
    } while (u1 <= 0.0);
    const double u2 = uniform01();
    const double mag = std::sqrt(-2.0 * std::log(u1));
    const double ang = 2.0 * std::numbers::pi * u2;
    spare_ = mag * std::sin(ang);
    have_spare_ = true;
    return mag * std::cos(ang);
}

StateVector haar_random_state(std::size_t num_qubits, Rng& rng) {
    StateVector psi(num_qubits);
    double norm_sq = 0.0;
    for (auto& amp : psi.data()) {
        amp = cplx{rng.gaussian(), rng.gaussian()};
        norm_sq += std::norm(amp);
    }
    const double inv = 1.0 / std::sqrt(norm_sq);
    for (auto& amp : psi.data()) amp *= inv;
    return psi;
}

StateVector haar_random_state(std::size_t num_qubits, std::uint64_t seed) {
    Rng rng(seed);
    return haar_random_state(num_qubits, rng);
}

}  // namespace qecco
