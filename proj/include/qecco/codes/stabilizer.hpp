#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "qecco/simcore/state.hpp"

namespace qecco {

/// n-qubit Pauli operator i^phase · ⊗_q X^x_q Z^z_q (X left of Z per qubit).
/// Character i of a text form like "XZIY" addresses qubit i.
class PauliString {
  public:
    PauliString() = default;
    explicit PauliString(std::size_t n);
    static PauliString parse(const std::string& text);

    std::size_t n() const { return x_.size(); }
    bool x(std::size_t q) const { return x_[q]; }
    bool z(std::size_t q) const { return z_[q]; }
    void set_x(std::size_t q, bool v) { x_[q] = v; }
    void set_z(std::size_t q, bool v) { z_[q] = v; }
    int phase_pow() const { return phase_; }
    void add_phase(int pow_i) { phase_ = (phase_ + pow_i) % 4; }

    bool is_identity() const;
    bool is_hermitian() const;
    std::size_t weight() const;

    bool commutes_with(const PauliString& other) const;
    PauliString operator*(const PauliString& other) const;

    /// i^phase (-1)^{z·b} |b ⊕ x> summed over basis states of psi.
    StateVector apply(const StateVector& psi) const;

    std::string str() const;

  private:
    std::vector<std::uint8_t> x_;
    std::vector<std::uint8_t> z_;
    int phase_ = 0;  // exponent of i, mod 4
};

/// Stabilizer description of a k=1 code: n-1 commuting generators plus
/// logical X/Z representatives.
struct StabilizerSpec {
    std::vector<PauliString> generators;
    PauliString logical_x;
    PauliString logical_z;

    StabilizerSpec(std::vector<std::string> generator_texts, const std::string& lx,
                   const std::string& lz);

    std::size_t n() const { return logical_x.n(); }
};

}  // namespace qecco
