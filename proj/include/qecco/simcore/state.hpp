#pragma once

#include <cstddef>
#include <vector>

#include "qecco/simcore/types.hpp"

namespace qecco {

// Qubit ordering convention used everywhere in this project: qubit 0 is the
// least-significant bit of the computational-basis index. A basis index b
// therefore assigns bit (b >> q) & 1 to qubit q.

/// Pure n-qubit state as a flat array of 2^n complex amplitudes.
class StateVector {
  public:
    StateVector() = default;
    explicit StateVector(std::size_t num_qubits);
    StateVector(std::size_t num_qubits, std::vector<cplx> amplitudes);

    /// Computational basis state |index> on `num_qubits` qubits.
    static StateVector basis(std::size_t num_qubits, std::size_t index);

    std::size_t num_qubits() const { return num_qubits_; }
    std::size_t dim() const { return data_.size(); }

    const cplx& operator[](std::size_t i) const { return data_[i]; }
    cplx& operator[](std::size_t i) { return data_[i]; }

    const std::vector<cplx>& data() const { return data_; }
    std::vector<cplx>& data() { return data_; }

    double norm() const;
    /// Throws if the squared amplitudes do not sum to 1 within kNormTol.
    void check_normalized() const;

    cplx inner(const StateVector& other) const;

    /// Kronecker product; `this` supplies the low-order qubits.
    StateVector tensor(const StateVector& high) const;

  private:
    std::size_t num_qubits_ = 0;
    std::vector<cplx> data_;
};

/// Mixed state as a dense dim x dim complex matrix, row-major.
class DensityMatrix {
  public:
    DensityMatrix() = default;
    explicit DensityMatrix(std::size_t num_qubits);
    static DensityMatrix from_pure(const StateVector& psi);

    std::size_t num_qubits() const { return num_qubits_; }
    std::size_t dim() const { return dim_; }

    cplx& at(std::size_t row, std::size_t col) { return data_[row * dim_ + col]; }
    const cplx& at(std::size_t row, std::size_t col) const { return data_[row * dim_ + col]; }

    const std::vector<cplx>& data() const { return data_; }
    std::vector<cplx>& data() { return data_; }

    cplx trace() const;
    double hermiticity_error() const;

    DensityMatrix operator-(const DensityMatrix& other) const;

  private:
    std::size_t num_qubits_ = 0;
    std::size_t dim_ = 0;
    std::vector<cplx> data_;
};

}  // namespace qecco
