#include "qecco/simcore/state.hpp"

#include <bit>
#include <cmath>
#include <stdexcept>

namespace qecco {

std::size_t qubit_count(std::size_t dim) {
    if (dim < 2 || !std::has_single_bit(dim)) {
        throw std::invalid_argument("dimension must be a power of two >= 2");
    }
    return static_cast<std::size_t>(std::countr_zero(dim));
}

StateVector::StateVector(std::size_t num_qubits)
    : num_qubits_(num_qubits), data_(std::size_t{1} << num_qubits, cplx{0.0, 0.0}) {
    if (num_qubits == 0) throw std::invalid_argument("state needs at least one qubit");
    data_[0] = cplx{1.0, 0.0};
}

StateVector::StateVector(std::size_t num_qubits, std::vector<cplx> amplitudes)
    : num_qubits_(num_qubits), data_(std::move(amplitudes)) {
    if (data_.size() != (std::size_t{1} << num_qubits)) {
        throw std::invalid_argument("amplitude count does not match qubit count");
    }
}

StateVector StateVector::basis(std::size_t num_qubits, std::size_t index) {
    StateVector s(num_qubits);
    if (index >= s.dim()) throw std::out_of_range("basis index out of range");
    s.data_[0] = cplx{0.0, 0.0};
    s.data_[index] = cplx{1.0, 0.0};
    return s;
}

double StateVector::norm() const {
    double s = 0.0;
    for (const auto& a : data_) s += std::norm(a);
    return std::sqrt(s);
}

void StateVector::check_normalized() const {
    if (std::abs(norm() - 1.0) > kNormTol) {
        throw std::invalid_argument("state is not normalized");
    }
}

cplx StateVector::inner(const StateVector& other) const {
    if (dim() != other.dim()) throw std::invalid_argument("dimension mismatch");
    cplx acc{0.0, 0.0};
    for (std::size_t i = 0; i < data_.size(); ++i) {
        acc += std::conj(data_[i]) * other.data_[i];
    }
    return acc;
}

StateVector StateVector::tensor(const StateVector& high) const {
    StateVector out(num_qubits_ + high.num_qubits_);
    out.data_.assign(out.dim(), cplx{0.0, 0.0});
    for (std::size_t h = 0; h < high.dim(); ++h) {
        if (high.data_[h] == cplx{0.0, 0.0}) continue;
        for (std::size_t l = 0; l < dim(); ++l) {
            out.data_[(h << num_qubits_) | l] = high.data_[h] * data_[l];
        }
    }
    return out;
}

DensityMatrix::DensityMatrix(std::size_t num_qubits)
    : num_qubits_(num_qubits),
      dim_(std::size_t{1} << num_qubits),
      data_(dim_ * dim_, cplx{0.0, 0.0}) {}

DensityMatrix DensityMatrix::from_pure(const StateVector& psi) {
    DensityMatrix rho(psi.num_qubits());
    const auto& v = psi.data();
    for (std::size_t r = 0; r < rho.dim_; ++r) {
        for (std::size_t c = 0; c < rho.dim_; ++c) {
            rho.data_[r * rho.dim_ + c] = v[r] * std::conj(v[c]);
        }
    }
    return rho;
}

cplx DensityMatrix::trace() const {
    cplx t{0.0, 0.0};
    for (std::size_t i = 0; i < dim_; ++i) t += data_[i * dim_ + i];
    return t;
}

double DensityMatrix::hermiticity_error() const {
    double worst = 0.0;
    for (std::size_t r = 0; r < dim_; ++r) {
        for (std::size_t c = r; c < dim_; ++c) {
            worst = std::max(worst, std::abs(data_[r * dim_ + c] - std::conj(data_[c * dim_ + r])));
        }
    }
    return worst;
}

DensityMatrix DensityMatrix::operator-(const DensityMatrix& other) const {
    if (dim_ != other.dim_) throw std::invalid_argument("dimension mismatch");
    DensityMatrix out(num_qubits_);
    for (std::size_t i = 0; i < data_.size(); ++i) out.data_[i] = data_[i] - other.data_[i];
    return out;
}

}  // namespace qecco
