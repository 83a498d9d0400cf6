#include "qecco/codes/stabilizer.hpp"

#include <bit>
#include <stdexcept>

namespace qecco {

PauliString::PauliString(std::size_t n) : x_(n, 0), z_(n, 0) {}

PauliString PauliString::parse(const std::string& text) {
    PauliString p(text.size());
    for (std::size_t q = 0; q < text.size(); ++q) {
        switch (text[q]) {
            case 'I': break;
            case 'X': p.x_[q] = 1; break;
            case 'Z': p.z_[q] = 1; break;
            case 'Y':
                p.x_[q] = 1;
                p.z_[q] = 1;
                p.phase_ = (p.phase_ + 1) % 4;  // Y = i X Z
                break;
            default: throw std::invalid_argument("pauli string may contain only I, X, Y, Z");
        }
    }
    return p;
}

bool PauliString::is_identity() const {
    for (std::size_t q = 0; q < n(); ++q) {
        if (x_[q] || z_[q]) return false;
    }
    return true;
}

bool PauliString::is_hermitian() const {
    // i^phase ⊗ X^x Z^z is Hermitian iff the phase compensates the Y count.
    int y_count = 0;
    for (std::size_t q = 0; q < n(); ++q) y_count += (x_[q] && z_[q]) ? 1 : 0;
    return (phase_ - y_count) % 2 == 0;
}

std::size_t PauliString::weight() const {
    std::size_t w = 0;
    for (std::size_t q = 0; q < n(); ++q) w += (x_[q] || z_[q]) ? 1 : 0;
    return w;
}

bool PauliString::commutes_with(const PauliString& other) const {
    if (n() != other.n()) throw std::invalid_argument("length mismatch");
    int parity = 0;
    for (std::size_t q = 0; q < n(); ++q) {
        parity ^= (x_[q] & other.z_[q]) ^ (z_[q] & other.x_[q]);
    }
    return parity == 0;
}

PauliString PauliString::operator*(const PauliString& other) const {
    if (n() != other.n()) throw std::invalid_argument("length mismatch");
    PauliString out(n());
    int phase = phase_ + other.phase_;
    for (std::size_t q = 0; q < n(); ++q) {
        // Z^z1 X^x2 = (-1)^{z1 x2} X^x2 Z^z1
        phase += 2 * (z_[q] & other.x_[q]);
        out.x_[q] = x_[q] ^ other.x_[q];
        out.z_[q] = z_[q] ^ other.z_[q];
    }
    out.phase_ = phase % 4;
    return out;
}

StateVector PauliString::apply(const StateVector& psi) const {
    if (psi.num_qubits() != n()) throw std::invalid_argument("qubit count mismatch");
    std::size_t xmask = 0;
    std::size_t zmask = 0;
    for (std::size_t q = 0; q < n(); ++q) {
        if (x_[q]) xmask |= std::size_t{1} << q;
        if (z_[q]) zmask |= std::size_t{1} << q;
    }
    static const cplx phases[4] = {cplx{1, 0}, cplx{0, 1}, cplx{-1, 0}, cplx{0, -1}};
    const cplx global = phases[((phase_ % 4) + 4) % 4];
    StateVector out(n());
    out[0] = cplx{0.0, 0.0};
    for (std::size_t b = 0; b < psi.dim(); ++b) {
        const int sign = std::popcount(b & zmask) % 2 ? -1 : 1;
        out[b ^ xmask] = global * static_cast<double>(sign) * psi[b];
    }
    return out;
}

std::string PauliString::str() const {
    static const char* prefix[4] = {"", "i", "-", "-i"};
    std::string s = prefix[((phase_ % 4) + 4) % 4];
    int y_corr = 0;
    for (std::size_t q = 0; q < n(); ++q) {
        if (x_[q] && z_[q]) ++y_corr;
    }
    // Render X&Z overlap as Y and strip its bookkeeping phase for readability.
    s.clear();
    int shown_phase = ((phase_ - y_corr) % 4 + 4) % 4;
    s = prefix[shown_phase];
    for (std::size_t q = 0; q < n(); ++q) {
        if (x_[q] && z_[q]) s += 'Y';
        else if (x_[q]) s += 'X';
        else if (z_[q]) s += 'Z';
        else s += 'I';
    }
    return s;
}

StabilizerSpec::StabilizerSpec(std::vector<std::string> generator_texts, const std::string& lx,
                               const std::string& lz)
    : logical_x(PauliString::parse(lx)), logical_z(PauliString::parse(lz)) {
    for (const auto& t : generator_texts) generators.push_back(PauliString::parse(t));

    const std::size_t width = logical_x.n();
    if (logical_z.n() != width) throw std::invalid_argument("logical operator length mismatch");
    for (const auto& g : generators) {
        if (g.n() != width) throw std::invalid_argument("generator length mismatch");
    }
    for (std::size_t i = 0; i < generators.size(); ++i) {
        for (std::size_t j = i + 1; j < generators.size(); ++j) {
            if (!generators[i].commutes_with(generators[j])) {
                throw std::invalid_argument("generators must mutually commute");
            }
        }
        if (!generators[i].commutes_with(logical_x) || !generators[i].commutes_with(logical_z)) {
            throw std::invalid_argument("logical operators must commute with the stabilizer");
        }
    }
    if (logical_x.commutes_with(logical_z)) {
        throw std::invalid_argument("logical X and Z must anticommute");
    }

    // Independence: GF(2) rank of the (x|z) rows must equal the generator count.
    std::vector<std::vector<std::uint8_t>> rows;
    for (const auto& g : generators) {
        std::vector<std::uint8_t> row(2 * width, 0);
        for (std::size_t q = 0; q < width; ++q) {
            row[q] = g.x(q);
            row[width + q] = g.z(q);
        }
        rows.push_back(std::move(row));
    }
    std::size_t rank = 0;
    for (std::size_t col = 0; col < 2 * width && rank < rows.size(); ++col) {
        std::size_t pivot = rank;
        while (pivot < rows.size() && !rows[pivot][col]) ++pivot;
        if (pivot == rows.size()) continue;
        std::swap(rows[rank], rows[pivot]);
        for (std::size_t r = 0; r < rows.size(); ++r) {
            if (r != rank && rows[r][col]) {
                for (std::size_t c = 0; c < 2 * width; ++c) rows[r][c] ^= rows[rank][c];
            }
        }
        ++rank;
    }
    if (rank != generators.size()) throw std::invalid_argument("generators are not independent");
}

}  // namespace qecco
