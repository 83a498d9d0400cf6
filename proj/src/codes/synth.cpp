#include "qecco/codes/synth.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

#include "qecco/simcore/gates.hpp"

namespace qecco {

namespace {

Mat2 local_pauli(bool x, bool z) {
    Mat2 m = mat2_identity();
    if (x) m = mat2_mul(m, named_gate_matrix_1q(NamedGate::X));
    if (z) m = mat2_mul(m, named_gate_matrix_1q(NamedGate::Z));
    return m;
}

int match_phase(const cplx& ratio) {
    const double ang = std::arg(ratio);
    const int k = static_cast<int>(std::lround(ang / (std::numbers::pi / 2.0)));
    return ((k % 4) + 4) % 4;
}

/// Rewrites M as i^k X^x Z^z; throws if M is not a phased Pauli.
void match_pauli_1q(const Mat2& m, bool& x, bool& z, int& phase) {
    for (int xi = 0; xi < 2; ++xi) {
        for (int zi = 0; zi < 2; ++zi) {
            const Mat2 base = local_pauli(xi, zi);
            std::size_t ref = 0;
            while (ref < 4 && std::abs(base[ref]) < 0.5) ++ref;
            if (std::abs(m[ref]) < 0.5) continue;
            const cplx ratio = m[ref] / base[ref];
            bool ok = true;
            for (std::size_t i = 0; i < 4 && ok; ++i) {
                ok = std::abs(m[i] - ratio * base[i]) < 1e-9;
            }
            if (ok) {
                x = xi;
                z = zi;
                phase = match_phase(ratio);
                return;
            }
        }
    }
    throw std::logic_error("conjugation did not produce a Pauli");
}

void match_pauli_2q(const Mat4& m, bool& xa, bool& za, bool& xb, bool& zb, int& phase) {
    for (int c = 0; c < 16; ++c) {
        const bool cxa = c & 1, cza = c & 2, cxb = c & 4, czb = c & 8;
        const Mat4 base = mat4_kron(local_pauli(cxa, cza), local_pauli(cxb, czb));
        std::size_t ref = 0;
        while (ref < 16 && std::abs(base[ref]) < 0.5) ++ref;
        if (std::abs(m[ref]) < 0.5) continue;
        const cplx ratio = m[ref] / base[ref];
        bool ok = true;
        for (std::size_t i = 0; i < 16 && ok; ++i) {
            ok = std::abs(m[i] - ratio * base[i]) < 1e-9;
        }
        if (ok) {
            xa = cxa;
            za = cza;
            xb = cxb;
            zb = czb;
            phase = match_phase(ratio);
            return;
        }
    }
    throw std::logic_error("conjugation did not produce a Pauli");
}

class Reducer {
  public:
    explicit Reducer(const StabilizerSpec& spec) : n_(spec.n()) {
        rows_.push_back(spec.logical_x);
        rows_.push_back(spec.logical_z);
        for (const auto& g : spec.generators) rows_.push_back(g);
    }

    void h(std::size_t q) { conj1(named_gate_matrix_1q(NamedGate::H), q, GateOp::named(NamedGate::H, q)); }
    void s(std::size_t q) { conj1(named_gate_matrix_1q(NamedGate::S), q, GateOp::named(NamedGate::S, q)); }
    void cx(std::size_t c, std::size_t t) {
        conj2(named_gate_matrix_2q(NamedGate::CX), c, t, GateOp::named(NamedGate::CX, c, t));
    }
    void swap(std::size_t a, std::size_t b) {
        cx(a, b);
        cx(b, a);
        cx(a, b);
    }

    PauliString& row(std::size_t i) { return rows_[i]; }

    /// Makes rows_[idx] equal ±X_target using gates on qubits >= min_qubit.
    void reduce_to_x(std::size_t idx, std::size_t target) {
        PauliString& r = rows_[idx];
        bool has_x = false;
        for (std::size_t q = 0; q < n_; ++q) has_x |= r.x(q);
        if (!has_x) {
            for (std::size_t q = 0; q < n_; ++q) {
                if (r.z(q)) {
                    h(q);
                    break;
                }
            }
        }
        for (std::size_t q = 0; q < n_; ++q) {
            if (r.x(q) && r.z(q)) s(q);  // Y -> ±X
            else if (r.z(q)) h(q);       // Z -> X
        }
        std::size_t pivot = n_;
        for (std::size_t q = 0; q < n_; ++q) {
            if (r.x(q)) {
                pivot = q;
                break;
            }
        }
        if (pivot == n_) throw std::logic_error("row reduced to identity");
        for (std::size_t q = 0; q < n_; ++q) {
            if (q != pivot && r.x(q)) cx(pivot, q);
        }
        if (pivot != target) swap(pivot, target);
    }

    /// Makes rows_[idx] equal ±Z_target using gates on qubits >= min_qubit only.
    void reduce_to_z(std::size_t idx, std::size_t target, std::size_t min_qubit) {
        PauliString& r = rows_[idx];
        for (std::size_t q = min_qubit; q < n_; ++q) {
            if (r.x(q) && r.z(q)) {
                s(q);
                h(q);
            } else if (r.x(q)) {
                h(q);
            }
        }
        std::size_t pivot = n_;
        for (std::size_t q = min_qubit; q < n_; ++q) {
            if (r.z(q)) {
                pivot = q;
                break;
            }
        }
        if (pivot == n_) throw std::logic_error("row reduced to identity");
        for (std::size_t q = min_qubit; q < n_; ++q) {
            if (q != pivot && r.z(q)) cx(q, pivot);
        }
        if (pivot != target) swap(pivot, target);
    }

    const std::vector<GateOp>& ops() const { return ops_; }
    std::size_t n() const { return n_; }

  private:
    void conj1(const Mat2& g, std::size_t q, GateOp op) {
        const Mat2 gd = mat2_dagger(g);
        for (auto& r : rows_) {
            if (!r.x(q) && !r.z(q)) continue;
            const Mat2 conj = mat2_mul(g, mat2_mul(local_pauli(r.x(q), r.z(q)), gd));
            bool nx = false, nz = false;
            int ph = 0;
            match_pauli_1q(conj, nx, nz, ph);
            r.set_x(q, nx);
            r.set_z(q, nz);
            r.add_phase(ph);
        }
        ops_.push_back(std::move(op));
    }

    void conj2(const Mat4& g, std::size_t control, std::size_t target, GateOp op) {
        // Gate matrices use local bit0 = target, bit1 = control.
        const Mat4 gd = mat4_dagger(g);
        for (auto& r : rows_) {
            if (!r.x(control) && !r.z(control) && !r.x(target) && !r.z(target)) continue;
            const Mat4 local =
                mat4_kron(local_pauli(r.x(target), r.z(target)), local_pauli(r.x(control), r.z(control)));
            const Mat4 conj = mat4_mul(g, mat4_mul(local, gd));
            bool xt = false, zt = false, xc = false, zc = false;
            int ph = 0;
            match_pauli_2q(conj, xt, zt, xc, zc, ph);
            r.set_x(target, xt);
            r.set_z(target, zt);
            r.set_x(control, xc);
            r.set_z(control, zc);
            r.add_phase(ph);
        }
        ops_.push_back(std::move(op));
    }

    std::size_t n_;
    std::vector<PauliString> rows_;
    std::vector<GateOp> ops_;
};

}  // namespace

Circuit synthesize_encoder(const StabilizerSpec& spec) {
    const std::size_t n = spec.n();
    if (spec.generators.size() + 1 != n) {
        throw std::invalid_argument("expected n-1 generators for a k=1 code");
    }
    Reducer red(spec);

    // Logical pair onto qubit 0.
    red.reduce_to_x(0, 0);
    {
        PauliString& zbar = red.row(1);
        for (std::size_t q = 1; q < n; ++q) {
            if (zbar.x(q) && zbar.z(q)) {
                red.s(q);
                red.h(q);
            } else if (zbar.x(q)) {
                red.h(q);
            }
        }
        if (!zbar.z(0)) throw std::logic_error("logical Z lost its anticommutation");
        for (std::size_t q = 1; q < n; ++q) {
            if (zbar.z(q)) red.cx(q, 0);
        }
        if (zbar.x(0)) {  // Y on the data qubit: H S H maps Y -> Z, X -> X
            red.h(0);
            red.s(0);
            red.h(0);
        }
    }

    // Generators onto the ancilla qubits.
    for (std::size_t g = 0; g < n - 1; ++g) {
        const std::size_t target = g + 1;
        PauliString& r = red.row(2 + g);
        if (r.x(0) || r.z(0)) throw std::logic_error("generator acts on the reduced data qubit");
        for (std::size_t b = 1; b < target; ++b) {
            if (r.x(b)) throw std::logic_error("generator anticommutes with a fixed row");
            if (r.z(b)) red.row(2 + g) = red.row(2 + g) * red.row(1 + b);
        }
        red.reduce_to_z(2 + g, target, target);
    }

    // Assemble the encoder: sign-fixing Paulis first, then the inverted
    // reduction in reverse order.
    Circuit enc(n);
    auto phase_sign = [](const PauliString& p) {
        const int ph = ((p.phase_pow() % 4) + 4) % 4;
        if (ph == 0) return +1;
        if (ph == 2) return -1;
        throw std::logic_error("row carries an imaginary phase");
    };
    if (phase_sign(red.row(0)) < 0) enc.append(GateOp::named(NamedGate::Z, 0));
    if (phase_sign(red.row(1)) < 0) enc.append(GateOp::named(NamedGate::X, 0));
    for (std::size_t g = 0; g < n - 1; ++g) {
        if (phase_sign(red.row(2 + g)) < 0) enc.append(GateOp::named(NamedGate::X, g + 1));
    }
    const auto& ops = red.ops();
    for (auto it = ops.rbegin(); it != ops.rend(); ++it) {
        GateOp inv = *it;
        if (inv.kind == GateKind::Named && inv.name == NamedGate::S) inv.name = NamedGate::Sdg;
        enc.append(std::move(inv));
    }
    return enc;
}

}  // namespace qecco
