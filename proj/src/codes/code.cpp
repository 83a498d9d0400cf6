#include "qecco/codes/code.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>

#include "qecco/codes/synth.hpp"
#include "qecco/simcore/random.hpp"

namespace qecco {

Circuit ReaEncoder::to_circuit() const {
    Circuit c(n);
    for (std::size_t rung = 0; rung <= layers; ++rung) {
        for (std::size_t q = 0; q < n; ++q) c.append_u3(q);
        if (rung < layers) {
            for (const auto& [a, b] : entangler_placements[rung]) {
                c.append(GateOp::named(NamedGate::CZ, a, b));
            }
        }
    }
    return c;
}

ReaEncoder build_rea(std::size_t n, std::size_t layers, std::uint64_t seed) {
    if (n < 2) throw std::invalid_argument("REA needs at least two qubits");
    ReaEncoder rea;
    rea.n = n;
    rea.layers = layers;
    rea.seed = seed;
    Rng rng(seed);
    for (std::size_t l = 0; l < layers; ++l) {
        std::vector<std::size_t> order(n);
        std::iota(order.begin(), order.end(), 0);
        for (std::size_t i = n; i > 1; --i) {
            std::swap(order[i - 1], order[rng.uniform_int(i)]);
        }
        std::vector<std::pair<std::size_t, std::size_t>> pairs;
        for (std::size_t i = 0; i + 1 < n; i += 2) pairs.emplace_back(order[i], order[i + 1]);
        rea.entangler_placements.push_back(std::move(pairs));
    }
    return rea;
}

Code Code::from_spec(std::string name, std::optional<int> distance, StabilizerSpec spec) {
    Code code;
    code.name = std::move(name);
    code.n = spec.n();
    code.distance = distance;
    code.encoder = synthesize_encoder(spec);
    code.spec = std::move(spec);
    return code;
}

Code Code::from_rea(std::size_t n, std::size_t layers, std::uint64_t seed) {
    Code code;
    code.name = "rea_" + std::to_string(n) + "q";
    code.n = n;
    code.rea = build_rea(n, layers, seed);
    code.encoder = code.rea->to_circuit();
    return code;
}

Code Code::bare() {
    Code code;
    code.name = "bare";
    code.n = 1;
    code.distance = 1;
    code.encoder = Circuit(1);
    return code;
}

StateVector encode(const Code& code, const StateVector& logical, std::span<const double> params) {
    if (logical.num_qubits() != code.k) throw std::invalid_argument("logical state has wrong arity");
    if (params.size() != code.encoder_param_count()) {
        throw std::invalid_argument("encoder parameter count mismatch");
    }
    StateVector physical(code.n);
    physical[0] = cplx{0.0, 0.0};
    for (std::size_t b = 0; b < logical.dim(); ++b) physical[b] = logical[b];
    code.encoder.apply_in_place(physical, params);
    return physical;
}

StateVector encode_two_block(const Code& code, const StateVector& logical,
                             std::span<const double> params) {
    if (code.k != 1) throw std::invalid_argument("two-block encoding is defined for k=1");
    if (logical.num_qubits() != 2) throw std::invalid_argument("logical state must be two qubits");
    if (params.size() != code.encoder_param_count()) {
        throw std::invalid_argument("encoder parameter count mismatch");
    }
    const std::size_t n = code.n;
    StateVector physical(2 * n);
    physical[0] = cplx{0.0, 0.0};
    for (std::size_t a = 0; a < 2; ++a) {
        for (std::size_t b = 0; b < 2; ++b) {
            physical[a | (b << n)] = logical[a + 2 * b];
        }
    }
    code.encoder.shifted(0, 2 * n).apply_in_place(physical, params);  // block A
    code.encoder.shifted(n, 2 * n).apply_in_place(physical, params);  // block B
    return physical;
}

ValidationReport validate_encoder(const Code& code, const StabilizerSpec& spec) {
    ValidationReport report;
    if (spec.n() != code.n) {
        report.passed = false;
        report.failures.push_back("spec dimensions do not match the code");
        return report;
    }
    auto fail = [&](std::string msg) {
        report.passed = false;
        report.failures.push_back(std::move(msg));
    };

    const std::vector<double> no_params;
    const StateVector e0 = encode(code, StateVector::basis(1, 0), no_params);
    const StateVector e1 = encode(code, StateVector::basis(1, 1), no_params);

    auto deviation = [](const StateVector& a, const StateVector& b, double scale = 1.0) {
        double worst = 0.0;
        for (std::size_t i = 0; i < a.dim(); ++i) {
            worst = std::max(worst, std::abs(a[i] - scale * b[i]));
        }
        return worst;
    };

    for (std::size_t g = 0; g < spec.generators.size(); ++g) {
        const auto& gen = spec.generators[g];
        const double d0 = deviation(gen.apply(e0), e0);
        const double d1 = deviation(gen.apply(e1), e1);
        if (d0 > 1e-9 || d1 > 1e-9) {
            fail("generator " + std::to_string(g) + " (" + gen.str() + ") does not stabilize the codespace");
        }
    }
    if (deviation(spec.logical_x.apply(e0), e1) > 1e-9 ||
        deviation(spec.logical_x.apply(e1), e0) > 1e-9) {
        fail("logical X (" + spec.logical_x.str() + ") does not act as X on the logical basis");
    }
    if (deviation(spec.logical_z.apply(e0), e0) > 1e-9 ||
        deviation(spec.logical_z.apply(e1), e1, -1.0) > 1e-9) {
        fail("logical Z (" + spec.logical_z.str() + ") does not act as Z on the logical basis");
    }
    return report;
}

}  // namespace qecco
