#include "qecco/ansatz/ansatz.hpp"

#include <cmath>
#include <set>
#include <stdexcept>

#include "qecco/simcore/random.hpp"

namespace qecco {

const char* ansatz_variant_label(AnsatzVariant v) {
    switch (v) {
        case AnsatzVariant::Strict1Q: return "strict";
        case AnsatzVariant::Transversal1Q: return "transversal";
        case AnsatzVariant::NonTransversal1Q: return "non-transversal";
        case AnsatzVariant::StrictCtrl2Q: return "strict-ctrl";
        case AnsatzVariant::TransversalCtrl2Q: return "transversal-ctrl";
        case AnsatzVariant::WeakTransversal2Q: return "weak-transversal";
    }
    return "?";
}

std::optional<AnsatzVariant> ansatz_variant_from_label(const std::string& label) {
    static const std::pair<const char*, AnsatzVariant> table[] = {
        {"strict", AnsatzVariant::Strict1Q},
        {"transversal", AnsatzVariant::Transversal1Q},
        {"non-transversal", AnsatzVariant::NonTransversal1Q},
        {"strict-ctrl", AnsatzVariant::StrictCtrl2Q},
        {"transversal-ctrl", AnsatzVariant::TransversalCtrl2Q},
        {"weak-transversal", AnsatzVariant::WeakTransversal2Q},
    };
    for (const auto& [name, v] : table) {
        if (label == name) return v;
    }
    return std::nullopt;
}

bool ansatz_variant_is_two_qubit(AnsatzVariant v) {
    return v == AnsatzVariant::StrictCtrl2Q || v == AnsatzVariant::TransversalCtrl2Q ||
           v == AnsatzVariant::WeakTransversal2Q;
}

AnsatzClass AnsatzClass::strict_1q(std::size_t r) { return {AnsatzVariant::Strict1Q, r, 0, 0, false}; }
AnsatzClass AnsatzClass::transversal_1q(std::size_t r) {
    return {AnsatzVariant::Transversal1Q, r, 0, 0, false};
}
AnsatzClass AnsatzClass::non_transversal_1q(std::size_t violations, std::uint64_t seed,
                                            std::size_t r) {
    return {AnsatzVariant::NonTransversal1Q, r, violations, seed, false};
}
AnsatzClass AnsatzClass::strict_ctrl_2q(std::size_t r) {
    return {AnsatzVariant::StrictCtrl2Q, r, 0, 0, false};
}
AnsatzClass AnsatzClass::transversal_ctrl_2q(std::size_t r) {
    return {AnsatzVariant::TransversalCtrl2Q, r, 0, 0, false};
}
AnsatzClass AnsatzClass::weak_transversal_2q(std::size_t r) {
    return {AnsatzVariant::WeakTransversal2Q, r, 0, 0, false};
}

std::size_t OperationAnsatz::param_count() const {
    const std::size_t r = cls.repetitions;
    switch (cls.variant) {
        case AnsatzVariant::Strict1Q: return 3 * r;
        case AnsatzVariant::Transversal1Q: return 3 * n * r;
        case AnsatzVariant::NonTransversal1Q: return 3 * n * r + 3 * cls.violations;
        case AnsatzVariant::StrictCtrl2Q: return 3 * r;
        case AnsatzVariant::TransversalCtrl2Q: return 3 * n * r;
        case AnsatzVariant::WeakTransversal2Q: return 24 * n * r;
    }
    return 0;
}

std::vector<std::pair<std::size_t, std::size_t>> place_violations(std::size_t n,
                                                                  std::size_t violations,
                                                                  std::uint64_t seed) {
    if (violations > n * (n - 1)) throw std::invalid_argument("too many violations requested");
    Rng rng(seed);
    std::set<std::pair<std::size_t, std::size_t>> seen;
    std::vector<std::pair<std::size_t, std::size_t>> out;
    while (out.size() < violations) {
        const std::size_t c = rng.uniform_int(n);
        std::size_t t = rng.uniform_int(n - 1);
        if (t >= c) ++t;
        if (seen.insert({c, t}).second) out.emplace_back(c, t);
    }
    return out;
}

Circuit OperationAnsatz::build() const {
    if (cls.repetitions < 1) throw std::invalid_argument("repetitions must be >= 1");
    const std::size_t r = cls.repetitions;
    Circuit c(register_width());

    auto pair_qubits = [&](std::size_t i) -> std::pair<std::size_t, std::size_t> {
        // (control, target): block A qubit i controls block B qubit i unless inverted.
        if (cls.invert_ctrl) return {n + i, i};
        return {i, n + i};
    };

    switch (cls.variant) {
        case AnsatzVariant::Strict1Q:
            for (std::size_t rep = 0; rep < r; ++rep) {
                for (std::size_t q = 0; q < n; ++q) {
                    c.append(GateOp::u3(q, static_cast<int>(3 * rep)));
                }
            }
            break;
        case AnsatzVariant::Transversal1Q:
        case AnsatzVariant::NonTransversal1Q:
            for (std::size_t rep = 0; rep < r; ++rep) {
                for (std::size_t q = 0; q < n; ++q) {
                    c.append(GateOp::u3(q, static_cast<int>(3 * (rep * n + q))));
                }
            }
            if (cls.variant == AnsatzVariant::NonTransversal1Q) {
                const auto pairs = place_violations(n, cls.violations, cls.violation_seed);
                for (std::size_t v = 0; v < pairs.size(); ++v) {
                    c.append(GateOp::controlled_u3(pairs[v].first, pairs[v].second,
                                                   static_cast<int>(3 * (r * n + v))));
                }
            }
            break;
        case AnsatzVariant::StrictCtrl2Q:
            for (std::size_t rep = 0; rep < r; ++rep) {
                for (std::size_t i = 0; i < n; ++i) {
                    const auto [ctrl, tgt] = pair_qubits(i);
                    c.append(GateOp::controlled_u3(ctrl, tgt, static_cast<int>(3 * rep)));
                }
            }
            break;
        case AnsatzVariant::TransversalCtrl2Q:
            for (std::size_t rep = 0; rep < r; ++rep) {
                for (std::size_t i = 0; i < n; ++i) {
                    const auto [ctrl, tgt] = pair_qubits(i);
                    c.append(GateOp::controlled_u3(ctrl, tgt, static_cast<int>(3 * (rep * n + i))));
                }
            }
            break;
        case AnsatzVariant::WeakTransversal2Q:
            // Per pair: (V1⊗V2) CZ (V3⊗V4) CZ (V5⊗V6) CZ (V7⊗V8), applied
            // right to left; odd positions act on block A, even on block B.
            for (std::size_t rep = 0; rep < r; ++rep) {
                for (std::size_t i = 0; i < n; ++i) {
                    const std::size_t base = 3 * ((rep * n + i) * 8);
                    const std::size_t qa = i;
                    const std::size_t qb = n + i;
                    for (int block = 3; block >= 0; --block) {
                        c.append(GateOp::u3(qa, static_cast<int>(base + 6 * block)));
                        c.append(GateOp::u3(qb, static_cast<int>(base + 6 * block + 3)));
                        if (block > 0) c.append(GateOp::named(NamedGate::CZ, qa, qb));
                    }
                }
            }
            break;
    }
    if (c.param_count() != param_count()) throw std::logic_error("parameter layout mismatch");
    return c;
}

std::array<double, 3> u3_angles_from_unitary(const Mat2& m) {
    if (mat2_unitarity_error(m) > 1e-9) throw std::invalid_argument("matrix is not unitary");
    const double c = std::abs(m[0]);
    const double s = std::abs(m[2]);
    const double theta = 2.0 * std::atan2(s, c);
    if (s < 1e-9) {  // diagonal: fold everything into phi, keep lambda = 0
        return {0.0, std::arg(m[3]) - std::arg(m[0]), 0.0};
    }
    if (c < 1e-9) {  // anti-diagonal
        const double alpha = std::arg(-m[1]);
        return {std::numbers::pi, std::arg(m[2]) - alpha, 0.0};
    }
    const double alpha = std::arg(m[0]);
    return {theta, std::arg(m[2]) - alpha, std::arg(-m[1]) - alpha};
}

CondensedAnsatz condense(const OperationAnsatz& ansatz, std::span<const double> params) {
    if (params.size() != ansatz.param_count()) {
        throw std::invalid_argument("parameter count mismatch");
    }
    const AnsatzVariant v = ansatz.cls.variant;
    if (v == AnsatzVariant::NonTransversal1Q || v == AnsatzVariant::WeakTransversal2Q) {
        throw std::invalid_argument("ansatz class cannot be condensed by layer folding");
    }
    const std::size_t r = ansatz.cls.repetitions;
    const std::size_t factors =
        (v == AnsatzVariant::Strict1Q || v == AnsatzVariant::StrictCtrl2Q) ? 1 : ansatz.n;

    auto u3_at = [&](std::size_t slot) {
        return u3_matrix(params[slot], params[slot + 1], params[slot + 2]);
    };

    CondensedAnsatz out;
    out.ansatz = ansatz;
    out.ansatz.cls.repetitions = 1;
    out.params.resize(3 * factors);
    for (std::size_t f = 0; f < factors; ++f) {
        Mat2 product = mat2_identity();
        for (std::size_t rep = 0; rep < r; ++rep) {
            const std::size_t slot = (factors == 1) ? 3 * rep : 3 * (rep * factors + f);
            product = mat2_mul(u3_at(slot), product);  // later layers act after earlier ones
        }
        const auto angles = u3_angles_from_unitary(product);
        out.params[3 * f] = angles[0];
        out.params[3 * f + 1] = angles[1];
        out.params[3 * f + 2] = angles[2];
    }
    return out;
}

}  // namespace qecco
