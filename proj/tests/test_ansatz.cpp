#include <cmath>

#include "doctest.h"
#include "qecco/ansatz/ansatz.hpp"
#include "qecco/simcore/linalg.hpp"
#include "qecco/simcore/random.hpp"

using namespace qecco;

namespace {

// |tr(A† B)| == dim  iff  A = e^{iφ} B for unitaries.
double phase_distance(const std::vector<cplx>& a, const std::vector<cplx>& b, std::size_t dim) {
    cplx tr{0.0, 0.0};
    for (std::size_t r = 0; r < dim; ++r) {
        for (std::size_t c = 0; c < dim; ++c) tr += std::conj(a[c * dim + r]) * b[c * dim + r];
    }
    return std::abs(static_cast<double>(dim) - std::abs(tr));
}

std::vector<double> random_params(std::size_t count, Rng& rng) {
    std::vector<double> p(count);
    for (auto& v : p) v = rng.uniform_angle();
    return p;
}

}  // namespace

TEST_CASE("parameter count formulas") {
    for (std::size_t r = 1; r <= 5; ++r) {
        const std::size_t n = 5;
        CHECK(OperationAnsatz{AnsatzClass::strict_1q(r), n}.param_count() == 3 * r);
        CHECK(OperationAnsatz{AnsatzClass::transversal_1q(r), n}.param_count() == 3 * n * r);
        CHECK(OperationAnsatz{AnsatzClass::non_transversal_1q(2, 7, r), n}.param_count() ==
              3 * n * r + 6);
        CHECK(OperationAnsatz{AnsatzClass::strict_ctrl_2q(r), n}.param_count() == 3 * r);
        CHECK(OperationAnsatz{AnsatzClass::transversal_ctrl_2q(r), n}.param_count() == 3 * n * r);
        CHECK(OperationAnsatz{AnsatzClass::weak_transversal_2q(r), n}.param_count() == 24 * n * r);
        // Built circuits match the declared layout for every class.
        for (auto cls : {AnsatzClass::strict_1q(r), AnsatzClass::transversal_1q(r),
                         AnsatzClass::non_transversal_1q(2, 7, r), AnsatzClass::strict_ctrl_2q(r),
                         AnsatzClass::transversal_ctrl_2q(r), AnsatzClass::weak_transversal_2q(r)}) {
            const OperationAnsatz a{cls, n};
            CHECK(a.build().param_count() == a.param_count());
        }
    }
}

TEST_CASE("strict ansatz at (pi,0,pi) builds X on every qubit") {
    const OperationAnsatz a{AnsatzClass::strict_1q(1), 3};
    const std::vector<double> psi = {std::numbers::pi, 0.0, std::numbers::pi};
    const Circuit c = a.build();
    StateVector out = c.apply(StateVector(3), psi);
    CHECK(fidelity_pure(out, StateVector::basis(3, 7)) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("transversal circuits contain no entangling gates and factor as products") {
    const OperationAnsatz a{AnsatzClass::transversal_1q(2), 4};
    const Circuit c = a.build();
    CHECK(c.gates().size() == 2 * 4);
    for (const auto& g : c.gates()) CHECK(!g.is_two_qubit());

    Rng rng(9);
    const auto psi = random_params(a.param_count(), rng);
    const auto u = c.unitary(psi);

    // Kronecker product of the per-qubit factors (layer 2 after layer 1).
    std::vector<Mat2> factors(4);
    for (std::size_t q = 0; q < 4; ++q) {
        const Mat2 l0 = u3_matrix(psi[3 * q], psi[3 * q + 1], psi[3 * q + 2]);
        const Mat2 l1 = u3_matrix(psi[3 * (4 + q)], psi[3 * (4 + q) + 1], psi[3 * (4 + q) + 2]);
        factors[q] = mat2_mul(l1, l0);
    }
    const std::size_t dim = 16;
    for (std::size_t row = 0; row < dim; ++row) {
        for (std::size_t col = 0; col < dim; ++col) {
            cplx expect{1.0, 0.0};
            for (std::size_t q = 0; q < 4; ++q) {
                expect *= factors[q][((row >> q) & 1) * 2 + ((col >> q) & 1)];
            }
            CHECK(std::abs(u[row * dim + col] - expect) < 1e-10);
        }
    }
}

TEST_CASE("weak transversal with zero parameters reduces to CZ") {
    const OperationAnsatz a{AnsatzClass::weak_transversal_2q(1), 1};
    const std::vector<double> zeros(24, 0.0);
    const auto u = a.build().unitary(zeros);
    const Mat4 cz = named_gate_matrix_2q(NamedGate::CZ);
    for (std::size_t i = 0; i < 16; ++i) CHECK(std::abs(u[i] - cz[i]) < 1e-12);
}

TEST_CASE("violation placement") {
    CHECK(place_violations(5, 0, 3).empty());
    const auto a = place_violations(5, 3, 17);
    const auto b = place_violations(5, 3, 17);
    CHECK(a == b);
    CHECK(a.size() == 3);
    for (const auto& [c, t] : a) {
        CHECK(c < 5);
        CHECK(t < 5);
        CHECK(c != t);
    }
    const auto one = place_violations(5, 1, 11);
    CHECK(one.size() == 1);
    CHECK_THROWS(place_violations(3, 7, 0));

    const OperationAnsatz nt{AnsatzClass::non_transversal_1q(2, 5, 1), 4};
    std::size_t two_qubit_gates = 0;
    for (const auto& g : nt.build().gates()) two_qubit_gates += g.is_two_qubit() ? 1 : 0;
    CHECK(two_qubit_gates == 2);
}

TEST_CASE("zyz extraction round trip on Haar-random unitaries") {
    Rng rng(123);
    for (int trial = 0; trial < 1000; ++trial) {
        // Haar SU(2) via a random unit quaternion, times a random global phase.
        double q[4];
        double norm = 0.0;
        for (auto& v : q) {
            v = rng.gaussian();
            norm += v * v;
        }
        norm = std::sqrt(norm);
        for (auto& v : q) v /= norm;
        Mat2 m = {cplx{q[0], q[1]}, cplx{-q[2], q[3]}, cplx{q[2], q[3]}, cplx{q[0], -q[1]}};
        const cplx phase = std::polar(1.0, rng.uniform_angle());
        for (auto& e : m) e *= phase;

        const auto [theta, phi, lambda] = u3_angles_from_unitary(m);
        CHECK(theta >= -1e-12);
        CHECK(theta <= std::numbers::pi + 1e-12);
        const Mat2 rebuilt = u3_matrix(theta, phi, lambda);
        // Compare up to global phase via |tr(m† rebuilt)| = 2.
        cplx tr{0.0, 0.0};
        for (std::size_t r = 0; r < 2; ++r)
            for (std::size_t c = 0; c < 2; ++c)
                tr += std::conj(m[c * 2 + r]) * rebuilt[c * 2 + r];
        CHECK(std::abs(tr) == doctest::Approx(2.0).epsilon(1e-10));
    }
}

TEST_CASE("zyz branch handling at the poles") {
    const auto diag = u3_angles_from_unitary(named_gate_matrix_1q(NamedGate::S));
    CHECK(diag[0] == doctest::Approx(0.0));
    CHECK(diag[2] == doctest::Approx(0.0));
    const auto anti = u3_angles_from_unitary(named_gate_matrix_1q(NamedGate::Y));
    CHECK(anti[0] == doctest::Approx(std::numbers::pi));
    CHECK(anti[2] == doctest::Approx(0.0));
}

TEST_CASE("condense folds repeated layers exactly for single-qubit classes") {
    Rng rng(55);
    for (std::size_t r = 2; r <= 5; ++r) {
        for (auto cls : {AnsatzClass::strict_1q(r), AnsatzClass::transversal_1q(r)}) {
            const OperationAnsatz a{cls, 3};
            const auto psi = random_params(a.param_count(), rng);
            const auto folded = condense(a, psi);
            CHECK(folded.ansatz.cls.repetitions == 1);
            CHECK(folded.params.size() == folded.ansatz.param_count());
            const auto u_full = a.build().unitary(psi);
            const auto u_cond = folded.ansatz.build().unitary(folded.params);
            CHECK(phase_distance(u_full, u_cond, 8) < 1e-10);
        }
    }

    // r = 1 and trailing identity layers reproduce the same unitary.
    const OperationAnsatz one{AnsatzClass::transversal_1q(1), 2};
    Rng rng2(66);
    const auto psi1 = random_params(one.param_count(), rng2);
    const auto same = condense(one, psi1);
    CHECK(phase_distance(one.build().unitary(psi1), same.ansatz.build().unitary(same.params), 4) <
          1e-10);

    const OperationAnsatz two{AnsatzClass::transversal_1q(2), 2};
    std::vector<double> psi2 = psi1;
    psi2.resize(two.param_count(), 0.0);
    const auto folded2 = condense(two, psi2);
    CHECK(phase_distance(one.build().unitary(psi1), folded2.ansatz.build().unitary(folded2.params),
                         4) < 1e-10);
}

TEST_CASE("condense on controlled chains preserves the controlled block up to phase") {
    Rng rng(77);
    const OperationAnsatz a{AnsatzClass::transversal_ctrl_2q(3), 2};
    const auto psi = random_params(a.param_count(), rng);
    const auto folded = condense(a, psi);
    for (std::size_t pair = 0; pair < 2; ++pair) {
        Mat2 product = mat2_identity();
        for (std::size_t rep = 0; rep < 3; ++rep) {
            const std::size_t slot = 3 * (rep * 2 + pair);
            product = mat2_mul(u3_matrix(psi[slot], psi[slot + 1], psi[slot + 2]), product);
        }
        const Mat2 folded_v = u3_matrix(folded.params[3 * pair], folded.params[3 * pair + 1],
                                        folded.params[3 * pair + 2]);
        cplx tr{0.0, 0.0};
        for (std::size_t r = 0; r < 2; ++r)
            for (std::size_t c = 0; c < 2; ++c)
                tr += std::conj(product[c * 2 + r]) * folded_v[c * 2 + r];
        CHECK(std::abs(tr) == doctest::Approx(2.0).epsilon(1e-10));
    }

    CHECK_THROWS(condense(OperationAnsatz{AnsatzClass::weak_transversal_2q(2), 2},
                          std::vector<double>(96, 0.0)));
}
