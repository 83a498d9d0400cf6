"""End-to-end smoke tests for the python bindings."""

import math

import pytest

import qecco


def test_registry_and_encoding():
    names = {c["name"] for c in qecco.list_codes() if c["available"]}
    assert {"3_1_1", "5_1_3", "7_1_3", "15_1_3"} <= names

    code = qecco.make_code("bitflip")
    assert code.n == 3

    zero = qecco.StateVector.basis(1, 0)
    encoded = qecco.encode(code, zero)
    ghz0 = qecco.StateVector.basis(3, 0)
    assert qecco.fidelity_pure(encoded, ghz0) == pytest.approx(1.0, abs=1e-12)

    bell = qecco.StateVector(2, [1 / math.sqrt(2), 0, 0, 1 / math.sqrt(2)])
    two = qecco.encode_two_block(code, bell)
    assert two.num_qubits == 6
    amps = two.amplitudes
    assert abs(amps[0]) == pytest.approx(1 / math.sqrt(2), abs=1e-12)
    assert abs(amps[63]) == pytest.approx(1 / math.sqrt(2), abs=1e-12)


def test_operation_loss_exact_gadget():
    loss = qecco.OperationLoss("3_1_1", "X", ansatz="strict", pairs="block")
    psi = [math.pi, 0.0, math.pi]  # U3(pi, 0, pi) = X on every qubit
    assert loss.avg_loss(psi) < 1e-12
    assert loss.worst_diag(psi) < 1e-12

    gram = loss.gram_target()
    labels = loss.state_labels()
    assert labels == ["0", "1", "+", "-", "+i", "-i"]
    assert gram[0] == pytest.approx(1.0)        # (0, 0)
    assert gram[1] == pytest.approx(0.0)        # (0, 1) orthogonal
    assert gram[2] == pytest.approx(0.5)        # (0, +)


def test_train_operation_finds_logical_z():
    run = qecco.train_operation("3_1_1", "Z", ansatz="transversal", pairs="block", seed=7)
    assert run["success"]
    assert run["worst_diag"] <= 1e-5
    assert len(run["trace_worst_diag"]) == 50


def test_gradient_matches_finite_differences():
    loss = qecco.OperationLoss("4_1_2", "S", ansatz="transversal", repetitions=2)
    psi = [0.1 * (i + 1) for i in range(loss.param_count)]
    grad = loss.gradient(psi)
    h = 1e-6
    for i in range(0, loss.param_count, 5):
        up = list(psi)
        down = list(psi)
        up[i] += h
        down[i] -= h
        fd = (loss.avg_loss(up) - loss.avg_loss(down)) / (2 * h)
        assert grad[i] == pytest.approx(fd, abs=1e-6)


def test_distinguishability_pipeline():
    adep = qecco.PauliChannel.asymmetric_depolarizing()
    bare = qecco.make_code("bare")
    plus = qecco.StateVector(1, [1 / math.sqrt(2), 1 / math.sqrt(2)])
    minus = qecco.StateVector(1, [1 / math.sqrt(2), -1 / math.sqrt(2)])
    assert qecco.lost_trace_distance("bare", adep, plus, minus) == pytest.approx(0.186, abs=1e-9)

    worst = qecco.worst_distinguishability(bare, [], adep)
    assert worst["value"] == pytest.approx(0.186, abs=1e-3)


def test_varqec_training_improves_bitflip_code():
    noise = qecco.PauliChannel.bitflip(0.1)
    run = qecco.train_varqec(n=3, layers=3, rea_seed=5, noise=noise, seed=2)
    assert run["dbar_down"] > 1.5
