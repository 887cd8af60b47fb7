import numpy as np
import pytest

from localsym import (
    LocalOperatorChain,
    PureState,
    apply_chain,
    fidelity,
    pmax,
    build_protocol,
    simulate_protocol,
    deterministic_convertible,
    find_connector,
    make_ghz,
    make_ln,
    sample_chain,
    sample_haar_state,
)

from conftest import kron_all


def diag_chain_l5():
    factors = np.broadcast_to(np.eye(2, dtype=complex), (5, 2, 2)).copy()
    factors[0] = np.diag([2.0, 0.5])
    return LocalOperatorChain(factors, "G")


def test_pmax_l5_value():
    plan = pmax(make_ln(5), diag_chain_l5())
    assert abs(plan.p_max - 17 / 32) < 1e-12
    assert abs(plan.target.norm() - 1.0) < 1e-12


def test_pmax_dense_eigen_oracle():
    psi = sample_haar_state(4, 0)
    chain = sample_chain(4, "G", 1)
    plan = pmax(psi, chain)
    dense = kron_all(plan.connector.factors)
    lam_dense = np.linalg.eigvalsh(dense.conj().T @ dense)[-1]
    assert abs(np.prod(plan.per_party_lambda) - lam_dense) < 1e-10 * lam_dense


def test_pmax_scalar_invariance():
    psi = make_ln(5)
    base = pmax(psi, diag_chain_l5())
    scaled = LocalOperatorChain(diag_chain_l5().factors, "G", scalar=3.0 - 4.0j)
    again = pmax(psi, scaled)
    assert abs(base.p_max - again.p_max) < 1e-14


def test_pmax_optimality_statuses():
    psi = make_ln(5)
    chain = diag_chain_l5()
    assert pmax(psi, chain).optimality == "unknown"
    assert pmax(psi, chain, trivial_stabilizer=True).optimality == "exact_optimum"
    assert pmax(psi, chain, trivial_stabilizer=False).optimality == "lower_bound"


def test_pmax_unitary_chain_gives_one():
    psi = sample_haar_state(4, 2)
    u = sample_chain(4, "K", 3)
    assert abs(pmax(psi, u).p_max - 1.0) < 1e-12


def test_pmax_rejects_unnormalized_state():
    with pytest.raises(ValueError):
        pmax(make_ghz(3, normalized=False), sample_chain(3, "G", 0))


def test_singular_factor_rejected_at_chain_construction():
    factors = np.broadcast_to(np.eye(2, dtype=complex), (3, 2, 2)).copy()
    factors[1] = np.array([[1.0, 0.0], [0.0, 0.0]])
    with pytest.raises(ValueError):
        LocalOperatorChain(factors, "Gt")


def test_protocol_measurement_completeness():
    plan = build_protocol(make_ln(5), diag_chain_l5())
    for n0, n1 in plan.measurements:
        residual = np.linalg.norm(n0.conj().T @ n0 + n1.conj().T @ n1 - np.eye(2))
        assert residual < 1e-12


def test_protocol_zero_trials():
    psi = make_ln(5)
    plan = build_protocol(psi, diag_chain_l5())
    stats = simulate_protocol(plan, psi, trials=0)
    assert stats.trials == 0 and stats.empirical_p is None


def test_protocol_simulation_statistics():
    psi = make_ln(5)
    plan = build_protocol(psi, diag_chain_l5())
    trials = 20_000
    stats = simulate_protocol(plan, psi, trials=trials, seed=4)
    se = np.sqrt(plan.p_max * (1 - plan.p_max) / trials)
    assert abs(stats.empirical_p - plan.p_max) < 4 * se
    assert stats.mean_success_fidelity > 1 - 1e-9


def test_simulation_deterministic():
    psi = make_ln(5)
    plan = build_protocol(psi, diag_chain_l5())
    a = simulate_protocol(plan, psi, 1000, seed=5)
    b = simulate_protocol(plan, psi, 1000, seed=5)
    assert a.successes == b.successes


def test_simulation_requires_measurements():
    psi = make_ln(5)
    plan = pmax(psi, diag_chain_l5())
    with pytest.raises(ValueError):
        simulate_protocol(plan, psi, 10)


def test_deterministic_convertible():
    psi = sample_haar_state(4, 6)
    ok, why = deterministic_convertible(psi, sample_chain(4, "K", 7))
    assert ok and "unitary" in why
    bad_factors = np.broadcast_to(np.eye(2, dtype=complex), (4, 2, 2)).copy()
    bad_factors[0] = np.diag([2.0, 0.5])
    no, why = deterministic_convertible(psi, LocalOperatorChain(bad_factors, "G"))
    assert not no and "p_max" in why


def test_find_connector_roundtrip():
    psi = sample_haar_state(4, 8)
    g_true = sample_chain(4, "G", 9)
    phi = apply_chain(g_true, psi).normalized()
    g = find_connector(psi, phi, restarts=8, seed=0)
    assert g is not None
    out = apply_chain(g, psi)
    assert fidelity(out, phi) > 1 - 1e-8
    assert abs(out.norm() - 1.0) < 1e-8


def test_find_connector_inequivalent_states():
    psi = make_ghz(4)
    phi = sample_haar_state(4, 10)
    assert find_connector(psi, phi, restarts=8, seed=0) is None


def test_find_connector_rejects_null_cone_input():
    from localsym import make_w
    with pytest.raises(ValueError):
        find_connector(make_w(3), make_ghz(3))
