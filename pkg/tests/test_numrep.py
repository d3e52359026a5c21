import numpy as np
import pytest

from kappadouble import numrep
from kappadouble.numrep import (MatrixOperator, NegativeVariance, StateVector, TruncationEdge,
                                build_canonical_pair, build_deformed_operators, check_uncertainty_suite,
                                coherent_state, commutator_expectation, dispersion, embed,
                                kappa_bounds, random_states, rows_to_csv, symbolic_agreement, vacuum)


@pytest.fixture(scope="module")
def ops1():
    return build_deformed_operators(1.0)


@pytest.fixture(scope="module")
def states():
    return random_states(20, seed=4)


def test_two_level_commutator():
    x, p = build_canonical_pair(2)
    comm = x.commutator(p).entries
    assert np.allclose(comm, np.diag([1j, -1j]), atol=1e-14)


def test_commutator_deviation_only_at_top():
    x, p = build_canonical_pair(40)
    dev = x.commutator(p).entries - 1j * np.eye(40)
    dev[39, 39] = 0
    assert np.max(np.abs(dev)) < 1e-12


def test_vacuum_saturates():
    x, p = build_canonical_pair(40)
    v = vacuum(40)
    assert dispersion(x, v) == pytest.approx(np.sqrt(0.5), abs=1e-12)
    assert dispersion(x, v) * dispersion(p, v) == pytest.approx(0.5, abs=1e-12)


def test_coherent_state_dispersion():
    x, _ = build_canonical_pair(40)
    assert dispersion(x, coherent_state(1.0, 40)) == pytest.approx(np.sqrt(0.5), abs=1e-10)


def test_eigenvector_has_zero_dispersion():
    n = MatrixOperator(np.diag(np.arange(6, dtype=complex)), "n", hermitian=True)
    amps = np.zeros(6, dtype=complex)
    amps[3] = 1
    assert dispersion(n, StateVector(amps)) < 1e-10


def test_negative_variance_flags_non_hermitian():
    # anti-Hermitian: a^2 = -1, so <a^2> - <a>^2 = -1 on (1, 0)
    a = MatrixOperator(np.array([[0, 1], [-1, 0]], dtype=complex), "a")
    psi = StateVector(np.array([1, 0], dtype=complex))
    with pytest.raises(NegativeVariance):
        dispersion(a, psi)


def test_hermitian_flag_is_checked():
    with pytest.raises(ValueError):
        MatrixOperator(np.array([[0, 1], [0, 0]], dtype=complex), "a", hermitian=True)
    with pytest.raises(ValueError):
        StateVector(np.array([1, 1], dtype=complex))


def test_deformed_operators_hermitian(ops1):
    for op in ops1.ops.values():
        assert op.hermitian
        assert np.max(np.abs(op.entries - op.entries.conj().T)) < 1e-12
    assert ops1.dim == 1600


def test_undeformed_limit():
    ops = build_deformed_operators(1e12)
    assert np.max(np.abs(ops["X0"].entries - ops["xh0"].entries)) < 1e-10


def test_symbolic_agreement(ops1, states):
    ok, err = symbolic_agreement(ops1, states[:5])
    assert ok and err < 1e-6


def test_space_ccr_on_safe_subspace(ops1, states):
    for psi in states[:5]:
        got = commutator_expectation(ops1["X1"], ops1["P1"], psi)
        assert got == pytest.approx(1j, abs=1e-12)


def test_coherent_states_families():
    n = 40
    amps = np.kron(coherent_state(0.6, n).amplitudes, coherent_state(0.8 + 0.3j, n).amplitudes)
    psi = StateVector(amps, (0.36, 0.73), "coh")
    report, rows = check_uncertainty_suite(1.0, [psi])
    assert report.passed
    assert all(r.margin >= -1e-10 for r in rows)


def test_suite_on_random_states(states):
    for kh in (0.5, 10.0):
        report, rows = check_uncertainty_suite(kh, states)
        assert report.passed
        assert report.details["rows"] == len(rows) == 20 * 4 * 2


def test_limit_bounds(states):
    _, rows = check_uncertainty_suite(1e12, states)
    assert kappa_bounds(rows) < 1e-10


def test_truncation_edge():
    psi = coherent_state(3.0, 40)
    both = StateVector(np.kron(psi.amplitudes, vacuum(40).amplitudes), (9.0, 0.0), "hot")
    with pytest.raises(TruncationEdge):
        check_uncertainty_suite(1.0, [both])


def test_embed_shape_and_csv(states):
    x, _ = build_canonical_pair(3)
    assert embed(x.entries, 1, 2, 3).shape == (9, 9)
    _, rows = check_uncertainty_suite(1.0, states[:1])
    text = rows_to_csv(rows)
    assert text.splitlines()[0] == "state,pair,kind,lhs,rhs,margin"
    assert len(text.splitlines()) == 1 + len(rows)


def test_random_states_deterministic():
    a = random_states(3, seed=9)
    b = random_states(3, seed=9)
    assert all(np.array_equal(u.amplitudes, v.amplitudes) for u, v in zip(a, b))
    assert all(max(s.mean_occupation) <= 40 / 8 for s in a)
    assert numrep.MARGIN_TOL == -1e-10
