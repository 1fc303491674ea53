"""Fock-space and statevector oracles."""

import itertools

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hybridmap.errors import DimensionError
from hybridmap.lattice import LatticeSpec
from hybridmap.mappings import make_encoder
from hybridmap.pauli import PauliOperator, PauliString
from hybridmap.verify import (
    EquivalenceReport,
    FockState,
    StateVector,
    car_suite,
    check_encoding_equivalence,
    decode_basis_index,
    degenerate_suite,
    encode_basis_index,
    fock_apply_hopping,
    fock_apply_ladder,
    fock_apply_word,
    pauli_apply,
    stabilizer_suite,
)


def bits(*occ):
    return FockState.from_bits(occ).occupations


def test_ladder_examples():
    assert fock_apply_ladder(bits(1, 0), 0, False) == (1, bits(0, 0))
    assert fock_apply_ladder(bits(1, 1, 1), 2, False) == (1, bits(1, 1, 0))
    assert fock_apply_ladder(bits(1, 0, 1), 2, False) == (-1, bits(1, 0, 0))
    assert fock_apply_ladder(bits(0, 1), 1, True) is None
    assert fock_apply_ladder(bits(0, 0), 0, False) is None


def test_fock_state_round_trip():
    s = FockState.from_bits([1, 0, 1, 1])
    assert s.bits() == [1, 0, 1, 1] and s.n_modes == 4


def ladder_matrix(p, M, dagger):
    dim = 1 << M
    out = np.zeros((dim, dim))
    for f in range(dim):
        r = fock_apply_ladder(f, p, dagger)
        if r:
            out[r[1], f] = r[0]
    return out


@pytest.mark.parametrize("M", [1, 3, 6, 10])
def test_fock_car(M):
    a = [ladder_matrix(p, M, False) for p in range(M)]
    ad = [ladder_matrix(p, M, True) for p in range(M)]
    eye = np.eye(1 << M)
    pairs = itertools.product(range(M), repeat=2) if M <= 6 else [(0, 0), (0, 9), (4, 7), (9, 9)]
    for i, j in pairs:
        assert np.array_equal(a[i] @ ad[j] + ad[j] @ a[i], eye * (i == j))
        assert not (a[i] @ a[j] + a[j] @ a[i]).any()
    np.testing.assert_array_equal(ad[-1], a[-1].T)


def test_word_and_hopping():
    # a_0^dag a_1 on |0,1>
    assert fock_apply_word(bits(0, 1), [(0, True), (1, False)]) == (1, bits(1, 0))
    assert fock_apply_word(bits(0, 1), [(1, False), (0, True)]) == (-1, bits(1, 0))
    assert fock_apply_hopping(bits(0, 1), 0, 1) == {bits(1, 0): 1}
    assert fock_apply_hopping(bits(1, 1), 0, 1) == {}
    assert fock_apply_hopping(bits(1, 1, 0), 0, 2) == {bits(0, 1, 1): -1}


# statevector --------------------------------------------------------------


def test_pauli_apply_examples():
    v = StateVector.basis(2, 0b10)
    assert pauli_apply(PauliOperator.identity(2), v).allclose(v)
    x0 = PauliOperator.from_string(PauliString.from_text("X0", 1))
    assert pauli_apply(x0, StateVector.basis(1, 0)).allclose(StateVector.basis(1, 1))
    hop = PauliOperator.from_strings(
        2, [(0.5, PauliString.from_text("X0 X1", 2)), (0.5, PauliString.from_text("Y0 Y1", 2))]
    )
    # |01> with qubit 1 set is index 2; the hop moves it to index 1
    assert pauli_apply(hop, StateVector.basis(2, 2)).allclose(StateVector.basis(2, 1))


@st.composite
def small_ops(draw):
    n = draw(st.integers(1, 4))
    labels = draw(st.lists(st.text("IXYZ", min_size=n, max_size=n), min_size=1, max_size=4))
    coeffs = draw(st.lists(st.complex_numbers(max_magnitude=2, allow_nan=False, allow_infinity=False),
                           min_size=len(labels), max_size=len(labels)))
    k = draw(st.integers(0, 3))
    return PauliOperator.from_strings(
        n, [(c, PauliString.from_label(l, phase_exp=k)) for c, l in zip(coeffs, labels)]
    )


@given(small_ops(), st.integers(0, 2**32 - 1))
@settings(max_examples=150, deadline=None)
def test_pauli_apply_matches_dense(op, seed):
    rng = np.random.default_rng(seed)
    n = op.n_qubits
    amps = rng.normal(size=1 << n) + 1j * rng.normal(size=1 << n)
    got = pauli_apply(op, StateVector(n, amps.copy())).amplitudes
    np.testing.assert_allclose(got, op.to_matrix() @ amps, atol=1e-10)


@given(st.text("IXYZ", min_size=1, max_size=5), st.integers(0, 2**32 - 1))
@settings(max_examples=60, deadline=None)
def test_pauli_apply_preserves_norm(label, seed):
    rng = np.random.default_rng(seed)
    n = len(label)
    v = StateVector(n, rng.normal(size=1 << n) + 0j)
    w = pauli_apply(PauliString.from_label(label), v)
    assert abs(w.norm - v.norm) < 1e-12


def test_statevector_limits():
    with pytest.raises(DimensionError):
        StateVector(23)
    with pytest.raises(DimensionError):
        pauli_apply(PauliOperator.identity(3), StateVector.basis(2, 0))


def test_basis_encoding_round_trip():
    enc = make_encoder("hybrid", 4, 2)
    for f in range(0, 1 << 16, 97):
        assert decode_basis_index(enc, encode_basis_index(enc, f)) == f
    jw = make_encoder("jw", 2)
    assert all(encode_basis_index(jw, f) == f for f in range(16))


# equivalence ---------------------------------------------------------------


def test_jw_exhaustive():
    report = check_encoding_equivalence("jw", LatticeSpec(2))
    assert report.passed
    assert report.edges_checked == 4 and report.states_checked == 64


@pytest.mark.parametrize("kind, N, n", [("bk", 4, None), ("hybrid", 4, 2), ("hybrid", 4, 1)])
def test_sampled_equivalence(kind, N, n):
    report = check_encoding_equivalence(kind, LatticeSpec(N, n or 1), states_per_edge=20, seed=3)
    assert report.passed, report.failures[:2]
    assert report.states_checked == 20 * 24


def test_hybridplus_small_equivalence():
    report = check_encoding_equivalence("hybridplus", LatticeSpec(2, 1))
    assert report.passed
    assert report.stabilizer_checks == 4 * 16 * 4


def test_hybridplus_twenty_qubits_sample():
    report = check_encoding_equivalence(
        "hybridplus", LatticeSpec(4, 2), edges=[(1, 8), (5, 12)], states_per_edge=2, seed=1
    )
    assert report.passed


def test_mismatch_is_reported(monkeypatch):
    enc = make_encoder("jw", 2)
    wrong = PauliOperator.from_string(PauliString.from_text("X0 X1", 4), 0.5)
    monkeypatch.setattr(type(enc), "hopping", lambda self, i, j: wrong)
    report = check_encoding_equivalence("jw", LatticeSpec(2), edges=[(0, 1)])
    assert not report.passed
    fail = report.failures[0]
    assert {"edge", "state", "expected", "got"} <= fail.keys()
    assert '"passed": false' in report.to_json()


def test_equivalence_limits():
    with pytest.raises(DimensionError):
        check_encoding_equivalence("jw", LatticeSpec(5), states_per_edge=1)


def test_report_serialisation():
    r = EquivalenceReport("jw", {"N": 2})
    assert r.to_dict()["passed"] is True


# suites ----------------------------------------------------------------------


@pytest.mark.parametrize("kind, N, n", [("jw", 4, None), ("bk", 4, None), ("hybrid", 4, 1),
                                         ("hybrid", 4, 2), ("hybrid", 2, 2)])
def test_car_suite(kind, N, n):
    result = car_suite(make_encoder(kind, N, n))
    assert result["passed"] and result["checked"] == 2 * N**4


def test_degenerate_suite():
    assert degenerate_suite(4)["passed"]


def test_stabilizer_suite():
    assert stabilizer_suite(make_encoder("hybridplus", 4, 2))["passed"]
