"""Pauli strings and operators against dense-matrix oracles."""

import itertools

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hybridmap.errors import DimensionError
from hybridmap.pauli import (
    PauliOperator,
    PauliString,
    commutes,
    max_weight,
    multiply,
    op_add,
    op_multiply,
    sigma_minus,
    sigma_plus,
    support,
)

I2 = np.eye(2)
X = np.array([[0, 1], [1, 0]], dtype=complex)
Y = np.array([[0, -1j], [1j, 0]])
Z = np.diag([1.0, -1.0]).astype(complex)
MATS = {"I": I2, "X": X, "Y": Y, "Z": Z}


def dense(label: str, phase=1) -> np.ndarray:
    """Oracle: kron over qubits, qubit 0 is the least significant factor."""
    out = np.ones((1, 1), dtype=complex)
    for ch in reversed(label):
        out = np.kron(out, MATS[ch])
    return phase * out


@st.composite
def strings(draw, n=None):
    n = draw(st.integers(1, 6)) if n is None else n
    label = draw(st.text("IXYZ", min_size=n, max_size=n))
    k = draw(st.integers(0, 3))
    return PauliString.from_label(label, phase_exp=k)


@st.composite
def string_pairs(draw):
    n = draw(st.integers(1, 6))
    return draw(strings(n)), draw(strings(n))


def test_letters_and_bits():
    p = PauliString.from_label("IXYZ")
    assert [p.letter(q) for q in range(4)] == list("IXYZ")
    assert list(p.x_bits) == [0, 1, 1, 0]
    assert list(p.z_bits) == [0, 0, 1, 1]
    assert p.support() == (1, 2, 3)
    assert p.weight == 3


def test_x_times_z_is_minus_iy():
    xz = multiply(PauliString.from_label("X"), PauliString.from_label("Z"))
    assert xz.to_text() == "Y0"
    assert xz.phase == -1j


def test_involution():
    zz = PauliString.from_label("ZZ")
    assert multiply(zz, zz) == PauliString.identity(2)


def test_three_qubit_product():
    # X0 Y1 times Y0 Y2 = i Z0 Y1 Y2, by 8x8 matrices
    a = PauliString.from_text("X0 Y1", 3)
    b = PauliString.from_text("Y0 Y2", 3)
    c = a * b
    assert c.to_text() == "Z0 Y1 Y2"
    assert c.phase == 1j
    np.testing.assert_allclose(c.to_matrix(), a.to_matrix() @ b.to_matrix())


@pytest.mark.parametrize(
    "a, b, expected",
    [("X", "Z", False), ("XX", "ZZ", True), ("ZZZ", "IXY", True), ("XYZ", "YYI", False)],
)
def test_commutes_examples(a, b, expected):
    pa, pb = PauliString.from_label(a), PauliString.from_label(b)
    assert commutes(pa, pb) is expected
    comm = pa.to_matrix() @ pb.to_matrix() - pb.to_matrix() @ pa.to_matrix()
    assert np.allclose(comm, 0) is expected


def test_commutes_exhaustive_two_qubits():
    labels = ["".join(t) for t in itertools.product("IXYZ", repeat=2)]
    for a, b in itertools.product(labels, repeat=2):
        pa, pb = PauliString.from_label(a), PauliString.from_label(b)
        comm = dense(a) @ dense(b) - dense(b) @ dense(a)
        assert commutes(pa, pb) == np.allclose(comm, 0), (a, b)


@given(string_pairs())
@settings(max_examples=200, deadline=None)
def test_product_matches_matrices(pair):
    a, b = pair
    np.testing.assert_allclose((a * b).to_matrix(), a.to_matrix() @ b.to_matrix(), atol=1e-12)


@given(string_pairs())
@settings(max_examples=200, deadline=None)
def test_commutes_matches_matrices(pair):
    a, b = pair
    ma, mb = a.to_matrix(), b.to_matrix()
    assert commutes(a, b) == np.allclose(ma @ mb, mb @ ma)


@given(string_pairs())
def test_weight_subadditive(pair):
    a, b = pair
    assert (a * b).weight <= a.weight + b.weight


def test_matrix_convention_matches_oracle():
    for label in ("XI", "IY", "ZXY", "YYZI"):
        np.testing.assert_allclose(PauliString.from_label(label).to_matrix(), dense(label))


def test_dimension_mismatch():
    with pytest.raises(DimensionError):
        multiply(PauliString.identity(2), PauliString.identity(3))
    with pytest.raises(DimensionError):
        commutes(PauliString.identity(2), PauliString.identity(3))
    with pytest.raises(DimensionError):
        op_add(PauliOperator.identity(1), PauliOperator.identity(2))


def test_text_round_trip():
    p = PauliString.from_text("X0 Z1 X2", 4)
    assert p.to_text() == "X0 Z1 X2"
    assert PauliString.identity(3).to_text() == "I"
    assert str(-p) == "-X0 Z1 X2"


# operators ---------------------------------------------------------------


def test_sigma_product_is_projector():
    op = op_multiply(sigma_minus(0, 1), sigma_plus(0, 1))
    expected = PauliOperator.from_strings(
        1, [(0.5, PauliString.identity(1)), (0.5, PauliString.from_label("Z"))]
    )
    assert op.allclose(expected)
    np.testing.assert_allclose(op.to_matrix(), np.diag([1, 0]))


def test_sigma_minus_is_lowering():
    np.testing.assert_allclose(sigma_minus(0, 1).to_matrix(), [[0, 1], [0, 0]])


def test_x_plus_y_times_x_minus_y():
    x = PauliOperator.from_string(PauliString.from_label("X"))
    y = PauliOperator.from_string(PauliString.from_label("Y"))
    prod = (x + y) * (x - y)
    np.testing.assert_allclose(prod.to_matrix(), (X + Y) @ (X - Y))
    # XX - XY + YX - YY = -2 XY = -2i Z
    assert prod.allclose(PauliOperator.from_string(PauliString.from_label("Z"), -2j))


def test_support_and_max_weight():
    op = PauliOperator.from_strings(
        3,
        [(0.5, PauliString.from_text("X0 Z1 X2", 3)), (0.5, PauliString.from_text("Y0 Z1 Y2", 3))],
    )
    assert support(op) == {0, 1, 2}
    assert max_weight(op) == 3


def test_like_terms_merge_and_cancel():
    p = PauliString.from_label("XZ")
    op = PauliOperator.from_strings(2, [(0.5, p), (0.25, p), (-0.75, p)])
    assert op.is_zero()
    assert op.to_text() == "0 I"
    op = PauliOperator.from_strings(2, [(1, p), (1, -p), (2, PauliString.identity(2))])
    assert op.to_text() == "2 I"


def test_relative_pruning():
    p, q = PauliString.from_label("X"), PauliString.from_label("Z")
    op = PauliOperator.from_strings(1, [(1.0, p), (1e-14, q)])
    assert len(op) == 1
    tiny = PauliOperator.from_strings(1, [(1e-14, q)])
    assert len(tiny) == 1


def test_phase_folded_into_coefficient():
    p = PauliString.from_label("Y", phase_exp=1)
    op = PauliOperator.from_string(p)
    ((c, ps),) = list(op)
    assert c == 1j and ps.phase_exp == 0


@st.composite
def operators(draw, n):
    terms = draw(st.lists(strings(n), min_size=1, max_size=4))
    coeffs = draw(
        st.lists(st.sampled_from([0.5, -0.5, 1, 0.5j, -1j, 0.25]), min_size=len(terms), max_size=len(terms))
    )
    return PauliOperator.from_strings(n, zip(coeffs, terms))


@given(st.data())
@settings(max_examples=60, deadline=None)
def test_operator_algebra(data):
    n = data.draw(st.integers(1, 3))
    a, b, c = (data.draw(operators(n)) for _ in range(3))
    assert ((a * b) * c).allclose(a * (b * c))
    assert (a * (b + c)).allclose(a * b + a * c)
    np.testing.assert_allclose((a * b).to_matrix(), a.to_matrix() @ b.to_matrix(), atol=1e-12)
    np.testing.assert_allclose(a.adjoint().to_matrix(), a.to_matrix().conj().T, atol=1e-12)
