"""Encoders checked against dense matrices and a Fock-space oracle."""

import itertools

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hybridmap.bench import intermediate_roots
from hybridmap.errors import ConfigurationError, UnsupportedOperatorError
from hybridmap.fenwick import encode_occupations
from hybridmap.lattice import LatticeSpec, build_layout, lattice_edges
from hybridmap.mappings import (
    Encoder,
    canonical_spec,
    dump_operators,
    encode_hopping,
    encode_ladder,
    encode_lattice_hamiltonian,
    make_encoder,
)
from hybridmap.pauli import PauliOperator, PauliString

SIGMA_MINUS = np.array([[0, 1], [0, 0]], dtype=complex)
Z = np.diag([1.0, -1.0]).astype(complex)


def jw_dense(i, m):
    """Oracle: Z on modes below ``i``, lowering on ``i``; qubit 0 least significant."""
    out = np.ones((1, 1), dtype=complex)
    for q in reversed(range(m)):
        out = np.kron(out, Z if q < i else SIGMA_MINUS if q == i else np.eye(2))
    return out


def op(n, *terms):
    return PauliOperator.from_strings(n, [(c, PauliString.from_text(t, n)) for c, t in terms])


# ladder ----------------------------------------------------------------


def test_jw_ladder_examples():
    enc = make_encoder("jw", 2)
    assert encode_ladder(0, False, enc).allclose(op(4, (0.5, "X0"), (0.5j, "Y0")))
    assert encode_ladder(2, False, enc).allclose(op(4, (0.5, "Z0 Z1 X2"), (0.5j, "Z0 Z1 Y2")))


@pytest.mark.parametrize("i", range(4))
def test_jw_ladder_matches_dense(i):
    enc = make_encoder("jw", 2)
    np.testing.assert_allclose(enc.ladder(i).to_matrix(), jw_dense(i, 4))
    np.testing.assert_allclose(enc.ladder(i, True).to_matrix(), jw_dense(i, 4).conj().T)


@pytest.mark.parametrize("kind, n", [("jw", None), ("bk", None), ("hybrid", 1), ("hybrid", 2)])
def test_car_dense_four_modes(kind, n):
    enc = make_encoder(kind, 2, n)
    mats = [enc.ladder(i).to_matrix() for i in range(4)]
    eye = np.eye(16)
    for i, j in itertools.product(range(4), repeat=2):
        a, b = mats[i], mats[j]
        np.testing.assert_allclose(a @ b.conj().T + b.conj().T @ a, eye * (i == j), atol=1e-12)
        np.testing.assert_allclose(a @ b + b @ a, 0, atol=1e-12)


def test_hybridplus_has_no_ladder():
    with pytest.raises(UnsupportedOperatorError):
        make_encoder("hybridplus", 4, 2).ladder(0)


def test_mode_range():
    with pytest.raises(IndexError):
        make_encoder("jw", 2).ladder(4)


# hopping ----------------------------------------------------------------


def test_jw_hopping_examples():
    enc = make_encoder("jw", 2)
    assert encode_hopping(0, 2, enc) == op(4, (0.5, "X0 Z1 X2"), (0.5, "Y0 Z1 Y2"))
    assert encode_hopping(0, 1, enc) == op(4, (0.5, "X0 X1"), (0.5, "Y0 Y1"))
    a0, a2 = jw_dense(0, 4), jw_dense(2, 4)
    dense = a0.conj().T @ a2 + a2.conj().T @ a0
    np.testing.assert_allclose(encode_hopping(0, 2, enc).to_matrix(), dense)


def test_fig3_support():
    enc = make_encoder("hybrid", 8, 2)
    h = enc.hopping(6, 27)
    assert sorted(h.support()) == [5, 6, 7, 11, 15, 19, 23, 25, 26, 27]
    assert len(h.support()) == 10


def test_hybrid_mode_sets_example():
    enc = make_encoder("hybrid", 8, 2)
    s = enc.mode_sets(6)
    bits = lambda m: {q for q in range(64) if m >> q & 1}
    assert bits(s.update) == {7}
    assert bits(s.parity) == {5, 3}


def occupation_to_qubits(enc, f):
    """Oracle: per-cell Fenwick encoding of the occupation vector."""
    cs = enc.spec.cell_size
    bits = [(f >> k) & 1 for k in range(enc.layout.n_modes)]
    out = 0
    for c in range(enc.spec.n_cells):
        q = encode_occupations(bits[c * cs:(c + 1) * cs])
        for k, b in enumerate(q):
            out |= int(b) << (c * cs + k)
    return out


def apply_string(ps, coeff, b):
    """Oracle: ``i^k i^(x.z) X^x Z^z`` on the basis state ``b``."""
    sign = (-1) ** bin(ps.z & b).count("1")
    phase = 1j ** (ps.phase_exp + bin(ps.x & ps.z).count("1"))
    return b ^ ps.x, coeff * phase * sign


def hop_fock(f, i, j):
    """Oracle: ``a_i^dag a_j`` on an occupation bitmask in canonical order."""
    if not (f >> j) & 1 or (i != j and (f >> i) & 1):
        return None
    s = bin(f & ((1 << j) - 1)).count("1")
    f ^= 1 << j
    s += bin(f & ((1 << i) - 1)).count("1")
    return f | (1 << i), (-1) ** s


@pytest.mark.parametrize("kind, N, n", [("jw", 3, None), ("bk", 3, None), ("hybrid", 4, 2),
                                         ("hybrid", 4, 1), ("hybrid", 4, 4)])
def test_hopping_against_fock_oracle(kind, N, n):
    enc = make_encoder(kind, N, n)
    M = N * N
    rng = np.random.default_rng(1)
    states = [int(s) for s in rng.integers(0, 1 << M, size=40)]
    for (i, j), h in enc.hamiltonian():
        for f in states:
            want = {}
            for a, b in ((i, j), (j, i)):
                r = hop_fock(f, a, b)
                if r:
                    q = occupation_to_qubits(enc, r[0])
                    want[q] = want.get(q, 0) + r[1]
            got = {}
            b0 = occupation_to_qubits(enc, f)
            for c, ps in h:
                q, amp = apply_string(ps, c, b0)
                got[q] = got.get(q, 0) + amp
            got = {k: v for k, v in got.items() if abs(v) > 1e-12}
            assert got.keys() == want.keys(), (i, j, f)
            for k in got:
                assert abs(got[k] - want[k]) < 1e-12


@pytest.mark.parametrize("kind, N, n", [("jw", 4, None), ("bk", 4, None), ("hybrid", 8, 2),
                                         ("hybrid", 8, 4), ("hybridplus", 4, 2), ("hybridplus", 8, 2)])
def test_hopping_real_and_short(kind, N, n):
    enc = make_encoder(kind, N, n)
    for _, h in enc.hamiltonian():
        assert h.is_real()
        assert len(h) <= 2
        assert all(abs(abs(c) - 0.5) < 1e-12 for c, _ in h)


@pytest.mark.parametrize("N", [2, 4, 8])
def test_degenerate_equivalences(N):
    for n, other in ((1, "jw"), (N, "bk")):
        a = make_encoder("hybrid", N, n).hamiltonian()
        b = make_encoder(other, N).hamiltonian()
        assert [e for e, _ in a] == [e for e, _ in b]
        assert all(x == y for (_, x), (_, y) in zip(a, b))


def test_degenerate_ladders():
    for i in range(16):
        assert make_encoder("hybrid", 4, 1).ladder(i) == make_encoder("jw", 4).ladder(i)
        assert make_encoder("hybrid", 4, 4).ladder(i) == make_encoder("bk", 4).ladder(i)


@pytest.mark.parametrize("N, n", [(8, 2), (16, 2), (16, 4), (8, 4)])
def test_intermediate_roots_on_vertical_hops(N, n):
    enc = make_encoder("hybrid", N, n)
    layout = enc.layout
    count = 0
    for i, j in lattice_edges(layout):
        vertical = layout.position_of(i)[1] == layout.position_of(j)[1]
        if vertical and layout.cell_of(i) != layout.cell_of(j):
            assert len(intermediate_roots(enc, i, j)) == N // n - 1
            count += 1
    assert count == (N // n - 1) * N


def test_jw_weights():
    h = dict(make_encoder("jw", 2).hamiltonian())
    assert len(h) == 4
    assert max(len(o.support()) for o in h.values()) == 3
    weights = [len(o.support()) for _, o in make_encoder("jw", 8).hamiltonian()]
    assert sum(weights) / len(weights) == 5.5


def test_hamiltonian_spec_entry_point():
    a = encode_lattice_hamiltonian(LatticeSpec(2, 2), "hybrid")
    b = encode_lattice_hamiltonian(LatticeSpec(2), "bk")
    assert all(x == y for (_, x), (_, y) in zip(a, b))


def test_dump_format():
    text = dump_operators(make_encoder("jw", 2).hamiltonian()[:1])
    assert text == "# edge 0 1\n0.5 X0 X1\n0.5 Y0 Y1\n"


def test_configuration_errors():
    with pytest.raises(ConfigurationError):
        canonical_spec("hybrid", 4)
    with pytest.raises(ConfigurationError):
        canonical_spec("parity", 4, 2)
    with pytest.raises(ConfigurationError):
        Encoder("hybridplus", build_layout(LatticeSpec(4, 2, "S")))
    with pytest.raises(ConfigurationError):
        Encoder("hybrid", build_layout(LatticeSpec(4, 2, "S", ancillas=True)))
    with pytest.raises(ValueError):
        make_encoder("jw", 2).hopping(1, 1)


@given(st.sampled_from([(2, 1), (4, 1), (4, 2), (4, 4), (8, 2)]), st.data())
@settings(max_examples=30, deadline=None)
def test_hopping_symmetric(Nn, data):
    N, n = Nn
    enc = make_encoder("hybrid", N, n)
    i = data.draw(st.integers(0, N * N - 1))
    j = data.draw(st.integers(0, N * N - 1).filter(lambda v: v != i))
    assert enc.hopping(i, j) == enc.hopping(j, i)
    assert enc.hopping(i, j) == enc.hopping(i, j).adjoint()
