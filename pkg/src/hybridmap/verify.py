"""Ground-truth checks: Fock-space action versus encoded qubit action.

Fock basis states are integer bitmasks (bit ``p`` is the occupation of mode
``p``).  Qubit basis states use the same convention, so the basis index of
a statevector is the bitmask of qubits in ``|1>``.
"""

from __future__ import annotations

import json
from dataclasses import asdict, dataclass, field
from functools import lru_cache

import numpy as np

from .circuits import Gate
from .errors import ConfigurationError, DimensionError
from .fenwick import decode_mask, encode_mask
from .lattice import LatticeSpec
from .mappings import Encoder, make_encoder
from .pauli import PauliOperator, PauliString, bits_of

MAX_QUBITS = 22
ATOL = 1e-10


# Fock space -------------------------------------------------------------


@dataclass(frozen=True)
class FockState:
    """Occupation-number basis state of ``n_modes`` modes."""

    n_modes: int
    occupations: int = 0

    @classmethod
    def from_bits(cls, bits) -> FockState:
        bits = list(bits)
        return cls(len(bits), sum(int(b) << i for i, b in enumerate(bits)))

    def bits(self) -> list[int]:
        return [(self.occupations >> i) & 1 for i in range(self.n_modes)]


def fock_apply_ladder(state: int, p: int, dagger: bool) -> tuple[int, int] | None:
    """Apply ``a_p`` (or ``a_p^dag``) to the basis state ``state``.

    Returns:
        ``(sign, new_state)``, or ``None`` if the state is annihilated.
    """
    occupied = (state >> p) & 1
    if occupied == dagger:
        return None
    sign = -1 if (state & ((1 << p) - 1)).bit_count() & 1 else 1
    return sign, state ^ (1 << p)


def fock_apply_word(state: int, word) -> tuple[int, int] | None:
    """Apply a product of ladder operators; ``word`` is ``[(p, dagger), ...]``, rightmost first applied."""
    sign = 1
    for p, dagger in reversed(word):
        r = fock_apply_ladder(state, p, dagger)
        if r is None:
            return None
        s, state = r
        sign *= s
    return sign, state


def fock_apply_hopping(state: int, i: int, j: int) -> dict[int, complex]:
    """``(a_i^dag a_j + a_j^dag a_i)|state>`` as a sparse dict."""
    out: dict[int, complex] = {}
    for word in (((i, True), (j, False)), ((j, True), (i, False))):
        r = fock_apply_word(state, word)
        if r is not None:
            out[r[1]] = out.get(r[1], 0) + r[0]
    return {k: v for k, v in out.items() if v != 0}


# statevectors -----------------------------------------------------------


@lru_cache(maxsize=8)
def _indices(n: int) -> np.ndarray:
    return np.arange(1 << n, dtype=np.int64)


class StateVector:
    """Dense state on at most ``MAX_QUBITS`` qubits."""

    def __init__(self, n_qubits: int, amplitudes: np.ndarray | None = None):
        if n_qubits > MAX_QUBITS:
            raise DimensionError(f"verify: {n_qubits} qubits exceeds the limit of {MAX_QUBITS}")
        self.n_qubits = n_qubits
        if amplitudes is None:
            amplitudes = np.zeros(1 << n_qubits, dtype=complex)
            amplitudes[0] = 1
        amplitudes = np.asarray(amplitudes, dtype=complex)
        if amplitudes.shape != (1 << n_qubits,):
            raise DimensionError("verify: amplitude array has the wrong length")
        self.amplitudes = amplitudes

    @classmethod
    def basis(cls, n_qubits: int, index: int) -> StateVector:
        v = cls(n_qubits, np.zeros(1 << n_qubits, dtype=complex))
        v.amplitudes[index] = 1
        return v

    @property
    def norm(self) -> float:
        return float(np.linalg.norm(self.amplitudes))

    def copy(self) -> StateVector:
        return StateVector(self.n_qubits, self.amplitudes.copy())

    def inner(self, other: StateVector) -> complex:
        return complex(np.vdot(self.amplitudes, other.amplitudes))

    def allclose(self, other: StateVector, atol: float = ATOL) -> bool:
        return bool(np.allclose(self.amplitudes, other.amplitudes, rtol=0, atol=atol))

    def nonzero(self, atol: float = ATOL) -> dict[int, complex]:
        idx = np.flatnonzero(np.abs(self.amplitudes) > atol)
        return {int(i): complex(self.amplitudes[i]) for i in idx}


def _string_apply(ps: PauliString, amps: np.ndarray, n: int) -> np.ndarray:
    # P|b> = i^(k + |x&z|) (-1)^|b&z| |b^x>
    idx = _indices(n)
    phase = 1j ** ((ps.phase_exp + (ps.x & ps.z).bit_count()) % 4)
    signed = amps
    if ps.z:
        parity = np.bitwise_count(idx & ps.z) & 1
        signed = amps * (1 - 2 * parity.astype(np.int8))
    if ps.x:
        signed = signed[idx ^ ps.x]
    return phase * signed


def pauli_apply(op: PauliOperator | PauliString, v: StateVector) -> StateVector:
    """Apply an operator term by term without forming a matrix."""
    if op.n_qubits != v.n_qubits:
        raise DimensionError("verify: operator and state sizes differ")
    n = v.n_qubits
    if isinstance(op, PauliString):
        return StateVector(n, _string_apply(op, v.amplitudes, n))
    out = np.zeros_like(v.amplitudes)
    for c, ps in op:
        out += c * _string_apply(ps, v.amplitudes, n)
    return StateVector(n, out)


def _axis_view(amps: np.ndarray, n: int, q: int) -> np.ndarray:
    # shape (high, 2, low) so that [:, b, :] selects bit q = b
    return amps.reshape(1 << (n - q - 1), 2, 1 << q)


def apply_gate(v: StateVector, gate: Gate) -> StateVector:
    """Apply one gate in place and return the state."""
    n = v.n_qubits
    name, qs = gate
    a = v.amplitudes
    if name in ("H", "S", "X", "Z"):
        t = _axis_view(a, n, qs[0])
        if name == "H":
            s0, s1 = t[:, 0, :].copy(), t[:, 1, :].copy()
            t[:, 0, :] = (s0 + s1) / np.sqrt(2)
            t[:, 1, :] = (s0 - s1) / np.sqrt(2)
        elif name == "S":
            t[:, 1, :] *= 1j
        elif name == "Z":
            t[:, 1, :] *= -1
        else:
            t[:, [0, 1], :] = t[:, [1, 0], :]
    elif name == "CZ":
        hi, lo = max(qs), min(qs)
        t = a.reshape(1 << (n - hi - 1), 2, 1 << (hi - lo - 1), 2, 1 << lo)
        t[:, 1, :, 1, :] *= -1
    elif name == "CNOT":
        target = Gate("H", (qs[1],))
        for g in (target, Gate("CZ", qs), target):
            apply_gate(v, g)
    else:
        raise ConfigurationError(f"verify: unknown gate {name!r}")
    return v


def apply_circuit(v: StateVector, gates) -> StateVector:
    for g in gates:
        apply_gate(v, g)
    return v


# basis encodings --------------------------------------------------------


def encode_basis_index(enc: Encoder, fock: int) -> int:
    """Data-qubit basis index holding Fock state ``fock`` (cell-wise Fenwick parities)."""
    cs = enc.spec.cell_size
    low = (1 << cs) - 1
    out = 0
    for c in range(enc.spec.n_cells):
        out |= encode_mask((fock >> (c * cs)) & low, cs) << (c * cs)
    return out


def decode_basis_index(enc: Encoder, index: int) -> int:
    cs = enc.spec.cell_size
    low = (1 << cs) - 1
    out = 0
    for c in range(enc.spec.n_cells):
        out |= decode_mask((index >> (c * cs)) & low, cs) << (c * cs)
    return out


def encode_state(enc: Encoder, fock: int, circuit=None) -> StateVector:
    """Encoded statevector of a Fock basis state (ancillas prepared by the circuit)."""
    v = StateVector.basis(enc.n_qubits, encode_basis_index(enc, fock))
    if enc.kind == "hybridplus":
        if circuit is None:
            from .stabilizers import emit_entangling_circuit

            circuit = emit_entangling_circuit(enc)
        apply_circuit(v, circuit)
    return v


def _apply_to_basis(op: PauliOperator, index: int) -> dict[int, complex]:
    out: dict[int, complex] = {}
    for c, ps in op:
        amp = c * 1j ** ((ps.x & ps.z).bit_count() % 4)
        if (index & ps.z).bit_count() & 1:
            amp = -amp
        k = index ^ ps.x
        out[k] = out.get(k, 0) + amp
    return {k: v for k, v in out.items() if abs(v) > ATOL}


# equivalence report -----------------------------------------------------


@dataclass
class EquivalenceReport:
    mapping: str
    spec: dict
    edges_checked: int = 0
    states_checked: int = 0
    stabilizer_checks: int = 0
    failures: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.failures

    def to_dict(self) -> dict:
        d = asdict(self)
        d["passed"] = self.passed
        return d

    def to_json(self, **kwargs) -> str:
        return json.dumps(self.to_dict(), **kwargs)


def _fmt(d: dict[int, complex]) -> dict[str, list[float]]:
    return {str(k): [round(v.real, 12), round(v.imag, 12)] for k, v in sorted(d.items())}


def _sample_states(rng: np.random.Generator, n_modes: int, count: int | None) -> list[int]:
    if count is None:
        return list(range(1 << n_modes))
    return [int(s) for s in rng.integers(0, 1 << n_modes, size=count, dtype=np.uint64)]


def check_encoding_equivalence(
    kind: str,
    spec: LatticeSpec,
    edges=None,
    states_per_edge: int | None = None,
    seed: int = 0,
    max_failures: int = 20,
) -> EquivalenceReport:
    """Compare encoded hopping terms with the Fock-space action.

    For every edge and sampled Fock basis state ``f``: encode ``f``, apply
    the encoded hopping operator, and compare with the encoding of
    ``(a_i^dag a_j + a_j^dag a_i)|f>``.  For hybridplus the comparison is on
    full statevectors prepared by the entangling circuit, and every encoded
    input is also checked to be a +1 eigenstate of each stabilizer.

    Args:
        kind: Mapping kind.
        spec: Lattice (``N`` and, for hybrid kinds, ``n``).
        edges: Mode pairs to check; all lattice edges by default.
        states_per_edge: Random states per edge; ``None`` means all states.
        seed: Seed for state sampling.
        max_failures: Stop collecting counterexamples after this many.

    Returns:
        The report; ``report.passed`` is the overall verdict.
    """
    enc = make_encoder(kind, spec.N, spec.n)
    if enc.n_qubits > MAX_QUBITS:
        raise DimensionError(f"verify: {enc.n_qubits} qubits exceeds the limit of {MAX_QUBITS}")
    M = enc.layout.n_modes
    edges = enc.edges() if edges is None else [tuple(e) for e in edges]
    rng = np.random.default_rng(seed)
    report = EquivalenceReport(
        enc.kind, {"N": enc.spec.N, "n": enc.spec.n, "pattern": enc.spec.pattern}
    )
    if enc.kind == "hybridplus":
        from .stabilizers import emit_entangling_circuit

        circuit = emit_entangling_circuit(enc)
        stabs = enc.stabilizers.strings
    for i, j in edges:
        op = enc.hopping(i, j)
        report.edges_checked += 1
        for f in _sample_states(rng, M, states_per_edge):
            report.states_checked += 1
            expected = fock_apply_hopping(f, i, j)
            if enc.kind != "hybridplus":
                got_q = _apply_to_basis(op, encode_basis_index(enc, f))
                got = {decode_basis_index(enc, k): v for k, v in got_q.items()}
                ok = set(got) == set(expected) and all(
                    abs(got[k] - expected[k]) <= ATOL for k in expected
                )
                if not ok and len(report.failures) < max_failures:
                    report.failures.append(
                        {"edge": [i, j], "state": f, "expected": _fmt(expected), "got": _fmt(got)}
                    )
                continue
            v = encode_state(enc, f, circuit)
            for s in stabs:
                report.stabilizer_checks += 1
                if not pauli_apply(s, v).allclose(v):
                    report.failures.append(
                        {"edge": [i, j], "state": f, "stabilizer": s.to_text(),
                         "error": "encoded state is not a +1 eigenstate"}
                    )
            got_v = pauli_apply(op, v)
            want = StateVector(enc.n_qubits, np.zeros_like(v.amplitudes))
            for f2, amp in expected.items():
                want.amplitudes += amp * encode_state(enc, f2, circuit).amplitudes
            if not got_v.allclose(want) and len(report.failures) < max_failures:
                diff = float(np.max(np.abs(got_v.amplitudes - want.amplitudes)))
                report.failures.append(
                    {"edge": [i, j], "state": f, "expected": _fmt(expected),
                     "max_deviation": diff}
                )
    return report


# algebraic suites -------------------------------------------------------


def _suite(name: str, checked: int, failures: list) -> dict:
    return {"suite": name, "checked": checked, "passed": not failures, "failures": failures[:20]}


def car_suite(enc: Encoder) -> dict:
    """Canonical anticommutation relations of the encoded ladder operators."""
    M = enc.layout.n_modes
    n = enc.n_qubits
    ident = PauliOperator.identity(n)
    failures, checked = [], 0
    lad = [enc.ladder(p, False) for p in range(M)]
    dag = [enc.ladder(p, True) for p in range(M)]
    for i in range(M):
        for j in range(M):
            checked += 2
            ac = lad[i].anticommutator(dag[j])
            want = ident if i == j else PauliOperator.zero(n)
            if ac != want:
                failures.append({"relation": "{a_i, a_j^dag}", "i": i, "j": j, "got": ac.to_text()})
            if j >= i:
                ac = lad[i].anticommutator(lad[j])
                if not ac.is_zero():
                    failures.append({"relation": "{a_i, a_j}", "i": i, "j": j, "got": ac.to_text()})
    return _suite("car", checked, failures)


def degenerate_suite(N: int) -> dict:
    """Hybrid with ``n=1`` equals JW and with ``n=N`` equals BK, term for term."""
    failures, checked = [], 0
    for n, other in ((1, "jw"), (N, "bk")):
        h = make_encoder("hybrid", N, n)
        o = make_encoder(other, N)
        for (e, a), (_, b) in zip(h.hamiltonian(), o.hamiltonian()):
            checked += 1
            if a != b:
                failures.append({"n": n, "against": other, "edge": list(e)})
    return _suite("degenerate", checked, failures)


def stabilizer_suite(enc: Encoder) -> dict:
    """Generators commute and square to +I; every stabilized term commutes with them."""
    fam = enc.stabilizers
    ss = fam.strings
    failures, checked = [], 0
    ident = PauliString.identity(enc.n_qubits)
    for a, s in fam:
        checked += 1
        if s * s != ident:
            failures.append({"ancilla": a, "error": "does not square to +I"})
    for i, a in enumerate(ss):
        for b in ss[:i]:
            checked += 1
            if not a.commutes(b):
                failures.append({"error": "generators anticommute", "a": a.to_text(), "b": b.to_text()})
    for e, op in enc.hamiltonian():
        for _, p in op:
            for s in ss:
                checked += 1
                if not p.commutes(s):
                    failures.append({"edge": list(e), "string": p.to_text(), "stabilizer": s.to_text()})
    return _suite("stabilizers", checked, failures)
