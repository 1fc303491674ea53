"""Abstract Clifford gates and stabilizer-state preparation.

Only the handful of gates needed to prepare ancilla registers are
supported: ``H``, ``S``, ``X``, ``Z``, ``CZ`` and ``CNOT``.
"""

from __future__ import annotations

from typing import NamedTuple, Sequence

from .errors import ConfigurationError
from .pauli import PauliString, commutes

GATE_ARITY = {"H": 1, "S": 1, "X": 1, "Z": 1, "CZ": 2, "CNOT": 2}


class Gate(NamedTuple):
    name: str
    qubits: tuple[int, ...]

    def __str__(self) -> str:
        return f"{self.name} " + " ".join(map(str, self.qubits))


def _bit(v: int, q: int) -> int:
    return (v >> q) & 1


def conjugate(p: PauliString, gate: Gate) -> PauliString:
    """Return ``g^dag p g`` for a single gate ``g``."""
    x, z, k = p.x, p.z, p.phase_exp
    name, qs = gate
    if name == "H":
        (q,) = qs
        xq, zq = _bit(x, q), _bit(z, q)
        k += 2 * (xq & zq)
        x = (x & ~(1 << q)) | (zq << q)
        z = (z & ~(1 << q)) | (xq << q)
    elif name == "S":
        (q,) = qs
        if _bit(x, q):
            # S^dag X S = -Y and S^dag Y S = X
            k += 2 * (1 - _bit(z, q))
            z ^= 1 << q
    elif name == "Z":
        k += 2 * _bit(x, qs[0])
    elif name == "X":
        k += 2 * _bit(z, qs[0])
    elif name == "CZ":
        a, b = qs
        xa, xb, za, zb = _bit(x, a), _bit(x, b), _bit(z, a), _bit(z, b)
        za2, zb2 = za ^ xb, zb ^ xa
        k += xa * za + xb * zb + 2 * xa * xb - xa * za2 - xb * zb2
        z = (z & ~((1 << a) | (1 << b))) | (za2 << a) | (zb2 << b)
    elif name == "CNOT":
        c, t = qs
        # CNOT = H_t CZ H_t
        for g in (Gate("H", (t,)), Gate("CZ", (c, t)), Gate("H", (t,))):
            p = conjugate(PauliString(p.n_qubits, x, z, k), g)
            x, z, k = p.x, p.z, p.phase_exp
    else:
        raise ConfigurationError(f"circuits: unknown gate {name!r}")
    return PauliString(p.n_qubits, x, z, k)


def conjugate_circuit(p: PauliString, gates: Sequence[Gate]) -> PauliString:
    """``U^dag p U`` where ``U`` applies ``gates`` in order (first gate first)."""
    for g in reversed(gates):
        p = conjugate(p, g)
    return p


def _row_multiply(rows: list[PauliString], i: int, j: int) -> None:
    rows[i] = rows[i] * rows[j]


def stabilizer_state_circuit(generators: Sequence[PauliString]) -> list[Gate]:
    """Gates preparing the +1 eigenstate of ``generators`` from ``|0...0>``.

    The generators must be Hermitian, independent, mutually commuting and
    as many as there are qubits.  The group is reduced to ``{Z_q}`` by
    Gaussian elimination interleaved with Clifford conjugation; the
    preparation circuit is that reduction run backwards.

    Args:
        generators: ``n`` strings on ``n`` qubits.

    Returns:
        Gate list to apply in order.
    """
    rows = list(generators)
    n = len(rows)
    if any(r.n_qubits != n for r in rows):
        raise ConfigurationError("circuits: need as many generators as qubits")
    if any(r.phase_exp % 2 for r in rows):
        raise ConfigurationError("circuits: generators must be Hermitian")
    for i in range(n):
        for j in range(i):
            if not commutes(rows[i], rows[j]):
                raise ConfigurationError("circuits: generators do not commute")
    reduction: list[Gate] = []

    def apply(g: Gate):
        reduction.append(g)
        for i in range(n):
            rows[i] = conjugate(rows[i], g)

    # X part in echelon form
    r = 0
    x_pivots = []
    for q in range(n):
        sel = next((i for i in range(r, n) if _bit(rows[i].x, q)), None)
        if sel is None:
            continue
        rows[r], rows[sel] = rows[sel], rows[r]
        for i in range(n):
            if i != r and _bit(rows[i].x, q):
                _row_multiply(rows, i, r)
        x_pivots.append(q)
        r += 1
    # remaining rows are Z-only; their pivots avoid the X pivot columns
    free_cols = [q for q in range(n) if q not in x_pivots]
    rz = r
    for q in free_cols:
        sel = next((i for i in range(rz, n) if _bit(rows[i].z, q)), None)
        if sel is None:
            continue
        rows[rz], rows[sel] = rows[sel], rows[rz]
        for i in range(r, n):
            if i != rz and _bit(rows[i].z, q):
                _row_multiply(rows, i, rz)
        apply(Gate("H", (q,)))
        rz += 1
    if rz != n:
        raise ConfigurationError("circuits: generators are not independent")
    # X part to the identity
    for q in range(n):
        sel = next(i for i in range(q, n) if _bit(rows[i].x, q))
        rows[q], rows[sel] = rows[sel], rows[q]
        for i in range(n):
            if i != q and _bit(rows[i].x, q):
                _row_multiply(rows, i, q)
    for q in range(n):
        if _bit(rows[q].z, q):
            apply(Gate("S", (q,)))
    for q in range(n):
        for t in range(q + 1, n):
            if _bit(rows[q].z, t):
                apply(Gate("CZ", (q, t)))
    for q in range(n):
        if rows[q].phase_exp % 4 == 2:
            apply(Gate("Z", (q,)))
    for q in range(n):
        apply(Gate("H", (q,)))
    assert all(rows[q] == PauliString(n, 0, 1 << q) for q in range(n))
    return list(reversed(reduction))


def relabel(gates: Sequence[Gate], mapping: Sequence[int]) -> list[Gate]:
    """Rename qubit ``q`` to ``mapping[q]`` in every gate."""
    return [Gate(g.name, tuple(mapping[q] for q in g.qubits)) for g in gates]
