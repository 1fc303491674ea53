"""Ancilla stabilizers that localise Hybrid+ hopping terms.

The Hybrid mapping in S-pattern order stores each cell's total parity on
its root, so a fermion hopping between vertically adjacent cells drags a Z
string over the roots of every cell in between.  Each ancilla is treated as
an auxiliary fermion placed in the enumeration right after its cell.  Its
two Majorana operators are

    A_c = Z(roots r_0..r_c) Z(ancillas a_0..a_{c-1}) X(a_c)
    B_c = Z(roots r_0..r_c) Z(ancillas a_0..a_{c-1}) Y(a_c)

Pairing ``B`` of a cell with ``A`` of the cell directly below it gives one
stabilizer per vertical cell link; it carries exactly the root-to-root Z
chain of a vertical hop.  The leftover Majoranas (``A`` of the top-row
cells, ``B`` of the bottom-row cells) are paired up around one cycle so
that every ancilla owns one stabilizer.  Hopping terms are then dressed
with Z on ancillas so that they commute with the whole family, and
shortened by multiplying in stabilizers.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

from .circuits import Gate, relabel, stabilizer_state_circuit
from .errors import ConfigurationError, UnsupportedOperatorError
from .gf2 import GF2System
from .pauli import PauliOperator, PauliString, _popcount, bits_of


@dataclass(frozen=True, eq=False)
class StabilizerFamily:
    """Stabilizer generators of a Hybrid+ layout.

    Attributes:
        n_qubits: Total qubit count (data plus ancillas).
        ancillas: Ancilla qubit indices, in cell order.
        entries: ``(ancilla qubit, stabilizer)`` pairs, one per ancilla.
        kinds: ``"vertical"`` or ``"closing"`` for each entry.
    """

    n_qubits: int
    ancillas: tuple[int, ...]
    entries: tuple[tuple[int, PauliString], ...]
    kinds: tuple[str, ...] = ()

    def __len__(self) -> int:
        return len(self.entries)

    def __iter__(self):
        return iter(self.entries)

    @property
    def strings(self) -> list[PauliString]:
        return [s for _, s in self.entries]

    @cached_property
    def ancilla_mask(self) -> int:
        m = 0
        for a in self.ancillas:
            m |= 1 << a
        return m

    @cached_property
    def _system(self) -> GF2System:
        # Z on ancilla a anticommutes with generator d iff d has X on a
        pos = {a: k for k, a in enumerate(self.ancillas)}
        rows = []
        for _, s in self.entries:
            row = 0
            for q in bits_of(s.x & self.ancilla_mask):
                row |= 1 << pos[q]
            rows.append(row)
        return GF2System(rows, len(self.ancillas))

    def anticommuting(self, p: PauliString) -> int:
        """Mask over generators that anticommute with ``p``."""
        v = 0
        for d, (_, s) in enumerate(self.entries):
            if (_popcount(p.x & s.z) + _popcount(p.z & s.x)) & 1:
                v |= 1 << d
        return v

    def ancilla_z(self, k: int) -> PauliString:
        """Z string on the ancillas selected by the bitmask ``k`` (ancilla order)."""
        z = 0
        for i in bits_of(k):
            z |= 1 << self.ancillas[i]
        return PauliString(self.n_qubits, 0, z)

    def all_commute(self) -> bool:
        ss = self.strings
        return all(a.commutes(b) for i, a in enumerate(ss) for b in ss[:i])


def _majoranas(layout) -> tuple[list[PauliString], list[PauliString]]:
    n = layout.total_qubits
    A, B = [], []
    prefix = 0
    for c in range(layout.spec.n_cells):
        prefix |= 1 << layout.cell_root(c)
        a = 1 << layout.ancilla_of(c)
        A.append(PauliString(n, a, prefix))
        B.append(PauliString(n, a, prefix | a))
        prefix |= a
    return A, B


def _pair(b: PauliString, a: PauliString) -> PauliString:
    # i * B * A is Hermitian because the two Majoranas anticommute
    s = b * a
    return PauliString(s.n_qubits, s.x, s.z, s.phase_exp + 1)


def build_stabilizers(enc) -> StabilizerFamily:
    """Stabilizer family of a Hybrid+ encoder (one generator per ancilla).

    The product of all generators is ``+Z`` on every ancilla.
    """
    if getattr(enc, "kind", None) != "hybridplus":
        raise ConfigurationError("stabilizers: build_stabilizers needs a hybridplus encoder")
    layout = enc.layout
    n = layout.total_qubits
    if not layout.n_ancillas:
        return StabilizerFamily(n, (), (), ())
    L = layout.spec.cells_per_side
    A, B = _majoranas(layout)
    cell_at = layout.cell_at
    entries, kinds = [], []
    for r in range(1, L):
        for col in range(L):
            c, up = int(cell_at[r, col]), int(cell_at[r - 1, col])
            entries.append((layout.ancilla_of(c), _pair(B[up], A[c])))
            kinds.append("vertical")
    top = [int(cell_at[0, col]) for col in range(L)]
    bottom = [int(cell_at[L - 1, col]) for col in range(L)]
    for col in range(L):
        t = top[(col + 1) % L]
        entries.append((layout.ancilla_of(t), _pair(B[bottom[col]], A[t])))
        kinds.append("closing")

    total = PauliString.identity(n)
    for _, s in entries:
        total = total * s
    anc = sum(1 << a for a in layout.ancillas)
    assert total.x == 0 and total.z == anc, "stabilizer product is not the ancilla parity"
    if total.phase_exp == 2:
        a, s = entries[-1]
        entries[-1] = (a, -s)
    order = sorted(range(len(entries)), key=lambda i: entries[i][0])
    return StabilizerFamily(
        n,
        tuple(layout.ancillas),
        tuple(entries[i] for i in order),
        tuple(kinds[i] for i in order),
    )


def _shorten(p: PauliString, gens: list[PauliString]) -> PauliString:
    """Greedy descent: multiply in the generator giving the largest weight drop."""
    while True:
        w = p.weight
        best, best_w = None, w
        for g in gens:
            nw = _popcount((p.x ^ g.x) | (p.z ^ g.z))
            if nw < best_w:
                best, best_w = g, nw
        if best is None:
            return p
        p = p * best


def stabilize_string(p: PauliString, fam: StabilizerFamily) -> PauliString:
    """Dress one string with ancilla Z's and shorten it.

    Every choice of ancilla set that makes ``p`` commute with the family
    (there are two, complementary on the ancillas) is shortened and the
    lightest result is returned; ties go to the first choice.
    """
    if not fam.entries:
        return p
    v = fam.anticommuting(p)
    candidates = fam._system.solutions(v)
    if not candidates:
        raise UnsupportedOperatorError(
            "stabilizers: string cannot be made to commute with the stabilizers (odd operator?)"
        )
    gens = fam.strings
    best = None
    for k in candidates:
        q = _shorten(p * fam.ancilla_z(k), gens)
        if best is None or q.weight < best.weight:
            best = q
    return best


def stabilize_term(t: PauliOperator, fam: StabilizerFamily) -> PauliOperator:
    """Version of ``t`` that commutes with ``fam`` and agrees with it on the code space."""
    if t.n_qubits != fam.n_qubits:
        t = t.resized(fam.n_qubits)
    return t.map_strings(lambda p: stabilize_string(p, fam))


def _root_flip_sets(fam: StabilizerFamily, layout) -> list[tuple[int, int]]:
    """For each root, the ancilla set whose Z restores the code space after the root flips."""
    out = []
    for root in layout.roots:
        v = 0
        for d, (_, s) in enumerate(fam.entries):
            if (s.z >> root) & 1:
                v |= 1 << d
        sols = fam._system.solutions(v)
        if not sols:
            raise ConfigurationError("stabilizers: root parity cannot be absorbed by ancillas")
        out.append((root, min(sols, key=lambda k: (k.bit_count(), k))))
    return out


def emit_entangling_circuit(enc) -> list[Gate]:
    """Circuit mapping ``|x>|0...0>_anc`` to an encoded Hybrid+ state.

    The ancilla register is first prepared in the joint +1 eigenstate of
    the stabilizers with all data qubits in ``|0>`` (Hadamards, phase and CZ
    gates).  Data-controlled CZ gates then correct the ancillas for the
    parity stored on each cell root.

    Returns:
        Gates in application order on the full register.
    """
    fam = build_stabilizers(enc)
    layout = enc.layout
    if not fam.entries:
        return []
    m = len(fam.ancillas)
    pos = {a: i for i, a in enumerate(fam.ancillas)}
    local = []
    for _, s in fam.entries:
        data_x = s.x & ~fam.ancilla_mask
        if data_x:
            raise ConfigurationError("stabilizers: generator flips data qubits")
        x = z = 0
        for q in bits_of(s.x & fam.ancilla_mask):
            x |= 1 << pos[q]
        for q in bits_of(s.z & fam.ancilla_mask):
            z |= 1 << pos[q]
        # with the data in |0> the data Z letters act as +1
        local.append(PauliString(m, x, z, s.phase_exp))
    gates = relabel(stabilizer_state_circuit(local), fam.ancillas)
    for root, k in _root_flip_sets(fam, layout):
        for i in bits_of(k):
            gates.append(Gate("CZ", (root, fam.ancillas[i])))
    return gates
