"""Fermion-to-qubit encoders for square lattices.

All four kinds share one construction.  Each cell carries a Fenwick tree of
``n*n`` modes and the parity set of a mode is augmented with the roots of
every cell that precedes it.  The kinds differ only in their layout:

* ``jw``: cells of a single mode, row-major, so the augmented parity set is
  the ordinary Jordan-Wigner Z chain.
* ``bk``: one cell covering the whole lattice (row-major enumeration).
* ``hybrid``: ``n x n`` cells numbered in a Z pattern.
* ``hybridplus``: ``n x n`` cells numbered in an S pattern plus one ancilla
  per cell; even operators are dressed by :mod:`hybridmap.stabilizers`.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

from .errors import ConfigurationError, UnsupportedOperatorError
from .fenwick import FenwickTree
from .lattice import LatticeSpec, MappingLayout, build_layout, lattice_edges
from .pauli import PauliOperator, PauliString, op_add, op_multiply

KINDS = ("jw", "bk", "hybrid", "hybridplus")


def canonical_spec(kind: str, N: int, n: int | None = None) -> LatticeSpec:
    """Lattice spec that a mapping kind is defined on.

    ``n`` is ignored for ``jw`` (cells of one mode) and ``bk`` (one cell).
    """
    kind = kind.lower()
    if kind == "jw":
        return LatticeSpec(N, 1, "Z")
    if kind == "bk":
        return LatticeSpec(N, N, "Z")
    if n is None:
        raise ConfigurationError(f"mappings: kind {kind!r} needs a cell size n")
    if kind == "hybrid":
        return LatticeSpec(N, n, "Z")
    if kind == "hybridplus":
        return LatticeSpec(N, n, "S", ancillas=True)
    raise ConfigurationError(f"mappings: unknown kind {kind!r}; expected one of {KINDS}")


@dataclass(frozen=True)
class ModeSets:
    """Qubit masks used to encode one mode.

    Attributes:
        update: Ancestors inside the cell (receive X).
        flip: Children inside the cell.
        parity: In-cell parity set plus roots of all earlier cells.
        remainder: ``parity`` minus ``flip`` (Z part of the Y term).
    """

    update: int
    flip: int
    parity: int
    remainder: int


class Encoder:
    """Encoder of ladder and hopping operators for one layout.

    Args:
        kind: One of ``jw``, ``bk``, ``hybrid``, ``hybridplus``.
        layout: Layout the encoder acts on; see :func:`canonical_spec`.
    """

    def __init__(self, kind: str, layout: MappingLayout):
        kind = kind.lower()
        if kind not in KINDS:
            raise ConfigurationError(f"mappings: unknown kind {kind!r}; expected one of {KINDS}")
        spec = layout.spec
        if kind == "hybridplus" and not spec.ancillas:
            raise ConfigurationError("mappings: hybridplus needs a layout with ancillas")
        if kind != "hybridplus" and spec.ancillas:
            raise ConfigurationError(f"mappings: {kind} does not use ancillas")
        self.kind = kind
        self.layout = layout
        self.tree = FenwickTree(spec.cell_size)
        self._ladder: dict[tuple[int, bool], PauliOperator] = {}

    @classmethod
    def for_lattice(cls, kind: str, N: int, n: int | None = None) -> Encoder:
        return cls(kind, build_layout(canonical_spec(kind, N, n)))

    @property
    def spec(self) -> LatticeSpec:
        return self.layout.spec

    @property
    def n_qubits(self) -> int:
        return self.layout.total_qubits

    @cached_property
    def _root_prefix(self) -> list[int]:
        out, acc = [], 0
        for root in self.layout.roots:
            out.append(acc)
            acc |= 1 << root
        return out

    def mode_sets(self, mode: int) -> ModeSets:
        """Update, flip and (augmented) parity sets of ``mode`` as qubit masks."""
        if not 0 <= mode < self.layout.n_modes:
            raise IndexError(f"mappings: mode {mode} out of range for {self.layout.n_modes} modes")
        cs = self.spec.cell_size
        cell, local = divmod(mode, cs)
        base = cell * cs

        def mask(nodes):
            m = 0
            for b in nodes:
                m |= 1 << (base + b)
            return m

        update = mask(self.tree.update_set(local))
        flip = mask(self.tree.flip_set(local))
        parity = mask(self.tree.parity_set(local)) | self._root_prefix[cell]
        return ModeSets(update, flip, parity, parity & ~flip)

    def ladder(self, mode: int, dagger: bool = False) -> PauliOperator:
        """Encoded ``a_mode`` (or its adjoint), always a two-term operator."""
        if self.kind == "hybridplus":
            raise UnsupportedOperatorError(
                "mappings: hybridplus only encodes even operators; use hopping()"
            )
        return self._data_ladder(mode, dagger)

    def _data_ladder(self, mode: int, dagger: bool) -> PauliOperator:
        key = (mode, dagger)
        op = self._ladder.get(key)
        if op is None:
            s = self.mode_sets(mode)
            bit = 1 << mode
            n = self.n_qubits
            x_term = PauliString(n, x=s.update | bit, z=s.parity)
            y_term = PauliString(n, x=s.update | bit, z=s.remainder | bit)
            op = PauliOperator.from_strings(n, [(0.5, x_term), (-0.5j if dagger else 0.5j, y_term)])
            self._ladder[key] = op
        return op

    def raw_hopping(self, i: int, j: int) -> PauliOperator:
        """``a_i^dag a_j + a_j^dag a_i`` on the data qubits, before any stabilization."""
        if i == j:
            raise ValueError("hopping needs two distinct modes")
        fwd = op_multiply(self._data_ladder(i, True), self._data_ladder(j, False))
        return op_add(fwd, fwd.adjoint())

    def hopping(self, i: int, j: int) -> PauliOperator:
        """Encoded ``a_i^dag a_j + a_j^dag a_i``."""
        op = self.raw_hopping(i, j)
        if self.kind == "hybridplus":
            from .stabilizers import stabilize_term

            op = stabilize_term(op, self.stabilizers)
        return op

    @cached_property
    def stabilizers(self):
        from .stabilizers import build_stabilizers

        return build_stabilizers(self)

    def edges(self) -> list[tuple[int, int]]:
        return lattice_edges(self.layout)

    def hamiltonian(self) -> list[tuple[tuple[int, int], PauliOperator]]:
        return [(e, self.hopping(*e)) for e in self.edges()]

    def __repr__(self) -> str:
        s = self.spec
        return f"Encoder({self.kind!r}, N={s.N}, n={s.n}, pattern={s.pattern!r})"


def make_encoder(kind: str, N: int, n: int | None = None) -> Encoder:
    return Encoder.for_lattice(kind, N, n)


def encode_ladder(i: int, dagger: bool, enc: Encoder) -> PauliOperator:
    return enc.ladder(i, dagger)


def encode_hopping(i: int, j: int, enc: Encoder) -> PauliOperator:
    return enc.hopping(i, j)


def encode_lattice_hamiltonian(spec: LatticeSpec, kind: str):
    """Encode every nearest-neighbour hopping term of the lattice.

    Args:
        spec: Lattice; for ``jw``/``bk`` only ``N`` is used, for the hybrid
            kinds ``N`` and ``n``.
        kind: Mapping kind.

    Returns:
        List of ``((i, j), operator)`` in :func:`lattice_edges` order.
    """
    return make_encoder(kind, spec.N, spec.n).hamiltonian()


def dump_operators(terms) -> str:
    """Text dump: a ``# edge i j`` header followed by one line per term."""
    lines = []
    for (i, j), op in terms:
        lines.append(f"# edge {i} {j}")
        lines.append(op.to_text())
    return "\n".join(lines) + "\n"
