"""Lattice geometry, cell decomposition and mode/qubit enumeration.

An ``N x N`` lattice of fermionic modes is cut into ``n x n`` cells.  Cells
are numbered from the top-left either row by row (``"Z"`` pattern) or
boustrophedon (``"S"`` pattern: even cell rows left to right, odd cell rows
right to left).  Inside a cell, modes are numbered row-major from the
top-left, so the bottom-right mode ``n*n - 1`` is the Fenwick root of the
cell.  The global mode index is ``cell * n*n + local`` and data qubit ``q``
holds mode ``q``.  Ancillas, when present, follow all data qubits in cell
order.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from functools import cached_property

import numpy as np

from .errors import ConfigurationError

PATTERNS = ("Z", "S")


@dataclass(frozen=True)
class LatticeSpec:
    """Side length ``N``, cell side ``n``, cell pattern and ancilla flag."""

    N: int
    n: int = 1
    pattern: str = "Z"
    ancillas: bool = False

    def __post_init__(self):
        if self.N < 1 or self.n < 1:
            raise ConfigurationError("lattice: N and n must be positive")
        if self.N % self.n:
            raise ConfigurationError(f"lattice: cell side n={self.n} must divide N={self.N}")
        if self.pattern not in PATTERNS:
            raise ConfigurationError(f"lattice: pattern must be one of {PATTERNS}")
        cell_size = self.n * self.n
        if self.ancillas and cell_size & (cell_size - 1):
            raise ConfigurationError(
                f"lattice: ancilla layouts need n*n to be a power of two (got {cell_size})"
            )

    @property
    def cells_per_side(self) -> int:
        return self.N // self.n

    @property
    def n_cells(self) -> int:
        return self.cells_per_side**2

    @property
    def n_modes(self) -> int:
        return self.N * self.N

    @property
    def cell_size(self) -> int:
        return self.n * self.n

    @property
    def n_ancillas(self) -> int:
        # a single cell has nothing to stabilise
        return self.n_cells if self.ancillas and self.n_cells > 1 else 0


@dataclass(frozen=True)
class ModeCoordinate:
    """``(cell, mode)`` coordinate; both 0-based."""

    cell: int
    mode: int


@dataclass(frozen=True, eq=False)
class MappingLayout:
    """Resolved enumeration of a :class:`LatticeSpec`.

    Attributes:
        spec: The lattice description.
        mode_at: ``(N, N)`` array, global mode index at ``(row, col)``.
        position: ``(N*N, 2)`` array, ``(row, col)`` of each mode.
        cell_at: ``(N/n, N/n)`` array of cell numbers on the cell grid.
        cell_position: ``(n_cells, 2)`` array, cell-grid ``(row, col)``.
    """

    spec: LatticeSpec
    mode_at: np.ndarray = field(repr=False)
    position: np.ndarray = field(repr=False)
    cell_at: np.ndarray = field(repr=False)
    cell_position: np.ndarray = field(repr=False)

    @property
    def N(self) -> int:
        return self.spec.N

    @property
    def n(self) -> int:
        return self.spec.n

    @property
    def n_modes(self) -> int:
        return self.spec.n_modes

    @property
    def n_data(self) -> int:
        return self.spec.n_modes

    @property
    def n_ancillas(self) -> int:
        return self.spec.n_ancillas

    @property
    def total_qubits(self) -> int:
        return self.n_data + self.n_ancillas

    @property
    def qubit_ratio(self) -> float:
        return self.total_qubits / self.n_modes

    def coordinate(self, mode: int) -> ModeCoordinate:
        cs = self.spec.cell_size
        return ModeCoordinate(mode // cs, mode % cs)

    def mode_of(self, coord: ModeCoordinate) -> int:
        return coord.cell * self.spec.cell_size + coord.mode

    def mode_at_position(self, row: int, col: int) -> int:
        return int(self.mode_at[row, col])

    def position_of(self, mode: int) -> tuple[int, int]:
        r, c = self.position[mode]
        return int(r), int(c)

    def qubit_of(self, mode: int) -> int:
        return mode

    def cell_of(self, mode: int) -> int:
        return mode // self.spec.cell_size

    def cell_root(self, cell: int) -> int:
        """Qubit holding the Fenwick root (local mode ``n*n - 1``) of ``cell``."""
        cs = self.spec.cell_size
        return cell * cs + cs - 1

    @cached_property
    def roots(self) -> tuple[int, ...]:
        return tuple(self.cell_root(c) for c in range(self.spec.n_cells))

    def ancilla_of(self, cell: int) -> int:
        if not self.n_ancillas:
            raise ConfigurationError("layout: this layout has no ancillas")
        return self.n_data + cell

    @cached_property
    def ancillas(self) -> tuple[int, ...]:
        return tuple(self.n_data + c for c in range(self.n_ancillas))

    def cell_above(self, cell: int) -> int | None:
        r, c = self.cell_position[cell]
        return int(self.cell_at[r - 1, c]) if r > 0 else None

    def cell_neighbours(self, cell: int) -> list[int]:
        r, c = (int(v) for v in self.cell_position[cell])
        L = self.spec.cells_per_side
        out = []
        for dr, dc in ((-1, 0), (0, -1), (0, 1), (1, 0)):
            rr, cc = r + dr, c + dc
            if 0 <= rr < L and 0 <= cc < L:
                out.append(int(self.cell_at[rr, cc]))
        return out

    def to_records(self) -> list[dict]:
        """Per-qubit description: ``{row, col, cell, mode, is_ancilla}``."""
        out = []
        for q in range(self.n_data):
            row, col = self.position_of(q)
            coord = self.coordinate(q)
            out.append(
                {"qubit": q, "row": row, "col": col, "cell": coord.cell,
                 "mode": coord.mode, "is_ancilla": False}
            )
        for cell in range(self.n_ancillas):
            out.append(
                {"qubit": self.n_data + cell, "row": None, "col": None, "cell": cell,
                 "mode": self.spec.cell_size, "is_ancilla": True}
            )
        return out

    def to_json(self, **kwargs) -> str:
        return json.dumps(self.to_records(), **kwargs)


def _cell_grid(L: int, pattern: str) -> np.ndarray:
    grid = np.arange(L * L).reshape(L, L)
    if pattern == "S":
        grid[1::2] = grid[1::2, ::-1]
    return grid


def build_layout(spec: LatticeSpec) -> MappingLayout:
    """Enumerate modes and qubits of ``spec``."""
    N, n = spec.N, spec.n
    L = spec.cells_per_side
    cell_at = _cell_grid(L, spec.pattern)
    cell_position = np.empty((L * L, 2), dtype=np.int64)
    for r in range(L):
        for c in range(L):
            cell_position[cell_at[r, c]] = (r, c)

    rows, cols = np.indices((N, N))
    local = (rows % n) * n + (cols % n)
    mode_at = cell_at[rows // n, cols // n] * (n * n) + local
    position = np.empty((N * N, 2), dtype=np.int64)
    position[mode_at.ravel()] = np.stack([rows.ravel(), cols.ravel()], axis=1)
    for arr in (mode_at, position, cell_at, cell_position):
        arr.setflags(write=False)
    return MappingLayout(spec, mode_at, position, cell_at, cell_position)


def lattice_edges(spec_or_layout) -> list[tuple[int, int]]:
    """Nearest-neighbour mode pairs: horizontal row-major, then vertical column-major."""
    layout = spec_or_layout if isinstance(spec_or_layout, MappingLayout) else build_layout(spec_or_layout)
    m = layout.mode_at
    N = layout.N
    edges = [(int(m[r, c]), int(m[r, c + 1])) for r in range(N) for c in range(N - 1)]
    edges += [(int(m[r, c]), int(m[r + 1, c])) for c in range(N) for r in range(N - 1)]
    return edges


def cell_root(cell: int, spec: LatticeSpec) -> int:
    return cell * spec.cell_size + spec.cell_size - 1
