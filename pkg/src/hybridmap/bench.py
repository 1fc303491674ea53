"""Lattice sweeps of Pauli weight and interaction qubit count."""

from __future__ import annotations

import csv
import io
import json
import logging
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass
from fractions import Fraction
from typing import NamedTuple, Sequence

from .errors import ConfigurationError
from .mappings import KINDS, canonical_spec, make_encoder
from .routing import EXACT_LIMIT, architecture_for, route_operator

log = logging.getLogger(__name__)

CSV_HEADER = (
    "mapping", "N", "n", "avg_weight", "max_weight",
    "avg_iqc", "max_iqc", "qubit_ratio", "exact_fraction",
)

# Reference rows for mappings that are not implemented here
REFERENCE_RATIOS = {
    "derby-klassen": Fraction(3, 2),
    "super-compact": Fraction(5, 4),
}


@dataclass
class SweepConfig:
    """What to sweep.

    Attributes:
        mappings: Mapping kinds.
        N_values: Lattice sides.
        n_values: Cell sides (ignored by ``jw`` and ``bk``).
        connectivity: ``"all"`` or ``"lattice"``.
        exact_limit: Terminal count up to which Steiner trees are exact.
        out: Optional CSV path.
        jobs: Worker processes (1 runs inline).
    """

    mappings: Sequence[str] = ("jw",)
    N_values: Sequence[int] = (4,)
    n_values: Sequence[int] = (2,)
    connectivity: str = "all"
    exact_limit: int = EXACT_LIMIT
    out: str | None = None
    jobs: int = 1

    def points(self) -> tuple[list[tuple[str, int, int]], list[dict]]:
        """Valid ``(mapping, N, n)`` triples and the skipped ones with reasons."""
        pts, skipped, seen = [], [], set()
        for kind in self.mappings:
            if kind not in KINDS:
                raise ConfigurationError(f"bench: unknown mapping {kind!r}")
            for N in self.N_values:
                for n in self.n_values if kind in ("hybrid", "hybridplus") else (None,):
                    try:
                        spec = canonical_spec(kind, N, n)
                    except ConfigurationError as exc:
                        skipped.append({"mapping": kind, "N": N, "n": n, "reason": str(exc)})
                        log.info("skipping %s N=%s n=%s: %s", kind, N, n, exc)
                        continue
                    key = (kind, N, spec.n)
                    if key not in seen:
                        seen.add(key)
                        pts.append(key)
        return pts, skipped


@dataclass
class StatRow:
    mapping: str
    N: int
    n: int
    avg_weight: float
    max_weight: int
    avg_iqc: float
    max_iqc: int
    qubit_ratio: float
    exact_fraction: float
    max_string_weight: int = 0
    edges: int = 0
    weight_sum: int = 0
    iqc_sum: int = 0

    @property
    def avg_weight_exact(self) -> Fraction:
        return Fraction(self.weight_sum, self.edges)

    @property
    def avg_iqc_exact(self) -> Fraction:
        return Fraction(self.iqc_sum, self.edges)

    def csv_values(self) -> list:
        return [getattr(self, k) for k in CSV_HEADER]


def compute_row(kind: str, N: int, n: int | None, connectivity: str = "all",
                exact_limit: int = EXACT_LIMIT) -> StatRow:
    """Statistics over every nearest-neighbour hopping term of one lattice."""
    enc = make_encoder(kind, N, n)
    graph = architecture_for(enc.layout, connectivity)
    weights, iqcs, string_max, exact = [], [], 0, 0
    for _, op in enc.hamiltonian():
        weights.append(len(op.support()))
        string_max = max(string_max, op.max_weight())
        res = route_operator(op, graph, exact_limit)
        iqcs.append(res.vertex_count)
        exact += res.method == "exact"
    m = len(weights)
    return StatRow(
        mapping=kind,
        N=N,
        n=enc.spec.n,
        avg_weight=sum(weights) / m,
        max_weight=max(weights),
        avg_iqc=sum(iqcs) / m,
        max_iqc=max(iqcs),
        qubit_ratio=enc.layout.qubit_ratio,
        exact_fraction=exact / m,
        max_string_weight=string_max,
        edges=m,
        weight_sum=sum(weights),
        iqc_sum=sum(iqcs),
    )


def _row_job(args):
    return compute_row(*args)


def run_sweep(cfg: SweepConfig) -> list[StatRow]:
    """Compute one :class:`StatRow` per valid point; write CSV if ``cfg.out`` is set."""
    pts, _ = cfg.points()
    jobs = [(k, N, n, cfg.connectivity, cfg.exact_limit) for k, N, n in pts]
    if cfg.jobs > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=cfg.jobs) as pool:
            rows = list(pool.map(_row_job, jobs))
    else:
        rows = [_row_job(j) for j in jobs]
    if cfg.out:
        with open(cfg.out, "w", newline="") as fh:
            fh.write(rows_to_csv(rows))
    return rows


def rows_to_csv(rows: Sequence[StatRow]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CSV_HEADER)
    for r in rows:
        w.writerow(r.csv_values())
    return buf.getvalue()


def rows_to_json(rows: Sequence[StatRow], **kwargs) -> str:
    out = []
    for r in rows:
        d = asdict(r)
        for k in ("edges", "weight_sum", "iqc_sum"):
            d.pop(k)
        out.append(d)
    return json.dumps(out, **kwargs)


# analytic cross-checks --------------------------------------------------


def jw_average_weight(N: int) -> Fraction:
    return Fraction(N, 2) + Fraction(3, 2)


def hybrid_root_parity_formula(N: int, n: int) -> Fraction:
    """Closed form ``N(N-n) / (2(N-1) n^2)`` of the average root-parity weight."""
    if N == 1:
        return Fraction(0)
    return Fraction(N * (N - n), 2 * (N - 1) * n * n)


def hybridplus_qubit_ratio(n: int) -> Fraction:
    return 1 + Fraction(1, n * n)


class HybridWeight(NamedTuple):
    root_parity_avg: Fraction
    in_cell_avg: Fraction


def decompose_hybrid_weight(N: int, n: int) -> HybridWeight:
    """Split the average Hybrid hopping weight into root and in-cell parts.

    The root part counts, for every hop between vertically adjacent cells,
    the roots on which the parity sets of the two encoded ladder operators
    differ (from the upper cell's root to the root just before the lower
    cell).  Hops inside a cell or across a horizontal cell
    boundary are not counted: the one root in question is already a target
    or in an update set.  The in-cell part is the average support restricted
    to the two target cells.

    Returns:
        Exact averages over all lattice edges.
    """
    enc = make_encoder("hybrid", N, n)
    layout = enc.layout
    edges = enc.edges()
    cs = layout.spec.cell_size
    root_mask = sum(1 << r for r in layout.roots)
    root_total = 0
    in_cell_total = 0
    for i, j in edges:
        ci, cj = layout.cell_of(i), layout.cell_of(j)
        if ci != cj and layout.position_of(i)[0] != layout.position_of(j)[0]:
            lower = ((1 << cs) - 1) << (max(ci, cj) * cs)
            diff = enc.mode_sets(i).parity ^ enc.mode_sets(j).parity
            root_total += (diff & root_mask & ~lower).bit_count()
        sup = enc.raw_hopping(i, j).support()
        in_cell_total += sum(1 for q in sup if layout.cell_of(q) in (ci, cj))
    m = len(edges)
    return HybridWeight(Fraction(root_total, m), Fraction(in_cell_total, m))


def intermediate_roots(enc, i: int, j: int) -> set[int]:
    """Roots in the support of hop ``(i, j)`` that belong to neither target cell."""
    layout = enc.layout
    cells = {layout.cell_of(i), layout.cell_of(j)}
    sup = enc.raw_hopping(i, j).support()
    return {r for c, r in enumerate(layout.roots) if r in sup and c not in cells}


@dataclass
class CrossoverRow:
    N: int
    n: int
    hybrid_avg: float | None
    bk_avg: float | None
    hybrid_below_bk: bool | None
    status: str = "computed"


def crossover_report(N_values: Sequence[int], n: int, max_N: int = 64) -> list[CrossoverRow]:
    """Average Hybrid(n) weight versus Bravyi-Kitaev under all-to-all connectivity.

    Lattices larger than ``max_N`` are listed with status ``"extrapolation only"``
    and no numbers.
    """
    out = []
    for N in N_values:
        if N > max_N:
            out.append(CrossoverRow(N, n, None, None, None, "extrapolation only"))
            continue
        if N % n:
            out.append(CrossoverRow(N, n, None, None, None, "skipped: n does not divide N"))
            continue
        h = compute_row("hybrid", N, n).avg_weight
        b = compute_row("bk", N, None).avg_weight
        out.append(CrossoverRow(N, n, h, b, h < b))
    return out
