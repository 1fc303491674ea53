"""Linear systems over GF(2) with rows stored as integer bitmasks."""

from __future__ import annotations


class GF2System:
    """Precomputed solver for ``rows[d] . k = v[d]`` (mod 2).

    ``rows`` is a list of ``n_vars``-bit masks.  After a single elimination
    any right-hand side ``v`` (a mask over the rows) can be solved with a
    handful of XORs: the particular solution is linear in ``v``.
    """

    def __init__(self, rows: list[int], n_vars: int):
        self.n_rows = len(rows)
        self.n_vars = n_vars
        low = (1 << n_vars) - 1
        work = [r | (1 << (n_vars + d)) for d, r in enumerate(rows)]
        pivot_cols: list[int] = []
        r = 0
        for col in range(n_vars):
            bit = 1 << col
            sel = next((i for i in range(r, len(work)) if work[i] & bit), None)
            if sel is None:
                continue
            work[r], work[sel] = work[sel], work[r]
            for i in range(len(work)):
                if i != r and work[i] & bit:
                    work[i] ^= work[r]
            pivot_cols.append(col)
            r += 1
        self.rank = r
        pivots = list(zip(pivot_cols, work[:r]))
        # tags of zero rows: consistency conditions on v
        self._checks = [w >> n_vars for w in work[r:]]
        # contribution of each equation to the particular solution
        contrib = [0] * self.n_rows
        for col, w in pivots:
            tag = w >> n_vars
            d = 0
            while tag:
                if tag & 1:
                    contrib[d] |= 1 << col
                tag >>= 1
                d += 1
        self._contrib = contrib
        kernel = []
        for free in range(n_vars):
            if free in pivot_cols:
                continue
            vec = 1 << free
            for col, w in pivots:
                if (w & low) >> free & 1:
                    vec |= 1 << col
            kernel.append(vec)
        self.kernel = kernel

    def is_consistent(self, v: int) -> bool:
        return all((v & t).bit_count() % 2 == 0 for t in self._checks)

    def solve(self, v: int) -> int | None:
        """Particular solution (free variables zero), or ``None``."""
        if not self.is_consistent(v):
            return None
        k = 0
        d = 0
        while v:
            if v & 1:
                k ^= self._contrib[d]
            v >>= 1
            d += 1
        return k

    def solutions(self, v: int, limit: int = 64) -> list[int]:
        """All solutions when the kernel is small, else the first ``limit``."""
        k0 = self.solve(v)
        if k0 is None:
            return []
        out = [k0]
        for vec in self.kernel:
            out += [s ^ vec for s in out]
            if len(out) >= limit:
                return out[:limit]
        return out
