"""Brute-force oracles shared by the unit and acceptance tests."""

from functools import lru_cache

import numpy as np


@lru_cache(maxsize=None)
def connected_masks(rows, cols):
    """Oracle: every vertex set of the grid whose induced subgraph is connected."""
    n = rows * cols
    nbr = []
    for v in range(n):
        r, c = divmod(v, cols)
        m = 0
        for rr, cc in ((r - 1, c), (r + 1, c), (r, c - 1), (r, c + 1)):
            if 0 <= rr < rows and 0 <= cc < cols:
                m |= 1 << (rr * cols + cc)
        nbr.append(m)
    out = []
    for mask in range(1, 1 << n):
        reach = mask & -mask
        while True:
            grow = reach
            rest = reach
            while rest:
                low = rest & -rest
                grow |= nbr[low.bit_length() - 1]
                rest ^= low
            grow &= mask
            if grow == reach:
                break
            reach = grow
        if reach == mask:
            out.append(mask)
    out.sort(key=lambda m: (bin(m).count("1"), m))
    arr = np.array(out, dtype=np.int64)
    return arr, np.array([bin(m).count("1") for m in out])


def brute_force_vertices(rows, cols, terminals):
    masks, sizes = connected_masks(rows, cols)
    t = sum(1 << v for v in terminals)
    hit = np.flatnonzero((masks & t) == t)[0]
    return int(sizes[hit])
