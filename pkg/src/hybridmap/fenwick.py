"""Fenwick-tree partial order and its update, parity and flip sets.

Mode ``alpha`` is a node; its parent is obtained by setting the lowest
zero bit (``alpha | (alpha + 1)``), so every node is a copy of its parent
with one 1-bit turned into a 0.  Bit 0 is the least significant bit; this
is the ordering under which the textbook 8-mode example gives
``U(3) = {7}``, ``F(3) = {1, 2}`` and ``P(5) = {3, 4}``.

For sizes that are not a power of two the structure is a forest: ancestors
``>= m`` simply do not exist.
"""

from __future__ import annotations

from functools import lru_cache
from typing import Sequence

import numpy as np


def _n_bits(m: int) -> int:
    return max(1, (m - 1).bit_length())


def _check(alpha: int, m: int | None = None) -> None:
    if alpha < 0 or (m is not None and alpha >= m):
        raise IndexError(f"fenwick: mode {alpha} out of range for tree of size {m}")


def generate_update_set(alpha: int, m: int) -> list[int]:
    """Ancestors of ``alpha`` in a Fenwick tree of ``m`` nodes.

    Walks the bits of ``alpha`` from least significant upward, switching
    each 0-bit to 1 in a running copy; every copy that is still a valid
    node is an ancestor.
    """
    _check(alpha, m)
    out = []
    beta = alpha
    for i in range(_n_bits(m)):
        if not (alpha >> i) & 1:
            beta |= 1 << i
            if beta < m:
                out.append(beta)
    return out


def generate_parity_set(alpha: int) -> list[int]:
    """Nodes whose stored parities sum to the parity of modes ``< alpha``.

    For every 1-bit ``i`` of ``alpha`` the node keeping the higher bits,
    clearing bit ``i`` and filling the lower bits with 1s is added.
    """
    _check(alpha)
    out = []
    for i in range(alpha.bit_length() - 1, -1, -1):
        if (alpha >> i) & 1:
            out.append(((alpha >> (i + 1)) << (i + 1)) | ((1 << i) - 1))
    return sorted(out)


def generate_flip_set(alpha: int) -> list[int]:
    """Children of ``alpha``: clear each bit of its run of trailing 1s."""
    _check(alpha)
    out = []
    i = 0
    while (alpha >> i) & 1:
        out.append(alpha ^ (1 << i))
        i += 1
    return sorted(out)


def parent(alpha: int, m: int) -> int | None:
    p = alpha | (alpha + 1)
    return p if p < m else None


def subtree_range(beta: int) -> range:
    """Modes in the subtree rooted at ``beta`` (including ``beta``)."""
    trailing = (~beta & (beta + 1)).bit_length() - 1
    return range(beta - (1 << trailing) + 1, beta + 1)


def encode_occupations(f: Sequence[int]) -> np.ndarray:
    """Map occupations ``f`` to stored parities ``q``.

    ``q[beta]`` is the XOR of ``f`` over the subtree rooted at ``beta``.
    """
    f = np.asarray(f, dtype=np.uint8) & 1
    prefix = np.concatenate(([0], np.cumsum(f, dtype=np.int64)))
    q = np.empty(len(f), dtype=np.uint8)
    for beta in range(len(f)):
        r = subtree_range(beta)
        q[beta] = (prefix[r.stop] - prefix[r.start]) & 1
    return q


def decode_occupations(q: Sequence[int]) -> np.ndarray:
    """Inverse of :func:`encode_occupations`."""
    q = np.asarray(q, dtype=np.uint8) & 1
    f = q.copy()
    for beta in range(len(q)):
        for c in generate_flip_set(beta):
            f[beta] ^= q[c]
    return f


@lru_cache(maxsize=None)
def _subtree_masks(m: int) -> tuple[int, ...]:
    out = []
    for beta in range(m):
        r = subtree_range(beta)
        out.append(((1 << (r.stop - r.start)) - 1) << r.start)
    return tuple(out)


def encode_mask(f_mask: int, m: int) -> int:
    """Bitmask version of :func:`encode_occupations`."""
    q = 0
    for beta, sub in enumerate(_subtree_masks(m)):
        if (f_mask & sub).bit_count() & 1:
            q |= 1 << beta
    return q


def decode_mask(q_mask: int, m: int) -> int:
    f = 0
    for beta in range(m):
        bit = (q_mask >> beta) & 1
        for c in generate_flip_set(beta):
            bit ^= (q_mask >> c) & 1
        f |= bit << beta
    return f


class FenwickTree:
    """Cached update/parity/flip sets for a tree of ``size`` modes."""

    def __init__(self, size: int):
        if size < 1:
            raise ValueError("Fenwick tree needs at least one node")
        self.size = size
        self._update = [generate_update_set(a, size) for a in range(size)]
        self._parity = [generate_parity_set(a) for a in range(size)]
        self._flip = [generate_flip_set(a) for a in range(size)]

    def update_set(self, alpha: int) -> list[int]:
        return self._update[alpha]

    def parity_set(self, alpha: int) -> list[int]:
        return self._parity[alpha]

    def flip_set(self, alpha: int) -> list[int]:
        return self._flip[alpha]

    def remainder_set(self, alpha: int) -> list[int]:
        """``P(alpha) \\ F(alpha)``: parity nodes outside the subtree."""
        flip = set(self._flip[alpha])
        return [b for b in self._parity[alpha] if b not in flip]

    def parent(self, alpha: int) -> int | None:
        return parent(alpha, self.size)

    @property
    def roots(self) -> list[int]:
        return [a for a in range(self.size) if parent(a, self.size) is None]

    @property
    def is_connected(self) -> bool:
        return len(self.roots) == 1

    def __repr__(self) -> str:
        return f"FenwickTree(size={self.size})"
