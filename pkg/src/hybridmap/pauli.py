"""Symplectic Pauli strings and weighted sums of them.

A :class:`PauliString` stores its X and Z components as integer bitmasks
(bit ``q`` set means the component acts on qubit ``q``) together with a
global phase ``i**phase_exp``.  The letter on a qubit is read off the bit
pair ``(x, z)``: ``(0,0)=I, (1,0)=X, (1,1)=Y, (0,1)=Z``.  Products follow the
convention ``X Z = -i Y``.

:class:`PauliOperator` is a complex linear combination of phase-free
strings, merged and pruned on construction.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, Mapping

import numpy as np

from .errors import DimensionError

PRUNE_TOL = 1e-12

_LETTER_BITS = {"I": (0, 0), "X": (1, 0), "Y": (1, 1), "Z": (0, 1)}
_BITS_LETTER = {v: k for k, v in _LETTER_BITS.items()}
_PHASES = (1, 1j, -1, -1j)

_MATRICES = {
    "I": np.eye(2, dtype=complex),
    "X": np.array([[0, 1], [1, 0]], dtype=complex),
    "Y": np.array([[0, -1j], [1j, 0]], dtype=complex),
    "Z": np.array([[1, 0], [0, -1]], dtype=complex),
}


def _popcount(v: int) -> int:
    return v.bit_count()


def bits_of(m: int) -> list[int]:
    """Indices of the set bits of ``m`` in ascending order."""
    out = []
    while m:
        low = m & -m
        out.append(low.bit_length() - 1)
        m ^= low
    return out


def _mask(qubits: Iterable[int]) -> int:
    m = 0
    for q in qubits:
        m |= 1 << q
    return m


def _check_dims(a, b) -> None:
    if a.n_qubits != b.n_qubits:
        raise DimensionError(
            f"operands act on {a.n_qubits} and {b.n_qubits} qubits"
        )


@dataclass(frozen=True)
class PauliString:
    """A tensor product of Pauli letters with a phase in {1, i, -1, -i}.

    Attributes:
        n_qubits: Number of qubits the string is defined on.
        x: Bitmask of qubits carrying an X component (X or Y).
        z: Bitmask of qubits carrying a Z component (Z or Y).
        phase_exp: Global phase is ``1j ** phase_exp``.
    """

    n_qubits: int
    x: int = 0
    z: int = 0
    phase_exp: int = 0

    def __post_init__(self):
        if self.n_qubits < 0:
            raise ValueError("n_qubits must be nonnegative")
        if (self.x | self.z) >> self.n_qubits:
            raise DimensionError("bitmask exceeds n_qubits")
        object.__setattr__(self, "phase_exp", self.phase_exp % 4)

    # construction -----------------------------------------------------

    @classmethod
    def identity(cls, n_qubits: int) -> PauliString:
        return cls(n_qubits)

    @classmethod
    def from_letters(
        cls, letters: Mapping[int, str], n_qubits: int, phase_exp: int = 0
    ) -> PauliString:
        """Build a string from a ``{qubit: letter}`` mapping."""
        x = z = 0
        for q, letter in letters.items():
            if not 0 <= q < n_qubits:
                raise DimensionError(f"qubit {q} outside 0..{n_qubits - 1}")
            bx, bz = _LETTER_BITS[letter.upper()]
            x |= bx << q
            z |= bz << q
        return cls(n_qubits, x, z, phase_exp)

    @classmethod
    def from_label(cls, label: str, phase_exp: int = 0) -> PauliString:
        """Build from a dense label; character ``k`` acts on qubit ``k``."""
        return cls.from_letters(dict(enumerate(label)), len(label), phase_exp)

    @classmethod
    def from_text(cls, text: str, n_qubits: int) -> PauliString:
        """Parse the sparse form ``"X0 Z1 Y5"`` (``"I"`` for identity)."""
        letters = {}
        for tok in text.split():
            if tok == "I":
                continue
            letters[int(tok[1:])] = tok[0]
        return cls.from_letters(letters, n_qubits)

    # inspection -------------------------------------------------------

    @property
    def phase(self) -> complex:
        return _PHASES[self.phase_exp]

    @property
    def x_bits(self) -> np.ndarray:
        return np.array([(self.x >> q) & 1 for q in range(self.n_qubits)], dtype=np.uint8)

    @property
    def z_bits(self) -> np.ndarray:
        return np.array([(self.z >> q) & 1 for q in range(self.n_qubits)], dtype=np.uint8)

    def letter(self, q: int) -> str:
        return _BITS_LETTER[((self.x >> q) & 1, (self.z >> q) & 1)]

    @property
    def support_mask(self) -> int:
        return self.x | self.z

    def support(self) -> tuple[int, ...]:
        return tuple(bits_of(self.x | self.z))

    @property
    def weight(self) -> int:
        return _popcount(self.x | self.z)

    def without_phase(self) -> PauliString:
        return PauliString(self.n_qubits, self.x, self.z, 0)

    def restricted(self, qubits: Iterable[int]) -> PauliString:
        """Drop every letter outside ``qubits`` (phase kept)."""
        m = _mask(qubits)
        return PauliString(self.n_qubits, self.x & m, self.z & m, self.phase_exp)

    # algebra ----------------------------------------------------------

    def __mul__(self, other: PauliString) -> PauliString:
        if not isinstance(other, PauliString):
            return NotImplemented
        return multiply(self, other)

    def commutes(self, other: PauliString) -> bool:
        return commutes(self, other)

    def __neg__(self) -> PauliString:
        return PauliString(self.n_qubits, self.x, self.z, self.phase_exp + 2)

    def to_matrix(self) -> np.ndarray:
        """Dense ``2**n`` matrix; basis bit ``q`` is qubit ``q``."""
        out = np.ones((1, 1), dtype=complex)
        for q in reversed(range(self.n_qubits)):
            out = np.kron(out, _MATRICES[self.letter(q)])
        return self.phase * out

    def to_text(self) -> str:
        body = " ".join(f"{self.letter(q)}{q}" for q in self.support())
        return body or "I"

    def __str__(self) -> str:
        prefix = {0: "", 1: "i*", 2: "-", 3: "-i*"}[self.phase_exp]
        return prefix + self.to_text()


def multiply(a: PauliString, b: PauliString) -> PauliString:
    """Product ``a @ b`` with the phase tracked exactly."""
    _check_dims(a, b)
    x3 = a.x ^ b.x
    z3 = a.z ^ b.z
    k = (
        a.phase_exp
        + b.phase_exp
        + _popcount(a.x & a.z)
        + _popcount(b.x & b.z)
        + 2 * _popcount(a.z & b.x)
        - _popcount(x3 & z3)
    )
    return PauliString(a.n_qubits, x3, z3, k)


def commutes(a: PauliString, b: PauliString) -> bool:
    """True iff the symplectic inner product of ``a`` and ``b`` vanishes."""
    _check_dims(a, b)
    return (_popcount(a.x & b.z) + _popcount(a.z & b.x)) % 2 == 0


class PauliOperator:
    """A complex linear combination of Pauli strings.

    ``terms`` maps ``(x, z)`` bitmask pairs to coefficients; the phase of
    each string is folded into its coefficient.  Like terms are merged and
    coefficients below ``PRUNE_TOL`` times the largest magnitude are dropped.
    """

    __slots__ = ("n_qubits", "_terms")

    def __init__(self, n_qubits: int, terms: Mapping[tuple[int, int], complex] | None = None):
        self.n_qubits = n_qubits
        self._terms = _pruned(dict(terms or {}))

    @classmethod
    def from_strings(
        cls, n_qubits: int, pairs: Iterable[tuple[complex, PauliString]]
    ) -> PauliOperator:
        acc: dict[tuple[int, int], complex] = {}
        for coeff, ps in pairs:
            if ps.n_qubits != n_qubits:
                raise DimensionError("string size does not match operator size")
            key = (ps.x, ps.z)
            acc[key] = acc.get(key, 0) + coeff * ps.phase
        return cls(n_qubits, acc)

    @classmethod
    def from_string(cls, ps: PauliString, coeff: complex = 1.0) -> PauliOperator:
        return cls.from_strings(ps.n_qubits, [(coeff, ps)])

    @classmethod
    def identity(cls, n_qubits: int, coeff: complex = 1.0) -> PauliOperator:
        return cls(n_qubits, {(0, 0): coeff})

    @classmethod
    def zero(cls, n_qubits: int) -> PauliOperator:
        return cls(n_qubits)

    # access -----------------------------------------------------------

    @property
    def terms(self) -> dict[tuple[int, int], complex]:
        return dict(self._terms)

    def __iter__(self) -> Iterator[tuple[complex, PauliString]]:
        for (x, z), c in sorted(self._terms.items(), key=_term_order):
            yield c, PauliString(self.n_qubits, x, z)

    def __len__(self) -> int:
        return len(self._terms)

    def strings(self) -> list[PauliString]:
        return [ps for _, ps in self]

    def coefficient(self, ps: PauliString) -> complex:
        return self._terms.get((ps.x, ps.z), 0) * ps.phase.conjugate()

    def is_zero(self) -> bool:
        return not self._terms

    def is_identity(self, coeff: complex = 1.0, atol: float = 0.0) -> bool:
        if set(self._terms) != {(0, 0)}:
            return False
        return abs(self._terms[(0, 0)] - coeff) <= atol

    def support_mask(self) -> int:
        m = 0
        for x, z in self._terms:
            m |= x | z
        return m

    def support(self) -> frozenset[int]:
        return frozenset(bits_of(self.support_mask()))

    def max_weight(self) -> int:
        return max((_popcount(x | z) for x, z in self._terms), default=0)

    def is_real(self, atol: float = 1e-12) -> bool:
        return all(abs(c.imag) <= atol for c in self._terms.values())

    # algebra ----------------------------------------------------------

    def __add__(self, other: PauliOperator) -> PauliOperator:
        if not isinstance(other, PauliOperator):
            return NotImplemented
        return op_add(self, other)

    def __sub__(self, other: PauliOperator) -> PauliOperator:
        if not isinstance(other, PauliOperator):
            return NotImplemented
        return op_add(self, -1 * other)

    def __mul__(self, other):
        if isinstance(other, PauliOperator):
            return op_multiply(self, other)
        if isinstance(other, PauliString):
            return op_multiply(self, PauliOperator.from_string(other))
        if isinstance(other, (int, float, complex, np.number)):
            return PauliOperator(self.n_qubits, {k: other * c for k, c in self._terms.items()})
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, (int, float, complex, np.number)):
            return self * other
        if isinstance(other, PauliString):
            return op_multiply(PauliOperator.from_string(other), self)
        return NotImplemented

    def __neg__(self) -> PauliOperator:
        return -1 * self

    def adjoint(self) -> PauliOperator:
        return PauliOperator(self.n_qubits, {k: c.conjugate() for k, c in self._terms.items()})

    def anticommutator(self, other: PauliOperator) -> PauliOperator:
        return op_add(op_multiply(self, other), op_multiply(other, self))

    def map_strings(self, fn) -> PauliOperator:
        """Replace each string ``s`` by ``fn(s)`` keeping its coefficient."""
        return PauliOperator.from_strings(self.n_qubits, ((c, fn(ps)) for c, ps in self))

    def resized(self, n_qubits: int) -> PauliOperator:
        if n_qubits < self.n_qubits and self.support_mask() >> n_qubits:
            raise DimensionError("operator acts beyond the requested size")
        return PauliOperator(n_qubits, self._terms)

    def allclose(self, other: PauliOperator, atol: float = 1e-10) -> bool:
        _check_dims(self, other)
        keys = set(self._terms) | set(other._terms)
        return all(
            abs(self._terms.get(k, 0) - other._terms.get(k, 0)) <= atol for k in keys
        )

    def __eq__(self, other) -> bool:
        if not isinstance(other, PauliOperator):
            return NotImplemented
        return self.n_qubits == other.n_qubits and self._terms == other._terms

    __hash__ = None

    def to_matrix(self) -> np.ndarray:
        dim = 2**self.n_qubits
        out = np.zeros((dim, dim), dtype=complex)
        for c, ps in self:
            out += c * ps.to_matrix()
        return out

    def to_text(self) -> str:
        """One line per term: ``<coeff> <letter><qubit> ...``."""
        if not self._terms:
            return "0 I"
        return "\n".join(f"{format_coeff(c)} {ps.to_text()}" for c, ps in self)

    def __repr__(self) -> str:
        body = " + ".join(f"{format_coeff(c)}*{ps.to_text()}" for c, ps in self)
        return f"PauliOperator({self.n_qubits}, {body or '0'})"


def _term_order(item):
    (x, z), _ = item
    m = x | z
    # ascending support, then letters; deterministic across runs
    return (_popcount(m), bits_of(m), x, z)


def _pruned(terms: dict) -> dict:
    terms = {k: complex(v) for k, v in terms.items()}
    if not terms:
        return terms
    scale = max(abs(v) for v in terms.values())
    if scale == 0:
        return {}
    cutoff = PRUNE_TOL * scale
    return {k: v for k, v in terms.items() if abs(v) > cutoff}


def format_coeff(c: complex) -> str:
    c = complex(c)
    re, im = c.real, c.imag
    if abs(im) <= PRUNE_TOL * max(1.0, abs(re)):
        return f"{re:.12g}"
    if abs(re) <= PRUNE_TOL * max(1.0, abs(im)):
        return f"{im:.12g}j"
    return f"({re:.12g}{im:+.12g}j)"


def op_add(a: PauliOperator, b: PauliOperator) -> PauliOperator:
    _check_dims(a, b)
    acc = a.terms
    for k, c in b._terms.items():
        acc[k] = acc.get(k, 0) + c
    return PauliOperator(a.n_qubits, acc)


def op_multiply(a: PauliOperator, b: PauliOperator) -> PauliOperator:
    _check_dims(a, b)
    acc: dict[tuple[int, int], complex] = {}
    n = a.n_qubits
    for (ax, az), ca in a._terms.items():
        pa = PauliString(n, ax, az)
        for (bx, bz), cb in b._terms.items():
            p = multiply(pa, PauliString(n, bx, bz))
            key = (p.x, p.z)
            acc[key] = acc.get(key, 0) + ca * cb * p.phase
    return PauliOperator(n, acc)


def support(op: PauliOperator) -> frozenset[int]:
    return op.support()


def max_weight(op: PauliOperator) -> int:
    return op.max_weight()


def sigma_minus(q: int, n_qubits: int) -> PauliOperator:
    """``(X_q + i Y_q) / 2 = |0><1|`` on qubit ``q``."""
    return PauliOperator.from_strings(
        n_qubits,
        [
            (0.5, PauliString.from_letters({q: "X"}, n_qubits)),
            (0.5j, PauliString.from_letters({q: "Y"}, n_qubits)),
        ],
    )


def sigma_plus(q: int, n_qubits: int) -> PauliOperator:
    """``(X_q - i Y_q) / 2 = |1><0|`` on qubit ``q``."""
    return sigma_minus(q, n_qubits).adjoint()


def z_string(qubits: Iterable[int], n_qubits: int) -> PauliString:
    return PauliString(n_qubits, 0, _mask(qubits))


def x_string(qubits: Iterable[int], n_qubits: int) -> PauliString:
    return PauliString(n_qubits, _mask(qubits), 0)
