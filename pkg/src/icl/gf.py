"""Dense linear algebra over prime fields GF(q).

Matrices are numpy ``int64`` arrays of residues.  Row operations reduce
mod q after every multiply, so any prime q < 2**31 is safe.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence, Union

import numpy as np


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    if p % 2 == 0:
        return p == 2
    d = 3
    while d * d <= p:
        if p % d == 0:
            return False
        d += 2
    return True


def smallest_prime_at_least(p: int) -> int:
    if p < 1:
        raise ValueError("p must be >= 1")
    q = max(p, 2)
    while not is_prime(q):
        q += 1
    return q


@dataclass(frozen=True)
class PrimeField:
    q: int

    def __post_init__(self):
        if not is_prime(self.q):
            raise ValueError(f"{self.q} is not prime")
        if self.q >= 2**31:
            raise ValueError("modulus too large for int64 row operations")

    def inv(self, a: int) -> int:
        a %= self.q
        if a == 0:
            raise ZeroDivisionError("0 has no inverse")
        return pow(a, self.q - 2, self.q)


class GfMatrix:
    """Immutable matrix over a prime field."""

    __slots__ = ("field", "data")

    def __init__(self, field: PrimeField, data):
        arr = np.array(data, dtype=np.int64)
        if arr.ndim == 1 and arr.size == 0:
            arr = arr.reshape(0, 0)
        if arr.ndim != 2:
            raise ValueError("matrix data must be two-dimensional")
        if arr.size and (arr.min() < 0 or arr.max() >= field.q):
            raise ValueError(f"entries must be residues mod {field.q}")
        arr.setflags(write=False)
        self.field = field
        self.data = arr

    @classmethod
    def zeros(cls, field: PrimeField, rows: int, cols: int) -> "GfMatrix":
        return cls(field, np.zeros((rows, cols), dtype=np.int64))

    @classmethod
    def identity(cls, field: PrimeField, n: int) -> "GfMatrix":
        return cls(field, np.eye(n, dtype=np.int64))

    @property
    def rows(self) -> int:
        return self.data.shape[0]

    @property
    def cols(self) -> int:
        return self.data.shape[1]

    @property
    def q(self) -> int:
        return self.field.q

    def column(self, j: int) -> np.ndarray:
        return self.data[:, j].copy()

    def select_columns(self, idx: Sequence[int]) -> "GfMatrix":
        idx = list(idx)
        if not idx:
            return GfMatrix(self.field, np.zeros((self.rows, 0), dtype=np.int64))
        return GfMatrix(self.field, self.data[:, idx])

    def hstack(self, other: "GfMatrix") -> "GfMatrix":
        _same_field(self, other)
        if self.rows != other.rows:
            raise ValueError("row counts differ")
        return GfMatrix(self.field, np.hstack([self.data, other.data]))

    def __eq__(self, other):
        return (
            isinstance(other, GfMatrix)
            and self.field == other.field
            and self.data.shape == other.data.shape
            and bool(np.array_equal(self.data, other.data))
        )

    def __hash__(self):
        return hash((self.field.q, self.data.shape, self.data.tobytes()))

    def __repr__(self):
        return f"GfMatrix(q={self.q}, {self.data.tolist()})"

    def to_json(self) -> dict:
        return {"q": self.q, "rows": self.rows, "cols": self.cols, "data": self.data.tolist()}

    @classmethod
    def from_json(cls, obj: dict) -> "GfMatrix":
        rows, cols = obj["rows"], obj["cols"]
        data = np.array(obj["data"], dtype=np.int64).reshape(rows, cols)
        return cls(PrimeField(obj["q"]), data)


def _same_field(a: GfMatrix, b: GfMatrix):
    if a.field != b.field:
        raise ValueError(f"field mismatch: GF({a.q}) vs GF({b.q})")


def row_echelon(m: GfMatrix) -> tuple[np.ndarray, list[int]]:
    """Row-reduce over GF(q); returns (echelon form, pivot columns)."""
    q = m.q
    R = m.data.copy()
    rows, cols = R.shape
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.flatnonzero(R[r:, c])
        if nz.size == 0:
            continue
        p = r + int(nz[0])
        if p != r:
            R[[r, p]] = R[[p, r]]
        R[r] = (R[r] * m.field.inv(int(R[r, c]))) % q
        below = np.flatnonzero(R[r + 1 :, c]) + r + 1
        if below.size:
            R[below] = (R[below] - np.outer(R[below, c], R[r])) % q
        pivots.append(c)
        r += 1
    return R, pivots


def rank(m: GfMatrix) -> int:
    if m.rows == 0 or m.cols == 0:
        return 0
    return len(row_echelon(m)[1])


def in_span(v: Union[Sequence[int], np.ndarray], basis: GfMatrix) -> bool:
    """True iff column ``v`` lies in the column span of ``basis``."""
    col = np.asarray(v, dtype=np.int64).reshape(-1)
    if col.size != basis.rows:
        raise ValueError(f"vector length {col.size} does not match {basis.rows} rows")
    col = col % basis.q
    if basis.cols == 0:
        return not col.any()
    aug = basis.hstack(GfMatrix(basis.field, col.reshape(-1, 1)))
    return rank(aug) == rank(basis)


def vandermonde_mds(p: int, k: int, field: PrimeField) -> GfMatrix:
    """k x p generator with column j = (1, j, j^2, ..., j^(k-1)) mod q.

    Distinct evaluation points make every k columns independent.
    """
    if not 0 <= k <= p:
        raise ValueError(f"need 0 <= k <= p, got k={k}, p={p}")
    if p > field.q:
        raise ValueError(f"p={p} exceeds field size {field.q}; evaluation points would repeat")
    q = field.q
    data = np.zeros((k, p), dtype=np.int64)
    for j in range(p):
        acc = 1
        for i in range(k):
            data[i, j] = acc
            acc = acc * j % q
    return GfMatrix(field, data)


def random_binary_matrix(rows: int, cols: int, seed) -> GfMatrix:
    """Uniform GF(2) matrix from numpy's PCG64 seeded with ``seed``.

    ``seed`` may be an int or a sequence of ints (e.g. ``(seed, attempt)``).
    """
    rng = np.random.Generator(np.random.PCG64(seed))
    return GfMatrix(PrimeField(2), rng.integers(0, 2, size=(rows, cols), dtype=np.int64))
