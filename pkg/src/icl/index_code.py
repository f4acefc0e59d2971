"""Linear index codes built from local colorings, and a decodability check.

A linear index code transmits ``C x`` where ``x`` stacks every user's
message (``r`` field symbols each) and ``C`` has one column block per user.
User ``i`` cancels the blocks of packets it already holds; what remains is
its own block ``B(i)`` plus the blocks of its interferers.  It can decode
iff ``B(i)`` has full column rank and its span meets the interference span
only in zero.

Constructions:

* :func:`construct_scalar_code` assigns each color of an optimal local
  coloring of the interference graph a column of a Vandermonde (MDS)
  generator with ``chi_local`` rows.
* :func:`construct_binary_code` uses a random GF(2) generator with
  ``ceil(2 log2 n)`` extra rows instead, retrying until the code verifies.
* :func:`construct_fractional_code` scales an optimal fractional-local LP
  solution to integers, expands it to a list of ``p`` independent sets and
  gives every set one column of a ``(p, s)`` MDS generator.
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from icl.coloring import (
    FractionalSolution,
    LocalColoring,
    fractional_local_chromatic,
    local_chromatic,
)
from icl.gf import (
    GfMatrix,
    PrimeField,
    random_binary_matrix,
    rank,
    smallest_prime_at_least,
    vandermonde_mds,
)
from icl.graphs import Digraph, closed_out_masks, directed_complement


class ConstructionFailed(RuntimeError):
    pass


@dataclass(frozen=True)
class IndexCode:
    field: PrimeField
    code_matrix: GfMatrix
    user_blocks: tuple[tuple[int, int], ...]
    message_len: int = 1
    scheme: str = "custom"
    metadata: dict = field(default_factory=dict, compare=False)

    def __post_init__(self):
        if self.code_matrix.field != self.field:
            raise ValueError("code matrix is over a different field")
        widths = [b - a for a, b in self.user_blocks]
        if any(w != self.message_len for w in widths):
            raise ValueError("every block must be message_len columns wide")
        if sum(widths) != self.code_matrix.cols:
            raise ValueError("block widths do not sum to the matrix width")
        pos = 0
        for a, b in self.user_blocks:
            if a != pos:
                raise ValueError("blocks must tile the columns in order")
            pos = b

    @classmethod
    def uniform(cls, matrix: GfMatrix, message_len: int = 1, **kw) -> "IndexCode":
        n, rem = divmod(matrix.cols, message_len)
        if rem:
            raise ValueError("matrix width is not a multiple of message_len")
        blocks = tuple((i * message_len, (i + 1) * message_len) for i in range(n))
        return cls(matrix.field, matrix, blocks, message_len, **kw)

    @property
    def num_users(self) -> int:
        return len(self.user_blocks)

    @property
    def length(self) -> int:
        """Transmitted field symbols."""
        return self.code_matrix.rows

    @property
    def broadcast_rate(self) -> Fraction:
        return Fraction(self.length, self.message_len)

    @property
    def transmitted_bits(self) -> float:
        return self.length * math.log2(self.field.q)

    def block(self, i: int) -> GfMatrix:
        a, b = self.user_blocks[i]
        return self.code_matrix.select_columns(range(a, b))

    def to_json(self) -> dict:
        return {
            "scheme": self.scheme,
            "field": self.field.q,
            "matrix": self.code_matrix.to_json(),
            "blocks": [list(b) for b in self.user_blocks],
            "message_len": self.message_len,
            "rate": str(self.broadcast_rate),
            "rate_decimal": f"{float(self.broadcast_rate):.12g}",
            "transmitted_bits": f"{self.transmitted_bits:.12g}",
            "metadata": self.metadata,
        }

    @classmethod
    def from_json(cls, obj: dict) -> "IndexCode":
        matrix = GfMatrix.from_json(obj["matrix"])
        if matrix.q != obj["field"]:
            raise ValueError("matrix field does not match code field")
        code = cls(
            matrix.field,
            matrix,
            tuple(tuple(b) for b in obj["blocks"]),
            obj["message_len"],
            obj.get("scheme", "custom"),
            obj.get("metadata", {}),
        )
        if "rate" in obj and Fraction(obj["rate"]) != code.broadcast_rate:
            raise ValueError("stated rate does not match matrix dimensions")
        return code


@dataclass(frozen=True)
class UserCheck:
    own_rank: int
    interference_rank: int
    joint_rank: int
    decodable: bool


@dataclass(frozen=True)
class VerificationReport:
    valid: bool
    per_user: tuple[UserCheck, ...]
    failing_users: tuple[int, ...]

    def to_json(self) -> dict:
        return {
            "valid": self.valid,
            "failing_users": list(self.failing_users),
            "per_user": [
                {"own_rank": u.own_rank, "interference_rank": u.interference_rank, "decodable": u.decodable}
                for u in self.per_user
            ],
        }


def interferers(side_info: Digraph, i: int) -> list[int]:
    """Users whose packets user ``i`` neither wants nor holds."""
    return [k for k in range(side_info.n) if k != i and (i, k) not in side_info.edges]


def verify(code: IndexCode, side_info: Digraph) -> VerificationReport:
    if code.num_users != side_info.n:
        raise ValueError(f"code has {code.num_users} blocks for {side_info.n} users")
    r = code.message_len
    checks = []
    for i in range(side_info.n):
        own = code.block(i)
        cols = [c for k in interferers(side_info, i) for c in range(*code.user_blocks[k])]
        interf = code.code_matrix.select_columns(cols)
        own_rank = rank(own)
        interf_rank = rank(interf)
        joint = rank(own.hstack(interf))
        checks.append(UserCheck(own_rank, interf_rank, joint, own_rank == r and joint == r + interf_rank))
    failing = tuple(i for i, c in enumerate(checks) if not c.decodable)
    return VerificationReport(not failing, tuple(checks), failing)


# ---------------------------------------------------------------------------
# scalar codes
# ---------------------------------------------------------------------------


def _coloring_meta(lc: LocalColoring) -> dict:
    return {"colors": list(lc.color_of), "num_colors": lc.num_colors, "local_value": lc.local_value}


def construct_scalar_code(side_info: Digraph, cap: Optional[int] = None) -> tuple[IndexCode, LocalColoring]:
    if side_info.n == 0:
        raise ValueError("instance has no users")
    lc = local_chromatic(directed_complement(side_info), cap=cap)
    q = smallest_prime_at_least(max(lc.num_colors, 2))
    gen = vandermonde_mds(lc.num_colors, lc.local_value, PrimeField(q))
    code = IndexCode.uniform(
        gen.select_columns(lc.color_of), scheme="scalar", metadata={"coloring": _coloring_meta(lc)}
    )
    return code, lc


def binary_overhead(n: int) -> int:
    """ceil(2 * log2(n)), computed exactly as the least e with 2**e >= n**2."""
    return (n * n - 1).bit_length()


def construct_binary_code(
    side_info: Digraph, seed: int, retries: int = 64, cap: Optional[int] = None
) -> IndexCode:
    """Random GF(2) color-to-column assignment; attempt ``a`` is seeded with ``(seed, a)``."""
    n = side_info.n
    if n < 2:
        raise ValueError("binary construction needs at least two users")
    lc = local_chromatic(directed_complement(side_info), cap=cap)
    rows = lc.local_value + binary_overhead(n)
    for attempt in range(retries):
        gen = random_binary_matrix(rows, lc.num_colors, (seed, attempt))
        code = IndexCode.uniform(
            gen.select_columns(lc.color_of),
            scheme="binary",
            metadata={"seed": seed, "attempts": attempt + 1, "coloring": _coloring_meta(lc)},
        )
        if verify(code, side_info).valid:
            return code
    raise ConstructionFailed(f"no valid binary code in {retries} attempts (seed {seed})")


# ---------------------------------------------------------------------------
# fractional (vector-linear) codes
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class IntegerCover:
    """``p`` independent sets (repeats allowed) covering every vertex exactly
    ``r`` times, each closed out-neighbourhood meeting at most ``s`` of them."""

    r: int
    s: int
    sets: tuple[tuple[int, ...], ...]

    @property
    def p(self) -> int:
        return len(self.sets)


def reduction_step(y: Counter, v: int) -> Counter:
    """Move one unit of weight from the lexicographically largest set holding
    ``v`` to that set minus ``v``."""
    holders = [I for I, w in y.items() if w > 0 and v in I]
    if not holders:
        raise ValueError(f"vertex {v} is in no weighted set")
    I = max(holders)
    out = Counter(y)
    out[I] -= 1
    if not out[I]:
        del out[I]
    out[tuple(u for u in I if u != v)] += 1
    return out


def scaled_weights(sol: FractionalSolution) -> tuple[int, Counter]:
    r = sol.denominator_lcm()
    y = Counter()
    for s, w in zip(sol.family.sets, sol.weights):
        if w:
            y[tuple(s)] += int(w * r)
    return r, y


def _coverage(y: Counter, n: int) -> list[int]:
    cov = [0] * n
    for I, w in y.items():
        for v in I:
            cov[v] += w
    return cov


def locality_counts(y: Counter, digraph: Digraph) -> list[int]:
    closed = closed_out_masks(digraph)
    out = []
    for v in range(digraph.n):
        out.append(sum(w for I, w in y.items() if any(closed[v] >> u & 1 for u in I)))
    return out


def reduce_fractional_solution(sol: FractionalSolution) -> IntegerCover:
    if not sol.is_local:
        raise ValueError("expected a fractional local coloring certificate")
    bad = sol.violations()
    if bad:
        raise ValueError("infeasible certificate: " + "; ".join(bad))
    n = sol.family.graph.n
    r, y = scaled_weights(sol)
    s = sol.objective * r
    if s.denominator != 1:
        raise ValueError("objective times r is not integral")
    s = int(s)
    cov = _coverage(y, n)
    while True:
        excess = [v for v in range(n) if cov[v] > r]
        if not excess:
            break
        v = excess[0]
        y = reduction_step(y, v)
        cov[v] -= 1
    y.pop((), None)  # empty sets cover nothing and meet no neighbourhood
    sets = tuple(I for I in sorted(y) for _ in range(y[I]))
    cover = IntegerCover(r, s, sets)
    if any(c != r for c in _coverage(y, n)):
        raise ArithmeticError("reduction left a vertex with coverage != r")
    if any(c > s for c in locality_counts(y, sol.digraph)):
        raise ArithmeticError("reduction increased a locality count")
    return cover


def construct_fractional_code(side_info: Digraph, cap: Optional[int] = None) -> IndexCode:
    if side_info.n == 0:
        raise ValueError("instance has no users")
    interference = directed_complement(side_info)
    t, sol = fractional_local_chromatic(interference, cap=cap)
    cover = reduce_fractional_solution(sol)
    if cover.s > cover.p:
        raise ArithmeticError(f"s={cover.s} exceeds p={cover.p}")
    q = smallest_prime_at_least(cover.p + 1)
    gen = vandermonde_mds(cover.p, cover.s, PrimeField(q))
    columns = [j for v in range(side_info.n) for j, I in enumerate(cover.sets) if v in I]
    code = IndexCode.uniform(
        gen.select_columns(columns),
        message_len=cover.r,
        scheme="fractional",
        metadata={
            "r": cover.r,
            "s": cover.s,
            "p": cover.p,
            "sets": [list(I) for I in cover.sets],
            "exact_lp": sol.exact,
            "chi_fractional_local": str(t),
        },
    )
    if code.broadcast_rate != t:
        raise ArithmeticError(f"rate {code.broadcast_rate} != LP optimum {t}")
    return code
