"""Extremal instance families.

``odd_even_tournament`` orients K_n so every out-degree is at most n/2 + 1
while the shadow stays complete (chi_f = n): a linear additive gap between
the local and fractional chromatic numbers.

``universal_digraph`` materializes U_d(r, m, k), whose vertices are pairs
(X, A) of disjoint subsets of range(m) with |X| = r, |A| = k - r, and an
edge (X, A) -> (Y, B) whenever Y is a subset of A.  The ratio functions use
closed forms only and never build the graph.
"""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Iterable, Optional

from icl.config import DEFAULT_CAPS, CapExceeded
from icl.graphs import Digraph

# Upper bound on chi_f / chi_local for every digraph with at least one edge.
RATIO_BOUND = 1.25 * math.exp(2)


def odd_even_tournament(n: int) -> Digraph:
    """Orientation of K_n on labels 1..n, stored as vertex ``label - 1``.

    Two odds or two evens: smaller label -> larger label.
    An odd and an even: larger label -> smaller label.
    """
    if n < 2:
        raise ValueError("n must be at least 2")
    edges = []
    for a in range(1, n + 1):
        for b in range(a + 1, n + 1):
            if a % 2 == b % 2:
                edges.append((a - 1, b - 1))
            else:
                edges.append((b - 1, a - 1))
    return Digraph.from_edges(n, edges)


@dataclass(frozen=True)
class UniversalParams:
    m: int
    k: int
    r: int = 1

    def __post_init__(self):
        if self.k < 2:
            raise ValueError("k must be at least 2")
        if not 1 <= self.r < self.k <= self.m:
            raise ValueError(f"need 1 <= r < k <= m, got r={self.r}, k={self.k}, m={self.m}")

    @property
    def num_vertices(self) -> int:
        return math.comb(self.m, self.r) * math.comb(self.m - self.r, self.k - self.r)


@dataclass(frozen=True)
class UniversalGraph:
    params: UniversalParams
    labels: tuple[tuple[tuple[int, ...], tuple[int, ...]], ...]
    digraph: Digraph


def universal_digraph(params: UniversalParams, cap: Optional[int] = None) -> UniversalGraph:
    cap = DEFAULT_CAPS.universal_vertices if cap is None else cap
    if params.num_vertices > cap:
        raise CapExceeded(f"U_d{params} has {params.num_vertices} vertices, cap {cap}")
    m, k, r = params.m, params.k, params.r
    labels = []
    for X in combinations(range(m), r):
        rest = [e for e in range(m) if e not in X]
        for A in combinations(rest, k - r):
            labels.append((X, A))
    labels.sort()
    sets = [(frozenset(X), frozenset(A)) for X, A in labels]
    edges = [(i, j) for i, (_, A) in enumerate(sets) for j, (Y, _) in enumerate(sets) if Y <= A]
    return UniversalGraph(params, tuple(labels), Digraph.from_edges(len(labels), edges))


def _alpha_terms(m: int, k: int) -> Iterable[tuple[int, int]]:
    for p in range(1, m - k + 2):
        yield p, p * math.comb(m - p, k - 1)


def universal_alpha(params: UniversalParams) -> int:
    """Independence number of U(m, k) (r = 1); for r > 1 a lower bound."""
    best = max(val for _, val in _alpha_terms(params.m, params.k))
    return best * math.comb(params.k - 1, params.r - 1)


def universal_alpha_argmax(params: UniversalParams) -> int:
    best_p, best = 1, -1
    for p, val in _alpha_terms(params.m, params.k):
        if val > best:
            best_p, best = p, val
    return best_p


@dataclass(frozen=True)
class RatioReport:
    params: UniversalParams
    num_vertices: int
    alpha: int
    chi_f: Fraction
    chi_local: int
    ratio: Fraction
    exact: bool  # False when alpha is only a lower bound (r > 1)

    @property
    def bound_ok(self) -> bool:
        return self.ratio <= Fraction(RATIO_BOUND)

    def row(self) -> dict:
        return {
            "r": self.params.r,
            "m": self.params.m,
            "k": self.params.k,
            "num_vertices": self.num_vertices,
            "alpha": self.alpha,
            "chi_f": str(self.chi_f),
            "ratio": f"{float(self.ratio):.12g}",
            "bound_ok": self.bound_ok,
        }

    def to_json(self) -> dict:
        out = self.row()
        out.update({"chi_local": self.chi_local, "ratio_exact": str(self.ratio), "exact": self.exact})
        return out


def universal_ratio(params: UniversalParams) -> RatioReport:
    """chi_f(U(r, m, k)) / (k / r) from |V| / alpha (the graph is vertex transitive).

    For r > 1 alpha is a lower bound, so chi_f and the ratio are upper bounds.
    """
    nv = params.num_vertices
    alpha = universal_alpha(params)
    chi_f = Fraction(nv, alpha)
    ratio = chi_f / Fraction(params.k, params.r)
    return RatioReport(params, nv, alpha, chi_f, params.k, ratio, exact=params.r == 1)


def ratio_sweep(m_range: Iterable[int], k_range: Iterable[int], r: int = 1) -> list[RatioReport]:
    """Reports for every valid (m, k) pair, ordered by k then m."""
    reports = []
    ms = list(m_range)
    for k in k_range:
        for m in ms:
            if r < k <= m:
                reports.append(universal_ratio(UniversalParams(m, k, r)))
    return reports


CSV_COLUMNS = ["r", "m", "k", "num_vertices", "alpha", "chi_f", "ratio", "bound_ok"]


def sweep_csv(reports: Iterable[RatioReport]) -> str:
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=CSV_COLUMNS, lineterminator="\n")
    writer.writeheader()
    for rep in reports:
        writer.writerow(rep.row())
    return buf.getvalue()


def random_digraph(n: int, p: float, seed) -> Digraph:
    """Each ordered pair is an edge independently with probability ``p``."""
    import numpy as np

    rng = np.random.Generator(np.random.PCG64(seed))
    mask = rng.random((n, n)) < p
    return Digraph(n, frozenset((i, j) for i in range(n) for j in range(n) if i != j and mask[i, j]))
