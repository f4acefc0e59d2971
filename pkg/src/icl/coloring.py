"""Exact coloring invariants on small instances.

All four quantities are taken on a digraph ``g`` (normally an interference
graph) and on the undirected graph obtained by ignoring its orientation:

* ``chromatic_number``            chi of an undirected graph
* ``fractional_chromatic``        chi_f, covering LP over maximal independent sets
* ``local_chromatic``             min over proper colorings of the most colorful
                                  closed out-neighbourhood
* ``fractional_local_chromatic``  LP relaxation of the local-coloring program

plus r-fold local colorings and ``minrank2`` of a side-information graph.
LPs are solved exactly (see :mod:`icl.lp`) by column generation; the returned
solutions carry certificates that are re-checked by substitution.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

import numpy as np

from icl.config import DEFAULT_CAPS, check_cap
from icl.graphs import Digraph, UndirectedGraph, closed_out_masks, shadow
from icl.lp import maximize

# Above this size the fractional-local LP is restricted to maximal sets
# (an upper bound only) because enumerating every independent set is too costly.
ALL_SETS_LIMIT = 15


def _bits(mask: int) -> list[int]:
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return out


def _mask(vertices) -> int:
    m = 0
    for v in vertices:
        m |= 1 << v
    return m


def _set_key(mask: int) -> tuple[int, ...]:
    return tuple(_bits(mask))


# ---------------------------------------------------------------------------
# domain types
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class IndependentSetFamily:
    graph: UndirectedGraph
    sets: tuple[tuple[int, ...], ...]
    maximal_only: bool

    def __post_init__(self):
        adj = self.graph.adj_masks
        for s in self.sets:
            m = _mask(s)
            if any(adj[v] & m for v in s):
                raise ValueError(f"set {s} is not independent")

    def masks(self) -> list[int]:
        return [_mask(s) for s in self.sets]


@dataclass(frozen=True)
class ProperColoring:
    graph: UndirectedGraph
    color_of: tuple[int, ...]
    num_colors: int

    def __post_init__(self):
        if len(self.color_of) != self.graph.n:
            raise ValueError("one color per vertex required")
        if set(self.color_of) != set(range(self.num_colors)):
            raise ValueError("colors must be exactly 0..num_colors-1")
        for e in self.graph.edges:
            i, j = tuple(e)
            if self.color_of[i] == self.color_of[j]:
                raise ValueError(f"adjacent vertices {i},{j} share color {self.color_of[i]}")

    @classmethod
    def from_colors(cls, graph: UndirectedGraph, colors: Sequence[int]) -> "ProperColoring":
        colors = tuple(colors)
        return cls(graph, colors, len(set(colors)))

    def classes(self) -> list[tuple[int, ...]]:
        return [tuple(v for v, c in enumerate(self.color_of) if c == k) for k in range(self.num_colors)]


def local_count(g: Digraph, colors: Sequence[int], v: int) -> int:
    """Number of distinct colors on the closed out-neighbourhood of ``v``."""
    return len({colors[v], *(colors[w] for w in g.out_neighbors(v))})


@dataclass(frozen=True)
class LocalColoring:
    base: ProperColoring
    digraph: Digraph
    local_value: int

    def __post_init__(self):
        if self.base.graph != shadow(self.digraph):
            raise ValueError("base coloring must live on the shadow of the digraph")
        actual = max((local_count(self.digraph, self.base.color_of, v) for v in range(self.digraph.n)), default=0)
        if actual != self.local_value:
            raise ValueError(f"local value {self.local_value} does not match coloring ({actual})")

    @property
    def num_colors(self) -> int:
        return self.base.num_colors

    @property
    def color_of(self) -> tuple[int, ...]:
        return self.base.color_of


@dataclass(frozen=True)
class FractionalSolution:
    """Weights on independent sets; ``digraph`` set means the local program."""

    family: IndependentSetFamily
    weights: tuple[Fraction, ...]
    objective: Fraction
    digraph: Optional[Digraph] = None
    exact: bool = True

    def weight_of(self, i: int) -> Fraction:
        return self.weights[i]

    @property
    def is_local(self) -> bool:
        return self.digraph is not None

    def coverage(self, v: int) -> Fraction:
        return sum((w for s, w in zip(self.family.sets, self.weights) if v in s), Fraction(0))

    def locality(self, v: int) -> Fraction:
        nb = closed_out_masks(self.digraph)[v]
        return sum((w for m, w in zip(self.family.masks(), self.weights) if m & nb), Fraction(0))

    def violations(self) -> list[str]:
        bad = []
        if any(w < 0 for w in self.weights):
            bad.append("negative weight")
        for v in range(self.family.graph.n):
            if self.coverage(v) < 1:
                bad.append(f"vertex {v} covered {self.coverage(v)} < 1")
            if self.is_local and self.locality(v) > self.objective:
                bad.append(f"vertex {v} locality {self.locality(v)} > {self.objective}")
        if not self.is_local and sum(self.weights, Fraction(0)) != self.objective:
            bad.append("objective is not the total weight")
        return bad

    def denominator_lcm(self) -> int:
        return math.lcm(1, *(w.denominator for w in self.weights))


@dataclass(frozen=True)
class RFoldColoring:
    graph: Digraph
    r: int
    colors_of: tuple[frozenset[int], ...]
    local_value: int

    def __post_init__(self):
        if any(len(c) != self.r for c in self.colors_of):
            raise ValueError("every vertex needs exactly r colors")
        for e in shadow(self.graph).edges:
            i, j = tuple(e)
            if self.colors_of[i] & self.colors_of[j]:
                raise ValueError(f"adjacent vertices {i},{j} share colors")
        actual = max((len(self._seen(v)) for v in range(self.graph.n)), default=0)
        if actual != self.local_value:
            raise ValueError(f"local value {self.local_value} does not match coloring ({actual})")

    def _seen(self, v):
        return self.colors_of[v].union(*(self.colors_of[w] for w in self.graph.out_neighbors(v)))

    @property
    def ratio(self) -> Fraction:
        return Fraction(self.local_value, self.r)


# ---------------------------------------------------------------------------
# independent sets and cliques
# ---------------------------------------------------------------------------


def _all_independent_masks(adj: Sequence[int]) -> list[int]:
    sets = [0]
    for v in range(len(adj)):
        sets += [s | (1 << v) for s in sets if not s & adj[v]]
    return [s for s in sets if s]


def _maximal_independent_masks(adj: Sequence[int]) -> list[int]:
    n = len(adj)
    full = (1 << n) - 1
    nonadj = [full & ~adj[v] & ~(1 << v) for v in range(n)]
    out: list[int] = []

    # Bron-Kerbosch with pivoting on the complement graph
    def bk(R, P, X):
        if not P and not X:
            out.append(R)
            return
        u = max(_bits(P | X), key=lambda w: (P & nonadj[w]).bit_count())
        for v in _bits(P & ~nonadj[u]):
            bit = 1 << v
            bk(R | bit, P & nonadj[v], X & nonadj[v])
            P &= ~bit
            X |= bit

    bk(0, full, 0)
    return out


def enumerate_independent_sets(
    g: UndirectedGraph, maximal_only: bool = True, cap: Optional[int] = None
) -> IndependentSetFamily:
    """Non-empty independent sets of ``g``, sorted lexicographically."""
    check_cap(g.n, cap, DEFAULT_CAPS.n, "enumerate_independent_sets")
    if g.n == 0:
        return IndependentSetFamily(g, (), maximal_only)
    masks = _maximal_independent_masks(g.adj_masks) if maximal_only else _all_independent_masks(g.adj_masks)
    return IndependentSetFamily(g, tuple(sorted(_set_key(m) for m in masks)), maximal_only)


def _color_order(adj, cand):
    """Greedy-color ``cand``; return vertices with their (non-decreasing) color
    numbers, which bound the clique size among each prefix."""
    order, bounds = [], []
    uncolored, color = cand, 0
    while uncolored:
        color += 1
        q = uncolored
        while q:
            v = (q & -q).bit_length() - 1
            q &= ~adj[v] & ~(1 << v)
            uncolored &= ~(1 << v)
            order.append(v)
            bounds.append(color)
    return order, bounds


def max_clique_size(adj: Sequence[int], within: Optional[int] = None, at_least: int = 0) -> int:
    """Clique number of the subgraph induced by ``within`` (branch and bound
    with a greedy-coloring bound).  Returns ``at_least`` if no larger clique."""
    cand = (1 << len(adj)) - 1 if within is None else within
    best = at_least

    def rec(size, cand):
        nonlocal best
        order, bounds = _color_order(adj, cand)
        for v, b in zip(reversed(order), reversed(bounds)):
            if size + b <= best:
                return
            sub = cand & adj[v]
            if sub:
                rec(size + 1, sub)
            elif size + 1 > best:
                best = size + 1
            cand &= ~(1 << v)

    if cand:
        rec(0, cand)
    return best


# ---------------------------------------------------------------------------
# coloring search
# ---------------------------------------------------------------------------


def _search_coloring(adj, closed, max_colors, local_bound=None) -> Optional[list[int]]:
    """Backtracking search for a proper coloring with at most ``max_colors``
    colors and, if ``local_bound`` is given, at most that many colors on every
    closed out-neighbourhood.  Most-constrained vertex first, lowest index on
    ties; new colors are introduced in order so color symmetry is broken.
    """
    n = len(adj)
    color = [-1] * n
    # vertices whose closed out-neighbourhood contains w
    watchers = [[v for v in range(n) if closed[v] >> w & 1] for w in range(n)]
    seen = [0] * n  # colors present so far on each closed out-neighbourhood
    nbrs = [_bits(a) for a in adj]

    def domain(w, used):
        forb = 0
        for u in nbrs[w]:
            if color[u] >= 0:
                forb |= 1 << color[u]
        allowed = ((1 << used) - 1) & ~forb
        fresh = used < max_colors
        if local_bound is not None:
            for v in watchers[w]:
                s = seen[v]
                if s.bit_count() >= local_bound:
                    allowed &= s
                    fresh = False
        return allowed, fresh

    def rec(done, used):
        if done == n:
            return True
        best = None
        for w in range(n):
            if color[w] < 0:
                allowed, fresh = domain(w, used)
                size = allowed.bit_count() + fresh
                if size == 0:
                    return False
                if best is None or size < best[0]:
                    best = (size, w, allowed, fresh)
                    if size == 1:
                        break
        _, w, allowed, fresh = best
        choices = _bits(allowed) + ([used] if fresh else [])
        for c in choices:
            saved = [seen[v] for v in watchers[w]]
            color[w] = c
            for v in watchers[w]:
                seen[v] |= 1 << c
            if rec(done + 1, max(used, c + 1)):
                return True
            color[w] = -1
            for v, s in zip(watchers[w], saved):
                seen[v] = s
        return False

    return color if rec(0, 0) else None


def chromatic_coloring(g: UndirectedGraph, cap: Optional[int] = None) -> ProperColoring:
    check_cap(g.n, cap, DEFAULT_CAPS.n, "chromatic_number")
    if g.n == 0:
        return ProperColoring(g, (), 0)
    closed = [1 << v for v in range(g.n)]
    for k in range(max(1, max_clique_size(g.adj_masks)), g.n + 1):
        colors = _search_coloring(g.adj_masks, closed, k)
        if colors is not None:
            return ProperColoring.from_colors(g, colors)
    raise AssertionError("unreachable: n colors always suffice")


def chromatic_number(g: UndirectedGraph, cap: Optional[int] = None) -> int:
    return chromatic_coloring(g, cap).num_colors


def local_clique_bound(g: Digraph) -> int:
    """Largest clique of the shadow inside any closed out-neighbourhood."""
    adj = shadow(g).adj_masks
    best = 0
    for m in closed_out_masks(g):
        best = max_clique_size(adj, m, at_least=best)
    return best


def local_chromatic(g: Digraph, cap: Optional[int] = None) -> LocalColoring:
    """Optimal local coloring; colorings may use up to ``n`` colors."""
    check_cap(g.n, cap, DEFAULT_CAPS.n, "local_chromatic")
    sh = shadow(g)
    if g.n == 0:
        return LocalColoring(ProperColoring(sh, (), 0), g, 0)
    closed = closed_out_masks(g)
    for k in range(max(1, local_clique_bound(g)), g.n + 1):
        colors = _search_coloring(sh.adj_masks, closed, g.n, local_bound=k)
        if colors is not None:
            return LocalColoring(ProperColoring.from_colors(sh, colors), g, k)
    raise AssertionError("unreachable: an all-distinct coloring has local value <= n")


# ---------------------------------------------------------------------------
# covering LPs by column generation
# ---------------------------------------------------------------------------


def _int_scale(values: Sequence[Fraction]) -> tuple[list[int], int]:
    d = math.lcm(1, *(v.denominator for v in values))
    return [int(v * d) for v in values], d


def _scores(M: np.ndarray, weights: list[int]) -> np.ndarray:
    bound = max((abs(w) for w in weights), default=0) * max(M.shape[1], 1)
    if bound < 2**62:
        return M @ np.array(weights, dtype=np.int64)
    return M.astype(object) @ np.array(weights, dtype=object)


def _column_generation(n, cand, touch, seed, batch):
    """Solve the covering LP over the columns ``cand`` (bitmasks).

    Without ``touch`` this is ``min sum x  s.t.  coverage >= 1``; with it,
    ``min t  s.t.  coverage >= 1, locality <= t``.  Works on the dual (whose
    origin is feasible) and adds the most violated dual rows until none
    remain, so the final primal is optimal over every candidate column.
    Returns (active indices, primal weights, optimum).
    """
    local = touch is not None
    M = np.array([[m >> v & 1 for v in range(n)] for m in cand], dtype=np.int64)
    T = np.array([[m >> v & 1 for v in range(n)] for m in touch], dtype=np.int64) if local else None
    active = list(dict.fromkeys(seed))
    in_active = set(active)
    while True:
        A, b = [], []
        for idx in active:
            row = [cand[idx] >> v & 1 for v in range(n)]
            if local:
                row += [-(touch[idx] >> v & 1) for v in range(n)]
            A.append(row)
            b.append(0 if local else 1)
        if local:
            A.append([0] * n + [1] * n)
            b.append(1)
        c = [1] * n + ([0] * n if local else [])
        res = maximize(c, A, b)

        ys, d = _int_scale(res.primal)
        score = _scores(M, ys[:n])
        if local:
            score = score - _scores(T, ys[n:])
            threshold = 0
        else:
            threshold = d
        order = sorted(
            (i for i in np.flatnonzero(score > threshold).tolist() if i not in in_active),
            key=lambda i: (-score[i], i),
        )
        if not order:
            break
        for i in order[:batch]:
            active.append(i)
            in_active.add(i)

    weights = res.dual[: len(active)]
    optimum = res.dual[-1] if local else res.value
    if optimum != res.value or not local and sum(weights) != res.value:
        raise ArithmeticError("primal and dual objectives differ")
    return active, weights, optimum


def _solution(graph, cand, active, weights, optimum, digraph, maximal_only, exact):
    support = sorted((_set_key(cand[i]), w) for i, w in zip(active, weights) if w > 0)
    family = IndependentSetFamily(graph, tuple(s for s, _ in support), maximal_only)
    sol = FractionalSolution(family, tuple(w for _, w in support), optimum, digraph, exact)
    bad = sol.violations()
    if bad:
        raise ArithmeticError("LP certificate failed: " + "; ".join(bad))
    return sol


def _covering_seed(n, cand):
    seed = []
    for v in range(n):
        seed.append(next(i for i, m in enumerate(cand) if m >> v & 1))
    return seed


def fractional_chromatic(g: UndirectedGraph, cap: Optional[int] = None) -> tuple[Fraction, FractionalSolution]:
    check_cap(g.n, cap, DEFAULT_CAPS.n, "fractional_chromatic")
    if g.n == 0:
        return Fraction(0), FractionalSolution(IndependentSetFamily(g, (), True), (), Fraction(0))
    cand = [_mask(s) for s in enumerate_independent_sets(g, True, cap=g.n).sets]
    active, weights, opt = _column_generation(g.n, cand, None, _covering_seed(g.n, cand), batch=max(5, g.n))
    return opt, _solution(g, cand, active, weights, opt, None, True, True)


def fractional_local_chromatic(g: Digraph, cap: Optional[int] = None) -> tuple[Fraction, FractionalSolution]:
    """Exact LP relaxation of the local-coloring program.

    Uses every independent set of the shadow up to ``ALL_SETS_LIMIT``
    vertices; beyond that only maximal sets, and the solution is marked
    ``exact=False`` (an upper bound).
    """
    check_cap(g.n, cap, DEFAULT_CAPS.frac_local_n, "fractional_local_chromatic")
    sh = shadow(g)
    if g.n == 0:
        return Fraction(0), FractionalSolution(IndependentSetFamily(sh, (), False), (), Fraction(0), g)
    exact = g.n <= ALL_SETS_LIMIT
    fam = enumerate_independent_sets(sh, maximal_only=not exact, cap=g.n)
    cand = [_mask(s) for s in fam.sets]
    closed = closed_out_masks(g)
    touch = [_mask(v for v in range(g.n) if closed[v] & m) for m in cand]
    index = {m: i for i, m in enumerate(cand)}
    if exact:
        seed = [index[1 << v] for v in range(g.n)]
    else:
        seed = _covering_seed(g.n, cand)
    active, weights, opt = _column_generation(g.n, cand, touch, seed, batch=max(5, g.n))
    return opt, _solution(sh, cand, active, weights, opt, g, not exact, exact)


# ---------------------------------------------------------------------------
# r-fold local colorings
# ---------------------------------------------------------------------------


def _search_rfold(adj, closed, r, bound) -> Optional[list[int]]:
    n = len(adj)
    sets = [0] * n
    watchers = [[v for v in range(n) if closed[v] >> w & 1] for w in range(n)]
    seen = [0] * n
    nbrs = [_bits(a) for a in adj]

    def rec(w, used):
        if w == n:
            return True
        forb = 0
        for u in nbrs[w]:
            forb |= sets[u]
        reuse = _bits(((1 << used) - 1) & ~forb)
        for fresh in range(max(0, r - len(reuse)), r + 1):
            new_bits = _mask(range(used, used + fresh))
            for combo in itertools.combinations(reuse, r - fresh):
                s = _mask(combo) | new_bits
                if any((seen[v] | s).bit_count() > bound for v in watchers[w]):
                    continue
                saved = [seen[v] for v in watchers[w]]
                sets[w] = s
                for v in watchers[w]:
                    seen[v] |= s
                if rec(w + 1, used + fresh):
                    return True
                sets[w] = 0
                for v, old in zip(watchers[w], saved):
                    seen[v] = old
        return False

    return sets if rec(0, 0) else None


def r_fold_local_chromatic(
    g: Digraph, r: int, cap: Optional[int] = None, max_r: Optional[int] = None
) -> RFoldColoring:
    """Exact r-fold local chromatic number with a witness coloring."""
    check_cap(g.n, cap, DEFAULT_CAPS.rfold_n, "r_fold_local_chromatic")
    check_cap(r, max_r, DEFAULT_CAPS.rfold_r, "r_fold_local_chromatic (r)")
    if r < 1:
        raise ValueError("r must be at least 1")
    if g.n == 0:
        return RFoldColoring(g, r, (), 0)
    adj = shadow(g).adj_masks
    closed = closed_out_masks(g)
    k = r * max(1, local_clique_bound(g))
    while True:
        found = _search_rfold(adj, closed, r, k)
        if found is not None:
            return RFoldColoring(g, r, tuple(frozenset(_bits(s)) for s in found), k)
        k += 1


# ---------------------------------------------------------------------------
# minrank over GF(2)
# ---------------------------------------------------------------------------


def _reduce(vec, basis):
    for piv, row in basis:
        if vec >> piv & 1:
            vec ^= row
    return vec


def minrank2_witness(g: Digraph, cap: Optional[int] = None) -> tuple[int, list[int]]:
    """Minimum GF(2) rank of a matrix fitting side-information graph ``g``.

    Row ``i`` has a 1 on the diagonal, zeros off the out-neighbourhood of
    ``i``, and free entries on it.  Rows are returned as bitmasks (bit j =
    column j).  Depth-first search over rows, pruned by the best rank so far.
    """
    check_cap(g.n, cap, DEFAULT_CAPS.minrank_n, "minrank2")
    n = g.n
    free = [_bits(g.out_masks[i]) for i in range(n)]
    best = [n + 1, None]
    rows: list[int] = []

    def rec(i, basis):
        if len(basis) >= best[0]:
            return
        if i == n:
            best[0], best[1] = len(basis), list(rows)
            return
        for pattern in range(1 << len(free[i])):
            vec = (1 << i) | _mask(f for b, f in enumerate(free[i]) if pattern >> b & 1)
            red = _reduce(vec, basis)
            rows.append(vec)
            if red:
                piv = red.bit_length() - 1
                rec(i + 1, sorted(basis + [(piv, red)], reverse=True))
            else:
                rec(i + 1, basis)
            rows.pop()

    rec(0, [])
    return best[0] if n else 0, best[1] or []


def minrank2(g: Digraph, cap: Optional[int] = None) -> int:
    return minrank2_witness(g, cap)[0]
