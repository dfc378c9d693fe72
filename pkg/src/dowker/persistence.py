"""Persistence diagrams over GF(2) and bottleneck distances.

The reduction inner loop runs in a compiled kernel when available; set
``DOWKER_PURE_PYTHON=1`` to force the pure-Python fallback.  Both kernels
implement the identical column algorithm, so diagrams do not depend on the
backend.
"""

from __future__ import annotations

import itertools
import math
import os
from dataclasses import dataclass

import numpy as np

from .complexes import FilteredComplex

if os.environ.get("DOWKER_PURE_PYTHON"):
    from . import _reduction_py as _kernel

    _BACKEND = "python"
else:
    try:
        from . import _reduction_cy as _kernel

        _BACKEND = "cython"
    except ImportError:
        from . import _reduction_py as _kernel

        _BACKEND = "python"

__all__ = [
    "PersistenceDiagram",
    "compute_persistence",
    "bottleneck",
    "multiplicative_bottleneck",
    "reduction_backend",
]


def reduction_backend() -> str:
    """Name of the reduction kernel in use: 'cython' or 'python'."""
    return _BACKEND


@dataclass(frozen=True)
class PersistenceDiagram:
    """Multiset of (dimension, birth, death) points, deaths possibly
    infinite, zero-persistence points omitted."""

    points: tuple

    def __post_init__(self):
        pts = []
        for dim, birth, death in self.points:
            dim = int(dim)
            birth = float(birth)
            death = float(death)
            if dim < 0 or math.isnan(birth) or math.isnan(death):
                raise ValueError("malformed diagram point")
            if not math.isfinite(birth):
                raise ValueError("births must be finite")
            if death <= birth:
                raise ValueError("death must exceed birth")
            pts.append((dim, birth, death))
        object.__setattr__(self, "points", tuple(sorted(pts)))

    def in_dimension(self, dim: int) -> tuple:
        return tuple((b, d) for k, b, d in self.points if k == dim)

    def dimensions(self) -> tuple:
        return tuple(sorted({k for k, _, _ in self.points}))

    def __len__(self) -> int:
        return len(self.points)


def _ordered_simplices(complex_: FilteredComplex) -> list:
    return sorted(complex_.entries, key=lambda e: (e[1], len(e[0]), e[0]))


def _diagram_from_ordered(ordered: list, max_dim: int) -> PersistenceDiagram:
    """Reduce the boundary matrix of an ordered simplex list.

    The order must put every face before its cofaces; any order refining
    (value, dimension) qualifies, and the diagram does not depend on the
    choice.
    """
    index = {verts: i for i, (verts, _) in enumerate(ordered)}
    flat = []
    indptr = [0]
    for verts, _ in ordered:
        if len(verts) > 1:
            col = sorted(index[verts[:i] + verts[i + 1:]]
                         for i in range(len(verts)))
            flat.extend(col)
        indptr.append(len(flat))
    low = _kernel.reduce_low(np.asarray(indptr, dtype=np.int64),
                             np.asarray(flat, dtype=np.int64))
    points = []
    paired = set()
    for j, i in enumerate(low):
        if i < 0:
            continue
        paired.add(int(i))
        verts_i, birth = ordered[int(i)]
        _, death = ordered[j]
        dim = len(verts_i) - 1
        if birth != death and dim <= max_dim:
            points.append((dim, birth, death))
    for j, (verts, birth) in enumerate(ordered):
        if low[j] < 0 and j not in paired and len(verts) - 1 <= max_dim:
            points.append((len(verts) - 1, birth, math.inf))
    return PersistenceDiagram(tuple(points))


def compute_persistence(complex_: FilteredComplex,
                        max_dim: int | None = None) -> PersistenceDiagram:
    """Persistence diagram of a filtered complex in dimensions up to
    ``max_dim`` (defaults to the complex dimension).

    Deaths in the top dimension are only meaningful when the complex
    carries the simplices one dimension higher.  Simplices with value
    infinity belong to no level and are dropped.
    """
    complex_.validate()
    entries = [(v, val) for v, val in complex_.entries if math.isfinite(val)]
    if max_dim is None:
        max_dim = max((len(v) - 1 for v, _ in entries), default=0)
    if max_dim < 0:
        raise ValueError("max_dim must be non-negative")
    ordered = sorted(entries, key=lambda e: (e[1], len(e[0]), e[0]))
    return _diagram_from_ordered(ordered, max_dim)


# -- bottleneck matching ---------------------------------------------------


def _diff(a: float, b: float) -> float:
    """|a - b| on [-inf, inf] with equal infinities at distance zero."""
    if a == b:
        return 0.0
    return abs(a - b)


def _point_cost(p: tuple, q: tuple) -> float:
    return max(_diff(p[0], q[0]), _diff(p[1], q[1]))


def _diagonal_cost(p: tuple) -> float:
    if math.isinf(p[0]) or math.isinf(p[1]):
        return math.inf
    return (p[1] - p[0]) / 2.0


def _matchable(left: list, right: list, r: float) -> bool:
    """Perfect matching test between diagrams augmented with diagonals."""
    n1, n2 = len(left), len(right)
    size = n1 + n2
    if size == 0:
        return True
    adj = [[] for _ in range(size)]
    for i, p in enumerate(left):
        for j, q in enumerate(right):
            if _point_cost(p, q) <= r:
                adj[i].append(j)
        if _diagonal_cost(p) <= r:
            adj[i].extend(range(n2, size))
    for i in range(n1, size):
        for j, q in enumerate(right):
            if _diagonal_cost(q) <= r:
                adj[i].append(j)
        adj[i].extend(range(n2, size))
    match_right = [-1] * size

    def augment(u, seen):
        for v in adj[u]:
            if v in seen:
                continue
            seen.add(v)
            if match_right[v] < 0 or augment(match_right[v], seen):
                match_right[v] = u
                return True
        return False

    for u in range(size):
        if not augment(u, set()):
            return False
    return True


def _bottleneck_points(left: list, right: list) -> float:
    if not left and not right:
        return 0.0
    candidates = {0.0}
    for p in left:
        c = _diagonal_cost(p)
        if math.isfinite(c):
            candidates.add(c)
    for q in right:
        c = _diagonal_cost(q)
        if math.isfinite(c):
            candidates.add(c)
    for p in left:
        for q in right:
            c = _point_cost(p, q)
            if math.isfinite(c):
                candidates.add(c)
    grid = sorted(candidates)
    lo, hi = 0, len(grid) - 1
    if not _matchable(left, right, grid[hi]):
        return math.inf
    while lo < hi:
        mid = (lo + hi) // 2
        if _matchable(left, right, grid[mid]):
            hi = mid
        else:
            lo = mid + 1
    return grid[lo]


def bottleneck(d1: PersistenceDiagram, d2: PersistenceDiagram,
               dim: int) -> float:
    """Exact bottleneck distance between the dimension-``dim`` points.

    Points with infinite death can only match each other (at the absolute
    difference of births); a count mismatch gives infinity.
    """
    return _bottleneck_points(list(d1.in_dimension(dim)),
                              list(d2.in_dimension(dim)))


def _log_point(p: tuple) -> tuple:
    birth = -math.inf if p[0] == 0 else math.log(p[0])
    death = math.inf if p[1] == math.inf else math.log(p[1])
    return (birth, death)


def multiplicative_bottleneck(d1: PersistenceDiagram, d2: PersistenceDiagram,
                              dim: int) -> float:
    """Least ratio rho >= 1 admitting a matching in which paired births and
    deaths differ by a factor of at most rho and unmatched points satisfy
    death/birth <= rho^2.

    Computed as the exponential of the bottleneck distance after mapping
    coordinates through log (0 to -inf, inf to +inf).
    """
    left = [_log_point(p) for p in d1.in_dimension(dim)]
    right = [_log_point(p) for p in d2.in_dimension(dim)]
    r = _bottleneck_points(left, right)
    if r == math.inf:
        return math.inf
    return math.exp(max(r, 0.0))
