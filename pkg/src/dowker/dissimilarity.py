"""Dissimilarities between a landmark set and a witness set.

A dissimilarity is a function ``L x W -> [0, inf]`` stored as a dense float
matrix (rows = landmarks, columns = witnesses).  ``math.inf`` marks pairs
that are never related at any finite scale; IEEE infinity gives the total
comparison and addition semantics the rest of the package relies on.
All containers are frozen after construction.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np
from scipy.spatial.distance import cdist

__all__ = [
    "Dissimilarity",
    "PointCloud",
    "Network",
    "Relation",
    "from_point_cloud",
    "from_network",
    "nearest_point_triangle_relation",
    "verify_triangle_relation",
    "sup_over",
]

_METRICS = {
    "euclidean": "euclidean",
    "manhattan": "cityblock",
    "chebyshev": "chebyshev",
}


def _as_readonly(a: np.ndarray) -> np.ndarray:
    out = np.asarray(a, dtype=float)
    out = out.copy()
    out.flags.writeable = False
    return out


@dataclass(frozen=True)
class PointCloud:
    """Finite set of points in R^d with a choice of metric."""

    points: np.ndarray
    metric: str = "euclidean"

    def __post_init__(self):
        pts = np.asarray(self.points, dtype=float)
        if pts.ndim != 2 or pts.shape[0] < 1 or pts.shape[1] < 1:
            raise ValueError("points must be a non-empty (n, d) array with d >= 1")
        if not np.isfinite(pts).all():
            raise ValueError("point coordinates must be finite")
        if self.metric not in _METRICS:
            raise ValueError(f"unknown metric {self.metric!r}")
        object.__setattr__(self, "points", _as_readonly(pts))

    def __len__(self) -> int:
        return self.points.shape[0]

    def distances(self, rows: Sequence[int] | None = None,
                  cols: Sequence[int] | None = None) -> np.ndarray:
        """Pairwise distance matrix between two index selections."""
        p = self.points
        a = p if rows is None else p[np.asarray(rows, dtype=int)]
        b = p if cols is None else p[np.asarray(cols, dtype=int)]
        return cdist(a, b, metric=_METRICS[self.metric])


@dataclass(frozen=True)
class Network:
    """Weighted directed network: node set plus a weight matrix.

    Weights live in [0, inf]; an absent edge is infinity and the diagonal
    defaults to zero when built from an edge list.
    """

    weights: np.ndarray

    def __post_init__(self):
        w = np.asarray(self.weights, dtype=float)
        if w.ndim != 2 or w.shape[0] != w.shape[1] or w.shape[0] < 1:
            raise ValueError("weights must be a non-empty square matrix")
        if np.isnan(w).any() or (w < 0).any():
            raise ValueError("weights must lie in [0, inf]")
        object.__setattr__(self, "weights", _as_readonly(w))

    def __len__(self) -> int:
        return self.weights.shape[0]


@dataclass(frozen=True)
class Relation:
    """Finite relation between index sets [n_left] and [n_right]."""

    pairs: frozenset
    n_left: int
    n_right: int

    def __post_init__(self):
        pairs = frozenset((int(a), int(b)) for a, b in self.pairs)
        for a, b in pairs:
            if not (0 <= a < self.n_left and 0 <= b < self.n_right):
                raise ValueError(f"relation pair {(a, b)} out of range")
        object.__setattr__(self, "pairs", pairs)

    def __contains__(self, pair) -> bool:
        return (int(pair[0]), int(pair[1])) in self.pairs

    def __iter__(self):
        return iter(sorted(self.pairs))

    def __len__(self) -> int:
        return len(self.pairs)

    def transpose(self) -> "Relation":
        return Relation(frozenset((b, a) for a, b in self.pairs),
                        self.n_right, self.n_left)

    def compose(self, other: "Relation") -> "Relation":
        """Relation first-self-then-other: pairs (a, c) with a self-related
        to some b that is other-related to c."""
        if self.n_right != other.n_left:
            raise ValueError("relation shapes do not compose")
        by_left = {}
        for b, c in other.pairs:
            by_left.setdefault(b, []).append(c)
        out = set()
        for a, b in self.pairs:
            for c in by_left.get(b, ()):
                out.add((a, c))
        return Relation(frozenset(out), self.n_left, other.n_right)

    def contains_diagonal(self) -> bool:
        if self.n_left != self.n_right:
            return False
        return all((i, i) in self.pairs for i in range(self.n_left))

    def left_domain(self) -> tuple:
        """Sorted indices that occur on the left of some pair."""
        return tuple(sorted({a for a, _ in self.pairs}))

    def as_bool_matrix(self) -> np.ndarray:
        m = np.zeros((self.n_left, self.n_right), dtype=bool)
        for a, b in self.pairs:
            m[a, b] = True
        return m


@dataclass(frozen=True)
class Dissimilarity:
    """Dissimilarity matrix over landmark labels (rows) and witness labels
    (columns)."""

    values: np.ndarray
    l_labels: tuple = field(default=())
    w_labels: tuple = field(default=())

    def __post_init__(self):
        v = np.asarray(self.values, dtype=float)
        if v.ndim != 2 or v.shape[0] < 1 or v.shape[1] < 1:
            raise ValueError("empty index set")
        if np.isnan(v).any() or (v < 0).any():
            raise ValueError("dissimilarity values must lie in [0, inf]")
        l_labels = self.l_labels or tuple(range(v.shape[0]))
        w_labels = self.w_labels or tuple(range(v.shape[1]))
        if len(l_labels) != v.shape[0] or len(w_labels) != v.shape[1]:
            raise ValueError("label lengths do not match the matrix shape")
        object.__setattr__(self, "values", _as_readonly(v))
        object.__setattr__(self, "l_labels", tuple(l_labels))
        object.__setattr__(self, "w_labels", tuple(w_labels))

    @property
    def n_landmarks(self) -> int:
        return self.values.shape[0]

    @property
    def n_witnesses(self) -> int:
        return self.values.shape[1]

    def transpose(self) -> "Dissimilarity":
        """Swap the roles of landmarks and witnesses."""
        return Dissimilarity(self.values.T, self.w_labels, self.l_labels)

    def slice_at(self, t) -> Relation:
        """Relation of pairs with value strictly below t.

        At ``t = inf`` this is every pair with a finite value.
        """
        if t == math.inf:
            rows, cols = np.nonzero(np.isfinite(self.values))
        else:
            rows, cols = np.nonzero(self.values < float(t))
        pairs = frozenset(zip(rows.tolist(), cols.tolist()))
        return Relation(pairs, self.n_landmarks, self.n_witnesses)

    def ball(self, l: int, t) -> frozenset:
        """Witness indices within strict distance t of landmark l."""
        if not 0 <= l < self.n_landmarks:
            raise ValueError(f"landmark index {l} out of range")
        row = self.values[l]
        if t == math.inf:
            idx = np.nonzero(np.isfinite(row))[0]
        else:
            idx = np.nonzero(row < float(t))[0]
        return frozenset(idx.tolist())

    def cover_radius(self) -> float:
        """Largest distance from a witness to its closest landmark."""
        return float(np.max(np.min(self.values, axis=0)))


def from_point_cloud(cloud: PointCloud,
                     landmarks: Sequence[int] | None = None,
                     witnesses: Sequence[int] | None = None) -> Dissimilarity:
    """Dissimilarity of metric distances between two index selections of a
    point cloud.  Defaults to all points on both sides."""
    n = len(cloud)
    l_idx = list(range(n)) if landmarks is None else [int(i) for i in landmarks]
    w_idx = list(range(n)) if witnesses is None else [int(i) for i in witnesses]
    if not l_idx or not w_idx:
        raise ValueError("empty index set")
    for i in l_idx + w_idx:
        if not 0 <= i < n:
            raise ValueError(f"point index {i} out of range")
    values = cloud.distances(l_idx, w_idx)
    return Dissimilarity(values, tuple(l_idx), tuple(w_idx))


def from_network(network: Network) -> Dissimilarity:
    """View a weighted network as a dissimilarity with L = W = nodes."""
    labels = tuple(range(len(network)))
    return Dissimilarity(network.weights, labels, labels)


def nearest_point_triangle_relation(d: Dissimilarity) -> Relation:
    """Relation pairing every witness with all landmarks attaining its
    column minimum.

    Every witness column of a finite matrix attains its minimum, so the
    relation covers all witnesses; columns that are entirely infinite keep
    every landmark (all entries tie at infinity).
    """
    v = d.values
    col_min = np.min(v, axis=0)
    pairs = set()
    for w in range(d.n_witnesses):
        for l in np.nonzero(v[:, w] == col_min[w])[0]:
            pairs.add((int(l), w))
    return Relation(frozenset(pairs), d.n_landmarks, d.n_witnesses)


def verify_triangle_relation(d: Dissimilarity, rel: Relation):
    """Check the two triangle-relation conditions exhaustively.

    Condition 1: every witness is related to some landmark.
    Condition 2: for every related pair (l, w) and every pair (l2, w2),
    ``d(l2, w2) <= d(l2, w) + d(l, w2) + d(l, w)``.

    Returns ``(ok, violation)`` where the violation names the failed
    condition: ``("uncovered-witness", w)`` or ``("triangle", l, w, l2, w2)``.
    """
    if rel.n_left != d.n_landmarks or rel.n_right != d.n_witnesses:
        raise ValueError("relation shape does not match the dissimilarity")
    covered = {w for _, w in rel.pairs}
    for w in range(d.n_witnesses):
        if w not in covered:
            return False, ("uncovered-witness", w)
    v = d.values
    for l, w in sorted(rel.pairs):
        bound = v[:, [w]] + v[[l], :] + v[l, w]
        bad = np.argwhere(v > bound)
        if bad.size:
            l2, w2 = (int(x) for x in bad[0])
            return False, ("triangle", int(l), int(w), l2, w2)
    return True, None


def sup_over(d: Dissimilarity, rel: Relation) -> float:
    """Largest dissimilarity value over the pairs of a relation."""
    if not rel.pairs:
        raise ValueError("empty index set")
    if rel.n_left != d.n_landmarks or rel.n_right != d.n_witnesses:
        raise ValueError("relation shape does not match the dissimilarity")
    return float(max(d.values[a, b] for a, b in rel.pairs))
