"""Filtered simplicial complexes and their builders.

A filtered complex stores simplices (strictly ascending vertex tuples) with
the scale at which each one appears.  A simplex with value v is a member of
every level t > v, so builders record the infimum scale.  Entries are kept
in (dimension, vertex-tuple) order; files and persistence use the
(value, dimension, vertices) order.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import numpy as np

from .dissimilarity import Dissimilarity, PointCloud
from .sampling import GreedyOrder
from .translation import preset_alpha_beta

__all__ = [
    "FilteredComplex",
    "simplex_radius",
    "build_dowker_nerve",
    "build_sparse_nerve",
    "build_rips",
    "build_euclidean_cech",
    "build_sparse_cech",
    "build_sparse_cech_oracle",
    "miniball",
]

# absolute slack used when comparing distances against truncation caps in the
# euclidean witness searches; keeps the two sparse-Cech routes consistent
_CAP_SLACK = 1e-12


@dataclass(frozen=True)
class FilteredComplex:
    """Simplices with filtration values, closed under taking faces."""

    entries: tuple
    vertex_count: int

    def __post_init__(self):
        entries = tuple(
            (tuple(int(v) for v in verts), float(value))
            for verts, value in self.entries
        )
        object.__setattr__(self, "entries", entries)
        self.validate()

    def validate(self):
        """Raise ValueError naming the violated invariant, if any."""
        seen = {}
        for verts, value in self.entries:
            if len(verts) == 0:
                raise ValueError("empty simplex")
            if any(b <= a for a, b in zip(verts, verts[1:])):
                raise ValueError(f"vertices not strictly ascending: {verts}")
            if verts[0] < 0 or verts[-1] >= self.vertex_count:
                raise ValueError(f"vertex out of range in {verts}")
            if math.isnan(value) or value < 0:
                raise ValueError(f"filtration value of {verts} not in [0, inf]")
            if verts in seen:
                raise ValueError(f"duplicate simplex {verts}")
            seen[verts] = value
        for verts, value in self.entries:
            if len(verts) == 1:
                continue
            for i in range(len(verts)):
                face = verts[:i] + verts[i + 1:]
                if face not in seen:
                    raise ValueError(f"missing face {face} of {verts}")
                if seen[face] > value:
                    raise ValueError(
                        f"face {face} appears later than {verts}")
        order = [(len(v), v) for v, _ in self.entries]
        if order != sorted(order):
            raise ValueError("entries not in (dimension, vertices) order")

    @classmethod
    def from_dict(cls, simplices: dict, vertex_count: int) -> "FilteredComplex":
        entries = sorted(simplices.items(), key=lambda e: (len(e[0]), e[0]))
        return cls(tuple(entries), vertex_count)

    def as_dict(self) -> dict:
        return {verts: value for verts, value in self.entries}

    def __len__(self) -> int:
        return len(self.entries)

    def dimension(self) -> int:
        return max(len(v) for v, _ in self.entries) - 1 if self.entries else -1

    def size_by_dimension(self) -> dict:
        out = {}
        for verts, _ in self.entries:
            out[len(verts) - 1] = out.get(len(verts) - 1, 0) + 1
        return out

    def by_value(self) -> list:
        """Entries sorted by (value, dimension, vertices)."""
        return sorted(self.entries, key=lambda e: (e[1], len(e[0]), e[0]))


def simplex_radius(d: Dissimilarity, verts) -> float:
    """Least scale at which some witness sees all of ``verts``: the minimum
    over witnesses of the largest dissimilarity to the given landmarks."""
    idx = [int(v) for v in verts]
    if not idx:
        raise ValueError("empty simplex")
    return float(np.min(np.max(d.values[idx, :], axis=0)))


@lru_cache(maxsize=128)
def _comb_indices(n: int, k: int) -> np.ndarray:
    """All k-subsets of range(n) as a (C(n,k), k) array, rows lexicographic."""
    combs = list(itertools.combinations(range(n), k))
    return np.array(combs, dtype=np.intp).reshape(len(combs), k)


def build_dowker_nerve(d: Dissimilarity, max_dim: int) -> FilteredComplex:
    """Nerve of a dissimilarity: a landmark set enters at the least scale
    at which a single witness is within that scale of all its members.

    Enumerates subsets of each witness column's finite support (sizes up to
    ``max_dim + 1``) and keeps the minimum candidate value per simplex.
    """
    if max_dim < 0:
        raise ValueError("max_dim must be non-negative")
    v = d.values
    keys_by_size = {}
    vals_by_size = {}
    for w in range(d.n_witnesses):
        col = v[:, w]
        support = np.nonzero(np.isfinite(col))[0]
        if support.size == 0:
            continue
        order = np.argsort(col[support], kind="stable")
        sup_sorted = support[order]
        val_sorted = col[support][order]
        for size in range(1, min(max_dim + 2, support.size + 1)):
            combs = _comb_indices(support.size, size)
            keys = np.sort(sup_sorted[combs], axis=1)
            keys_by_size.setdefault(size, []).append(keys)
            vals_by_size.setdefault(size, []).append(val_sorted[combs[:, -1]])
    entries = []
    for size in sorted(keys_by_size):
        keys = np.vstack(keys_by_size[size])
        vals = np.concatenate(vals_by_size[size])
        uniq, inverse = np.unique(keys, axis=0, return_inverse=True)
        inverse = inverse.reshape(-1)
        best = np.full(len(uniq), math.inf)
        np.minimum.at(best, inverse, vals)
        entries.extend(
            (tuple(row), val) for row, val in zip(uniq.tolist(), best.tolist()))
    return FilteredComplex(tuple(entries), d.n_landmarks)


def build_sparse_nerve(plan, max_dim: int) -> FilteredComplex:
    """Sparse nerve of a sparsification plan.

    Takes the nerve of the plan's truncated transpose and keeps a simplex
    only while its radius stays at or below the sparse radius of every
    member's parent.  Comparisons against the rational sparse radii are
    exact.
    """
    full = build_dowker_nerve(plan.gamma, max_dim)
    phi = plan.phi.parents
    cut = [plan.lambda_sparse[phi[k]] for k in range(len(phi))]
    entries = []
    for verts, value in full.entries:
        bound = min(cut[k] for k in verts)
        if bound == math.inf or value <= bound:
            entries.append((verts, value))
    return FilteredComplex(tuple(entries), full.vertex_count)


def build_rips(d: Dissimilarity, max_dim: int) -> FilteredComplex:
    """Flag complex over the nerve's 1-skeleton: higher simplices appear as
    soon as all their edges do."""
    skeleton = build_dowker_nerve(d, 1)
    vert_val = {}
    edge_val = {}
    for verts, value in skeleton.entries:
        if len(verts) == 1:
            vert_val[verts[0]] = value
        else:
            edge_val[verts] = value
    adjacency = {u: set() for u in vert_val}
    for (a, b) in edge_val:
        adjacency[a].add(b)
        adjacency[b].add(a)

    entries = [((u,), vert_val[u]) for u in sorted(vert_val)]
    if max_dim >= 1:
        cliques = {1: sorted(edge_val)}
        entries.extend(((a, b), edge_val[(a, b)]) for a, b in cliques[1])
        values = dict(edge_val)
        frontier = list(cliques[1])
        for dim in range(2, max_dim + 1):
            new_frontier = []
            for clique in frontier:
                cand = set.intersection(*(adjacency[u] for u in clique))
                for u in sorted(c for c in cand if c > clique[-1]):
                    new = clique + (u,)
                    value = max(values[clique],
                                max(edge_val[tuple(sorted((x, u)))] for x in clique))
                    values[new] = value
                    new_frontier.append(new)
            entries.extend((c, values[c]) for c in sorted(new_frontier))
            frontier = new_frontier
    return FilteredComplex(tuple(entries), d.n_landmarks)


# -- euclidean balls ------------------------------------------------------


def miniball(points) -> tuple:
    """Smallest enclosing ball, move-to-front Welzl.

    Returns ``(radius, center)``.  Accepts any number of points of any
    dimension; the support set never exceeds d + 1 points.
    """
    pts = np.asarray(points, dtype=float)
    if pts.ndim == 1:
        pts = pts.reshape(1, -1)
    if pts.shape[0] < 1:
        raise ValueError("empty index set")
    dim = pts.shape[1]
    order = list(range(pts.shape[0]))

    def ball_of(support):
        if not support:
            return None, -1.0
        s = pts[support]
        if len(support) == 1:
            return s[0], 0.0
        u = s[1:] - s[0]
        gram = u @ u.T
        b = 0.5 * np.einsum("ij,ij->i", u, u)
        try:
            coeff = np.linalg.solve(gram, b)
        except np.linalg.LinAlgError:
            coeff = np.linalg.lstsq(gram, b, rcond=None)[0]
        center = s[0] + coeff @ u
        r2 = float(max(np.sum((s - center) ** 2, axis=1)))
        return center, r2

    def covers(center, r2, p):
        if center is None:
            return False
        gap = float(np.sum((pts[p] - center) ** 2))
        return gap <= r2 + _CAP_SLACK * (1.0 + r2)

    def solve(n_pts, support):
        center, r2 = ball_of(support)
        if len(support) == dim + 1:
            return center, r2
        for pos in range(n_pts):
            p = order[pos]
            if not covers(center, r2, p):
                center, r2 = solve(pos, support + [p])
                order.pop(pos)
                order.insert(0, p)
        return center, r2

    center, r2 = solve(len(order), [])
    return float(math.sqrt(max(r2, 0.0))), center


def build_euclidean_cech(cloud: PointCloud, max_dim: int) -> FilteredComplex:
    """Čech complex with witnesses anywhere in euclidean space: a simplex
    appears at the radius of the smallest ball enclosing its vertices."""
    if cloud.metric != "euclidean":
        raise ValueError("euclidean metric required")
    n = len(cloud)
    entries = []
    for size in range(1, max_dim + 2):
        for verts in itertools.combinations(range(n), size):
            radius, _ = miniball(cloud.points[list(verts)])
            entries.append((verts, radius))
    return FilteredComplex(tuple(entries), n)


def _witness_pool(pts: np.ndarray, max_size: int) -> np.ndarray:
    """Distances from the shared witness candidates to every point.

    Candidates are the enclosing-ball centers of every subset of up to
    ``max_size`` points (capped at d + 1, beyond which centers repeat),
    then the points themselves.  All simplices search the same pool, which
    keeps the kept set closed under faces: a witness feasible for a simplex
    is feasible for each of its faces at no larger max-distance.
    """
    n = pts.shape[0]
    top = min(max_size, pts.shape[1] + 1, n)
    centers = []
    for size in range(1, top + 1):
        for sub in itertools.combinations(range(n), size):
            centers.append(miniball(pts[list(sub)])[1])
    centers.extend(pts)
    pool = np.asarray(centers)
    return np.sqrt(((pool[:, None, :] - pts[None, :, :]) ** 2).sum(axis=2))


def _constrained_witness_radius(pool_dist: np.ndarray, verts, caps):
    """Best max-distance to ``verts`` over pool witnesses obeying the
    per-vertex caps; returns inf when no candidate is feasible."""
    sub = pool_dist[:, list(verts)]
    caps_f = np.array([math.inf if c == math.inf else float(c) + _CAP_SLACK
                       for c in caps])
    feasible = (sub <= caps_f).all(axis=1)
    if not feasible.any():
        return math.inf
    return float(np.min(np.max(sub[feasible], axis=1)))


def _check_euclidean_cloud(cloud: PointCloud, order: GreedyOrder):
    if cloud.metric != "euclidean":
        raise ValueError("euclidean metric required")
    if len(order) != len(cloud):
        raise ValueError("greedy order does not match the point cloud")


def build_sparse_cech(cloud: PointCloud, order: GreedyOrder, epsilon: float,
                      max_dim: int) -> FilteredComplex:
    """Sparse Čech complex via the truncation pipeline.

    Points are renumbered by the greedy order.  The witness search for each
    simplex is capped per vertex by the truncation threshold
    alpha(beta^-1(insertion radius)) with the multiplicative preset, and a
    simplex is kept only while its radius is at most the smallest cutoff
    alpha(cap) among its vertices (identity parents).
    """
    _check_euclidean_cloud(cloud, order)
    alpha, beta = preset_alpha_beta("multiplicative", epsilon=epsilon)
    beta_inv = beta.generalized_inverse()
    lam = order.radii
    caps = [alpha.eval(beta_inv.eval(l)) for l in lam]
    cutoff = [alpha.eval(c) for c in caps]
    pts = cloud.points[list(order.permutation)]
    n = len(cloud)
    pool_dist = _witness_pool(pts, max_dim + 1)
    entries = []
    for size in range(1, max_dim + 2):
        for verts in itertools.combinations(range(n), size):
            radius = _constrained_witness_radius(
                pool_dist, verts, [caps[k] for k in verts])
            if radius == math.inf:
                continue
            bound = min(cutoff[k] for k in verts)
            if bound == math.inf or radius <= float(bound) + _CAP_SLACK:
                entries.append((verts, radius))
    return FilteredComplex(tuple(entries), n)


def build_sparse_cech_oracle(cloud: PointCloud, order: GreedyOrder,
                             epsilon: float, max_dim: int) -> FilteredComplex:
    """Direct enumeration of the sparse Čech complex.

    A simplex is present exactly when some witness point w satisfies, for
    all its vertices k and l, ``d(p_k, w) <= lam_k (1+eps)/eps`` and
    ``d(p_k, w) <= lam_l (1+eps)^2/eps``; its value is the best achievable
    max-distance.  Witnesses are searched over enclosing-ball centers of
    vertex subsets plus the input points.  With thresholds exceeding the
    diameter the constraints are vacuous and this reduces to the euclidean
    Čech complex.
    """
    _check_euclidean_cloud(cloud, order)
    eps = float(epsilon)
    if eps <= 0:
        raise ValueError("epsilon must be positive")
    lam = order.radii
    one_step = [l * (1 + eps) / eps for l in lam]
    two_step = [l * (1 + eps) ** 2 / eps for l in lam]
    pts = cloud.points[list(order.permutation)]
    n = len(cloud)
    pool_dist = _witness_pool(pts, max_dim + 1)
    entries = []
    for size in range(1, max_dim + 2):
        for verts in itertools.combinations(range(n), size):
            shared = min(two_step[k] for k in verts)
            caps = [min(one_step[k], shared) for k in verts]
            radius = _constrained_witness_radius(pool_dist, verts, caps)
            if radius < math.inf:
                entries.append((verts, radius))
    return FilteredComplex(tuple(entries), n)
