"""Farthest-point orderings and insertion radii."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .dissimilarity import Dissimilarity, PointCloud, Relation, from_point_cloud

__all__ = ["GreedyOrder", "greedy_order", "insertion_radii"]


@dataclass(frozen=True)
class GreedyOrder:
    """A permutation of point indices with the radius at which each point
    was inserted.  The first radius is infinity; the rest never increase."""

    permutation: tuple
    radii: tuple

    def __post_init__(self):
        perm = tuple(int(i) for i in self.permutation)
        radii = tuple(float(r) for r in self.radii)
        n = len(perm)
        if n == 0 or sorted(perm) != list(range(n)):
            raise ValueError("permutation must rearrange 0..n-1")
        if len(radii) != n:
            raise ValueError("radii length must match the permutation")
        if radii[0] != math.inf:
            raise ValueError("the first insertion radius is infinity")
        if any(a < b for a, b in zip(radii[1:], radii[2:])):
            raise ValueError("insertion radii must be non-increasing")
        object.__setattr__(self, "permutation", perm)
        object.__setattr__(self, "radii", radii)

    def __len__(self) -> int:
        return len(self.permutation)


def greedy_order(data: PointCloud | Dissimilarity, start: int = 0) -> GreedyOrder:
    """Farthest-point ordering.

    Starting from ``start``, repeatedly pick the point farthest from the
    points chosen so far (least index on ties) and record that distance as
    the insertion radius.  Accepts a point cloud or a square dissimilarity
    whose entries are used as distances.
    """
    if isinstance(data, PointCloud):
        dist = data.distances()
    else:
        if data.n_landmarks != data.n_witnesses:
            raise ValueError("greedy order needs a square dissimilarity")
        dist = np.array(data.values, dtype=float)
    n = dist.shape[0]
    if not 0 <= start < n:
        raise ValueError(f"start index {start} out of range")
    perm = [start]
    radii = [math.inf]
    to_set = dist[start].copy()
    to_set[start] = -math.inf
    for _ in range(n - 1):
        k = int(np.argmax(to_set))
        radii.append(float(to_set[k]))
        perm.append(k)
        to_set = np.minimum(to_set, dist[k])
        to_set[k] = -math.inf
    return GreedyOrder(tuple(perm), tuple(radii))


def insertion_radii(d: Dissimilarity, rel: Relation) -> tuple:
    """Per-witness insertion radii of a dissimilarity with ordered witnesses.

    Witness 0 gets infinity.  Witness k gets the largest, over landmarks
    appearing in the relation, of the least dissimilarity to witnesses
    0..k-1.  For points in greedy order with the nearest-point relation
    this reproduces the greedy insertion radii.
    """
    if rel.n_left != d.n_landmarks or rel.n_right != d.n_witnesses:
        raise ValueError("relation shape does not match the dissimilarity")
    rows = rel.left_domain()
    if not rows:
        raise ValueError("empty index set")
    sub = d.values[list(rows), :]
    prefix_min = np.minimum.accumulate(sub, axis=1)
    out = [math.inf]
    for k in range(1, d.n_witnesses):
        out.append(float(np.max(prefix_min[:, k - 1])))
    return tuple(out)
