"""Truncation and parent forests: the data behind a sparse nerve.

The plan builder wires the pieces together: insertion radii of the ordered
witnesses, per-witness truncation of the dissimilarity, the transposed
truncated matrix, and a parent function along which simplices are pruned.
Thresholds are exact rationals evaluated through the translation maps, so
all keep/drop decisions are tolerance-free.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .dissimilarity import Dissimilarity, Relation, verify_triangle_relation
from .sampling import insertion_radii
from .translation import TranslationMap

__all__ = [
    "ParentForest",
    "SparsificationPlan",
    "truncate",
    "parent_function",
    "check_sparsification_hypotheses",
    "check_insertion_function",
    "build_plan",
]


@dataclass(frozen=True)
class ParentForest:
    """Parent pointers over 0..n-1 with the root at 0: parents[0] = 0 and
    parents[k] < k otherwise, so iterating parents always reaches 0."""

    parents: tuple

    def __post_init__(self):
        parents = tuple(int(p) for p in self.parents)
        if not parents or parents[0] != 0:
            raise ValueError("the root must be its own parent")
        for k, p in enumerate(parents[1:], start=1):
            if not 0 <= p < k:
                raise ValueError(f"parent of {k} must be an earlier index")
        object.__setattr__(self, "parents", parents)

    def __len__(self) -> int:
        return len(self.parents)


@dataclass(frozen=True)
class SparsificationPlan:
    """Everything the sparse nerve builder needs.

    ``lambda_ins`` are the insertion radii of the ordered witnesses,
    ``lambda_sparse`` the sparse radii alpha(beta_inverse(lambda_ins)),
    ``gamma`` the transposed truncation of the input, and ``phi`` the
    parent forest.  ``triangle`` records the relation the radii came from.
    """

    lambda_ins: tuple
    lambda_sparse: tuple
    alpha: TranslationMap
    beta: TranslationMap
    triangle: Relation
    phi: ParentForest
    gamma: Dissimilarity

    def __post_init__(self):
        if len(self.lambda_ins) != len(self.lambda_sparse):
            raise ValueError("radius lists must have equal length")
        if len(self.phi) != len(self.lambda_sparse):
            raise ValueError("parent forest size must match the radii")
        if self.gamma.n_landmarks != len(self.phi):
            raise ValueError("gamma must have one row per ordered witness")
        if self.lambda_sparse[0] != math.inf:
            raise ValueError("the first sparse radius must be infinity")


def _threshold_map(alpha: TranslationMap, beta: TranslationMap):
    beta_inv = beta.generalized_inverse()

    def threshold(value):
        return alpha.eval(beta_inv.eval(value))

    return threshold


def truncate(d: Dissimilarity, lam, alpha: TranslationMap,
             beta: TranslationMap) -> Dissimilarity:
    """Replace every entry above its witness threshold with infinity.

    The threshold for witness w is alpha(beta_inverse(lam[w])); entries
    equal to the threshold are kept.  alpha must dominate the identity and
    beta must tend to infinity.
    """
    if len(lam) != d.n_witnesses:
        raise ValueError("need one radius per witness")
    if not alpha.dominates_identity():
        raise ValueError("alpha must dominate the identity")
    threshold = _threshold_map(alpha, beta)
    values = np.array(d.values, dtype=float)
    for w, l_w in enumerate(lam):
        cap = threshold(l_w)
        if cap == math.inf:
            continue
        col = values[:, w]
        keep = np.array([x <= cap for x in col.tolist()])
        col[~keep] = math.inf
        values[:, w] = col
    return Dissimilarity(values, d.l_labels, d.w_labels)


def parent_function(gamma: Dissimilarity, lam_sparse) -> ParentForest:
    """Largest earlier index whose ball swallows each witness's own ball.

    Balls are taken in ``gamma`` (the truncated transpose, rows = ordered
    witnesses) at the sparse radii; index 0 must reach everything at
    infinity, otherwise no parent assignment exists.
    """
    n = gamma.n_landmarks
    if len(lam_sparse) != n:
        raise ValueError("need one sparse radius per row")
    if len(gamma.ball(0, math.inf)) != gamma.n_witnesses:
        raise ValueError("root does not cover")
    balls = [gamma.ball(k, lam_sparse[k]) for k in range(n)]
    parents = [0]
    for k in range(1, n):
        parent = None
        for i in range(k - 1, -1, -1):
            if lam_sparse[k] <= lam_sparse[i] and balls[k] <= balls[i]:
                parent = i
                break
        if parent is None:
            raise ValueError(f"no admissible parent for index {k}")
        parents.append(parent)
    return ParentForest(tuple(parents))


def check_sparsification_hypotheses(gamma: Dissimilarity, phi: ParentForest,
                                    lam_sparse):
    """Verify the four conditions under which pruning along the parent
    forest preserves the nerve's homotopy type at every scale.

    1. iterating the parents reaches a common root;
    2. each row's ball at its sparse radius sits inside the parent's;
    3. each row's ball stops growing at its sparse radius (checked at
       infinity, which bounds all larger scales);
    4. sparse radii never increase along parents.

    Returns ``(ok, violations)`` with one (condition, index) pair per
    failure.
    """
    n = len(phi)
    if gamma.n_landmarks != n or len(lam_sparse) != n:
        raise ValueError("shape mismatch")
    violations = []
    parents = phi.parents
    for k in range(n):
        j, steps = k, 0
        while parents[j] != j and steps <= n:
            j, steps = parents[j], steps + 1
        if j != 0:
            violations.append((1, k))
    balls = [gamma.ball(k, lam_sparse[k]) for k in range(n)]
    for k in range(n):
        if not balls[k] <= balls[parents[k]]:
            violations.append((2, k))
        if gamma.ball(k, math.inf) != balls[k]:
            violations.append((3, k))
        if not lam_sparse[k] <= lam_sparse[parents[k]]:
            violations.append((4, k))
    return (not violations), violations


def check_insertion_function(d: Dissimilarity, rel: Relation,
                             beta: TranslationMap, lam):
    """Check that ``lam`` is an insertion function of resolution beta.

    For every finite entry value t of the matrix (plus zero) and every
    landmark of the relation there must be a witness w0 with
    ``d(l, w0) <= beta(t) < lam[w0]``.  The infinite scale is vacuous
    because the first witness has infinite radius.

    Returns ``(ok, violations)`` listing failing (t, l) pairs.
    """
    if len(lam) != d.n_witnesses:
        raise ValueError("need one radius per witness")
    rows = rel.left_domain()
    if not rows:
        raise ValueError("empty index set")
    grid = sorted({0.0} | {float(x) for x in d.values.ravel()
                           if math.isfinite(x)})
    violations = []
    for t in grid:
        bound = beta.eval(t)
        for l in rows:
            row = d.values[l]
            if not any(row[w] <= bound and bound < lam[w]
                       for w in range(d.n_witnesses)):
                violations.append((t, l))
    return (not violations), violations


def build_plan(d: Dissimilarity, rel: Relation, alpha: TranslationMap,
               beta: TranslationMap) -> SparsificationPlan:
    """Assemble a sparsification plan for a dissimilarity with ordered
    witnesses.

    Validates the triangle relation and the requirement that beta stays
    above the cover radius, computes insertion radii and sparse radii,
    truncates, transposes, and derives the parent forest.
    """
    ok, violation = verify_triangle_relation(d, rel)
    if not ok:
        raise ValueError(f"not a triangle relation: {violation}")
    rho = d.cover_radius()
    if rho == math.inf or beta.eval(0) < Fraction(rho):
        raise ValueError("beta must dominate the cover radius")
    lam_ins = insertion_radii(d, rel)
    threshold = _threshold_map(alpha, beta)
    lam_sparse = tuple(threshold(l) for l in lam_ins)
    gamma = truncate(d, lam_ins, alpha, beta).transpose()
    phi = parent_function(gamma, lam_sparse)
    return SparsificationPlan(lam_ins, lam_sparse, alpha, beta, rel, phi, gamma)
