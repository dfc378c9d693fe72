"""Distortion, network distance, and executable interleaving checks.

The checks here are exhaustive on purpose: they exist to confirm theory on
small instances, not to scale.  Scale thresholds are evaluated through the
translation maps as exact rationals, so a check never passes or fails by a
rounding accident.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .dissimilarity import Dissimilarity, Network, Relation
from .translation import TranslationMap

__all__ = [
    "Correspondence",
    "distortion",
    "network_distance_bruteforce",
    "verify_morphism",
    "verify_interleaving",
]

_BRUTE_FORCE_LIMIT = 12


@dataclass(frozen=True)
class Correspondence(Relation):
    """Relation whose two projections are both surjective."""

    def __post_init__(self):
        super().__post_init__()
        left = {a for a, _ in self.pairs}
        right = {b for _, b in self.pairs}
        if len(left) != self.n_left or len(right) != self.n_right:
            raise ValueError("invalid correspondence: a projection misses an index")

    def transpose(self) -> "Correspondence":
        return Correspondence(frozenset((b, a) for a, b in self.pairs),
                              self.n_right, self.n_left)

    @classmethod
    def diagonal(cls, n: int) -> "Correspondence":
        return cls(frozenset((i, i) for i in range(n)), n, n)


def _gap(a: float, b: float) -> float:
    # equal values, infinity included, are a perfect match
    if a == b:
        return 0.0
    return abs(a - b)


def distortion(corr: Relation, x: Network, x_prime: Network) -> float:
    """Worst weight mismatch across a correspondence between two networks.

    The supremum of ``|x(a, b) - x_prime(a', b')|`` over pairs (a, a') and
    (b, b') of the correspondence, with matching infinite weights counting
    as zero mismatch.
    """
    if not isinstance(corr, Correspondence):
        corr = Correspondence(corr.pairs, corr.n_left, corr.n_right)
    if corr.n_left != len(x) or corr.n_right != len(x_prime):
        raise ValueError("correspondence shape does not match the networks")
    w, wp = x.weights, x_prime.weights
    worst = 0.0
    for a, ap in corr.pairs:
        for b, bp in corr.pairs:
            worst = max(worst, _gap(float(w[a, b]), float(wp[ap, bp])))
    return worst


def network_distance_bruteforce(x: Network, x_prime: Network):
    """Exact network distance between two small networks.

    Enumerates every subset of the node product that is a correspondence
    and returns ``(distance, corr)`` where the distance is half the least
    distortion and ``corr`` attains it.  Only instances with
    ``len(x) * len(x_prime) <= 12`` are accepted.
    """
    n, m = len(x), len(x_prime)
    if n * m > _BRUTE_FORCE_LIMIT:
        raise ValueError("instance too large for brute force")
    product = [(a, b) for a in range(n) for b in range(m)]
    best_val, best_corr = math.inf, None
    for mask in range(1, 1 << (n * m)):
        chosen = [p for i, p in enumerate(product) if mask >> i & 1]
        if len({a for a, _ in chosen}) != n or len({b for _, b in chosen}) != m:
            continue
        corr = Correspondence(frozenset(chosen), n, m)
        dis = distortion(corr, x, x_prime)
        if best_corr is None or dis < best_val:
            best_val, best_corr = dis, corr
    return best_val / 2.0, best_corr


def verify_morphism(c: Relation, d: Dissimilarity, d_prime: Dissimilarity,
                    alpha: TranslationMap):
    """Check that relating landmarks through ``c`` maps every simplex of the
    first nerve at scale t into the second nerve at scale alpha(t).

    It is enough to test the maximal simplices: for every finite matrix
    entry v and witness w, the image of ``{l : d(l, w) <= v}`` under ``c``
    must be covered by some witness of ``d_prime`` within ``alpha(v)``.
    Scales between entries follow because alpha never decreases.

    Returns ``(ok, witness)`` where the witness of failure is the (v, w)
    pair whose image is uncovered.
    """
    if c.n_left != d.n_landmarks or c.n_right != d_prime.n_landmarks:
        raise ValueError("relation shape does not match the dissimilarities")
    images = {}
    for a, b in c.pairs:
        images.setdefault(a, set()).add(b)
    grid = sorted({0.0} | {float(v) for v in d.values.ravel()
                           if math.isfinite(v)})
    vp = d_prime.values
    for v in grid:
        bound = alpha.eval(v)
        for w in range(d.n_witnesses):
            col = d.values[:, w]
            image = sorted({b for l in range(d.n_landmarks) if col[l] <= v
                            for b in images.get(l, ())})
            if not image:
                continue
            covered = any(all(vp[b, wp] <= bound for b in image)
                          for wp in range(d_prime.n_witnesses))
            if not covered:
                return False, (v, w)
    return True, None


def verify_interleaving(c: Relation, c_prime: Relation, d: Dissimilarity,
                        d_prime: Dissimilarity, alpha: TranslationMap,
                        alpha_prime: TranslationMap) -> bool:
    """Check a two-way interleaving witnessed by a pair of relations.

    True when ``c`` is a morphism shifted by alpha, ``c_prime`` one shifted
    by alpha_prime, and both round trips contain the diagonal, so the
    composites are carried by inclusions.
    """
    ok, _ = verify_morphism(c, d, d_prime, alpha)
    if not ok:
        return False
    ok, _ = verify_morphism(c_prime, d_prime, d, alpha_prime)
    if not ok:
        return False
    return (c.compose(c_prime).contains_diagonal()
            and c_prime.compose(c).contains_diagonal())
