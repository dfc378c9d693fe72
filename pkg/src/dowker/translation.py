"""Order-preserving piecewise-linear maps on [0, inf].

These maps shift filtration scales.  Breakpoints are stored as exact
rationals (floats are converted to the rational they represent), so
evaluation, composition and generalized inversion involve no floating-point
tolerance.  A map is determined by its breakpoints, the slope after the
last breakpoint, and its value at infinity.

Representation notes
--------------------
* The first breakpoint is at 0.
* Consecutive breakpoints may share the same argument; that encodes a jump.
  Evaluation is left-continuous at jumps, matching the infimum convention
  of the generalized inverse.
* Breakpoint values are finite; infinity only occurs as the value at the
  infinity endpoint, and is forced there whenever the final slope is
  positive.
"""

from __future__ import annotations

import math
from bisect import bisect_left
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

__all__ = ["TranslationMap", "preset_alpha_beta"]

INF = math.inf


def _to_frac(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, float):
        if not math.isfinite(x):
            raise ValueError("breakpoint coordinates must be finite")
        return Fraction(x)
    raise TypeError(f"cannot interpret {x!r} as an exact rational")


@dataclass(frozen=True)
class TranslationMap:
    """Monotone piecewise-linear map [0, inf] -> [0, inf]."""

    breakpoints: tuple
    final_slope: Fraction
    value_at_infinity: object = None  # Fraction or math.inf

    def __post_init__(self):
        bps = tuple((_to_frac(t), _to_frac(v)) for t, v in self.breakpoints)
        if not bps:
            raise ValueError("at least one breakpoint is required")
        if bps[0][0] != 0:
            raise ValueError("the first breakpoint must sit at 0")
        for (t0, v0), (t1, v1) in zip(bps, bps[1:]):
            if t1 < t0 or v1 < v0:
                raise ValueError("breakpoints must be non-decreasing in both coordinates")
        if any(v < 0 for _, v in bps):
            raise ValueError("values must lie in [0, inf]")
        slope = _to_frac(self.final_slope)
        if slope < 0:
            raise ValueError("final slope must be non-negative")
        vinf = self.value_at_infinity
        if slope > 0:
            vinf = INF
        elif vinf is None:
            vinf = bps[-1][1]
        elif vinf != INF:
            vinf = _to_frac(vinf)
            if vinf < bps[-1][1]:
                raise ValueError("value at infinity below the last breakpoint")
        object.__setattr__(self, "breakpoints", bps)
        object.__setattr__(self, "final_slope", slope)
        object.__setattr__(self, "value_at_infinity", vinf)

    # -- evaluation ---------------------------------------------------

    def __call__(self, t):
        return self.eval(t)

    def eval(self, t):
        """Evaluate at t; returns a Fraction, or inf at the infinite end.

        Left-continuous at representation jumps: for a duplicated
        breakpoint argument the first listed value wins.
        """
        if t == INF:
            return self.value_at_infinity
        tf = _to_frac(t)
        if tf < 0:
            raise ValueError("arguments live in [0, inf]")
        xs = [bp[0] for bp in self.breakpoints]
        last_t, last_v = self.breakpoints[-1]
        if tf > last_t:
            return last_v + self.final_slope * (tf - last_t)
        i = bisect_left(xs, tf)
        t_i, v_i = self.breakpoints[i]
        if tf == t_i:
            return v_i
        t_p, v_p = self.breakpoints[i - 1]
        return v_p + (v_i - v_p) * (tf - t_p) / (t_i - t_p)

    def _eval_right(self, t):
        """Right-continuous variant used when composing across jumps."""
        tf = _to_frac(t)
        xs = [bp[0] for bp in self.breakpoints]
        last_t, last_v = self.breakpoints[-1]
        if tf >= last_t:
            return last_v + self.final_slope * (tf - last_t)
        # last breakpoint with argument == tf, if any
        i = bisect_left(xs, tf)
        j = i
        while j + 1 < len(xs) and xs[j + 1] == tf:
            j += 1
        if xs[j] == tf:
            return self.breakpoints[j][1]
        t_i, v_i = self.breakpoints[i]
        t_p, v_p = self.breakpoints[i - 1]
        return v_p + (v_i - v_p) * (tf - t_p) / (t_i - t_p)

    # -- predicates ---------------------------------------------------

    def dominates_identity(self) -> bool:
        """True when eval(t) >= t for every t in [0, inf]."""
        if any(v < t for t, v in self.breakpoints):
            return False
        return self.final_slope >= 1

    def is_inverse_eligible(self) -> bool:
        """True when the map tends to infinity, so a generalized inverse
        exists as a map into [0, inf)."""
        return self.final_slope > 0

    # -- constructions ------------------------------------------------

    def generalized_inverse(self) -> "TranslationMap":
        """Map s to the least t with eval(t) >= s.

        Flat segments become jumps and jumps become flat segments; the
        result is again left-continuous.  A map bounded above by a finite
        constant has no inverse of this kind.
        """
        if not self.is_inverse_eligible():
            raise ValueError("not inverse-eligible: the map is bounded above")
        pts = [(v, t) for t, v in self.breakpoints]
        if pts[0][0] > 0:
            pts.insert(0, (Fraction(0), Fraction(0)))
        return TranslationMap(_dedupe(pts), Fraction(1) / self.final_slope)

    def compose(self, inner: "TranslationMap") -> "TranslationMap":
        """The map t -> self(inner(t))."""
        cand = {t for t, _ in inner.breakpoints}
        for v, _ in self.breakpoints:
            c = _first_crossing(inner, v)
            if c is not None:
                cand.add(c)
        pts = []
        for t in sorted(cand):
            left = self.eval(inner.eval(t))
            right = self.eval(inner._eval_right(t))
            pts.append((t, left))
            if right != left:
                pts.append((t, right))
        if inner.final_slope == 0:
            slope = Fraction(0)
        else:
            slope = self.final_slope * inner.final_slope
        g_inf = inner.value_at_infinity
        v_inf = self.value_at_infinity if g_inf == INF else self.eval(g_inf)
        return TranslationMap(_dedupe(pts), slope, v_inf)

    def sample(self, grid: Iterable) -> list:
        return [self.eval(t) for t in grid]


def _dedupe(pts: Sequence) -> tuple:
    out = []
    for p in pts:
        if not out or p != out[-1]:
            out.append(p)
    return tuple(out)


def _first_crossing(f: TranslationMap, v: Fraction):
    """Least t with f(t) >= v, or None when no finite t reaches v."""
    if f.breakpoints[0][1] >= v:
        return Fraction(0)
    for (t0, v0), (t1, v1) in zip(f.breakpoints, f.breakpoints[1:]):
        if v1 >= v:
            # here v0 < v <= v1, so the segment rises and the division is safe
            return t0 + (t1 - t0) * (v - v0) / (v1 - v0)
    t_k, v_k = f.breakpoints[-1]
    if f.final_slope == 0:
        return None
    return t_k + (v - v_k) / f.final_slope


def preset_alpha_beta(mode: str, *, c=None, rho=None, sup_t=None, epsilon=None):
    """Standard (alpha, beta) pairs used by the sparsification plans.

    ``multiplicative``: beta(t) = epsilon * t and alpha(t) = (1 + epsilon) t,
    for epsilon > 0.

    ``additive-cover``: beta(t) = max((c - 1) t, rho) and
    alpha(t) = t + beta(t) + sup_t, for c > 1, cover radius rho >= 0 and a
    supremum sup_t >= 0 over the chosen triangle relation.

    Returns ``(alpha, beta)``; alpha always dominates the identity.
    """
    if mode == "multiplicative":
        if epsilon is None:
            raise ValueError("multiplicative preset needs epsilon")
        eps = _to_frac(epsilon)
        if eps <= 0:
            raise ValueError("epsilon must be positive")
        beta = TranslationMap(((0, 0),), eps)
        alpha = TranslationMap(((0, 0),), 1 + eps)
    elif mode == "additive-cover":
        if c is None or rho is None or sup_t is None:
            raise ValueError("additive-cover preset needs c, rho and sup_t")
        cf = _to_frac(c)
        if cf <= 1:
            raise ValueError("c must exceed 1")
        rf = _to_frac(rho)
        sf = _to_frac(sup_t)
        if rf < 0 or sf < 0:
            raise ValueError("rho and sup_t must be non-negative")
        if rf > 0:
            knee = rf / (cf - 1)
            beta = TranslationMap(((0, rf), (knee, rf)), cf - 1)
            alpha = TranslationMap(((0, rf + sf), (knee, knee + rf + sf)), cf)
        else:
            beta = TranslationMap(((0, 0),), cf - 1)
            alpha = TranslationMap(((0, sf),), cf)
    else:
        raise ValueError(f"unknown preset mode {mode!r}")
    assert alpha.dominates_identity()
    return alpha, beta
