"""Seeded synthetic inputs.

Shared by the command line (``synthetic:`` inputs) and the test suite,
so both exercise identical data for a given seed.
"""

from __future__ import annotations

import math

import numpy as np

from .dissimilarity import Dissimilarity, Network, PointCloud

__all__ = [
    "noisy_circle",
    "uniform_square",
    "random_network",
    "random_dissimilarity",
]


def noisy_circle(n: int, seed: int, radius: float = 1.0,
                 noise: float = 0.05) -> PointCloud:
    """Points near a circle: uniform angles, gaussian radial jitter."""
    rng = np.random.default_rng(seed)
    angles = rng.uniform(0.0, 2.0 * np.pi, n)
    r = radius + rng.normal(0.0, noise, n)
    pts = np.column_stack([r * np.cos(angles), r * np.sin(angles)])
    return PointCloud(pts)


def uniform_square(n: int, seed: int, side: float = 1.0) -> PointCloud:
    rng = np.random.default_rng(seed)
    return PointCloud(rng.uniform(0.0, side, (n, 2)))


def random_network(n: int, seed: int, high: float = 5.0) -> Network:
    """Directed network with uniform weights in [0, high], diagonal included."""
    rng = np.random.default_rng(seed)
    return Network(rng.uniform(0.0, high, (n, n)))


def random_dissimilarity(n_landmarks: int, n_witnesses: int,
                         seed: int) -> Dissimilarity:
    """Matrix with entries drawn uniformly from {0, 1, ..., 5, inf}."""
    rng = np.random.default_rng(seed)
    levels = rng.integers(0, 7, (n_landmarks, n_witnesses)).astype(float)
    levels[levels == 6] = math.inf
    return Dissimilarity(levels)
