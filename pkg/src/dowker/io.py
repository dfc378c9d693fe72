"""On-disk formats.

All files are plain text.  Infinity is written as the token ``inf``
(accepted case-insensitively), finite values with 17 significant digits so
doubles round-trip bit-exactly.  Writers emit rows in a deterministic
order; readers re-validate what they load.
"""

from __future__ import annotations

import csv
import math

import numpy as np

from .complexes import FilteredComplex
from .dissimilarity import Dissimilarity, Network, PointCloud
from .persistence import PersistenceDiagram
from .sampling import GreedyOrder

__all__ = [
    "format_value",
    "read_matrix",
    "write_matrix",
    "read_points",
    "write_points",
    "read_network",
    "write_network",
    "read_complex",
    "write_complex",
    "read_diagram",
    "write_diagram",
    "read_order",
    "write_order",
    "write_plan",
]

COMPLEX_HEADER = "# dowker-complex v1"


def format_value(x) -> str:
    x = float(x)
    if x == math.inf:
        return "inf"
    return "%.17g" % x


def _parse_value(token: str) -> float:
    value = float(token)
    if math.isnan(value):
        raise ValueError("nan is not a valid value")
    return value


def read_matrix(path) -> Dissimilarity:
    """Dissimilarity matrix from CSV: rows are landmarks, columns witnesses."""
    rows = []
    with open(path, newline="") as handle:
        for record in csv.reader(handle):
            if not record:
                continue
            rows.append([_parse_value(tok) for tok in record])
    if not rows:
        raise ValueError(f"{path}: empty matrix")
    if len({len(r) for r in rows}) != 1:
        raise ValueError(f"{path}: ragged rows")
    return Dissimilarity(np.array(rows, dtype=float))


def write_matrix(path, d: Dissimilarity):
    with open(path, "w", newline="\n") as handle:
        for row in d.values:
            handle.write(",".join(format_value(x) for x in row) + "\n")


def read_points(path, metric: str = "euclidean") -> PointCloud:
    """Point cloud from CSV: one point per row."""
    rows = []
    with open(path, newline="") as handle:
        for record in csv.reader(handle):
            if not record:
                continue
            rows.append([_parse_value(tok) for tok in record])
    if not rows:
        raise ValueError(f"{path}: no points")
    return PointCloud(np.array(rows, dtype=float), metric)


def write_points(path, cloud: PointCloud):
    with open(path, "w", newline="\n") as handle:
        for row in cloud.points:
            handle.write(",".join(format_value(x) for x in row) + "\n")


def read_network(path) -> Network:
    """Weighted network from an edge list of ``i j w`` lines.

    Indices are 0-based; the node count is one more than the largest index
    mentioned.  Unlisted off-diagonal pairs get weight infinity, unlisted
    diagonal entries weight zero.  Blank lines and ``#`` comments are
    skipped.
    """
    edges = []
    with open(path) as handle:
        for line in handle:
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            parts = line.split()
            if len(parts) != 3:
                raise ValueError(f"{path}: expected 'i j w', got {line!r}")
            i, j = int(parts[0]), int(parts[1])
            if i < 0 or j < 0:
                raise ValueError(f"{path}: negative node index in {line!r}")
            edges.append((i, j, _parse_value(parts[2])))
    if not edges:
        raise ValueError(f"{path}: empty network")
    n = max(max(i, j) for i, j, _ in edges) + 1
    weights = np.full((n, n), math.inf)
    np.fill_diagonal(weights, 0.0)
    for i, j, w in edges:
        weights[i, j] = w
    return Network(weights)


def write_network(path, network: Network):
    """Edge list that reads back to the same matrix: finite off-diagonal
    entries plus every diagonal entry that is not zero."""
    w = network.weights
    with open(path, "w", newline="\n") as handle:
        for i in range(len(network)):
            for j in range(len(network)):
                default = 0.0 if i == j else math.inf
                if w[i, j] != default:
                    handle.write(f"{i} {j} {format_value(w[i, j])}\n")


def read_complex(path) -> FilteredComplex:
    """Filtered complex from its versioned text format; the result is fully
    re-validated (closure, monotonicity, ordering of each vertex tuple)."""
    with open(path) as handle:
        lines = [line.rstrip("\n") for line in handle]
    if not lines or lines[0].strip() != COMPLEX_HEADER:
        raise ValueError(f"{path}: missing header {COMPLEX_HEADER!r}")
    simplices = {}
    for line in lines[1:]:
        line = line.strip()
        if not line:
            continue
        parts = line.split()
        if len(parts) < 2:
            raise ValueError(f"{path}: malformed simplex line {line!r}")
        value = _parse_value(parts[0])
        verts = tuple(int(tok) for tok in parts[1:])
        if verts in simplices:
            raise ValueError(f"{path}: duplicate simplex {verts}")
        simplices[verts] = value
    if not simplices:
        raise ValueError(f"{path}: no simplices")
    count = 1 + max(v for verts in simplices for v in verts)
    return FilteredComplex.from_dict(simplices, count)


def write_complex(path, complex_: FilteredComplex):
    with open(path, "w", newline="\n") as handle:
        handle.write(COMPLEX_HEADER + "\n")
        for verts, value in complex_.by_value():
            handle.write(format_value(value) + " " + " ".join(str(v) for v in verts) + "\n")


def read_diagram(path) -> PersistenceDiagram:
    """Diagram from CSV rows ``dim,birth,death``."""
    points = []
    with open(path, newline="") as handle:
        for record in csv.reader(handle):
            if not record:
                continue
            if len(record) != 3:
                raise ValueError(f"{path}: expected dim,birth,death")
            points.append((int(record[0]), _parse_value(record[1]),
                           _parse_value(record[2])))
    return PersistenceDiagram(tuple(points))


def write_diagram(path, diagram: PersistenceDiagram):
    with open(path, "w", newline="\n") as handle:
        for dim, birth, death in diagram.points:
            handle.write(f"{dim},{format_value(birth)},{format_value(death)}\n")


def read_order(path) -> GreedyOrder:
    """Greedy order from CSV rows ``index,radius``."""
    perm, radii = [], []
    with open(path, newline="") as handle:
        for record in csv.reader(handle):
            if not record:
                continue
            if len(record) != 2:
                raise ValueError(f"{path}: expected index,radius")
            perm.append(int(record[0]))
            radii.append(_parse_value(record[1]))
    return GreedyOrder(tuple(perm), tuple(radii))


def write_order(path, order: GreedyOrder):
    with open(path, "w", newline="\n") as handle:
        _write_order_rows(handle, order)


def _write_order_rows(handle, order: GreedyOrder):
    for index, radius in zip(order.permutation, order.radii):
        handle.write(f"{index},{format_value(radius)}\n")


def write_plan(path, plan):
    """Plan as three CSV blocks: insertion radii, truncation thresholds
    (the sparse radii), and parents, each row ``position,value``."""
    with open(path, "w", newline="\n") as handle:
        handle.write("# insertion-radii\n")
        for k, value in enumerate(plan.lambda_ins):
            handle.write(f"{k},{format_value(value)}\n")
        handle.write("# truncation-thresholds\n")
        for k, value in enumerate(plan.lambda_sparse):
            handle.write(f"{k},{format_value(value)}\n")
        handle.write("# parents\n")
        for k, parent in enumerate(plan.phi.parents):
            handle.write(f"{k},{parent}\n")
