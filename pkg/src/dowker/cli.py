"""Command line front end.

Subcommands cover the pipeline end to end: greedy orders, sparsification
plans, complex construction, persistence, sparse-vs-full comparison with
the certified bound, and brute-force network distance.  Outputs are
deterministic for a fixed configuration and seed.

Exit codes: 1 unreadable or malformed input, 2 invalid configuration,
3 guarantee violated (``compare`` only).
"""

from __future__ import annotations

import math
import os
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import click

from . import io
from .complexes import (FilteredComplex, build_dowker_nerve,
                        build_euclidean_cech, build_rips, build_sparse_cech,
                        build_sparse_nerve)
from .datasets import noisy_circle, uniform_square
from .dissimilarity import (Dissimilarity, PointCloud, from_network,
                            from_point_cloud, nearest_point_triangle_relation,
                            sup_over)
from .persistence import compute_persistence, multiplicative_bottleneck
from .sampling import greedy_order
from .sparsification import build_plan
from .stability import network_distance_bruteforce
from .translation import preset_alpha_beta

MODES = ("sparse-dowker", "sparse-cech", "full-nerve", "rips",
         "euclidean-cech")
KINDS = ("points", "matrix", "network")
METRICS = ("euclidean", "manhattan", "chebyshev")

# slack, on the log scale, granted when certifying the multiplicative bound
GUARANTEE_LOG_TOL = 1e-9


@dataclass
class RunConfig:
    """Fully resolved settings for one subcommand invocation."""

    command: str
    input_path: str
    input_kind: str = "points"
    metric: str = "euclidean"
    epsilon: float | None = None
    c: float | None = None
    max_dim: int | None = 1
    mode: str = "full-nerve"
    start_index: int = 0
    seed: int = 0
    output_path: str | None = None
    diagram_path: str | None = None
    other_path: str | None = None
    threads: int = 1


def _read_threads() -> int:
    raw = os.environ.get("DOWKER_THREADS")
    if raw is None:
        return 1
    try:
        threads = int(raw)
    except ValueError:
        threads = 0
    if threads < 1:
        raise ValueError("DOWKER_THREADS must be a positive integer")
    return threads


def _validate(config: RunConfig):
    if config.input_kind not in KINDS:
        raise ValueError(f"unknown input kind {config.input_kind!r}")
    if config.metric not in METRICS:
        raise ValueError(f"unknown metric {config.metric!r}")
    if config.mode not in MODES:
        raise ValueError(f"unknown mode {config.mode!r}")
    if config.max_dim is not None and config.max_dim < 0:
        raise ValueError("max-dim must be non-negative")
    if config.start_index < 0:
        raise ValueError("start-index must be non-negative")
    if config.epsilon is not None and config.epsilon <= 0:
        raise ValueError("epsilon must be positive")
    if config.c is not None and config.c <= 1:
        raise ValueError("c must exceed 1")
    if config.epsilon is not None and config.c is not None:
        raise ValueError("give either epsilon or c, not both")

    needs_preset = (config.command == "plan"
                    or (config.command == "nerve"
                        and config.mode == "sparse-dowker"))
    if needs_preset and config.epsilon is None and config.c is None:
        raise ValueError("a preset parameter (epsilon or c) is required")
    if config.command == "nerve" and config.mode == "sparse-cech":
        if config.epsilon is None:
            raise ValueError("sparse-cech requires epsilon")
    if config.command == "compare" and config.epsilon is None:
        raise ValueError("compare requires epsilon")
    if config.command == "nerve" and config.mode in ("full-nerve", "rips",
                                                     "euclidean-cech"):
        if config.epsilon is not None or config.c is not None:
            raise ValueError(f"{config.mode} takes no preset parameter")
    if config.mode in ("sparse-cech", "euclidean-cech"):
        if config.input_kind != "points" or config.metric != "euclidean":
            raise ValueError(f"{config.mode} requires euclidean point input")


def _load_cloud(config: RunConfig) -> PointCloud:
    source = config.input_path
    if source.startswith("synthetic:"):
        parts = source.split(":")
        if len(parts) != 3:
            raise ValueError(f"bad synthetic input {source!r}, "
                             "expected synthetic:<name>:<count>")
        name, count = parts[1], int(parts[2])
        if name == "circle":
            cloud = noisy_circle(count, config.seed)
        elif name == "square":
            cloud = uniform_square(count, config.seed)
        else:
            raise ValueError(f"unknown synthetic dataset {name!r}")
        if config.metric != "euclidean":
            cloud = PointCloud(cloud.points, config.metric)
        return cloud
    return io.read_points(source, config.metric)


def _load_dissimilarity(config: RunConfig) -> Dissimilarity:
    if config.input_kind == "points":
        return from_point_cloud(_load_cloud(config))
    if config.input_kind == "matrix":
        return io.read_matrix(config.input_path)
    return from_network(io.read_network(config.input_path))


def _ordered_square(config: RunConfig) -> Dissimilarity:
    """Square dissimilarity with rows and columns in greedy order."""
    if config.input_kind == "points":
        cloud = _load_cloud(config)
        order = greedy_order(cloud, config.start_index)
        perm = order.permutation
        return from_point_cloud(cloud, perm, perm)
    raw = _load_dissimilarity(config)
    if raw.n_landmarks != raw.n_witnesses:
        raise ValueError("the greedy pipeline needs a square input")
    order = greedy_order(raw, config.start_index)
    perm = list(order.permutation)
    return Dissimilarity(raw.values[perm][:, perm],
                         tuple(perm), tuple(perm))


def _preset_for(config: RunConfig, d: Dissimilarity, rel):
    if config.epsilon is not None:
        return preset_alpha_beta("multiplicative", epsilon=config.epsilon)
    rho = d.cover_radius()
    sup_t = sup_over(d, rel)
    if not math.isfinite(rho) or not math.isfinite(sup_t):
        raise ValueError("the additive preset needs a finite cover radius "
                         "and triangle supremum")
    return preset_alpha_beta("additive-cover", c=config.c, rho=rho,
                             sup_t=sup_t)


def _sparse_dowker_plan(config: RunConfig):
    d = _ordered_square(config)
    rel = nearest_point_triangle_relation(d)
    alpha, beta = _preset_for(config, d, rel)
    return d, build_plan(d, rel, alpha, beta)


def _build_complex(config: RunConfig) -> FilteredComplex:
    mode = config.mode
    if mode == "full-nerve":
        return build_dowker_nerve(_load_dissimilarity(config), config.max_dim)
    if mode == "rips":
        return build_rips(_load_dissimilarity(config), config.max_dim)
    if mode == "euclidean-cech":
        return build_euclidean_cech(_load_cloud(config), config.max_dim)
    if mode == "sparse-cech":
        cloud = _load_cloud(config)
        order = greedy_order(cloud, config.start_index)
        return build_sparse_cech(cloud, order, config.epsilon, config.max_dim)
    _, plan = _sparse_dowker_plan(config)
    return build_sparse_nerve(plan, config.max_dim)


def _emit_lines(config: RunConfig, lines: list):
    text = "".join(line + "\n" for line in lines)
    if config.output_path:
        with open(config.output_path, "w", newline="\n") as handle:
            handle.write(text)
    else:
        click.echo(text, nl=False)


def _cmd_order(config: RunConfig) -> int:
    if config.input_kind == "points":
        order = greedy_order(_load_cloud(config), config.start_index)
    else:
        d = _load_dissimilarity(config)
        order = greedy_order(d, config.start_index)
    lines = [f"{i},{io.format_value(r)}"
             for i, r in zip(order.permutation, order.radii)]
    _emit_lines(config, lines)
    return 0


def _cmd_plan(config: RunConfig) -> int:
    _, plan = _sparse_dowker_plan(config)
    io.write_plan(config.output_path, plan)
    return 0


def _cmd_nerve(config: RunConfig) -> int:
    complex_ = _build_complex(config)
    io.write_complex(config.output_path, complex_)
    if config.diagram_path:
        io.write_diagram(config.diagram_path, compute_persistence(complex_))
    return 0


def _cmd_persistence(config: RunConfig) -> int:
    complex_ = io.read_complex(config.input_path)
    diagram = compute_persistence(complex_, config.max_dim)
    io.write_diagram(config.output_path, diagram)
    return 0


def _cmd_compare(config: RunConfig) -> int:
    d, plan = _sparse_dowker_plan(config)
    depth = config.max_dim + 1
    sparse = build_sparse_nerve(plan, depth)
    full = build_dowker_nerve(d, depth)
    if config.threads >= 2:
        with ThreadPoolExecutor(max_workers=2) as pool:
            jobs = [pool.submit(compute_persistence, k, config.max_dim)
                    for k in (sparse, full)]
            sparse_diag, full_diag = (job.result() for job in jobs)
    else:
        sparse_diag = compute_persistence(sparse, config.max_dim)
        full_diag = compute_persistence(full, config.max_dim)

    os.makedirs(config.output_path, exist_ok=True)
    io.write_diagram(os.path.join(config.output_path, "sparse_diagram.csv"),
                     sparse_diag)
    io.write_diagram(os.path.join(config.output_path, "full_diagram.csv"),
                     full_diag)

    bound = 1.0 + config.epsilon
    lines = [
        f"epsilon {io.format_value(config.epsilon)}",
        f"bound {io.format_value(bound)}",
        f"simplices sparse {len(sparse)} full {len(full)}",
    ]
    violated = False
    for dim in range(config.max_dim + 1):
        ratio = multiplicative_bottleneck(sparse_diag, full_diag, dim)
        if not (ratio < math.inf
                and math.log(ratio) <= math.log(bound) + GUARANTEE_LOG_TOL):
            violated = True
        lines.append(f"dim {dim} ratio {io.format_value(ratio)}")
    lines.append("guarantee violated" if violated else "guarantee ok")
    report = "".join(line + "\n" for line in lines)
    with open(os.path.join(config.output_path, "report.txt"), "w",
              newline="\n") as handle:
        handle.write(report)
    click.echo(report, nl=False)
    return 3 if violated else 0


def _cmd_netdist(config: RunConfig) -> int:
    x = io.read_network(config.input_path)
    y = io.read_network(config.other_path)
    value, corr = network_distance_bruteforce(x, y)
    lines = [f"distance {io.format_value(value)}"]
    lines.extend(f"pair {a} {b}" for a, b in sorted(corr.pairs))
    _emit_lines(config, lines)
    return 0


_DISPATCH = {
    "order": _cmd_order,
    "plan": _cmd_plan,
    "nerve": _cmd_nerve,
    "persistence": _cmd_persistence,
    "compare": _cmd_compare,
    "netdist": _cmd_netdist,
}


def run(config: RunConfig) -> int:
    """Execute one subcommand; returns the process exit code."""
    try:
        config.threads = _read_threads()
        _validate(config)
    except ValueError as exc:
        click.echo(f"error: {exc}", err=True)
        return 2
    try:
        return _DISPATCH[config.command](config)
    except (OSError, ValueError) as exc:
        click.echo(f"error: {exc}", err=True)
        return 1


def _finish(config: RunConfig):
    sys.exit(run(config))


@click.group()
def main():
    """Sparse Dowker nerves: interleaved sparsifications of filtered
    complexes from point clouds, dissimilarity matrices, and networks.

    Point inputs may be a CSV path or a name like ``synthetic:circle:50``
    (seeded by ``--seed``).
    """


_input_kind = click.option("--input-kind", default="points",
                           type=click.Choice(list(KINDS)),
                           show_default=True, help="How to read INPUT.")
_metric = click.option("--metric", default="euclidean",
                       type=click.Choice(list(METRICS)), show_default=True)
_start = click.option("--start-index", default=0, show_default=True,
                      help="First point of the greedy order.")
_seed = click.option("--seed", default=0, show_default=True,
                     help="Seed for synthetic inputs.")


@main.command()
@click.argument("input_path", metavar="INPUT")
@_input_kind
@_metric
@_start
@_seed
@click.option("--output", "-o", "output_path", default=None,
              help="Destination CSV (defaults to stdout).")
def order(input_path, input_kind, metric, start_index, seed, output_path):
    """Greedy (farthest-point) order as ``index,radius`` rows."""
    _finish(RunConfig(command="order", input_path=input_path,
                      input_kind=input_kind, metric=metric,
                      start_index=start_index, seed=seed,
                      output_path=output_path))


@main.command()
@click.argument("input_path", metavar="INPUT")
@_input_kind
@_metric
@_start
@_seed
@click.option("--epsilon", type=float, default=None,
              help="Multiplicative preset parameter.")
@click.option("--c", type=float, default=None,
              help="Additive-cover preset parameter (> 1).")
@click.option("--output", "-o", "output_path", required=True)
def plan(input_path, input_kind, metric, start_index, seed, epsilon, c,
         output_path):
    """Sparsification plan (radii, thresholds, parents) as CSV blocks."""
    _finish(RunConfig(command="plan", input_path=input_path,
                      input_kind=input_kind, metric=metric,
                      start_index=start_index, seed=seed, epsilon=epsilon,
                      c=c, output_path=output_path))


@main.command()
@click.argument("input_path", metavar="INPUT")
@_input_kind
@_metric
@_start
@_seed
@click.option("--mode", required=True, type=click.Choice(list(MODES)))
@click.option("--epsilon", type=float, default=None)
@click.option("--c", type=float, default=None)
@click.option("--max-dim", default=1, show_default=True)
@click.option("--output", "-o", "output_path", required=True,
              help="Complex file destination.")
@click.option("--diagram", "diagram_path", default=None,
              help="Also write the persistence diagram here.")
def nerve(input_path, input_kind, metric, start_index, seed, mode, epsilon,
          c, max_dim, output_path, diagram_path):
    """Build a filtered complex in the chosen mode."""
    _finish(RunConfig(command="nerve", input_path=input_path,
                      input_kind=input_kind, metric=metric,
                      start_index=start_index, seed=seed, mode=mode,
                      epsilon=epsilon, c=c, max_dim=max_dim,
                      output_path=output_path, diagram_path=diagram_path))


@main.command()
@click.argument("input_path", metavar="COMPLEX_FILE")
@click.option("--max-dim", type=int, default=None,
              help="Report dimensions up to this (default: all built).")
@click.option("--output", "-o", "output_path", required=True)
def persistence(input_path, max_dim, output_path):
    """Persistence diagram of a stored complex as ``dim,birth,death`` rows."""
    _finish(RunConfig(command="persistence", input_path=input_path,
                      max_dim=max_dim, output_path=output_path))


@main.command()
@click.argument("input_path", metavar="INPUT")
@_input_kind
@_metric
@_start
@_seed
@click.option("--epsilon", type=float, required=True)
@click.option("--max-dim", default=1, show_default=True,
              help="Largest dimension compared (complexes are built one "
                   "dimension higher).")
@click.option("--output", "-o", "output_path", required=True,
              help="Output directory.")
def compare(input_path, input_kind, metric, start_index, seed, epsilon,
            max_dim, output_path):
    """Sparse vs full diagrams plus the certified multiplicative bound.

    Exits with status 3 when a per-dimension ratio exceeds 1 + epsilon.
    """
    _finish(RunConfig(command="compare", input_path=input_path,
                      input_kind=input_kind, metric=metric,
                      start_index=start_index, seed=seed, epsilon=epsilon,
                      max_dim=max_dim, output_path=output_path))


@main.command()
@click.argument("input_path", metavar="NETWORK")
@click.option("--other", "other_path", required=True,
              help="Second network file.")
@click.option("--output", "-o", "output_path", default=None,
              help="Destination (defaults to stdout).")
def netdist(input_path, other_path, output_path):
    """Exact brute-force network distance between two small networks."""
    _finish(RunConfig(command="netdist", input_path=input_path,
                      other_path=other_path, output_path=output_path))
