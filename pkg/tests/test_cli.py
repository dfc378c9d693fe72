"""End-to-end tests for the command line interface."""

import math

import numpy as np
import pytest
from click.testing import CliRunner

from dowker import cli
from dowker.cli import RunConfig, main, run

INF = math.inf

CYCLE_NETWORK = "0 1 0\n1 2 0\n2 0 0\n0 0 0\n1 1 0\n2 2 0\n"


@pytest.fixture
def runner():
    return CliRunner()


def write_line_points(tmp_path):
    path = tmp_path / "line.csv"
    path.write_text("0\n10\n4\n")
    return path


def test_order_stdout(tmp_path, runner):
    path = write_line_points(tmp_path)
    result = runner.invoke(main, ["order", str(path)])
    assert result.exit_code == 0
    assert result.output.splitlines() == ["0,inf", "1,10", "2,4"]


def test_order_to_file(tmp_path, runner):
    path = write_line_points(tmp_path)
    out = tmp_path / "order.csv"
    result = runner.invoke(main, ["order", str(path), "-o", str(out)])
    assert result.exit_code == 0
    assert out.read_text().splitlines() == ["0,inf", "1,10", "2,4"]


def test_order_synthetic_input_is_seeded(runner):
    a = runner.invoke(main, ["order", "synthetic:circle:12", "--seed", "5"])
    b = runner.invoke(main, ["order", "synthetic:circle:12", "--seed", "5"])
    c = runner.invoke(main, ["order", "synthetic:circle:12", "--seed", "6"])
    assert a.exit_code == 0
    assert a.output == b.output
    assert a.output != c.output


def test_plan_blocks(tmp_path, runner):
    path = write_line_points(tmp_path)
    out = tmp_path / "plan.txt"
    result = runner.invoke(
        main, ["plan", str(path), "--epsilon", "1.0", "-o", str(out)])
    assert result.exit_code == 0
    text = out.read_text()
    assert "# insertion-radii" in text
    assert "1,20" in text  # threshold doubles the radius 10
    assert "# parents" in text


def test_nerve_full_on_cyclic_network(tmp_path, runner):
    net = tmp_path / "net.txt"
    net.write_text(CYCLE_NETWORK)
    out = tmp_path / "complex.txt"
    dg = tmp_path / "diagram.csv"
    result = runner.invoke(main, [
        "nerve", str(net), "--input-kind", "network", "--mode", "full-nerve",
        "--max-dim", "2", "-o", str(out), "--diagram", str(dg)])
    assert result.exit_code == 0
    rows = dg.read_text().splitlines()
    assert rows == ["0,0,inf", "1,0,inf"]
    body = out.read_text()
    assert body.startswith("# dowker-complex v1")


def test_nerve_sparse_dowker_mode(tmp_path, runner):
    path = write_line_points(tmp_path)
    out = tmp_path / "sparse.txt"
    result = runner.invoke(main, [
        "nerve", str(path), "--mode", "sparse-dowker", "--epsilon", "1.0",
        "--max-dim", "1", "-o", str(out)])
    assert result.exit_code == 0
    assert out.exists()


def test_persistence_of_stored_complex(tmp_path, runner):
    net = tmp_path / "net.txt"
    net.write_text(CYCLE_NETWORK)
    cx = tmp_path / "complex.txt"
    result = runner.invoke(main, [
        "nerve", str(net), "--input-kind", "network", "--mode", "full-nerve",
        "--max-dim", "2", "-o", str(cx)])
    assert result.exit_code == 0
    out = tmp_path / "diagram.csv"
    result = runner.invoke(
        main, ["persistence", str(cx), "--max-dim", "1", "-o", str(out)])
    assert result.exit_code == 0
    assert out.read_text().splitlines() == ["0,0,inf", "1,0,inf"]


def test_compare_reports_guarantee(tmp_path, runner):
    out = tmp_path / "cmp"
    result = runner.invoke(main, [
        "compare", "synthetic:circle:20", "--epsilon", "0.5",
        "--seed", "3", "-o", str(out)])
    assert result.exit_code == 0
    report = (out / "report.txt").read_text()
    assert "guarantee ok" in report
    assert "epsilon 0.5" in report
    assert (out / "sparse_diagram.csv").exists()
    assert (out / "full_diagram.csv").exists()


def test_compare_threads_give_same_report(tmp_path, runner):
    out1 = tmp_path / "one"
    out2 = tmp_path / "two"
    r1 = runner.invoke(main, [
        "compare", "synthetic:square:16", "--epsilon", "1.0", "-o", str(out1)])
    r2 = runner.invoke(main, [
        "compare", "synthetic:square:16", "--epsilon", "1.0", "-o", str(out2)],
        env={"DOWKER_THREADS": "2"})
    assert r1.exit_code == 0 and r2.exit_code == 0
    assert (out1 / "report.txt").read_text() == (out2 / "report.txt").read_text()


def test_netdist(tmp_path, runner):
    a = tmp_path / "a.txt"
    b = tmp_path / "b.txt"
    a.write_text("0 0 0\n")
    b.write_text("0 0 3\n")
    result = runner.invoke(main, ["netdist", str(a), "--other", str(b)])
    assert result.exit_code == 0
    lines = result.output.splitlines()
    assert lines[0] == "distance 1.5"
    assert "pair 0 0" in lines


def test_missing_input_exits_one(tmp_path, runner):
    result = runner.invoke(main, ["order", str(tmp_path / "absent.csv")])
    assert result.exit_code == 1


def test_conflicting_presets_exit_two(tmp_path, runner):
    path = write_line_points(tmp_path)
    result = runner.invoke(main, [
        "plan", str(path), "--epsilon", "0.5", "--c", "2.0",
        "-o", str(tmp_path / "plan.txt")])
    assert result.exit_code == 2


def test_bad_threads_env_exits_two(tmp_path, runner):
    path = write_line_points(tmp_path)
    result = runner.invoke(
        main, ["order", str(path)], env={"DOWKER_THREADS": "zero"})
    assert result.exit_code == 2


def test_nonmetric_matrix_exits_one(tmp_path, runner):
    """A matrix that admits no triangle relation must fail cleanly."""
    path = tmp_path / "m.csv"
    path.write_text("0,0,9\n0,9,0\n9,0,0\n")
    result = runner.invoke(main, [
        "plan", str(path), "--input-kind", "matrix", "--epsilon", "1.0",
        "-o", str(tmp_path / "plan.txt")])
    assert result.exit_code == 1


def test_run_config_validation_errors():
    assert run(RunConfig(command="order", input_path="x", input_kind="bogus")) == 2
    assert run(RunConfig(command="nerve", input_path="x", mode="rips",
                         epsilon=1.0)) == 2
    assert run(RunConfig(command="compare", input_path="synthetic:circle:8",
                         epsilon=None)) == 2
    assert run(RunConfig(command="nerve", input_path="x",
                         mode="sparse-cech", input_kind="network",
                         epsilon=0.5)) == 2


def test_run_guarantee_violation_exits_three(tmp_path, monkeypatch):
    """A reported ratio above the bound must flip the exit status."""
    monkeypatch.setattr(cli, "multiplicative_bottleneck", lambda *a: 100.0)
    config = RunConfig(
        command="compare", input_path="synthetic:circle:12", epsilon=0.5,
        max_dim=1, output_path=str(tmp_path / "cmp"))
    assert run(config) == 3
    report = (tmp_path / "cmp" / "report.txt").read_text()
    assert "guarantee violated" in report


def test_verbatim_examples_from_usage_docs(tmp_path, runner):
    """The documented invocations keep working end to end."""
    pts = tmp_path / "points.csv"
    pts.write_text("0\n10\n4\n")
    r = runner.invoke(main, ["order", str(pts)])
    assert r.exit_code == 0 and r.output.startswith("0,inf")

    cx = tmp_path / "cx.txt"
    r = runner.invoke(main, [
        "nerve", str(pts), "--mode", "euclidean-cech", "--max-dim", "1",
        "-o", str(cx)])
    assert r.exit_code == 0
    out = tmp_path / "dg.csv"
    r = runner.invoke(main, ["persistence", str(cx), "-o", str(out)])
    assert r.exit_code == 0
    # edges enter at half the pairwise distances; with no triangles built
    # the loop that closes at 5 never fills in
    assert out.read_text().splitlines() == [
        "0,0,2", "0,0,3", "0,0,inf", "1,5,inf"]
