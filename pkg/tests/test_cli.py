"""End-to-end tests for the ``sqroot-kernel`` command line."""

from __future__ import annotations

from pathlib import Path

import pytest

from sqroot_kernel.cli import EXIT_INPUT_ERROR, EXIT_NOT_APPLICABLE, EXIT_TIMEOUT, main
from sqroot_kernel.core.graph import Graph, complete_graph, cycle_graph, square, star_graph
from sqroot_kernel.core.instance import format_graph, format_instance, parse_instance
from sqroot_kernel.core.reduction import LabeledInstance


def _write_graph(tmp_path: Path, name: str, graph: Graph) -> str:
    path = tmp_path / name
    path.write_text(format_graph(graph), encoding="utf-8")
    return str(path)


def _run(capsys: pytest.CaptureFixture[str], *argv: str) -> tuple[int, str, str]:
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_square_prints_the_square(tmp_path: Path, capsys):
    source = _write_graph(tmp_path, "c7.sq", cycle_graph(7))
    dot = tmp_path / "c7.dot"

    code, out, _ = _run(capsys, "square", source, "--dot", str(dot))

    assert code == 0
    assert parse_instance(out).graph == square(cycle_graph(7))
    assert dot.read_text(encoding="utf-8").startswith("graph G {")


def test_solve_prints_a_root(tmp_path: Path, capsys):
    source = _write_graph(tmp_path, "k3.sq", complete_graph(3))

    code, out, _ = _run(capsys, "solve", source)

    assert code == 0
    assert out.splitlines()[0] == "s YES"
    root = parse_instance(out).graph
    assert square(root) == complete_graph(3)


def test_solve_answers_no(tmp_path: Path, capsys):
    source = _write_graph(tmp_path, "c4.sq", cycle_graph(4))
    for engine in ("bruteforce", "tw", "mad"):
        code, out, _ = _run(capsys, "solve", source, "--engine", engine)
        assert code == 0
        assert out.splitlines()[0] == "s NO"


def test_solve_with_dot_output(tmp_path: Path, capsys):
    source = _write_graph(tmp_path, "sq.sq", square(cycle_graph(7)))
    dot = tmp_path / "root.dot"

    code, _, _ = _run(capsys, "solve", source, "--engine", "tw", "--dot", str(dot))

    assert code == 0
    assert dot.read_text(encoding="utf-8").count("[penwidth=3]") == 7


def test_solve_budget_times_out(tmp_path: Path, capsys):
    source = _write_graph(tmp_path, "k4.sq", complete_graph(4))

    code, out, _ = _run(capsys, "--budget", "1", "solve", source)

    assert code == EXIT_TIMEOUT
    assert out.splitlines() == ["s TIMEOUT"]


def test_mad_engine_declines_dense_graphs(tmp_path: Path, capsys):
    source = _write_graph(tmp_path, "k6.sq", complete_graph(6))

    code, out, _ = _run(capsys, "solve", source, "--engine", "mad")

    assert code == EXIT_NOT_APPLICABLE
    assert out.splitlines()[0] == "s NOT-APPLICABLE"


def test_mad_engine_rejects_labels(tmp_path: Path, capsys):
    path = tmp_path / "labeled.sq"
    path.write_text(format_instance(LabeledInstance.of(complete_graph(3), [(0, 1)])), encoding="utf-8")

    code, _, err = _run(capsys, "solve", str(path), "--engine", "mad")

    assert code == EXIT_INPUT_ERROR
    assert "unlabeled" in err


def test_malformed_input_reports_its_position(tmp_path: Path, capsys):
    path = tmp_path / "bad.sq"
    path.write_text("p sqroot 2 1\ne 1 5\n", encoding="utf-8")

    code, out, err = _run(capsys, "solve", str(path))

    assert code == EXIT_INPUT_ERROR
    assert out == ""
    assert err.startswith(f"{path}:2:5: ")


def test_missing_file_is_an_input_error(tmp_path: Path, capsys):
    code, _, err = _run(capsys, "mad", str(tmp_path / "missing.sq"))
    assert code == EXIT_INPUT_ERROR
    assert "does not exist" in err


def test_bad_arguments_are_input_errors(capsys):
    code, _, err = _run(capsys, "treewidth")
    assert code == EXIT_INPUT_ERROR
    assert err


def test_mad_prints_a_fraction(tmp_path: Path, capsys):
    k4 = _write_graph(tmp_path, "k4.sq", complete_graph(4))
    sq = _write_graph(tmp_path, "sq.sq", square(cycle_graph(7)))

    assert _run(capsys, "mad", k4)[1] == "3/1\n"
    assert _run(capsys, "mad", sq, "--method", "bruteforce")[1] == "4/1\n"


def test_treewidth_output(tmp_path: Path, capsys):
    source = _write_graph(tmp_path, "k4.sq", complete_graph(4))

    _, out, _ = _run(capsys, "treewidth", source, "--k", "2")
    assert out == ">2\n"

    code, out, _ = _run(capsys, "treewidth", source, "--k", "3")
    assert code == 0
    assert out.splitlines() == ["s td 1 4 4", "b 1 1 2 3 4"]


def test_check_hkt(tmp_path: Path, capsys):
    planar = _write_graph(tmp_path, "c8.sq", cycle_graph(8))
    dense = _write_graph(tmp_path, "star.sq", star_graph(4))

    assert _run(capsys, "check-hkt", planar)[1] == "PLANAR-SQUARE\n"
    assert _run(capsys, "check-hkt", dense)[1] == "NOT\n"


def test_enumerate_lists_roots(tmp_path: Path, capsys):
    source = _write_graph(tmp_path, "k3.sq", complete_graph(3))

    code, out, _ = _run(capsys, "enumerate", source)

    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "c roots 4 complete"
    assert sum(line.startswith("c root ") for line in lines) == 4


def test_enumerate_cap_marks_the_output(tmp_path: Path, capsys):
    source = _write_graph(tmp_path, "k5.sq", complete_graph(5))

    code, out, _ = _run(capsys, "enumerate", source, "--cap", "2")

    assert code == EXIT_TIMEOUT
    assert out.splitlines()[0] == "c roots 2 capped"


def test_reduce_solve_restore_round_trip(tmp_path: Path, capsys):
    source = _write_graph(tmp_path, "sq.sq", square(cycle_graph(7)))
    trace = tmp_path / "trace.jsonl"

    code, out, _ = _run(capsys, "reduce", source, "--emit-trace", str(trace))
    assert code == 0
    assert out.splitlines()[0] == "s REDUCED"
    reduced = tmp_path / "reduced.sq"
    reduced.write_text(out, encoding="utf-8")
    assert trace.read_text(encoding="utf-8").splitlines()[0] == '{"n": 7}'

    code, out, _ = _run(capsys, "solve", str(reduced))
    assert out.splitlines()[0] == "s YES"
    root = tmp_path / "root.sq"
    root.write_text(out, encoding="utf-8")

    code, out, _ = _run(capsys, "restore", str(trace), str(root))
    assert code == 0
    assert parse_instance(out).graph == cycle_graph(7)


def test_reduce_reports_no(tmp_path: Path, capsys):
    path = tmp_path / "labeled.sq"
    instance = LabeledInstance.of(square(cycle_graph(7)), forbidden=[(0, 1)])
    path.write_text(format_instance(instance), encoding="utf-8")

    code, out, _ = _run(capsys, "reduce", str(path))

    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "s NO"
    assert lines[1].startswith("c ")


def test_restore_rejects_malformed_traces(tmp_path: Path, capsys):
    trace = tmp_path / "trace.jsonl"
    trace.write_text("not json\n", encoding="utf-8")
    root = _write_graph(tmp_path, "root.sq", cycle_graph(7))

    code, _, err = _run(capsys, "restore", str(trace), root)

    assert code == EXIT_INPUT_ERROR
    assert "JSON Lines" in err


def test_kernelize_outputs(tmp_path: Path, capsys):
    solvable = _write_graph(tmp_path, "sq.sq", square(cycle_graph(8)))
    code, out, _ = _run(capsys, "kernelize", solvable, "--k", "0")
    assert code == 0
    assert out.splitlines()[0] == "s YES"
    assert square(parse_instance(out).graph) == square(cycle_graph(8))

    dense = _write_graph(tmp_path, "k13.sq", complete_graph(13))
    code, out, _ = _run(capsys, "kernelize", dense, "--k", "1")
    lines = out.splitlines()
    assert lines[0] == "s KERNEL"
    assert "c map " + " ".join(str(v) for v in range(1, 14)) in lines
    assert parse_instance(out).graph == complete_graph(13)


def test_kernelize_rejects_negative_k(tmp_path: Path, capsys):
    source = _write_graph(tmp_path, "k3.sq", complete_graph(3))
    code, _, err = _run(capsys, "kernelize", source, "--k", "-1")
    assert code == EXIT_INPUT_ERROR
    assert "non-negative" in err


@pytest.mark.parametrize("kind", ["hkt-root", "apex-square"])
def test_generate_is_deterministic(kind, capsys):
    argv = ["generate", "--kind", kind, "--seed", "3", "--vertices", "15", "--k", "1"]

    first = _run(capsys, *argv)
    second = _run(capsys, *argv)

    assert first == second
    assert first[0] == 0
    assert first[1].startswith(f"c {kind} seed=3")
    assert parse_instance(first[1]).graph.n >= 1


def test_binary_input_is_an_input_error(tmp_path: Path, capsys):
    path = tmp_path / "binary.sq"
    path.write_bytes(b"p sqroot 2 1\ne 1 2\nc \xff\xfe\n")

    code, out, err = _run(capsys, "solve", str(path))

    assert code == EXIT_INPUT_ERROR
    assert out == ""
    assert "not valid UTF-8" in err


def test_binary_config_file_is_an_input_error(tmp_path: Path, capsys):
    config_file = tmp_path / "config.yaml"
    config_file.write_bytes(b"\xff\xfe")
    source = _write_graph(tmp_path, "k3.sq", complete_graph(3))

    code, _, err = _run(capsys, "--config", str(config_file), "solve", source)

    assert code == EXIT_INPUT_ERROR
    assert "not valid UTF-8" in err
