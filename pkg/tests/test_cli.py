"""Command-line tests: output modes and exit codes."""

from __future__ import annotations

import json
from pathlib import Path

import pytest

from polyramsey import __version__
from polyramsey.cli import create_parser, run

PAIR = "V: 0 1"
TRIPLE = "V: 0 1 2"


def test_parser_lists_commands() -> None:
    parser = create_parser()
    args = parser.parse_args(["enumerate", "--n", "2", "--plain"])
    assert args.command == "enumerate"
    assert args.plain


class TestUsage:
    def test_no_command(self) -> None:
        assert run([]) == 2

    def test_missing_required_option(self) -> None:
        assert run(["arrow", "--a", PAIR]) == 2

    def test_bad_complex_text(self) -> None:
        assert run(["canonicalize", "--complex", "0 1 2"]) == 2

    def test_unknown_oracle(self) -> None:
        assert run(["approx", "--oracle", "moebius", "--n", "2"]) == 2

    def test_bad_guard(self) -> None:
        assert run(["enumerate", "--n", "2", "--node-budget", "0"]) == 2


class TestComplexCommands:
    def test_enumerate_plain(self, capsys: pytest.CaptureFixture[str]) -> None:
        assert run(["enumerate", "--n", "3", "--plain"]) == 0
        lines = capsys.readouterr().out.splitlines()
        assert len(lines) == 9
        assert "V: 0 1 2 | F: 0,1,2" in lines

    def test_enumerate_json(self, capsys: pytest.CaptureFixture[str]) -> None:
        assert run(["enumerate", "--n", "3", "--k", "2"]) == 0
        document = json.loads(capsys.readouterr().out)
        assert document["header"]["command"] == "enumerate"
        assert document["header"]["version"] == __version__
        assert document["header"]["guards"]["node_budget"] > 0
        assert document["result"]["count"] == 8

    def test_enumerate_guard(self) -> None:
        assert run(["enumerate", "--n", "7"]) == 3

    def test_approx_empty(self, capsys: pytest.CaptureFixture[str]) -> None:
        argv = ["approx", "--oracle", "full-simplex", "--n", "0", "--plain"]
        assert run(argv) == 0
        assert capsys.readouterr().out == "V: | F:\n"

    def test_approx_with_params(
        self, capsys: pytest.CaptureFixture[str]
    ) -> None:
        argv = [
            "approx",
            "--oracle",
            "pure-set",
            "--param",
            "start=1",
            "--param",
            "step=2",
            "--n",
            "3",
            "--plain",
        ]
        assert run(argv) == 0
        assert capsys.readouterr().out == "V: 1 3 5 | F: 1 3 5\n"

    def test_depth_undefined(self, capsys: pytest.CaptureFixture[str]) -> None:
        argv = [
            "depth",
            "--complex",
            "V: 0 2",
            "--oracle",
            "full-simplex",
            "--plain",
        ]
        assert run(argv) == 1
        assert capsys.readouterr().out == "undefined\n"

    def test_restrict(self, capsys: pytest.CaptureFixture[str]) -> None:
        argv = [
            "restrict",
            "--complex",
            "V: 0 1 2 | F: 0,1 1,2",
            "--subset",
            "0,2",
            "--plain",
        ]
        assert run(argv) == 0
        assert capsys.readouterr().out == "V: 0 2 | F: 0 2\n"

    def test_copies_none(self) -> None:
        argv = ["copies", "--host", TRIPLE, "--pattern", "V: 0 1 | F: 0,1"]
        assert run(argv) == 1

    def test_complex_from_file(
        self, tmp_path: Path, capsys: pytest.CaptureFixture[str]
    ) -> None:
        source = tmp_path / "c.json"
        source.write_text('{"vertices": [3, 7], "facets": [[3, 7]]}')
        argv = ["canonicalize", "--complex", f"@{source}", "--plain"]
        assert run(argv) == 0
        assert capsys.readouterr().out == "V: 0 1 | F: 0,1\n"


class TestRamseyCommands:
    def test_arrow_min_sets(self, capsys: pytest.CaptureFixture[str]) -> None:
        argv = [
            "arrow-min",
            "--class",
            "set",
            "--a-size",
            "2",
            "--b-size",
            "3",
            "--plain",
        ]
        assert run(argv) == 0
        assert capsys.readouterr().out == "6\n"

    def test_arrow_min_not_found(
        self, capsys: pytest.CaptureFixture[str]
    ) -> None:
        argv = [
            "arrow-min",
            "--class",
            "set",
            "--a-size",
            "2",
            "--b-size",
            "3",
            "--n-max",
            "5",
            "--plain",
        ]
        assert run(argv) == 3
        assert capsys.readouterr().out == "not-found\n"

    def test_arrow_fails(self, capsys: pytest.CaptureFixture[str]) -> None:
        argv = ["arrow", "--a", PAIR, "--b", TRIPLE, "--c", "V: 0 1 2 3 4"]
        assert run(argv) == 1
        result = json.loads(capsys.readouterr().out)["result"]
        assert not result["holds"]
        assert len(result["counterexample"]) == 10
        assert len(result["a_copies"]) == 10

    def test_arrow_holds(self, capsys: pytest.CaptureFixture[str]) -> None:
        argv = [
            "arrow",
            "--a",
            "V: 0",
            "--b",
            TRIPLE,
            "--c",
            "V: 0 1 2 3 4",
            "--method",
            "exhaustive",
            "--plain",
        ]
        assert run(argv) == 0
        assert capsys.readouterr().out == "holds\n"

    def test_export_cnf(self, capsys: pytest.CaptureFixture[str]) -> None:
        argv = [
            "export-cnf",
            "--a",
            PAIR,
            "--b",
            TRIPLE,
            "--c",
            "V: 0 1 2 3 4 5",
        ]
        assert run(argv) == 0
        lines = capsys.readouterr().out.splitlines()
        assert any(line.startswith("p cnf 30 ") for line in lines)

    def test_node_budget_exhausted(self) -> None:
        argv = [
            "arrow",
            "--a",
            PAIR,
            "--b",
            TRIPLE,
            "--c",
            "V: 0 1 2 3 4 5",
            "--node-budget",
            "3",
        ]
        assert run(argv) == 3

    def test_space_ramsey_min(
        self, capsys: pytest.CaptureFixture[str]
    ) -> None:
        argv = [
            "space-ramsey-min",
            "--oracle",
            "pure-set",
            "--k",
            "1",
            "--n",
            "2",
            "--plain",
        ]
        assert run(argv) == 0
        assert capsys.readouterr().out == "2\n"

    def test_space_ramsey_min_cumulative(
        self, capsys: pytest.CaptureFixture[str]
    ) -> None:
        argv = [
            "space-ramsey-min",
            "--oracle",
            "pure-set",
            "--k",
            "1",
            "--n",
            "2",
            "--scope",
            "cumulative",
            "--plain",
        ]
        assert run(argv) == 0
        assert capsys.readouterr().out == "3\n"

    def test_help_names_both_scopes(self) -> None:
        text = " ".join(create_parser().format_help().split())
        assert "2 exact and 3 cumulative" in text

    def test_pigeonhole_zero_horizon(self) -> None:
        argv = ["pigeonhole", "--complex", "V: 0", "--oracle", "pure-set"]
        assert run([*argv, "--horizon", "0"]) == 1


class TestOtherCommands:
    def test_axioms(self, capsys: pytest.CaptureFixture[str]) -> None:
        assert run(["axioms", "--k", "1", "--n-max", "3", "--plain"]) == 0
        assert capsys.readouterr().out == "pass\n"

    def test_ext_check_fails_on_a_point(self) -> None:
        assert run(["ext-check", "--complex", "V: 0"]) == 1

    def test_random_is_reproducible(
        self, capsys: pytest.CaptureFixture[str]
    ) -> None:
        argv = ["random", "--n", "6", "--k", "2", "--seed", "4", "--plain"]
        assert run(argv) == 0
        first = capsys.readouterr().out
        assert run(argv) == 0
        assert capsys.readouterr().out == first

    def test_fraisse_build_writes_file(self, tmp_path: Path) -> None:
        out = tmp_path / "chain.json"
        argv = ["fraisse-build", "--k", "1", "--steps", "20", "--out", str(out)]
        assert run(argv) == 0
        document = json.loads(out.read_text())
        assert document["header"]["seed"] == 0
        assert document["result"]["chain"]["passed"]
