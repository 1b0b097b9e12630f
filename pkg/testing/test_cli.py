import json

import pytest

from akh.cli import EXIT_INPUT, EXIT_OK, EXIT_VIOLATION, main, run


def test_homology_text():
    result = run(["homology", "d_e"])
    assert result.status == EXIT_OK
    assert result.stdout.splitlines() == [
        "# i\tj\tk\tdim",
        "0\t-1\t-1\t1",
        "0\t1\t1\t1",
        "poincare: t^0 q^1 a^1 + t^0 q^-1 a^-1",
    ]


def test_homology_json():
    result = run(["homology", "d_k", "--json"])
    payload = json.loads(result.stdout)
    assert payload["differential"] == "d0"
    assert payload["dims"] == [
        {"degree": [0, -1, -1], "dim": 1},
        {"degree": [0, 1, 1], "dim": 1},
    ]
    assert "torsion" not in payload


def test_full_homology_with_torsion_field():
    result = run(["homology", "d_k", "--full", "--coeff", "integral", "--json"])
    payload = json.loads(result.stdout)
    assert payload["differential"] == "d"
    assert payload["torsion"] == []
    assert [entry["degree"] for entry in payload["dims"]] == [[0, -1], [0, 1]]


def test_resolve_marks_split_arrows():
    payload = json.loads(run(["resolve", "hopf", "--json"]).stdout)
    assert len(payload["vertices"]) == 4
    assert len(payload["edges"]) == 4
    for edge in payload["edges"]:
        assert ("arrow" in edge) == (edge["kind"] == "split")
        assert edge["sign"] in (1, -1)


def test_action_and_oracle():
    result = run(["action", "d_e"])
    assert result.status == EXIT_OK
    assert "relations: ok" in result.stdout
    result = run(["oracle", "corpus/d_t"])
    assert result.stdout.splitlines()[1:] == ["0\t-1\t0\t1", "0\t1\t0\t1"]


def test_check_passes():
    result = run(["check", "d_k", "--json"])
    assert result.status == EXIT_OK
    payload = json.loads(result.stdout)
    assert payload["passed"]
    names = [check["name"] for check in payload["checks"]]
    assert "reversed crossings" in names
    assert "free sign -1" in names


@pytest.mark.parametrize(
    "first, second, status, verdict",
    [("d_k", "d_e", EXIT_OK, "isomorphic"), ("d_e", "d_t", EXIT_VIOLATION, "distinct")],
)
def test_compare(first: str, second: str, status: int, verdict: str):
    result = run(["compare", first, second])
    assert result.status == status
    assert result.stdout.splitlines()[0] == f"{first} vs {second}: {verdict}"


def test_missing_file_is_input_error():
    result = run(["homology", "no_such_diagram"])
    assert result.status == EXIT_INPUT
    assert result.stdout == ""
    assert json.loads(result.stderr)["error"] == "FileNotFoundError"


def test_invalid_file_reports_json(tmp_path):
    path = tmp_path / "broken.json"
    path.write_text('{"crossings": [[1, 1, 2, 3]], "arrows": ["U"]}')
    result = run(["resolve", str(path), "--json"])
    assert result.status == EXIT_INPUT
    assert json.loads(result.stdout)["error"] == "InvalidDiagramError"


def test_bad_parallel():
    assert run(["homology", "d_e", "--parallel", "0"]).status == EXIT_INPUT


@pytest.mark.parametrize(
    "argv",
    [
        ["homology", "d_e", "--coeff", "complex", "--json"],
        ["homology", "d_e", "--json", "--no-such-flag"],
        ["transmute", "d_e", "--json"],
        ["compare", "d_e", "--json"],
    ],
)
def test_usage_errors_are_json_records(argv):
    result = run(argv)
    assert result.status == EXIT_INPUT
    assert result.stderr == ""
    record = json.loads(result.stdout)
    assert record["error"] == "ArgumentError"
    assert record["message"]


def test_usage_error_in_text_mode(capsys):
    result = run(["homology", "d_e", "--coeff", "complex"])
    assert result.status == EXIT_INPUT
    assert result.stdout == ""
    assert "invalid choice" in json.loads(result.stderr)["message"]
    assert main(["homology"]) == EXIT_INPUT
    assert json.loads(capsys.readouterr().err)["error"] == "ArgumentError"


def test_main_writes_stdout(capsys):
    assert main(["oracle", "d_e", "-v"]) == EXIT_OK
    out = capsys.readouterr().out
    assert out.startswith("# i\tj\tk\tdim")
