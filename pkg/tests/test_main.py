import io

import orjson
import pytest

from braidjohnson import main as cli
from braidjohnson.config import CONFIG_ENV_VAR, global_config
from braidjohnson.crossing import ConventionError
from braidjohnson.main import EXIT_DOMAIN, EXIT_OK, EXIT_USAGE, run

REFERENCE_WORD = "-2 1 1 2 2 2 -1 2"


def run_json(capsys, *argv):
    code = run(list(argv))
    assert code == EXIT_OK
    return orjson.loads(capsys.readouterr().out)


def test_crossing_reference_word(capsys):
    assert run(["crossing", "-m", "3", REFERENCE_WORD]) == EXIT_OK
    assert capsys.readouterr().out == '{"m":3,"rows":[[0,-1,1],[0,0,1],[2,1,0]]}\n'


def test_crossing_accepts_generator_notation(capsys):
    data = run_json(capsys, "crossing", "-m", "3", "s2^-1 s1^2 s2^3 s1^-1 s2")
    assert data["rows"] == [[0, -1, 1], [0, 0, 1], [2, 1, 0]]


def test_crossing_empty_word(capsys):
    assert run_json(capsys, "crossing", "-m", "2", "") == {"m": 2, "rows": [[0, 0], [0, 0]]}


def test_crossing_pretty_table(capsys):
    assert run(["crossing", "-m", "3", REFERENCE_WORD, "--pretty"]) == EXIT_OK
    assert capsys.readouterr().out.splitlines() == [" 0 -1  1", " 0  0  1", " 2  1  0"]


def test_perm(capsys):
    data = run_json(capsys, "perm", "-m", "3", "1 2")
    assert data["m"] == 3
    assert sorted(data["perm"]) == [1, 2, 3]


def test_johnson(capsys):
    data = run_json(capsys, "johnson", "-m", "2", "1")
    assert data["tau1"] == [
        {"basis": "X1", "wedge": [{"i": 1, "j": 2, "c": 1}]},
        {"basis": "X2", "wedge": []},
    ]
    assert data["perm"] == [2, 1]


def test_artin(capsys):
    assert run(["artin", "-m", "3", "1", "x2"]) == EXIT_OK
    assert capsys.readouterr().out == "x2^-1 x1 x2\n"


def test_simple_b5_example(capsys):
    data = run_json(capsys, "simple", "-m", "5", "--base", "1", "--sign", "+1",
                    "--conjugator", "2 -3 -4 -4 -1 -1")
    assert data["transposition"] == [1, 4]
    assert data["sign"] == 1
    assert data["homology"]["coeffs"] == [0, 2, 0, 0, -1]


def test_realize_cord(capsys):
    data = run_json(capsys, "realize-cord", "-m", "5", "--i", "1", "--j", "4", "--sign", "-1",
                    "--homology", "0 2 0 0 -1")
    assert data["cord"] == {"transposition": [1, 4], "sign": -1, "homology": {"coeffs": [0, 2, 0, 0, -1]}}
    assert data["sign"] == -1


def test_hurwitz(capsys):
    data = run_json(capsys, "hurwitz", "-m", "3", "1", "2", "--moves", "1")
    assert [entry["word"] for entry in data["after"]] == [[2], [-2, 1, 2]]
    assert data["before"][0]["crossing"] == [[0, 0, 0], [1, 0, 0], [0, 0, 0]]


def test_check_matrix_round_trip(capsys):
    assert run(["crossing", "-m", "3", REFERENCE_WORD]) == EXIT_OK
    produced = capsys.readouterr().out.strip()
    data = run_json(capsys, "check-matrix", produced)
    assert data == {"perm_braid": False, "image_of_C": True, "ppb_conditions": False}


def test_check_matrix_from_stdin(capsys, monkeypatch):
    monkeypatch.setattr("sys.stdin", io.StringIO("[[0, 0], [1, 0]]"))
    data = run_json(capsys, "check-matrix", "-")
    assert data["perm_braid"] is True


def test_search_ppb(capsys):
    assert run(["search-ppb", "[[0, 2], [2, 0]]"]) == EXIT_OK
    assert capsys.readouterr().out == "1 1 1 1\n"


def test_search_ppb_all(capsys):
    assert run(["search-ppb", "[[0,1,1],[1,0,1],[1,1,0]]", "--all"]) == EXIT_OK
    lines = capsys.readouterr().out.splitlines()
    assert len(lines) > 1
    assert lines == sorted(lines, key=lambda line: [int(x) for x in line.split()])


def test_search_ppb_limit_zero_is_usage_error():
    assert run(["search-ppb", "[[0, 2], [2, 0]]", "--limit", "0"]) == EXIT_USAGE


def test_search_ppb_config_limit_zero_lists_all(capsys, tmp_path):
    config_path = tmp_path / "config.toml"
    config_path.write_text("[search]\nlimit = 0\n")
    assert run(["search-ppb", "[[0,1,1],[1,0,1],[1,1,0]]", "--config", str(config_path)]) == EXIT_OK
    many = capsys.readouterr().out.splitlines()
    assert global_config.search.limit == 0
    global_config.reload(None)
    assert run(["search-ppb", "[[0,1,1],[1,0,1],[1,1,0]]"]) == EXIT_OK
    assert capsys.readouterr().out.splitlines() == many[:1]


def test_verify_single_check(capsys):
    assert run(["verify", "--check", "reference_matrix", "--cases", "5"]) == EXIT_OK
    out = capsys.readouterr().out
    assert "reference_matrix" in out and "PASS" in out


def test_verify_json(capsys):
    data = run_json(capsys, "verify", "--check", "reference_matrix", "--check", "simple_example", "--json", "--seed", "7")
    assert data["seed"] == 7
    assert [r["name"] for r in data["results"]] == ["reference_matrix", "simple_example"]
    assert all(r["passed"] for r in data["results"])


@pytest.mark.parametrize("argv", [
    ["crossing", "-m", "3", "1 x 2"],
    ["crossing", "-m", "3", "3"],
    ["artin", "-m", "3", "1", "y1"],
    ["check-matrix", "[[0, 1"],
    ["realize-cord", "-m", "4", "--i", "1", "--j", "3", "--sign", "+1", "--homology", "0 0 1"],
    ["hurwitz", "-m", "3", "1", "2", "--moves", "1 a"],
    ["no-such-command"],
    ["crossing", "1 2"],
    ["simple", "-m", "3", "--base", "1", "--sign", "2"],
    ["check-matrix", "[[0, 0], [1.9, 0]]"],
    ["check-matrix", '[[0, "1"], [1, 0]]'],
    ["check-matrix", "[[0, 1], [true, 0]]"],
    ["check-matrix", "[[0, 1], [0]]"],
    ["check-matrix", '{"m": 2}'],
    ["check-matrix", "7"],
    ["search-ppb", "[[0, 2.0], [2, 0]]"],
])
def test_usage_errors(argv):
    assert run(argv) == EXIT_USAGE


@pytest.mark.parametrize("argv", [
    ["simple", "-m", "3", "--base", "3", "--sign", "+1"],
    ["realize-cord", "-m", "4", "--i", "1", "--j", "3", "--sign", "+1", "--homology", "1 0 0 0"],
    ["check-matrix", "[[1, 0], [0, 0]]"],
    ["search-ppb", "[[0,0,1],[0,0,0],[1,0,0]]"],
    ["hurwitz", "-m", "3", "1", "2", "--moves", "2"],
    ["check-matrix", "[[0, 4611686018427387904], [0, 0]]"],
])
def test_domain_errors(argv):
    assert run(argv) == EXIT_DOMAIN


def test_missing_config_file_is_usage_error(tmp_path):
    assert run(["crossing", "-m", "2", "1", "--config", str(tmp_path / "missing.toml")]) == EXIT_USAGE


def test_missing_config_from_env_is_usage_error(tmp_path, monkeypatch):
    monkeypatch.setenv(CONFIG_ENV_VAR, str(tmp_path / "missing.toml"))
    assert run(["crossing", "-m", "2", "1"]) == EXIT_USAGE


def test_bad_matrix_entry_is_reported_by_position(caplog):
    assert run(["check-matrix", "[[0, 0], [1.9, 0]]"]) == EXIT_USAGE
    assert "at token 3: '1.9'" in caplog.text


def test_convention_failure_is_a_domain_error(monkeypatch):
    def broken(*args):
        raise ConventionError("C(ab) != C(a) + |a|C(b)")

    monkeypatch.setattr(cli, "crossing_matrix", broken)
    assert run(["crossing", "-m", "2", "1"]) == EXIT_DOMAIN
