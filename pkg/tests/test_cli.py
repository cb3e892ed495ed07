import json

import pytest

from collatzkit import build_graph, from_json
from collatzkit.cli import build_parser, canonical_argv, dispatch


def run(capsys, argv):
    code = dispatch(argv)
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_traj_reaches_one(capsys):
    code, out, _ = run(capsys, ["traj", "27"])
    assert code == 0
    assert out == (
        "start 27\n"
        "outcome reaches-one\n"
        "steps 111\n"
        "max-excursion 9232\n"
    )


def test_traj_one_with_values(capsys):
    code, out, _ = run(capsys, ["traj", "1", "--values"])
    assert code == 0
    lines = out.splitlines()
    assert "outcome enters-cycle" in lines
    assert "loop 1 4 2 1" in lines
    assert "tail-length 0" in lines
    assert "values 1 4 2 1" in lines


def test_traj_star_variant(capsys):
    code, out, _ = run(capsys, ["traj", "1", "--variant", "star"])
    assert code == 0
    assert "loop 1 1" in out.splitlines()
    code, out, _ = run(capsys, ["traj", "5", "--variant", "star"])
    assert code == 0
    assert "outcome reaches-one" in out.splitlines()


def test_traj_budget(capsys):
    code, out, _ = run(capsys, ["traj", "27", "--max-steps", "50"])
    assert code == 0
    assert "outcome unresolved" in out.splitlines()
    assert "steps-taken 50" in out.splitlines()
    assert "max-excursion 1780" in out.splitlines()


def test_preimage(capsys):
    code, out, _ = run(capsys, ["preimage", "4"])
    assert (code, out) == (0, "1 8\n")
    code, out, _ = run(capsys, ["preimage", "16"])
    assert (code, out) == (0, "5 32\n")


def test_cycle(capsys):
    code, out, _ = run(capsys, ["cycle", "7"])
    assert (code, out) == (0, "1 4 2 1\n")
    code, out, _ = run(capsys, ["cycle", "5", "--variant", "star"])
    assert (code, out) == (0, "1 1\n")


def test_graph_dot(capsys):
    code, out, _ = run(capsys, ["graph", "--modulus", "10"])
    assert code == 0
    assert out.startswith("digraph collatz_mod_10 {")
    assert out.count(" -> ") == 15
    assert "8 -> 9" in out and "9 -> 8" in out


def test_graph_json_round_trips(capsys):
    code, out, _ = run(capsys, ["graph", "--modulus", "10", "--format", "json"])
    assert code == 0
    assert from_json(out) == build_graph(10)


def test_verify_json(capsys):
    code, out, _ = run(capsys, ["verify", "--from", "1", "--to", "100"])
    assert code == 0
    data = json.loads(out)
    assert data["range"] == [1, 100]
    assert data["verified_count"] == 100
    assert data["unresolved"] == []
    assert data["max_total_stopping_time"] == {"value": 118, "argmax": 97}
    assert data["max_excursion"] == {"value": 9232, "argmax": 27}


def test_verify_csv(capsys):
    code, out, _ = run(capsys, ["verify", "--from", "1", "--to", "100", "--format", "csv", "--workers", "1"])
    assert code == 0
    assert out == (
        "statistic,value,argmax\n"
        "max_total_stopping_time,118,97\n"
        "max_excursion,9232,27\n"
    )


def test_domain_error_exit_code(capsys):
    code, out, err = run(capsys, ["traj", "0"])
    assert code == 1
    assert out == ""
    assert err.startswith("error:")
    code, _, err = run(capsys, ["preimage", "-3"])
    assert code == 1
    code, _, err = run(capsys, ["verify", "--from", "5", "--to", "9", "--assume-verified-below", "7"])
    assert code == 1
    assert "assume_verified_below" in err


def test_usage_error_exit_code(capsys):
    assert run(capsys, ["nonsense"])[0] == 2
    assert run(capsys, [])[0] == 2
    assert run(capsys, ["traj"])[0] == 2
    assert run(capsys, ["traj", "27", "--bogus"])[0] == 2
    assert run(capsys, ["graph"])[0] == 2


def test_help_exit_code(capsys):
    code, out, _ = run(capsys, ["--help"])
    assert code == 0
    assert "traj" in out and "verify" in out


def test_output_stable_under_repetition(capsys):
    first = run(capsys, ["graph", "--modulus", "12"])
    second = run(capsys, ["graph", "--modulus", "12"])
    assert first == second
    first = run(capsys, ["verify", "--from", "1", "--to", "50", "--format", "csv"])
    second = run(capsys, ["verify", "--from", "1", "--to", "50", "--format", "csv"])
    assert first == second


@pytest.mark.parametrize(
    "argv",
    [
        ["traj", "27"],
        ["traj", "1", "--values", "--max-steps", "50"],
        ["traj", "9", "--variant", "star"],
        ["preimage", "16"],
        ["cycle", "9", "--variant", "star"],
        ["graph", "--modulus", "4"],
        ["graph", "--modulus", "10", "--format", "json"],
        ["verify", "--from", "1", "--to", "50"],
        ["verify", "--from", "1", "--to", "50", "--workers", "3", "--format", "csv"],
    ],
)
def test_canonical_round_trip(argv):
    parser = build_parser()
    ns = parser.parse_args(argv)
    canon = canonical_argv(ns)
    assert parser.parse_args(canon) == ns
    assert canonical_argv(parser.parse_args(canon)) == canon
