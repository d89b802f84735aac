import json
import subprocess
import sys

import pytest

from qkchevalley.cli import EXIT_MISMATCH, EXIT_OK, EXIT_USAGE, main

APPX = ["--type", "A", "--rank", "6", "--k", "3", "--x", "1 4 3 2 6 5 4 3"]


def run(capsys, *args):
    code = main(list(args))
    out, err = capsys.readouterr()
    return code, out, err


def test_expand_text(capsys):
    code, out, _ = run(capsys, *APPX, "--mode", "expand")
    assert code == EXIT_OK
    assert out.count("Q3") == 4
    assert "[O_{2 1 5 4 3 2 6 5 4 3}]" in out


def test_expand_json_matches_text(capsys):
    _, text, _ = run(capsys, *APPX)
    code, out, _ = run(capsys, *APPX, "--format", "json")
    d = json.loads(out)
    assert code == EXIT_OK
    assert d["x"] == "1 4 3 2 6 5 4 3" and d["side"] == "QK" and d["above_s_theta"]
    assert len(d["classical"]) == 4 and len(d["quantum"]) == 4
    for t in d["classical"]:
        assert f"[O_{{{t['y']}}}]" in text
    for t in d["quantum"]:
        assert f"[O_{{{t['y']}}}] Q3" in text


def test_verify_all(capsys):
    code, out, _ = run(capsys, "--type", "A", "--rank", "3", "--k", "2", "--x", "all", "--mode", "verify")
    assert code == EXIT_OK
    assert "6/6 cosets agree" in out


def test_verify_json(capsys):
    code, out, _ = run(capsys, "--type", "B", "--rank", "3", "--k", "3", "--mode", "verify", "--format", "json")
    rows = json.loads(out)
    assert code == EXIT_OK and len(rows) == 8
    assert all(r["ok"] and r["diff"] == {} for r in rows)


def test_parallel_output_is_ordered(capsys):
    args = ["--type", "D", "--rank", "4", "--k", "1", "--mode", "expand"]
    _, serial, _ = run(capsys, *args)
    _, par, _ = run(capsys, *args, "--jobs", "2")
    assert serial == par


def test_cancel_report(capsys):
    code, out, _ = run(capsys, "--type", "A", "--rank", "4", "--k", "2", "--mode", "cancel-report")
    assert code == EXIT_OK
    assert "VIOLATION" not in out
    assert "set G" in out


def test_unreduced_word(capsys):
    code, out, _ = run(capsys, "--type", "A", "--rank", "3", "--k", "2", "--x", "2 2")
    assert code == EXIT_OK
    assert out.startswith("[O_{e}]")


def test_order_seed(capsys):
    _, a, _ = run(capsys, *APPX)
    _, b, _ = run(capsys, *APPX, "--order-seed", "3")
    assert a == b


def test_character_side(capsys):
    code, out, _ = run(capsys, *APPX, "--side", "Character")
    assert code == EXIT_OK and out.startswith("gch V^-_{1 4 3 2 6 5 4 3}((N-1) w3)")


@pytest.mark.parametrize(
    "args,needle",
    [
        (["--type", "A", "--rank", "3", "--k", "2", "--x", "1 q 2"], "position 2"),
        (["--type", "A", "--rank", "3", "--k", "2", "--x", "1 7"], "position 2"),
        (["--type", "B", "--rank", "3", "--k", "1"], "valid k: 3"),
        (["--type", "D", "--rank", "5", "--k", "2"], "valid k: 1, 4, 5"),
        (["--type", "A", "--rank", "3", "--k", "2", "--x", "2 1"], "floor is 2"),
        (["--type", "C", "--rank", "3", "--k", "3"], "allowed types"),
        (["--type", "A", "--rank", "3"], "required"),
    ],
)
def test_usage_errors(capsys, args, needle):
    code, _, err = run(capsys, *args)
    assert code == EXIT_USAGE
    assert needle in err


def test_worked_example_mode(capsys):
    code, out, _ = run(capsys, "--mode", "appendix-demo")
    assert code == EXIT_OK
    assert "floor(s_theta) = 1 2 6 5 4 3" in out
    assert "oracle expansion agrees: True" in out
    code, out, _ = run(capsys, "--mode", "appendix-demo", "--format", "json")
    d = json.loads(out)
    assert d["oracle_agrees"] and d["s_theta_floor"] == "1 2 6 5 4 3"


def test_verify_mismatch_exit(capsys, monkeypatch):
    import qkchevalley.cli as cli

    real = cli.oracle_expansion

    def broken(s, x):
        exp = real(s, x)
        if x.word == (2,):
            exp.terms = {**exp.terms, (x, 1): 7}
        return exp

    monkeypatch.setattr(cli, "oracle_expansion", broken)
    code, out, _ = run(capsys, "--type", "A", "--rank", "3", "--k", "2", "--mode", "verify")
    assert code == EXIT_MISMATCH
    assert "5/6 cosets agree" in out
    assert "mismatches: 2" in out


def test_module_entry_point():
    r = subprocess.run(
        [sys.executable, "-m", "qkchevalley", "--type", "A", "--rank", "1", "--k", "1", "--x", "1"],
        capture_output=True, text=True, check=False,
    )
    assert r.returncode == 0
    assert r.stdout.strip() == "[O_{1}] * [O(-w1)] = e^{-w1} ( [O_{1}] - [O_{e}] Q1 )"
