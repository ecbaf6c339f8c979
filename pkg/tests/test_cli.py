from __future__ import annotations

import os
import subprocess
import sys

import pytest

from subshift.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out.strip(), err.strip()


@pytest.mark.parametrize(
    "argv, expected",
    [
        (["--preset", "golden-mean", "query", "lang", "2"], "00 01 10"),
        (["--preset", "golden-mean", "query", "mul", "s*(0)", "s(1)"], "0"),
        (["--preset", "golden-mean", "query", "mul", "s(1)", "s*(1)"], "p(Z(1))"),
        (["--preset", "golden-mean", "query", "member", "1(0)", "Z(1)"], "true"),
        (["--preset", "golden-mean", "query", "set", "Z(0) | Z(1)"], "X"),
        (["--preset", "golden-mean", "query", "act", "s*(1)", "[(10)]"], "[(01)]"),
        (["--preset", "golden-mean", "query", "equiv", "(01)", "(10)"], "n=1 m=0 c=0 d=ω xi=(10)"),
        (["--preset", "full2", "query", "equiv", "(0)", "(1)"], "inequivalent"),
        (["--preset", "two-headed-ray", "query", "psi", "[b>r@0]"], "s(b) s*(a) p(Z(a))"),
        (["--preset", "two-headed-ray", "query", "psiinv", "s(b) s*(a) p(Z(a))"], "[b>r@0]"),
    ],
)
def test_queries(capsys, argv, expected):
    code, out, _ = run(capsys, *argv)
    assert code == 0 and out == expected


def test_config_file(capsys):
    code, out, _ = run(capsys, "query", "lang", "2", "--config", "configs/golden-mean.json")
    assert (code, out) == (0, "00 01 10")


def test_verify_exit_codes(capsys):
    code, out, _ = run(capsys, "--preset", "golden-mean", "verify", "relations", "--bound", "4")
    assert code == 0 and out.startswith("relations: pass")
    code, out, _ = run(capsys, "--preset", "singleton", "verify", "faithful")
    assert code == 0 and "NotFaithful" in out
    code, _, err = run(capsys, "--preset", "two-headed-ray", "verify", "minimal", "--ring", "int")
    assert code == 2 and "If R is a field" in err
    code, _, err = run(capsys, "--preset", "golden-mean", "verify", "psi")
    assert code == 2 and err.startswith("subshift: error:")


def test_bad_input(capsys):
    assert run(capsys, "query", "lang", "2")[0] == 2
    assert run(capsys, "--preset", "golden-mean", "query", "member", "(1)", "X")[0] == 2
    assert run(capsys, "--preset", "golden-mean", "query", "mul", "s(2)")[0] == 2
    assert run(capsys, "--preset", "golden-mean", "--ring", "gf:4", "query", "lang", "1")[0] == 2


def test_verify_all_skips_inapplicable(capsys):
    code, out, _ = run(capsys, "--preset", "golden-mean", "--trials", "10", "--bound", "4", "verify", "all")
    assert code == 0
    assert "irreducible: skipped" in out and "psi: skipped" in out


def test_output_independent_of_hash_seed():
    argv = [sys.executable, "-m", "subshift", "--preset", "two-headed-ray", "--ring", "rat", "--trials", "20", "verify", "all"]
    outs = []
    for seed in ("0", "12345"):
        env = dict(os.environ, PYTHONHASHSEED=seed)
        outs.append(subprocess.run(argv, capture_output=True, env=env, check=True).stdout)
    assert outs[0] == outs[1] and outs[0]
