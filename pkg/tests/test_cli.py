import io
import json
import os
import subprocess
import sys

import pytest

from superhom.cli import main
from superhom.homology import HomologyReport
from superhom.verify import VerificationReport


def run(*argv):
    out = io.StringIO()
    code = main(list(argv), out=out)
    return code, out.getvalue()


def run_process(*argv):
    env = dict(os.environ, LOGLEVEL="quiet")
    return subprocess.run([sys.executable, "-m", "superhom", *argv],
                          capture_output=True, text=True, env=env)


def test_basis_examples():
    assert run("basis", "--n", "1", "--w", "2", "--h", "-2", "--m", "2") == (0, "d/dx & dx\n1 & 1\n")
    assert run("basis", "--n", "1", "--w", "5", "--h", "-5", "--m", "20") == (0, "")
    code, out = run("basis", "--n", "1", "--w", "3", "--h", "-3", "--m", "6")
    assert code == 0 and len(out.splitlines()) == 1


def test_betti_table():
    code, out = run("betti", "--n", "1", "--w", "2", "--diag")
    assert code == 0
    rows = [line.split() for line in out.splitlines()[2:]]
    assert [r[1] for r in rows] == ["2", "3", "2", "1"]
    assert [r[2] for r in rows] == ["0", "1", "2", "0"]
    assert [r[3] for r in rows] == ["1", "0", "0", "1"]


def test_betti_off_diagonal():
    code, out = run("betti", "--n", "1", "--w", "1", "--h", "0", "--csv")
    bettis = [line.split(",")[-1] for line in out.splitlines()[1:]]
    assert code == 0 and set(bettis[:-1]) == {"0"}


def test_sweep_csv():
    code, out = run("sweep", "--w", "0:4", "--diag", "--csv")
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "n,w,h,m,dim,rank,betti"
    profile = {}
    for line in lines[1:]:
        n, w, h, m, dim, rk, b = map(int, line.split(","))
        profile.setdefault(w, []).append(b)
    assert profile == {0: [0, 0, 1], 1: [0, 0, 1, 1], 2: [1, 0, 0, 1], 3: [1, 0, 0, 1], 4: [1, 0, 0, 1]}


def test_sweep_parallel_matches_serial():
    assert run("sweep", "--w", "0:3", "--h", "-1:1", "--csv", "--jobs", "2") == \
        run("sweep", "--w", "0:3", "--h", "-1:1", "--csv")


def test_bracket_examples():
    assert run("bracket", "d/dx", "x^2 d/dx") == (0, "2 x d/dx\n")
    assert run("bracket", "1", "x") == (0, "dx\n")
    assert run("bracket", "x dx", "dx") == (0, "0\n")


def test_boundary_examples():
    assert run("boundary", "d/dx & 1 & x") == (0, "1 & 1 - d/dx & dx\n")
    assert run("boundary", "x d/dx") == (0, "0\n")
    assert run("boundary", "d/dx & x d/dx & x") == (0, "x d/dx & 1\n")


def test_verify_pass_cases():
    assert run("verify", "thm2", "--w", "3:10")[0] == 0
    assert run("verify", "d2", "--n", "1", "--w", "0:10", "--diag")[0] == 0
    code, out = run("verify", "lemma-ranks", "--json")
    assert code == 0
    assert json.loads(out)["details"]["rank_pairs"] == [[0, 0], [1, 1], [2, 2], [0, 0]]


def test_verify_injected_failure():
    code, out = run("verify", "acyclic", "--n", "1", "--w", "2", "--diag")
    assert code == 1
    assert json.loads(out.splitlines()[-1]) == {"word": "C^2_{2,-2}", "lhs": "betti 1", "rhs": "betti 0"}


def test_negative_ranges_are_values():
    code, out = run("verify", "acyclic", "--w", "0:2", "--h", "-3:-1")
    assert code == 0 and out.startswith("PASS acyclic")


@pytest.mark.parametrize("argv", [
    ["betti", "--bogus"],
    ["betti", "--w", "2", "--h", "1", "--diag"],
    ["betti", "--w", "2"],
    ["basis", "--w", "2", "--diag"],
    ["bracket", "d/dq", "x"],
    ["boundary", "dx & & x"],
    ["verify", "nope"],
    ["sweep", "--w", "4:2", "--diag"],
])
def test_usage_errors_exit_2(argv):
    assert run(*argv)[0] == 2


def test_json_round_trips():
    code, out = run("betti", "--w", "2", "--diag", "--json")
    assert HomologyReport.from_json(out).to_json() + "\n" == out
    code, out = run("verify", "thm5", "--w", "3", "--json")
    assert VerificationReport.from_json(out).to_json() + "\n" == out


def test_process_exit_codes_and_streams():
    ok = run_process("verify", "thm2")
    assert ok.returncode == 0 and ok.stderr == ""
    bad = run_process("verify", "acyclic", "--w", "2", "--diag")
    assert bad.returncode == 1
    usage = run_process("betti", "--w")
    assert usage.returncode == 2 and usage.stdout == "" and "usage" in usage.stderr


def test_loglevel_info_goes_to_stderr():
    env = dict(os.environ, LOGLEVEL="info")
    res = subprocess.run([sys.executable, "-m", "superhom", "betti", "--w", "1", "--diag"],
                         capture_output=True, text=True, env=env)
    assert res.returncode == 0 and "computing" in res.stderr and "computing" not in res.stdout
