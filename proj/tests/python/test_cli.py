import json
import os
import subprocess
from fractions import Fraction

import pytest

CLI = os.environ.get("SUBRIGID_CLI", "subrigid")
THUE_MORSE = '{"alphabet":["0","1"],"rules":{"0":"01","1":"10"}}'


def run(*args, stdin=None, env=None):
    return subprocess.run([CLI, *args], input=stdin, capture_output=True, text=True, env=env)


def test_delta_thue_morse():
    p = run("delta", "--spec-text", THUE_MORSE)
    assert p.returncode == 0, p.stderr
    r = json.loads(p.stdout)["result"]
    assert r["delta_lower"] == "2/3"
    assert r["exact"] is True
    assert r["witness_length"] == 4
    assert r["sequence"] == "3*2^n"
    assert "elapsed" in p.stderr


def test_measure_zeta6_from_stdin():
    p = run("measure", "--spec", "-", "--word", "00", stdin='{"family":"zeta","params":{"l":6}}')
    assert p.returncode == 0, p.stderr
    assert json.loads(p.stdout)["result"]["measure"] == "5/14"


def test_output_is_deterministic():
    a = run("delta", "--spec-text", THUE_MORSE).stdout
    b = run("delta", "--spec-text", THUE_MORSE).stdout
    assert a == b


def test_spec_files(tmp_path):
    toml = tmp_path / "tm.toml"
    toml.write_text('[tm]\ngroup = [3]\nu = "0100"\n')
    p = run("delta", "--spec", str(toml))
    assert p.returncode == 0, p.stderr
    r = json.loads(p.stdout)["result"]
    assert (r["delta_lower"], r["delta_upper"], r["exact"]) == ("1/2", "1/2", True)


def test_profile_csv_and_env_cap(tmp_path):
    csv = tmp_path / "p.csv"
    env = dict(os.environ, SUBRIGID_MAX_M="9")
    p = run("profile", "--spec-text", THUE_MORSE, "--csv", str(csv), env=env)
    assert p.returncode == 0, p.stderr
    lines = csv.read_text().splitlines()
    assert lines[0] == "m,a_m,a_m_decimal"
    assert len(lines) == 9
    m, exact, dec = lines[3].split(",")
    assert (m, exact) == ("4", "2/3")
    assert abs(float(dec) - 2 / 3) < 1e-12


def test_other_commands():
    for args in (["analyze"], ["certify"], ["diagnose", "--n", "12"], ["oracle", "--word", "01", "--depth", "16"]):
        p = run(*args, "--spec-text", THUE_MORSE)
        assert p.returncode == 0, (args, p.stderr)
        json.loads(p.stdout)
    p = run("approx", "--delta", "0.3", "--eps", "0.001")
    assert p.returncode == 0
    factors = json.loads(p.stdout)["result"]["factors"]
    assert all(f["bracket_ok"] for f in factors)
    o = json.loads(run("oracle", "--word", "01", "--depth", "16", "--spec-text", THUE_MORSE).stdout)["result"]
    assert abs(o["empirical"] - 1 / 3) < 1e-3


def test_directive_spec():
    spec = '{"prefix":[{"family":"zeta","params":{"l":6}}],"tail":[{"family":"thue_morse"}]}'
    p = run("measure", "--spec-text", spec, "--word", "0")
    assert p.returncode == 0, p.stderr
    assert Fraction(json.loads(p.stdout)["result"]["measure"]) == Fraction(1, 2)
    p = run("delta", "--spec-text", spec)
    assert p.returncode == 0, p.stderr
    assert json.loads(p.stdout)["result"]["delta_upper"] is None


@pytest.mark.parametrize(
    "args",
    [
        ["delta", "--spec-text", '{"alphabet":["0","1"],"rules":{"0":"01","1":"11"}}'],
        ["delta", "--spec-text", '{"alphabet":["0","1"],"rules":{"0":"010","1":"101"}}'],
        ["delta", "--spec-text", '{"alphabet":["0","1"],"rules":{"0":"02","1":"10"}}'],
        ["measure", "--spec-text", THUE_MORSE],
        ["nope"],
    ],
)
def test_exit_code_two(args):
    assert run(*args).returncode == 2
