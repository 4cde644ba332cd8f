import csv
import io
import json
import math
import subprocess
import sys

import numpy as np
import pytest

from ptfabry.cli import main, parse_complex, parse_grid, UsageError
from ptfabry.continuum import ContinuumParams, continuum_amplitudes
from ptfabry.model import LatticeParams
from ptfabry.siegert import find_poles


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def rows(text):
    return list(csv.DictReader(io.StringIO(text)))


def test_parsers():
    assert parse_grid("0.1:2:5") == (0.1, 2.0, 5)
    for bad in ("1:2", "2:1:5", "0:1:1", "a:b:c"):
        with pytest.raises(UsageError):
            parse_grid(bad)
    assert parse_complex("0+1i") == 1j
    assert parse_complex("-2.5i") == -2.5j
    assert parse_complex("3") == 3
    assert parse_complex("1-i") == 1 - 1j


def test_spectrum_clean_chain(capsys):
    code, out, _ = run(capsys, "spectrum", "--model", "lattice", "--t", "-1", "--gamma", "0",
                       "--L", "7", "--k", "0.01:3.13:100")
    assert code == 0
    r = rows(out)
    assert len(r) == 100 and all(float(x["T"]) == 1.0 for x in r)


def test_spectrum_fabry_perot_regime(capsys):
    code, out, _ = run(capsys, "spectrum", "--t", "-1", "--gamma", "3", "--L", "7",
                       "--k", "0:3.141592653589793:701")
    assert code == 0
    r = rows(out)
    T = np.array([float(x["T"]) for x in r])
    k = np.array([float(x["k"]) for x in r])
    assert T.max() <= 1 + 1e-12
    assert float(r[0]["k"]) == pytest.approx(1e-6)
    for n in range(1, 7):
        i = np.argmin(np.abs(k - n * math.pi / 7))
        assert T[i] > 0.99


def test_spectrum_marks_divergence(capsys):
    kn = 3 * math.pi / 14
    g = math.sqrt(2) * math.sin(kn)
    code, out, _ = run(capsys, "spectrum", "--t", "-1", "--gamma", repr(g), "--L", "7",
                       "--k", f"{kn}:{kn + 0.1}:2")
    r = rows(out)
    assert r[0]["flags"] == "DIV" and float(r[0]["T"]) == 1e12
    assert r[1]["flags"] == ""


def test_spectrum_continuum_matches_library(capsys):
    code, out, _ = run(capsys, "spectrum", "--model", "continuum", "--gamma-tilde", "2",
                       "--L-tilde", "3", "--k", "0.1:3:30")
    assert code == 0
    p = ContinuumParams(2.0, 3.0)
    for x in rows(out):
        amp = continuum_amplitudes(p, float(x["k"]))
        assert float(x["T"]) == pytest.approx(amp.t_prob, rel=1e-15)
        assert float(x["R_rev"]) == pytest.approx(amp.r_prob_rev, rel=1e-15)


def test_spectrum_gamma_sweep_and_general_potentials(capsys):
    code, out, _ = run(capsys, "spectrum", "--t", "-1", "--L", "3", "--gamma-range", "0.5:1:2",
                       "--k", "0.5:1:3")
    r = rows(out)
    assert code == 0 and len(r) == 6 and r[0]["gamma"] == "0.5"
    code, out, _ = run(capsys, "spectrum", "--t", "-1", "--L", "3", "--v0", "0.5+1i",
                       "--vL", "0.5+1i", "--k", "0.5:1:3")
    assert code == 0 and len(rows(out)) == 3


def test_determinism(capsys, tmp_path):
    argv = ["spectrum", "--t", "-1", "--gamma", "1.3", "--L", "6", "--k", "0:3.14:50", "--header"]
    _, a, _ = run(capsys, *argv)
    _, b, _ = run(capsys, *argv)
    assert a == b and a.startswith("# ptfabry")
    dest = tmp_path / "s.csv"
    assert main(argv + ["--out", str(dest)]) == 0
    assert dest.read_text() == a


def test_poles_json(capsys):
    code, out, _ = run(capsys, "poles", "--t", "-1", "--gamma", "4", "--L", "7")
    doc = json.loads(out)
    assert code == 0 and doc["count"] == 14 and len(doc["poles"]) == 14
    ks = [complex(float(p["re"]), float(p["im"])) for p in doc["poles"]]
    assert ks == sorted(ks, key=lambda z: (z.real, z.imag))
    right = [k for k in ks if k.real > 0]
    near = [n for n in range(1, 7) if min(abs(k.real - n * math.pi / 7) for k in right) < 0.05]
    assert len(near) == 6
    ref = find_poles(LatticeParams(-1.0, 4.0, 7)).k
    assert np.allclose(ks, ref, atol=0)


def test_poles_degenerate_and_l1(capsys):
    code, out, _ = run(capsys, "poles", "--t", "-1", "--gamma", "0", "--L", "7")
    doc = json.loads(out)
    assert code == 0 and doc["count"] == 0 and "degenerate" in doc["message"]
    code, out, _ = run(capsys, "poles", "--t", "-1", "--gamma", "1.9", "--L", "1")
    doc = json.loads(out)
    beta2 = 1 / (1 - 1.9**2)
    for p in doc["poles"]:
        k = complex(float(p["re"]), float(p["im"]))
        assert np.exp(2j * k) == pytest.approx(beta2, abs=1e-12)


def test_poles_continuum_and_general(capsys):
    g = math.sqrt(2) * math.pi / 6
    code, out, _ = run(capsys, "poles", "--model", "continuum", "--gamma-tilde", repr(g),
                       "--L-tilde", "3")
    doc = json.loads(out)
    assert any(abs(float(p["re"]) - math.pi / 6) < 1e-8 for p in doc["poles"])
    code, out, _ = run(capsys, "poles", "--t", "-1", "--L", "3", "--v0", "0+1i", "--vL", "0+1i")
    doc = json.loads(out)
    assert code == 0 and doc["count"] == 6
    assert max(float(p["residual"]) for p in doc["poles"]) < 1e-10


def test_trajectory_l1(capsys):
    code, out, _ = run(capsys, "trajectory", "--t", "-1", "--L", "1", "--gamma-range", "0.5:3:100")
    r = rows(out)
    ev = [x for x in r if x["event"]]
    assert code == 0 and len(ev) == 1 and ev[0]["event"] == "real-axis-crossing"
    assert float(ev[0]["gamma"]) == pytest.approx(math.sqrt(2), abs=1e-9)


def test_verify_quick(capsys):
    code, out, _ = run(capsys, "verify", "--level", "quick", "--seed", "7")
    assert code == 0 and "0 failed" in out
    _, again, _ = run(capsys, "verify", "--level", "quick", "--seed", "7")
    assert again.splitlines()[0].split("worst")[0] == out.splitlines()[0].split("worst")[0]


@pytest.mark.parametrize("argv", [
    ["spectrum", "--t", "-1", "--L", "7"],
    ["spectrum", "--t", "-1", "--gamma", "1", "--L", "7", "--k", "0:4:10"],
    ["spectrum", "--t", "-1", "--gamma", "1", "--L", "0", "--k", "0:3:10"],
    ["trajectory", "--t", "-1", "--L", "3"],
    ["poles", "--v0", "zz"],
    ["nonsense"],
])
def test_usage_errors(capsys, argv):
    code, _, err = run(capsys, *argv)
    assert code == 2 and err


def test_console_entry_point():
    res = subprocess.run([sys.executable, "-m", "ptfabry", "poles", "--t", "-1", "--gamma", "2",
                          "--L", "2"], capture_output=True, text=True, check=False)
    assert res.returncode == 0 and json.loads(res.stdout)["count"] == 4
