import csv
import io
import json

import numpy as np
from scipy.integrate import trapezoid
import pytest

from morsesqueeze import __version__
from morsesqueeze.cli import EXIT_NUMERIC, EXIT_OK, EXIT_USAGE, parse_complex, run


def invoke(*argv):
    buf = io.StringIO()
    code = run(list(argv), stdout=buf)
    return code, buf.getvalue()


def rows_of(text):
    body = [ln for ln in text.splitlines() if not ln.startswith("#")]
    reader = csv.reader(body)
    header = next(reader)
    return header, list(reader)


def header_of(text):
    return {ln[2:].split(" = ")[0]: ln[2:].split(" = ", 1)[1]
            for ln in text.splitlines() if ln.startswith("# ") and " = " in ln}


def test_parse_complex():
    assert parse_complex("2") == 2
    assert parse_complex("1.5-0.3i") == complex(1.5, -0.3)
    assert parse_complex("0.2i") == 0.2j
    assert parse_complex(" 1e-3 + 2e-1j ") == complex(1e-3, 0.2)


@pytest.mark.parametrize("argv,count,last", [(("--molecule", "hcl"), 29, 28),
                                             (("--molecule", "cs2"), 262, 261),
                                             (("--nu", "7"), 4, 3),
                                             (("--omega-e", "700", "--omega-e-xe", "100"), 4, 3)])
def test_spectrum(argv, count, last):
    code, out = invoke("spectrum", *argv)
    assert code == EXIT_OK
    header, rows = rows_of(out)
    assert header == ["n", "E_n", "e_n", "epsilon_n"]
    assert len(rows) == count and int(rows[-1][0]) == last


@pytest.mark.parametrize("argv", [("spectrum", "--molecule", "xenon"),
                                  ("spectrum", "--nu", "2.5"),
                                  ("trajectory", "--gamma", "1.2"),
                                  ("trajectory", "--gamma", "0.2", "--r", "0.1"),
                                  ("trajectory", "--z", "nonsense"),
                                  ("trajectory", "--t-steps", "1"),
                                  ("trajectory", "--x-min", "3", "--x-max", "1"),
                                  ("uncertainty", "--scan", "gamma", "--range", "0", "1.5"),
                                  ("mandel", "--range", "1", "0"),
                                  ("spectrum", "--molecule", "hcl", "--nu", "9.3"),
                                  ("bogus",),
                                  ("trajectory", "--variant", "quantum")])
def test_usage_errors(argv, capsys):
    code, out = invoke(*argv)
    assert code == EXIT_USAGE and out == ""


def test_numeric_error_exit():
    code, out = invoke("trajectory", "--z", "2", "--quad-order", "20")
    assert code == EXIT_NUMERIC and out == ""


def test_provenance_header():
    code, out = invoke("trajectory", "--z", "2", "--t-steps", "5")
    meta = header_of(out)
    assert out.startswith(f"# morsesqueeze {__version__}\n")
    for key in ("molecule", "variant", "z", "gamma", "t_min", "t_max", "t_steps", "x_steps",
                "format", "quad_order", "nu_resolved", "n_max", "gamma_resolved"):
        assert key in meta
    assert meta["n_max"] == "28" and meta["command"] == "trajectory"


def test_determinism_and_jobs():
    a = invoke("uncertainty", "--steps", "12")[1]
    b = invoke("uncertainty", "--steps", "12")[1]
    c = invoke("uncertainty", "--steps", "12", "--jobs", "4")[1]
    assert a == b
    assert rows_of(a) == rows_of(c)


def test_json_mirrors_csv():
    _, text = invoke("trajectory", "--z", "2", "--t-steps", "7")
    _, js = invoke("trajectory", "--z", "2", "--t-steps", "7", "--format", "json")
    doc = json.loads(js)
    header, rows = rows_of(text)
    assert doc["columns"] == header
    assert doc["version"] == __version__ and doc["config"]["z"] == "2"
    assert [[float(v) for v in r] for r in rows] == doc["rows"]


def test_trajectory_ground_state_constant():
    _, out = invoke("trajectory", "--t-steps", "9")
    header, rows = rows_of(out)
    assert header == ["t", "x_mean", "p_mean", "x_var", "p_var", "uncertainty"]
    assert len({tuple(r[1:]) for r in rows}) == 1


def test_density_normalized():
    _, out = invoke("density", "--z", "1", "--t-steps", "5")
    header, rows = rows_of(out)
    assert header == ["x", "t", "density"]
    data = np.array(rows, dtype=float)
    for t in np.unique(data[:, 1]):
        sl = data[data[:, 1] == t]
        assert trapezoid(sl[:, 2], sl[:, 0]) == pytest.approx(1.0, abs=1e-3)


def test_density_gamma_scan():
    _, out = invoke("density", "--gamma-scan", "--range", "0", "0.9", "--steps", "4",
                    "--x-steps", "11")
    header, rows = rows_of(out)
    assert header == ["x", "gamma", "density"] and len(rows) == 44


def test_mandel_flags():
    _, out = invoke("mandel", "--z", "0", "--steps", "3")
    header, rows = rows_of(out)
    assert header == ["r", "gamma", "Q_energy", "Q_oscillator", "flag"]
    assert rows[0][2:] == ["", "", "mean_N_zero"]
    assert all(float(r[2]) > 0 and float(r[3]) > 0 for r in rows[1:])


def test_residual_command():
    _, out = invoke("residual", "--z", "1")
    header, rows = rows_of(out)
    assert header == ["z", "gamma", "lambda1_abs", "lambda0_abs", "residual_norm"]
    assert float(rows[0][4]) < 1e-14
    _, out = invoke("residual", "--z", "0")
    assert float(rows_of(out)[1][0][4]) == 0.0


def test_config_file_and_override(tmp_path):
    cfg = tmp_path / "run.ini"
    cfg.write_text("[run]\nmolecule = toy\nvariant = osc\nz = 1.5\nt_steps = 4\n"
                   "[toy]\nnu = 20.5\n")
    code, out = invoke("trajectory", "--config", str(cfg))
    meta = header_of(out)
    assert code == 0 and meta["variant"] == "osc" and meta["n_max"] == "9"
    assert len(rows_of(out)[1]) == 4
    code, out = invoke("trajectory", "--config", str(cfg), "--variant", "energy", "--z", "0.5")
    meta = header_of(out)
    assert meta["variant"] == "energy" and meta["z"] == "0.5"
    bad = tmp_path / "bad.ini"
    bad.write_text("[run]\ncolour = red\n")
    assert invoke("spectrum", "--config", str(bad))[0] == EXIT_USAGE


def test_out_file(tmp_path):
    target = tmp_path / "spectrum.csv"
    code, out = invoke("spectrum", "--out", str(target))
    assert code == 0 and out == ""
    assert rows_of(target.read_text())[1][-1][0] == "28"
