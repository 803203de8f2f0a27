import csv
import io
import json
import math

import numpy as np
import pytest

from clustergun import cli, wavepacket


def run(argv, capsys):
    code = cli.main(argv)
    out, err = capsys.readouterr()
    return code, out, err


def rows(text):
    return list(csv.DictReader(io.StringIO(text)))


def test_simulate_cluster(capsys):
    code, out, _ = run(["simulate", "--n", "2"], capsys)
    assert code == 0
    r = rows(out)
    assert list(r[0]) == ["index", "basis", "re", "im"]
    amps = np.array([float(x["re"]) for x in r]) * math.sqrt(8)
    assert np.allclose(amps, [1, 1, 1, -1, 1, 1, -1, 1], atol=1e-8)
    assert [x["basis"] for x in r][:3] == ["000", "001", "010"]


def test_simulate_modes(capsys):
    code, out, _ = run(["simulate", "--n", "3", "--mode", "ghz"], capsys)
    assert code == 0 and len(rows(out)) == 16
    code, out, _ = run(["simulate", "--n", "3", "--mode", "redundant", "--pi-cycle", "2",
                        "--format", "json"], capsys)
    assert code == 0 and len(json.loads(out)) == 16
    code, _, _ = run(["simulate", "--n", "3", "--mode", "redundant", "--pi-cycle", "3"], capsys)
    assert code == 1


def test_stabilizers(capsys):
    code, out, _ = run(["stabilizers", "--n", "3"], capsys)
    r = rows(out)
    assert code == 0
    assert [x["generator"] for x in r] == ["+Xs X1", "+Zs Z1 X2", "+Xs Z2"]
    assert all(float(x["expectation"]) == pytest.approx(1) for x in r)


def test_localize_check(capsys):
    code, out, _ = run(["localize-check", "--n", "6"], capsys)
    assert code == 0
    assert out.strip() == "min_fidelity=1.000000"
    code, out, _ = run(["localize-check", "--n", "3", "--format", "json"], capsys)
    assert json.loads(out)["checks"] == 9


def test_wavepacket_columns(capsys):
    code, out, _ = run(["wavepacket", "--x", "0.15", "--d", "1", "--points", "11"], capsys)
    r = rows(out)
    assert code == 0 and len(r) == 11
    assert list(r[0]) == ["kappa", "re_g", "im_g", "re_f", "im_f", "g2_dephase", "f2_dephase"]


def test_filter_sweep(capsys):
    code, out, _ = run(["filter-sweep", "--x", "0.15", "--points", "5"], capsys)
    r = rows(out)
    assert code == 0 and list(r[0]) == ["delta", "error_rate", "heralded_loss"]
    assert float(r[0]["error_rate"]) == pytest.approx(wavepacket.p_bad(0.15), rel=1e-8)


def test_dephase(capsys):
    code, out, _ = run(["dephase", "--x", "0.15", "--d", "1", "--format", "json"], capsys)
    rec = json.loads(out)
    assert code == 0
    assert rec["rel_diff_g"] < 1e-4
    assert rec["second_moment_g2_dephase"] > rec["second_moment_g2"]


def test_dephase_non_convergence_exit(capsys, monkeypatch):
    def broken(*a, **k):
        raise wavepacket.NonConvergenceError("stuck")
    monkeypatch.setattr(wavepacket, "dephased_spectrum", broken)
    code, out, err = run(["dephase"], capsys)
    assert code == 2 and out == "" and "stuck" in err


def test_contour(capsys, tmp_path):
    dest = tmp_path / "grid.csv"
    code, out, _ = run(["contour", "--nx", "4", "--ny", "3", "--out", str(dest)], capsys)
    assert code == 0 and out == ""
    r = rows(dest.read_text())
    assert list(r[0]) == ["x", "y", "total_error"] and len(r) == 12


def test_frame_run(capsys):
    argv = ["frame-run", "--n", "20", "--shots", "50", "--p-y", "0.05", "--seed", "3"]
    code, out, _ = run(argv, capsys)
    r = rows(out)
    assert code == 0 and list(r[0]) == ["photon_index", "px", "py", "pz"] and len(r) == 20
    _, again, _ = run(argv, capsys)
    assert again == out


def test_estimate(capsys):
    code, out, _ = run(["estimate", "--eta", "0.18", "--n", "12"], capsys)
    rec = json.loads(out)
    assert code == 0
    assert set(rec) == {"rep_rate_hz", "coincidence_rate_hz", "eta", "n"}
    assert 0.01 <= rec["coincidence_rate_hz"] <= 1


def test_config_file(capsys, tmp_path):
    cfg = tmp_path / "p.cfg"
    cfg.write_text("# stronger field\nb_field = 0.03\n")
    _, base, _ = run(["estimate"], capsys)
    _, out, _ = run(["estimate", "--config", str(cfg)], capsys)
    assert json.loads(out)["rep_rate_hz"] == pytest.approx(2 * json.loads(base)["rep_rate_hz"])
    cfg.write_text("bogus = 1\n")
    code, _, err = run(["estimate", "--config", str(cfg)], capsys)
    assert code == 1 and "unknown key" in err


@pytest.mark.parametrize("argv", [
    ["teleport"],
    ["simulate", "--bogus"],
    ["estimate", "--eta", "2"],
    ["contour", "--x-min", "0"],
    [],
])
def test_invalid_input_exit_one(argv, capsys):
    code, out, err = run(argv, capsys)
    assert code == 1 and out == "" and err


@pytest.mark.parametrize("argv", [
    ["simulate", "--n", "4"],
    ["contour", "--nx", "5", "--ny", "5", "--format", "json"],
    ["frame-run", "--n", "100", "--shots", "20", "--p-y", "0.01", "--seed", "9"],
])
def test_byte_identical_reruns(argv, capsys):
    _, a, _ = run(argv, capsys)
    _, b, _ = run(argv, capsys)
    assert a == b and a


def test_number_format():
    assert cli.fmt(1.0) == "1"
    assert cli.fmt(0.123456789012) == "0.123456789"
    assert cli.fmt(1.5e-4) == "1.50000000e-04"
    assert cli.fmt(0) == "0"
