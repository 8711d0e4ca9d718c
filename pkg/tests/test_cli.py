import csv
import io
import json
import math
import subprocess
import sys

import pytest

from mellin_kit.cli import main


def run_cli(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_verify_sharpness_shifted(capsys):
    code, out, _ = run_cli(capsys, "verify-sharpness", "--entry", "sinc_shifted", "--T", "2")
    assert code == 0
    report = json.loads(out)
    assert set(report) == {"command", "config_echo", "results", "tolerances", "pass"}
    res = report["results"][0]
    assert abs(res["dist1"] - math.pi) <= 1e-6
    assert abs(res["remainder_sup"] - 1.0) <= 1e-3
    assert report["pass"] is True


def test_verify_sharpness_both(capsys):
    code, out, _ = run_cli(capsys, "verify-sharpness")
    assert code == 0
    names = [r["entry"] for r in json.loads(out)["results"]]
    assert names == ["sinc_shifted", "sinc_centered"]


def test_rates_sobolev(capsys):
    code, out, _ = run_cli(capsys, "rates", "--entry", "sobolev_m", "--m", "2", "--q", "1",
                           "--sigmas", "4,8,16,32")
    assert code == 0
    res = json.loads(out)["results"][0]
    assert res["expected_slope"] == -3.0
    assert abs(res["slope"] + 3.0) <= 0.15


def test_rates_band_limited_is_numerical_failure(capsys):
    code, _, err = run_cli(capsys, "rates", "--entry", "bump_bl", "--sigmas", "3,6,12,24")
    assert code == 1
    assert "DegenerateFitError" in err


def test_distance_bump_csv(capsys):
    code, out, _ = run_cli(capsys, "distance", "--entry", "bump_bl", "--sigma0", "2", "--sigmas", "3,4",
                           "--q", "1")
    assert code == 0
    rows = list(csv.DictReader(io.StringIO(out)))
    assert list(rows[0]) == ["sigma", "dist", "bound", "slope_running"]
    assert [float(r["dist"]) for r in rows] == [0.0, 0.0]


def test_distance_bounds_dominate(capsys):
    code, out, _ = run_cli(capsys, "distance", "--entry", "sobolev_m", "--m", "3", "--r", "2",
                           "--sigmas", "2,4,8,16", "--format", "json")
    assert code == 0
    for row in json.loads(out)["results"]:
        assert row["dist"] <= row["bound"]


def test_distance_svg(capsys, tmp_path):
    target = tmp_path / "plot.svg"
    code, _, _ = run_cli(capsys, "distance", "--entry", "gauss_log", "--sigmas", "1,2,4",
                         "--format", "svg", "--out", str(target))
    assert code == 0
    text = target.read_text()
    assert text.startswith("<svg") and "<polyline" in text and "sigma" in text


def test_svg_unavailable_for_transform(capsys):
    code, _, _ = run_cli(capsys, "transform", "--format", "svg")
    assert code == 2


@pytest.mark.parametrize("argv", [
    ["transform", "--entry", "gauss_log", "--vs=-2,-1,0,1,2"],
    ["reconstruct", "--entry", "bump_bl", "--T", "1", "--kmax", "100"],
    ["differentiate", "--entry", "bump_bl", "--T", "1", "--K", "500", "--format", "json"],
    ["list-catalog"],
])
def test_output_is_deterministic(capsys, argv):
    first = run_cli(capsys, *argv)
    second = run_cli(capsys, *argv)
    assert first[0] == 0
    assert first == second


def test_transform_csv(capsys):
    code, out, _ = run_cli(capsys, "transform", "--entry", "gauss_log", "--vs=-1,0,1")
    assert code == 0
    rows = list(csv.reader(io.StringIO(out)))
    assert rows[0] == ["v", "re", "im"]
    assert float(rows[2][1]) == pytest.approx(math.sqrt(2 * math.pi), abs=1e-10)


def test_reconstruct_from_samples_file(capsys, tmp_path):
    path = tmp_path / "s.csv"
    # x^{-1} sinc(2 log x - 1) sampled at e^{k/2}: all zero
    path.write_text("k,re,im\n" + "".join(f"{k},0,0\n" for k in range(-20, 21)))
    code, out, _ = run_cli(capsys, "reconstruct", "--entry", "sinc_shifted", "--T", "2", "--kmax", "20",
                           "--samples", str(path), "--xs", "1.3")
    assert code == 0
    res = json.loads(out)["results"][0]
    assert res["value"] == [0.0, 0.0]


def test_reconstruct_missing_samples(capsys, tmp_path):
    path = tmp_path / "s.csv"
    path.write_text("k,re,im\n0,1,0\n")
    code, _, err = run_cli(capsys, "reconstruct", "--kmax", "3", "--samples", str(path))
    assert code == 1 and "IncompleteDataError" in err


def test_config_precedence(capsys, tmp_path):
    cfg = tmp_path / "c.json"
    cfg.write_text(json.dumps({"entry": "sobolev_m", "m": 3, "sigmas": [4, 8, 16, 32], "q": 1}))
    code, out, _ = run_cli(capsys, "rates", "--config", str(cfg))
    assert code == 0
    report = json.loads(out)
    assert report["config_echo"]["m"] == 3
    assert report["results"][0]["expected_slope"] == -5.0
    code, out, _ = run_cli(capsys, "rates", "--config", str(cfg), "--m", "2")
    assert json.loads(out)["config_echo"]["m"] == 2
    assert json.loads(out)["results"][0]["expected_slope"] == -3.0


@pytest.mark.parametrize("content", ["{not json", json.dumps({"bogus": 1}), json.dumps([1, 2])])
def test_bad_config_is_usage_error(capsys, tmp_path, content):
    cfg = tmp_path / "c.json"
    cfg.write_text(content)
    assert run_cli(capsys, "rates", "--config", str(cfg))[0] == 2


@pytest.mark.parametrize("argv", [
    ["transform", "--entry", "nonexistent"],
    ["distance", "--sigmas", "-1,2"],
    ["reconstruct", "--xs", "0"],
    ["nonsense-command"],
    ["verify-sharpness", "--entry", "gauss_log"],
])
def test_usage_errors(capsys, argv):
    assert run_cli(capsys, *argv)[0] == 2


def test_verify_bernstein(capsys):
    code, out, _ = run_cli(capsys, "verify-bernstein", "--entry", "bump_bl", "--Ts", "1,2")
    assert code == 0
    rows = json.loads(out)["results"]
    assert all(r["plain"]["satisfied"] and r["extended"]["satisfied"] for r in rows)


def test_kernel_apply(capsys):
    code, out, _ = run_cli(capsys, "kernel-apply", "--entry", "sinc_centered", "--T", "2", "--xs", "1")
    assert code == 0
    res = json.loads(out)["results"][0]
    assert res["value"][0] == pytest.approx(0.5, abs=1e-3)


def test_console_script_entry_point():
    proc = subprocess.run([sys.executable, "-m", "mellin_kit.cli", "list-catalog", "--format", "json"],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0
    names = {r["name"] for r in json.loads(proc.stdout)["results"]}
    assert "gauss_log" in names and "lin_kernel" in names
