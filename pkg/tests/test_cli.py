"""Tests for the command-line interface."""

import io
import json
import math

import numpy as np
import pytest

import sector_radius as sr
from sector_radius.cli import main
from sector_radius.matrixio import matrix_document, parse_matrix_document, to_json

SHIFT_DOC = '{"n": 2, "entries": [[[0, 0], [1, 0]], [[0, 0], [0, 0]]]}'


def run_cli(capsys, argv, stdin=None, monkeypatch=None):
    if stdin is not None:
        monkeypatch.setattr("sys.stdin", io.StringIO(stdin))
    code = main(argv)
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_radius_of_shift(tmp_path, capsys):
    path = tmp_path / "m.json"
    path.write_text(SHIFT_DOC)
    code, out, _ = run_cli(capsys, ["radius", "--in", str(path)])
    assert code == 0
    assert json.loads(out)["w"] == pytest.approx(0.5, abs=1e-10)


def test_radius_from_stdin(capsys, monkeypatch):
    code, out, _ = run_cli(capsys, ["radius", "--in", "-"],
                           stdin=SHIFT_DOC, monkeypatch=monkeypatch)
    assert code == 0
    assert json.loads(out)["w"] == pytest.approx(0.5, abs=1e-10)


def test_extremal_ratio_round_trip(tmp_path, capsys):
    path = tmp_path / "a.json"
    code, out, _ = run_cli(capsys, ["extremal", "--alpha",
                                    "1.5707963267948966", "--out", str(path)])
    assert code == 0 and out == ""
    code, out, _ = run_cli(capsys, ["ratio", "--in", str(path)])
    assert code == 0
    payload = json.loads(out)
    assert payload["ratio"] == pytest.approx(math.sqrt(2), abs=1e-8)
    assert payload["ok"] is True
    assert payload["alpha_min"] == pytest.approx(math.pi / 2, abs=1e-9)


def test_norm_command(tmp_path, capsys):
    path = tmp_path / "m.json"
    path.write_text(SHIFT_DOC)
    code, out, _ = run_cli(capsys, ["norm", "--in", str(path)])
    assert code == 0
    assert json.loads(out)["norm"] == pytest.approx(1.0, abs=1e-12)


def test_infeasible_three_by_three_exit_one(capsys):
    code, out, err = run_cli(capsys, ["three-by-three", "--d", "0.25",
                                      "--b1", "0.1", "--b2", "0"])
    assert code == 1
    assert "18*d^2 + sqrt(2*(12*d^2+b1)^2 + 2*b2^2) <= 1" in err


def test_malformed_json_exit_two(capsys, monkeypatch):
    code, _, err = run_cli(capsys, ["radius", "--in", "-"],
                           stdin='{"n": 2, "entries": [[', monkeypatch=monkeypatch)
    assert code == 2
    assert "malformed JSON" in err


def test_bad_document_exit_two(capsys, monkeypatch):
    code, _, err = run_cli(capsys, ["radius", "--in", "-"],
                           stdin='{"n": 2, "entries": [[[0, 0]]]}',
                           monkeypatch=monkeypatch)
    assert code == 2
    assert "row" in err


def test_unknown_command_exit_two(capsys):
    assert main(["no-such-command"]) == 2
    capsys.readouterr()


def test_boundary_csv(tmp_path, capsys):
    path = tmp_path / "m.json"
    path.write_text(SHIFT_DOC)
    code, out, _ = run_cli(capsys, ["boundary", "--m", "4", "--in", str(path)])
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0] == "theta,re,im"
    assert len(lines) == 5
    for line in lines[1:]:
        _, re_s, im_s = line.split(",")
        assert math.hypot(float(re_s), float(im_s)) == pytest.approx(
            0.5, abs=1e-9)


def test_boundary_m_too_small_exit_one(tmp_path, capsys):
    path = tmp_path / "m.json"
    path.write_text(SHIFT_DOC)
    code, _, err = run_cli(capsys, ["boundary", "--m", "2", "--in", str(path)])
    assert code == 1
    assert "3" in err


def test_sector_and_sector_angle(tmp_path, capsys):
    path = tmp_path / "e.json"
    run_cli(capsys, ["extremal", "--alpha", str(math.pi / 4),
                     "--out", str(path)])
    code, out, _ = run_cli(capsys, ["sector", "--in", str(path),
                                    "--alpha", str(math.pi / 4)])
    assert code == 0 and json.loads(out)["contained"] is True
    code, out, _ = run_cli(capsys, ["sector", "--in", str(path),
                                    "--alpha", str(math.pi / 6)])
    assert code == 0 and json.loads(out)["contained"] is False
    code, out, _ = run_cli(capsys, ["sector-angle", "--in", str(path)])
    assert code == 0
    assert json.loads(out)["alpha"] == pytest.approx(math.pi / 4, abs=1e-9)


def test_sector_angle_null_for_non_accretive(tmp_path, capsys):
    path = tmp_path / "m.json"
    path.write_text(SHIFT_DOC)
    code, out, _ = run_cli(capsys, ["sector-angle", "--in", str(path)])
    assert code == 0
    assert json.loads(out)["alpha"] is None


def test_ellipse_command(capsys, monkeypatch):
    code, out, _ = run_cli(capsys, ["ellipse", "--in", "-"],
                           stdin=SHIFT_DOC, monkeypatch=monkeypatch)
    assert code == 0
    payload = json.loads(out)
    assert payload["minor_axis_length"] == pytest.approx(1.0, abs=1e-12)
    assert payload["focus1"] == pytest.approx([0.0, 0.0], abs=1e-12)


def test_canonical_b_command(capsys):
    code, out, _ = run_cli(capsys, ["canonical-b", "--alpha",
                                    str(math.pi / 2)])
    assert code == 0
    payload = json.loads(out)
    assert payload["norm"] == pytest.approx(math.sqrt(3), abs=1e-12)
    assert payload["attaining_vector"] == pytest.approx(
        [math.sqrt(3) / 2, 0.5], abs=1e-12)
    entries = payload["matrix"]["entries"]
    assert entries[0][0][0] == pytest.approx(2 / math.sqrt(3), abs=1e-12)


def test_r_family_command(tmp_path, capsys):
    path = tmp_path / "r.json"
    code, _, _ = run_cli(capsys, ["r-family", "--r", "2", "--theta", "0",
                                  "--alpha", str(math.pi / 6),
                                  "--out", str(path)])
    assert code == 0
    t = parse_matrix_document(path.read_text())
    np.testing.assert_allclose(t, [[2, 1], [0, 0.5]], atol=1e-12)


def test_r_family_bad_parameters_exit_one(capsys):
    code, _, err = run_cli(capsys, ["r-family", "--r", "0.5", "--theta", "0",
                                    "--alpha", "0.5"])
    assert code == 1
    assert "r" in err


def test_irreducible_command(capsys):
    code, out, _ = run_cli(capsys, ["irreducible", "--n", "4", "--d", "0.1"])
    assert code == 0
    payload = json.loads(out)
    assert 0 < payload["epsilon_used"] <= 0.1
    assert payload["matrix"]["n"] == 4


def test_certify_command(tmp_path, capsys):
    path = tmp_path / "e.json"
    alpha = math.pi / 3
    run_cli(capsys, ["extremal", "--alpha", str(alpha), "--out", str(path)])
    code, out, _ = run_cli(capsys, ["certify", "--in", str(path),
                                    "--alpha", str(alpha)])
    assert code == 0
    payload = json.loads(out)
    assert payload["verdict"] == "extremal"
    assert payload["ratio"] == pytest.approx(sr.tau(alpha), abs=1e-8)


def test_certify_tolerance_env_and_flag(tmp_path, capsys, monkeypatch):
    # shrink the off-diagonal coupling: the range stays inside the sector
    # but the matrix is no longer extremal at the default tolerance
    alpha = math.pi / 4
    p = sr.extremal_params(alpha)
    phase = np.exp(1j * p.theta)
    t = np.array([[phase, 2 * p.c * 0.99], [0, np.conj(phase)]]) / p.norm
    path = tmp_path / "p.json"
    path.write_text(to_json(matrix_document(t)) + "\n")
    argv = ["certify", "--in", str(path), "--alpha", str(alpha)]
    code, out, _ = run_cli(capsys, argv)
    assert json.loads(out)["verdict"] == "not_extremal"
    # a loose tolerance from the environment flips the verdict ...
    monkeypatch.setenv("SECTOR_RADIUS_TOL", "0.1")
    code, out, _ = run_cli(capsys, argv)
    assert json.loads(out)["verdict"] == "extremal"
    # ... and an explicit --tol wins over the environment
    code, out, _ = run_cli(capsys, argv + ["--tol", "1e-9"])
    assert json.loads(out)["verdict"] == "not_extremal"


def test_bad_env_tolerance_exit_two(tmp_path, capsys, monkeypatch):
    path = tmp_path / "m.json"
    path.write_text(SHIFT_DOC)
    monkeypatch.setenv("SECTOR_RADIUS_TOL", "not-a-number")
    code, _, err = run_cli(capsys, ["certify", "--in", str(path),
                                    "--alpha", "1.0"])
    assert code == 2
    assert "SECTOR_RADIUS_TOL" in err


def test_matrix_document_round_trip_exact():
    rng = np.random.default_rng(np.random.Philox(11))
    t = rng.standard_normal((3, 3)) + 1j * rng.standard_normal((3, 3))
    text = to_json(matrix_document(t))
    back = parse_matrix_document(text)
    assert np.array_equal(back, t)


def test_json_17_digit_format():
    assert to_json(1.0 / 3.0) == "0.33333333333333331"
    assert to_json({"a": True, "b": None}) == '{"a": true, "b": null}'
