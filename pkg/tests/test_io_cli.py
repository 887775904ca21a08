import csv
import io
import json
import math
import subprocess
import sys

import numpy as np
import pytest

from framescale import Frame, FrameError
from framescale.cli import main
from framescale.geometry import QuadricCone, quadric_value
from framescale.io import frame_to_csv, frame_to_json, parse_frame_file, parse_frame_text

from .conftest import BASIS_PLUS_DIAGONAL, MERCEDES, SKEW_BASIS


def _write(tmp_path, name, rows):
    path = tmp_path / name
    path.write_text("".join(",".join(repr(x) for x in r) + "\n" for r in rows))
    return str(path)


def _run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


@pytest.fixture
def files(tmp_path):
    return {
        "mb": _write(tmp_path, "mb.csv", MERCEDES),
        "skew": _write(tmp_path, "skew.csv", SKEW_BASIS),
        "bpd": _write(tmp_path, "bpd.csv", BASIS_PLUS_DIAGONAL),
        "eye": _write(tmp_path, "eye.csv", np.eye(3).tolist()),
        "r4": _write(tmp_path, "r4.csv", [[1, 0, 0, 0], [1, 1, 0, 0], [0, 0, 1, 0], [0, 1, 1, 1]]),
        "line": _write(tmp_path, "line.csv", [[1.0, 0.0], [2.0, 0.0]]),
        "ns3": _write(tmp_path, "ns3.csv", [[1.0, 0.2, 0.1], [0.9, -0.1, 0.3],
                                            [1.0, 0.1, -0.2], [0.8, 0.3, 0.2]]),
    }


class TestParsing:
    def test_csv_basis(self):
        f = parse_frame_text("1,0\n0,1")
        np.testing.assert_array_equal(f.vectors, np.eye(2))

    def test_json(self):
        f = parse_frame_text('{"dim":2,"vectors":[[1,0],[1,1]]}')
        np.testing.assert_array_equal(f.vectors, SKEW_BASIS)

    def test_zero_vector(self):
        with pytest.raises(FrameError, match="zero vector at row 2"):
            parse_frame_text("1,0\n0,0")

    def test_ragged(self):
        with pytest.raises(FrameError, match="ragged row 2"):
            parse_frame_text("1,0\n0,1,2")

    def test_non_numeric(self):
        with pytest.raises(FrameError, match="non-numeric"):
            parse_frame_text("1,0\n0,abc")
        with pytest.raises(FrameError, match="non-numeric"):
            parse_frame_text('{"vectors":[[1,"x"]]}')

    def test_empty(self):
        with pytest.raises(FrameError, match="empty"):
            parse_frame_text("# nothing here\n\n")

    def test_json_dim_mismatch(self):
        with pytest.raises(FrameError):
            parse_frame_text('{"dim":3,"vectors":[[1,0]]}')

    def test_comments_and_blank_lines(self):
        f = parse_frame_text("# header\n1,0\n\n0,1\n")
        assert f.count == 2

    def test_stream(self):
        f = parse_frame_file(io.StringIO("1,0\n1,1\n"))
        assert f.count == 2

    def test_round_trip(self, rng):
        f = Frame(rng.normals((7, 3)) * 10.0 ** rng.normals((7, 1)))
        again = parse_frame_text(frame_to_csv(f))
        assert np.array_equal(again.vectors, f.vectors)
        again = parse_frame_text(frame_to_json(f))
        assert np.array_equal(again.vectors, f.vectors)


class TestAnalyze:
    def test_mercedes(self, capsys, files):
        code, out, _ = _run(capsys, "analyze", files["mb"])
        report = json.loads(out)
        assert code == 0
        assert report["schema"] == 1
        assert report["verdict"] == "strictly-scalable"
        np.testing.assert_allclose(report["weights"], math.sqrt(2 / 3), atol=1e-9)
        assert report["nplus1"]["verdict"] == "strictly-scalable"
        assert "timing_ms" not in report

    def test_skew(self, capsys, files):
        code, out, _ = _run(capsys, "analyze", files["skew"])
        report = json.loads(out)
        assert code == 1
        assert report["verdict"] == "not-scalable"
        assert report["certificate"]["trace"] < 0
        assert report["zero_trace_certificate"]["form"] == "zero-trace"

    def test_scalable_not_strictly(self, capsys, files):
        code, out, _ = _run(capsys, "analyze", files["bpd"])
        report = json.loads(out)
        assert code == 0
        assert report["verdict"] == "scalable-not-strictly"
        assert report["zero_weight_rows"] == [3]

    def test_optional_sections(self, capsys, files):
        _, out, _ = _run(capsys, "analyze", files["mb"], "--extend", "--timing")
        report = json.loads(out)
        assert report["extension"]["max_offdiag"] <= 1e-12
        assert report["timing_ms"] >= 0
        _, out, _ = _run(capsys, "analyze", files["skew"], "--cone")
        assert json.loads(out)["cone"]["all_interior"]

    def test_strict_profile(self, capsys, files):
        code, out, _ = _run(capsys, "analyze", files["mb"], "--tolerance-profile", "strict")
        assert code == 0 and json.loads(out)["verdict"] == "strictly-scalable"

    def test_input_errors(self, capsys, caplog, tmp_path, files):
        bad = tmp_path / "bad.csv"
        bad.write_text("1,0\n0,0\n")
        code, out, _ = _run(capsys, "analyze", str(bad))
        assert code == 2 and out == "" and "zero vector at row 2" in caplog.text
        assert _run(capsys, "analyze", files["line"])[0] == 2
        assert _run(capsys, "analyze", str(tmp_path / "missing.csv"))[0] == 2

    def test_deterministic(self, capsys, files):
        first = _run(capsys, "analyze", files["skew"], "--seed", "3", "--cone")[1]
        second = _run(capsys, "analyze", files["skew"], "--seed", "3", "--cone")[1]
        assert first == second


class TestExtend:
    def test_mercedes(self, capsys, files):
        code, out, _ = _run(capsys, "extend", files["mb"])
        report = json.loads(out)
        assert code == 0
        np.testing.assert_allclose(np.abs(report["psi"]), 1 / math.sqrt(2), atol=1e-12)
        np.testing.assert_allclose(report["diagonal"], 1.5, atol=1e-12)

    def test_orthonormal_basis(self, capsys, files):
        code, out, _ = _run(capsys, "extend", files["eye"])
        report = json.loads(out)
        assert code == 0 and report["dim"] == 0
        assert report["psi"] == [[], [], []]
        np.testing.assert_allclose(report["diagonal"], 1)

    def test_not_strict(self, capsys, caplog, files):
        code, out, _ = _run(capsys, "extend", files["skew"])
        assert code == 1 and out == "" and "not strictly scalable" in caplog.text


class TestCone:
    def test_skew(self, capsys, tmp_path, files):
        prefix = str(tmp_path / "fig")
        code, out, _ = _run(capsys, "cone", files["skew"], "--out", prefix, "--resolution", "3")
        assert code == 0
        report = json.loads(out)
        with open(prefix + "-frame.csv") as fh:
            rows = list(csv.reader(fh))
        assert rows[0] == ["x1", "x2", "label"]
        assert [r[-1] for r in rows[1:]] == ["interior", "interior"]
        pts = np.loadtxt(prefix + "-cone.csv", delimiter=",", skiprows=1)
        assert pts.shape == (12, 2)
        cone = QuadricCone(report["basis"], report["coefficients"])
        g = quadric_value(cone, pts)
        assert np.all(np.abs(g) <= 1e-9 * np.sum(pts ** 2, axis=1))

    def test_three_dimensional(self, capsys, tmp_path, files):
        prefix = str(tmp_path / "c3")
        code, out, _ = _run(capsys, "cone", files["ns3"], "--out", prefix)
        assert code == 0
        assert set(json.loads(out)["labels"]) == {"interior"}
        pts = np.loadtxt(prefix + "-cone.csv", delimiter=",", skiprows=1)
        assert pts.shape[1] == 3

    def test_scalable(self, capsys, tmp_path, files):
        assert _run(capsys, "cone", files["mb"], "--out", str(tmp_path / "x"))[0] == 1

    def test_four_dimensions(self, capsys, tmp_path, files):
        assert _run(capsys, "cone", files["r4"], "--out", str(tmp_path / "x"))[0] == 2


class TestPerturb:
    def test_small_epsilon(self, capsys, files):
        code, out, _ = _run(capsys, "perturb", files["skew"], "--epsilon", "0.01",
                            "--trials", "200", "--seed", "1")
        report = json.loads(out)
        assert code == 0
        assert report["non_scalable_fraction"] == 1.0
        assert report["non_scalable"] == report["trials"] == 200
        assert report["safe_radius"] > 0.01

    def test_large_epsilon_two_vectors(self, capsys, files):
        # two vectors in the plane are scalable only when exactly orthogonal,
        # which a continuous perturbation hits with probability zero
        _, out, _ = _run(capsys, "perturb", files["skew"], "--epsilon", "10",
                         "--trials", "200", "--seed", "1")
        assert json.loads(out)["non_scalable_fraction"] == 1.0

    def test_large_epsilon(self, capsys, tmp_path):
        narrow = _write(tmp_path, "narrow.csv", [[1.0, 0.0], [1.0, 0.1], [1.0, -0.1]])
        _, out, _ = _run(capsys, "perturb", narrow, "--epsilon", "10",
                         "--trials", "200", "--seed", "1")
        report = json.loads(out)
        assert report["non_scalable_fraction"] < 1.0
        assert report["non_scalable_fraction"] == report["non_scalable"] / 200

    def test_zero_epsilon(self, capsys, files):
        _, out, _ = _run(capsys, "perturb", files["skew"], "--epsilon", "0", "--trials", "20")
        assert json.loads(out)["non_scalable_fraction"] == 1.0

    def test_scalable_base(self, capsys, files):
        assert _run(capsys, "perturb", files["mb"])[0] == 1


class TestRandom:
    def test_random_bases(self, capsys):
        _, out, _ = _run(capsys, "random", "--dim", "2", "--count", "2", "--trials", "1000")
        assert json.loads(out)["scalable_fraction"] == 0.0

    def test_orthonormal_bases(self, capsys):
        _, out, _ = _run(capsys, "random", "--dim", "2", "--count", "2", "--trials", "200",
                         "--dist", "orthonormal")
        assert json.loads(out)["scalable_fraction"] == 1.0

    def test_regression_snapshot(self, capsys):
        _, out, _ = _run(capsys, "random", "--dim", "3", "--count", "12", "--trials", "500",
                         "--seed", "7")
        report = json.loads(out)
        assert report["scalable_fraction"] == 0.674
        assert 0 < report["scalable_fraction"] < 1

    def test_invalid_sizes(self, capsys):
        assert _run(capsys, "random", "--dim", "3", "--count", "2", "--trials", "5")[0] == 2


def test_module_entry_point(files):
    proc = subprocess.run([sys.executable, "-m", "framescale", "analyze", files["skew"]],
                          capture_output=True, text=True)
    assert proc.returncode == 1
    assert json.loads(proc.stdout)["verdict"] == "not-scalable"
