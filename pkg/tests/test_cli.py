import io
import json
import subprocess
import sys

import pytest

from hypercount import __version__
from hypercount.bounds import HYPOTHESIS_TEXT
from hypercount.cli import run

ASSUME = ["--assume", "rank1,simple,dagger"]


def call(argv):
    out = io.StringIO()
    code = run([str(a) for a in argv], stdout=out)
    text = out.getvalue()
    return code, (json.loads(text) if code == 0 and "--pretty" not in argv else text)


def test_bound_quadratic(fixture_path):
    code, rep = call(["bound", "quadratic", fixture_path("family_g3.json"), *ASSUME])
    assert code == 0
    assert list(rep) == ["command", "version", "inputs", "outputs", "hypotheses"]
    assert rep["command"] == "bound quadratic" and rep["version"] == __version__
    assert rep["outputs"]["point_bound"] == 24
    assert rep["hypotheses"] == [HYPOTHESIS_TEXT[k] for k in ("rank1", "simple", "dagger")]
    assert [c["vanishing_order"] for c in rep["outputs"]["configurations"]][0] == [2, 2]


def test_bound_cubic_and_generic(fixture_path):
    code, rep = call(["bound", "cubic", fixture_path("family_g4.json"), *ASSUME])
    assert code == 0 and rep["outputs"]["point_bound"] == 114
    code, rep = call(["bound", "generic", "--d", 2, fixture_path("family_g3.json"), *ASSUME])
    assert code == 0 and rep["outputs"]["point_bound"] == 2125764 and rep["outputs"]["p"] == 11
    code, rep = call(["bound", "generic", "--d", 2, "--p", 11, "--refine", fixture_path("family_g3.json"), *ASSUME])
    assert code == 0 and rep["outputs"]["point_bound"] == 1394


def test_polytope_mv(fixture_path):
    code, rep = call(["polytope", "mv", fixture_path("example55_d3.json")])
    assert code == 0 and rep["outputs"]["mixed_volume"] == "26"


def test_family_verify():
    code, rep = call(["family", "verify", "--g-min", 3, "--g-max", 3])
    assert code == 0
    recs = rep["outputs"]["records"]
    assert len(recs) == 1 and recs[0]["passed"] and recs[0]["genus"] == 3


def test_series_newton(fixture_path):
    code, rep = call(["series", "newton", "--m", "1/2", fixture_path("series_example.json")])
    assert code == 0
    assert rep["outputs"]["vertices"] == [["1"], ["3"]]
    code, rep = call(["series", "newton", "--m", "1", fixture_path("series_example.json")])
    assert rep["outputs"]["empty"] is True


def test_curve_subcommands(fixture_path):
    code, rep = call(["curve", "info", fixture_path("family_g3.json"), "--prime-bound", 20])
    assert code == 0
    out = rep["outputs"]
    assert out["height"]["value"] == 1 and out["minimal"]["minimal"] is True
    assert 3 in out["good_primes"] and all(p <= 20 for p in out["good_primes"])
    code, rep = call(["curve", "info", fixture_path("siksek.json")])
    assert code == 0 and rep["outputs"]["height"] is None
    code, rep = call(["curve", "count", "--p", 3, "--m", 2, fixture_path("family_g3.json")])
    assert code == 0 and rep["outputs"]["points"] == 7 and rep["outputs"]["closed_points_by_degree"] == [1, 3]
    code, rep = call(["curve", "search-quadratic", "--bound", 2, fixture_path("siksek.json")])
    assert code == 0 and {"D": -2, "x": ["0", "1"], "y": ["0", "0"]} in rep["outputs"]["points"]


def test_missing_hypotheses_exit_2(fixture_path, capsys):
    code, _ = call(["bound", "quadratic", fixture_path("family_g3.json")])
    assert code == 2
    err = capsys.readouterr().err
    for text in HYPOTHESIS_TEXT.values():
        assert text in err
    code, _ = call(["bound", "quadratic", fixture_path("family_g3.json"), "--assume", "rank1,simple"])
    assert code == 2
    assert HYPOTHESIS_TEXT["dagger"] in capsys.readouterr().err


@pytest.mark.parametrize(
    "argv",
    [["bogus"], ["curve"], ["curve", "info"], ["polytope", "mv", "x.json", "--nope"], ["curve", "count", "f.json"]],
)
def test_usage_errors_exit_1(argv, capsys):
    code, _ = call(argv)
    assert code == 1
    assert "usage" in capsys.readouterr().err


def test_malformed_input_exit_1(tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    assert call(["polytope", "mv", bad])[0] == 1
    assert call(["curve", "info", tmp_path / "missing.json"])[0] == 1
    even = tmp_path / "even.json"
    even.write_text('{"genus": 2, "coeffs": [1, 0, 0, 0, 1]}')
    assert call(["curve", "info", even])[0] == 1
    assert call(["bound", "quadratic", even, *ASSUME])[0] == 1
    assert call(["bound", "quadratic", bad, "--assume", "rank1,wrong"])[0] == 1


def test_precondition_failures_exit_2(fixture_path, tmp_path):
    assert call(["bound", "cubic", fixture_path("family_g3.json"), *ASSUME])[0] == 2
    assert call(["family", "verify", "--g-min", 2, "--g-max", 4])[0] == 2
    bad3 = tmp_path / "bad3.json"
    bad3.write_text('{"genus": 2, "coeffs": [1, 0, 0, 0, 0, 3]}')
    assert call(["curve", "count", "--p", 3, bad3])[0] == 2
    assert call(["bound", "generic", "--d", 2, "--p", 7, fixture_path("family_g3.json"), *ASSUME])[0] == 2


def test_pretty_summary(fixture_path):
    code, text = call(["--pretty", "bound", "quadratic", fixture_path("family_g3.json"), *ASSUME])
    assert code == 0
    assert "point_bound: 24" in text
    with pytest.raises(json.JSONDecodeError):
        json.loads(text)


def test_output_is_byte_identical_across_processes(fixture_path):
    argv = [sys.executable, "-m", "hypercount.cli", "bound", "cubic", str(fixture_path("family_g4.json")), *ASSUME]
    a = subprocess.run(argv, capture_output=True, check=True).stdout
    b = subprocess.run(argv, capture_output=True, check=True).stdout
    assert a == b and json.loads(a)["outputs"]["point_bound"] == 114
