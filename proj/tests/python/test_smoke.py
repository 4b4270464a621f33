"""Smoke tests for the python bindings."""

import math
import os
import subprocess
import sys

import pytest

import cantorval

TAU = (1 + math.sqrt(5)) / 2


def test_matrix_and_iterate():
    assert cantorval.substitution_matrix("(ab,a)") == [[1, 1], [1, 0]]
    assert cantorval.substitution_matrix("(aab,ba)") == [[2, 1], [1, 1]]
    assert cantorval.iterate("(ab,a)", "a", 2) == "aba"
    assert cantorval.iterate("(aab,ba)", "a", 2) == "aabaabba"


def test_fibonacci_analysis():
    report = cantorval.analyze("(ab,a)")
    assert report["classification"]["kind"] == "Interval"
    assert report["invertible"] is True
    assert report["inverse"] == {"a": "b", "b": "b^-1 a"}
    windows = report["windows"]
    assert windows["kind"] == "intervals"
    assert (windows["a"]["lo"]["a"], windows["a"]["lo"]["b"]) == ("-2", "1")
    assert (windows["b"]["lo"]["a"], windows["b"]["lo"]["b"]) == ("-1", "0")


def test_cantorval_analysis():
    report = cantorval.analyze("(aab,ba)")
    assert report["classification"]["kind"] == "Cantorval"
    boundary = report["boundary"]
    assert abs(boundary["spectral_radius"] - (1 + math.sqrt(2))) < 1e-9
    assert abs(boundary["dimension"] - 0.91578546) < 1e-6
    assert boundary["stable"] is True


def test_dimension_report():
    report = cantorval.dimension("(aab,ba)", bound=2)
    assert report["B"] == 2
    assert abs(report["dimension"] - 0.91578546) < 1e-6
    dot = cantorval.boundary_graph_dot("(aab,ba)", 2)
    assert "digraph boundary" in dot
    assert "O_{ab}" in dot


def test_invertibility():
    assert cantorval.is_invertible("(ab,a)") is True
    assert cantorval.is_invertible("(aab,ba)") is False
    assert cantorval.inverse("(ab,a)") == ("b", "b^-1 a")
    with pytest.raises(ValueError, match="NOT_INVERTIBLE"):
        cantorval.inverse("(aab,ba)")


def test_rejections():
    with pytest.raises(ValueError, match="NON_UNIMODULAR"):
        cantorval.analyze("(aaba,aa)")
    with pytest.raises(ValueError, match="NOT_PRIMITIVE"):
        cantorval.analyze("(b,a)")
    with pytest.raises(ValueError, match="EMPTY_IMAGE"):
        cantorval.analyze("(a,)")


def test_chaos_game_determinism():
    a1, b1 = cantorval.chaos_game("(aab,ba)", samples=5000, seed=7)
    a2, b2 = cantorval.chaos_game("(aab,ba)", samples=5000, seed=7)
    assert a1 == a2
    assert b1 == b2
    assert len(a1) + len(b1) == 5000 - 100
    a3, _ = cantorval.chaos_game("(aab,ba)", samples=5000, seed=8)
    assert a3 != a1


def test_render(tmp_path):
    path = tmp_path / "windows.ppm"
    cantorval.render_ppm("(aab,ba)", str(path), samples=2000, width=400,
                         height=80)
    data = path.read_bytes()
    assert data.startswith(b"P6\n400 80\n255\n")
    assert len(data) == len(b"P6\n400 80\n255\n") + 400 * 80 * 3


@pytest.mark.skipif("CANTORVAL_CLI" not in os.environ,
                    reason="CLI path not provided")
def test_cli_exit_codes():
    cli = os.environ["CANTORVAL_CLI"]
    ok = subprocess.run([cli, "analyze", "(ab,a)"], capture_output=True)
    assert ok.returncode == 0
    rejected = subprocess.run([cli, "analyze", "(aaba,aa)"],
                              capture_output=True)
    assert rejected.returncode == 2
    assert b"NON_UNIMODULAR" in rejected.stdout


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-v"]))
