import os
from fractions import Fraction
from pathlib import Path

import pytest

import heckecong

FIXTURES = Path(os.environ.get("HECKECONG_FIXTURES", Path(__file__).resolve().parents[2] / "fixtures"))


def test_constants():
    assert heckecong.c_constant(5, 32) == 6
    assert heckecong.c_constant(3, 44) == 7
    assert heckecong.is_admissible(-11, 5, 32)
    assert not heckecong.is_admissible(-6, 5, 32)
    assert heckecong.equidistribution_interval(5, 32) == (Fraction(-32, 3), Fraction(0))


def test_sturm_bound():
    s = heckecong.sturm_bound(1, 3, 44)
    assert s["Nprime"] == 81
    assert s["bound"] == 1186


def test_small_space_sign_and_ap():
    forms = heckecong.eigensystems(N=1, p=3, k=6, precision=6, cutoff=50)
    assert len(forms) == 1
    f = forms[0]
    assert f["ap"] == -f["eps"] * 9
    assert set(f["aell"]) == {2, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47}


def test_empty_space():
    assert heckecong.eigensystems(N=1, p=3, k=4) == []


def test_depth_table_with_labels():
    text = (FIXTURES / "linv" / "p7_k20.txt").read_text()
    t = heckecong.depth_table(N=1, p=7, k=20, precision=9, cutoff=100, linv=text)
    assert t["changepoints"] == [1, 2, 3, 5, 7, 8]
    assert t["fully_split"]
    assert ["0", "-1", "-5", "-5"] in t["rows"][0][1]
    assert t["verification_pass"]


def test_errors_are_translated():
    with pytest.raises(heckecong.Error):
        heckecong.parse_linv("1 1 0\n")
    with pytest.raises(heckecong.Error):
        heckecong.eigensystems(N=3, p=3, k=12)
