"""Smoke test for the pyextalg extension module.

Uses an installed ``pyextalg`` if available (``maturin develop`` in
crates/python), otherwise the shared library from ``cargo build -p
extalg-python``.
"""

import importlib
import pathlib
import shutil
import sys
import tempfile
from fractions import Fraction

ROOT = pathlib.Path(__file__).resolve().parent.parent


def load():
    try:
        return importlib.import_module("pyextalg")
    except ImportError:
        pass
    for profile in ("release", "debug"):
        lib = ROOT / "target" / profile / "libpyextalg.so"
        if lib.exists():
            tmp = pathlib.Path(tempfile.mkdtemp())
            shutil.copy(lib, tmp / "pyextalg.so")
            sys.path.insert(0, str(tmp))
            return importlib.import_module("pyextalg")
    sys.exit("pyextalg not found: run `cargo build -p extalg-python` first")


def main():
    ex = load()

    a = ex.Algebra(2, 4)
    assert a.dim == 21, a.dim
    assert str(a) == "dim 21, grades: sl(4), Λ^2"
    assert a.grade_degrees == [0, 2]

    z = a.bracket("e_0*e_1 + e_2*e_3", "e_0*e_2 + e_1*e_3")
    assert z == [["0", "0", "0", "2"], ["0", "0", "-2", "0"], ["0", "-2", "0", "0"], ["2", "0", "0", "0"]], z

    x = "e0*e1 + e2*e3"
    assert a.ad_rank(x) == 10
    assert a.is_ad_semisimple(x)
    table = a.block_ranks(x, 4)
    assert [p["total"] for p in table["powers"]] == [10, 10, 10, 10]
    assert table["powers"][0]["blocks"] == {"g00": 0, "g01": 5, "g10": 5, "g11": 0}
    print(a.block_table(x, 2), end="")
    assert a.centralizer(x, 1) == ["e0*e1 + e2*e3"]
    assert a.killing_rank() == 21

    # grade-zero elements are nested lists; Fractions and ints are accepted
    m = [[Fraction(1, 2), 0, 0, 0], [0, 0, 0, 0], [0, 0, 0, 0], [0, 0, 0, Fraction(-1, 2)]]
    assert a.bracket(m, "e0*e3") == "0"
    assert a.bracket(m, "e0*e1") == "1/2*e0*e1"
    try:
        a.bracket([[1, 0, 0, 0]] + [[0] * 4] * 3, "e0*e1")
    except ValueError as err:
        assert "trace" in str(err)
    else:
        raise AssertionError("nonzero trace accepted")
    assert a.bracket([[1, 0, 0, 0]] + [[0] * 4] * 3, "e0*e1", project=True) == "1/2*e0*e1"

    report = a.verify(samples=2, seed=3)
    assert report["skew"] and report["jacobi"], report

    b = ex.Algebra(3, 9)
    assert b.dim == 248 and b.offsets == [0, 80, 164]
    pt = "e0*e1*e2"
    tmp = b.bracket(pt, b.star(pt))
    assert [tmp[i][i] for i in range(9)] == ["-2/3"] * 3 + ["1/3"] * 6
    assert b.bracket(tmp, pt) == "-2*e0*e1*e2"
    assert not b.is_ad_semisimple(pt)

    bad = ex.Algebra(3, 6).verify(samples=2, seed=1, grades=(1, 1))
    assert not bad["skew"] and not bad["jacobi"] and bad["pairs"][0]["symmetric"]

    assert ex.normalize("e1*e0", 4) == "-e0*e1"
    assert ex.wedge("e0", "e1*e2", 4) == "e0*e1*e2"
    assert ex.make_traceless([[1, 0], [0, 0]]) == [["1/2", "0"], ["0", "-1/2"]]

    print("python smoke test passed")


if __name__ == "__main__":
    main()
