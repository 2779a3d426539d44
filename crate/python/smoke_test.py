"""Smoke test for the nilindex extension. Run: python python/smoke_test.py"""

from pathlib import Path

import nilindex

FIXTURES = Path(__file__).resolve().parent.parent / "crates" / "core" / "fixtures"


def load(name):
    return nilindex.Algebra.from_file(str(FIXTURES / f"{name}.quiver"))


def main():
    alg = load("cyclic")
    assert alg.vertices == ["1", "2", "3"], alg.vertices
    assert alg.admissibility()["dimension"] == alg.dimension == 11

    ar = alg.ar_quiver()
    assert len(ar) == 24
    assert ar.mesh_defects() == []
    assert "digraph" in ar.to_dot()

    filt = ar.filtration()
    assert filt.nilpotency_index == 15
    assert filt.r("1") == filt.r("2") == 14
    report = filt.index("direct")
    assert report["r_A"] == 15 and report["method"] == "direct"

    checks = filt.check("C")
    assert checks["sections"][0]["status"] == "ok", checks

    toupie = load("toupie_one_zero").ar_quiver().filtration()
    text = toupie.check("D", text=True)
    assert "length 6" in text, text

    try:
        load("kronecker").ar_quiver()
    except nilindex.LimitsExceeded:
        pass
    else:
        raise AssertionError("kronecker should exceed the limits")

    try:
        load("four_cycle").ar_quiver().filtration().index("one-per-relation")
    except nilindex.MethodInapplicable:
        pass
    else:
        raise AssertionError("one-per-relation should refuse the four-vertex cycle")

    try:
        nilindex.Algebra("vertex 1\narrow a 1 1\nrelation a\n")
    except nilindex.InvalidPresentation:
        pass
    else:
        raise AssertionError("a length-one relation is not admissible")

    print("smoke test ok")


if __name__ == "__main__":
    main()
