#!/usr/bin/env python3
"""Smoke test for the eulersym_py extension module.

Builds nothing itself: run `cargo build -p eulersym-py` (or --release)
first, then `python3 python/smoke_test.py`. The script locates the
compiled cdylib, exposes it under the importable name and exercises the
main types and operations end to end.
"""

import json
import shutil
import sys
import tempfile
from pathlib import Path

REPO = Path(__file__).resolve().parent.parent


def import_extension():
    candidates = [
        REPO / "target" / "release" / "libeulersym_py.so",
        REPO / "target" / "debug" / "libeulersym_py.so",
        REPO / "target" / "release" / "libeulersym_py.dylib",
        REPO / "target" / "debug" / "libeulersym_py.dylib",
    ]
    built = next((p for p in candidates if p.exists()), None)
    if built is None:
        sys.exit("build the extension first: cargo build -p eulersym-py")
    stage = Path(tempfile.mkdtemp(prefix="eulersym_py_"))
    shutil.copy2(built, stage / "eulersym_py.so")
    sys.path.insert(0, str(stage))
    import eulersym_py

    return eulersym_py


def check(condition, label):
    if not condition:
        sys.exit(f"FAIL: {label}")
    print(f"ok: {label}")


def main():
    m = import_extension()
    print(f"eulersym_py {m.__version__}")

    # polynomial arithmetic is exact
    ring = m.Ring(["x1", "x2"])
    a = ring.poly("x1 + x2")
    b = ring.poly("x1 - x2")
    check(a * b == ring.poly("x1^2 - x2^2"), "difference of squares")
    check((a ** 2 - a * a).degree() is None, "cancellation to zero")
    check(ring.poly("1/3*x1").evaluate(["1/2", "0"]) == "1/6", "rational evaluation")
    check(ring.poly("x1^3 + 3*x1*x2^2").derivative(0) == ring.poly("3*x1^2 + 3*x2^2"),
          "partial derivative")

    # a rank-3 system: never a complete intersection
    sys34 = m.SymbolSystem.parse(
        "vars: x1, x2\nF2: x1^2 + x2^2; x1*x2\nF3: x1^3 + 3*x1*x2^2\n"
    )
    v = sys34.validate()
    check(v.valid and v.rank == 3, "example system validates at rank 3")
    verdict = sys34.decide()
    check(not verdict.is_complete_intersection, "rank 3 is not a CI")
    check(verdict.reason == "rank_ge_3", "reason is the rank bound")
    check(sys34.sample_check(seed=3, count=50) == (50, 50),
          "generators vanish on 50 exact samples")

    # coordinate squares: the classic complete intersection
    squares = m.SymbolSystem(["x1", "x2"], {2: ["x1^2", "x2^2"]})
    verdict = squares.decide()
    check(verdict.is_complete_intersection, "coordinate squares give a CI")
    check(verdict.rank2 == (2, 2, True, True), "b = c = 2, quadratic")
    report = json.loads(squares.decide_json())
    check(report["schema"] == 1, "decision report is versioned")
    check(report["verdict"]["reason"] == "regular_sequence_true", "JSON carries the reason")

    # the scroll: set-theoretic CI only
    scroll = m.SymbolSystem(["x1", "x2"], {2: ["x1^2", "x1*x2"]})
    verdict = scroll.decide()
    c, b, quadratic, ystci = verdict.rank2
    check(not verdict.is_complete_intersection and ystci and not quadratic,
          "scroll: set-theoretic CI but not a CI")
    check(scroll.base_locus(2) == (0, 1, ["x1^2", "x1*x2"]), "scroll base locus")

    # witness for a rank-3 system with a wide second component
    wit = m.SymbolSystem(["x1", "x2"], {2: ["x1^2", "x1*x2", "x2^2"], 3: ["x1^3"]})
    verdict = wit.decide(witness=True)
    check(verdict.witness == "w2_2^2 - w1_2*w3_2", "dependence witness")

    # raw Groebner entry point
    gb = m.groebner_basis(
        ["z0", "z1", "w2", "w3"],
        ["z0*w2 - z1^2", "z0*w3 - z1*w2"],
        order="degrevlex",
    )
    check(len(gb) == 3 and "z0*w2^2 - z0*z1*w3" in gb, "Groebner basis of the twisted pair")

    check(m.relations(["x1", "x2"], ["x1^2", "x1*x2", "x2^2"]) == ["y2^2 - y1*y3"],
          "algebraic relations")

    print("smoke test: all checks passed")


if __name__ == "__main__":
    main()
