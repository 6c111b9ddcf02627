"""Suite-wide area oracle.

Registers a construction hook on LatticePolytope so that every 2-D polytope
built anywhere in the test run is immediately checked against the boundary
identity  |P| = (2*area + boundary)/2 + 1  with the boundary count derived
independently from edge gcds.  The hook stays installed for the whole
session; a summary test in test_acceptance.py asserts it actually fired.
"""

from math import gcd

import pytest

from latpoly.polytope import LatticePolytope

PICK_STATS = {"checked": 0}


def _edge_gcd_boundary(p: LatticePolytope) -> int:
    total = 0
    for fv in p.facet_vertex_sets():
        a, b = sorted(fv)
        total += gcd(a[0] - b[0], a[1] - b[1])
    return total


def _pick_hook(p: LatticePolytope) -> None:
    if p.dim != 2:
        return
    two_area = p.normalized_volume()
    boundary = _edge_gcd_boundary(p)
    assert (two_area + boundary) % 2 == 0, (
        f"parity violation: 2A={two_area}, B={boundary} for {p.vertices}"
    )
    expected = (two_area + boundary) // 2 + 1
    got = p.n_points()
    assert got == expected, (
        f"lattice point identity fails: |P|={got}, "
        f"(2A+B)/2+1={expected} for {p.vertices}"
    )
    PICK_STATS["checked"] += 1


@pytest.fixture(scope="session", autouse=True)
def install_pick_hook():
    previous = LatticePolytope._construction_hook
    LatticePolytope._construction_hook = _pick_hook
    yield
    LatticePolytope._construction_hook = previous
