"""Resource caps.

LATPOLY_MAX_POINTS bounds every open-ended enumeration (lattice point scans,
symmetry searches, census candidate generation).  Read fresh on each call so
tests can monkeypatch the environment.
"""

import os

DEFAULT_MAX_POINTS = 200_000


def max_points() -> int:
    raw = os.environ.get("LATPOLY_MAX_POINTS", "")
    try:
        value = int(raw)
    except ValueError:
        value = DEFAULT_MAX_POINTS
    if not raw:
        value = DEFAULT_MAX_POINTS
    if value <= 0:
        value = DEFAULT_MAX_POINTS
    return value
