"""Command-line front end.

Every subcommand prints one JSON object with the shape

    {"status": ..., "payload": {...}, "diagnostics": [{"tag", "ok", "detail"}]}

except `census`, which emits CSV rows (see census.CSV_COLUMNS).  Output is
deterministic given the flags and seed.  Exit codes: 0 ok, 2 invalid input,
3 construction failure (the payload names the first violated check tag),
4 resource cap.  The environment variable LATPOLY_MAX_POINTS bounds all
open-ended enumerations (default 200000).
"""

from __future__ import annotations

import argparse
import json
import math
import random
import sys
from typing import Optional, Sequence

from . import census, equivalence, families, linalg
from .errors import (
    ConstructionFailureError,
    DegenerateInputError,
    DimensionMismatchError,
    LatPolyError,
    NonPrimitiveDirectionError,
    NotCentrallySymmetricError,
    ResourceCapError,
)
from .polytope import LatticePolytope, convex_hull, polytope_from_json

EXIT_OK = 0
EXIT_INVALID_INPUT = 2
EXIT_CONSTRUCTION_FAILURE = 3
EXIT_RESOURCE_CAP = 4

_INVALID_INPUT_ERRORS = (
    DegenerateInputError,
    DimensionMismatchError,
    NonPrimitiveDirectionError,
    NotCentrallySymmetricError,
)

CONSTRUCT_FAMILIES = ("ball", "K", "B", "C", "Q", "H", "Hprime")

CENSUS_TOKENS = {
    "v": ("normalized_volume", "none"),
    "v-star": ("normalized_volume", "centrally_symmetric"),
    "kappa": ("cardinality", "none"),
    "kappa-star": ("cardinality", "centrally_symmetric"),
    "kappa-prime": ("cardinality", "nonempty_interior"),
}

DEFAULT_SEED = 0


def _result(status: str, payload: dict, diagnostics: Sequence = ()) -> dict:
    return {
        "status": status,
        "payload": payload,
        "diagnostics": [
            d.to_json_obj() if hasattr(d, "to_json_obj") else dict(d)
            for d in diagnostics
        ],
    }


def _emit(out, obj: dict) -> None:
    out.write(json.dumps(obj, indent=2))
    out.write("\n")


def _map_json(sigma: linalg.UnimodularMap) -> dict:
    return {
        "matrix": [list(row) for row in sigma.matrix],
        "translation": list(sigma.translation),
    }


def _load_polytope(path: str) -> LatticePolytope:
    if path == "-":
        text = sys.stdin.read()
    else:
        try:
            with open(path, "r", encoding="utf-8") as fh:
                text = fh.read()
        except OSError as exc:
            raise DegenerateInputError(f"cannot read polytope file {path}: {exc}")
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise DegenerateInputError(f"not valid JSON: {exc}")
    return polytope_from_json(data)


def _polytope_payload(p: LatticePolytope) -> dict:
    center = p.symmetry_center()
    return {
        "polytope": p.to_json_obj(),
        "cardinality": p.n_points(),
        "normalized_volume": p.normalized_volume(),
        "vertex_count": len(p.vertices),
        "symmetry_center": list(center) if center is not None else None,
    }


# -- construct -------------------------------------------------------------------


def _parse_rho(raw: str):
    if raw.lower() in ("inf", "oo", "infinity"):
        return math.inf
    try:
        return int(raw)
    except ValueError:
        raise DegenerateInputError(f"--rho must be a positive integer or 'inf', got {raw!r}")


def cmd_construct(args, out) -> int:
    name = args.family
    diagnostics = []
    payload: dict
    if name == "ball":
        if args.m is None:
            raise DegenerateInputError("construct ball needs -m (ball radius)")
        p = families.ball_polytope(args.dim, args.m, _parse_rho(args.rho))
        payload = _polytope_payload(p)
    else:
        if args.r is None:
            raise DegenerateInputError(f"construct {name} needs -r (cap radius)")
        d, r = args.dim, args.r
        if name == "K":
            p = families.paraboloid_hull(d, r)
            payload = _polytope_payload(p)
        elif name == "B":
            # the base disk spans the height-zero hyperplane; emit it as a
            # full-dimensional polytope in its own (d-1) coordinates
            pts = [v[:-1] for v in families.base_disk_points(d, r)]
            p = convex_hull(pts, d - 1, trusted_lattice=pts)
            payload = _polytope_payload(p)
        elif name in ("C", "Q"):
            pts = (
                families.cylinder_points(d, r)
                if name == "C"
                else families.pinched_region_points(d, r)
            )
            p = convex_hull(pts, d)
            payload = _polytope_payload(p)
            payload["region_point_count"] = len(pts)
            diagnostics.append(
                {
                    "tag": "RegionHull",
                    "ok": True,
                    "detail": f"region holds {len(pts)} integer points; the emitted "
                    f"polytope is their hull ({p.n_points()} points)",
                }
            )
        elif name == "H":
            p = families.envelope_half_hull(d, r)
            core = families.core_half_hull(d, r)
            inside = all(p.contains(v) for v in core.vertices)
            diagnostics.append(
                {
                    "tag": "Eq36",
                    "ok": inside,
                    "detail": f"core half-hull ({core.n_points()} points) "
                    f"{'inside' if inside else 'escapes'} envelope half-hull "
                    f"({p.n_points()} points)",
                }
            )
            if not inside:
                raise ConstructionFailureError(
                    "Eq36", "core half-hull escapes the envelope half-hull"
                )
            payload = _polytope_payload(p)
        else:  # Hprime
            p = families.core_half_hull(d, r)
            payload = _polytope_payload(p)
    _emit(out, _result("ok", payload, diagnostics))
    return EXIT_OK


# -- group -----------------------------------------------------------------------


def cmd_group(args, out) -> int:
    p = _load_polytope(args.file)
    group = (
        equivalence.orthogonal_unimodular_group(p)
        if args.orthogonal
        else equivalence.unimodular_group(p)
    )
    diagnostics = []
    twice = p.twice_center()
    if twice is None:
        diagnostics.append(
            {"tag": "Center", "ok": True, "detail": "not centrally symmetric"}
        )
    else:
        center = p.symmetry_center()
        diagnostics.append(
            {
                "tag": "Center",
                "ok": True,
                "detail": "lattice center"
                if center is not None
                else "non-lattice center",
            }
        )
        report = equivalence.divides_bound(p)
        diagnostics.append(
            {
                "tag": "Divisibility",
                "ok": report.divides,
                "detail": f"orthogonal group order {report.order} "
                f"{'divides' if report.divides else 'does not divide'} "
                f"2^d*d! = {report.bound}",
            }
        )
    payload = {
        "dim": p.dim,
        "orthogonal_only": bool(args.orthogonal),
        "order": group.order,
        "elements": [_map_json(g) for g in group.elements],
    }
    _emit(out, _result("ok", payload, diagnostics))
    return EXIT_OK


# -- equiv / canon ----------------------------------------------------------------


def _facet_point_counts(p: LatticePolytope) -> tuple:
    return tuple(
        sorted(p.hyperplane_slice_count(f.normal, f.offset) for f in p.facets())
    )


_INVARIANTS = (
    ("|P|", lambda p: p.n_points()),
    ("normalized_volume", lambda p: p.normalized_volume()),
    ("vertex_count", lambda p: len(p.vertices)),
    ("facet_count", lambda p: len(p.facets())),
    ("facet_point_counts", _facet_point_counts),
)


def cmd_equiv(args, out) -> int:
    p = _load_polytope(args.file1)
    q = _load_polytope(args.file2)
    if p.dim != q.dim:
        raise DimensionMismatchError(
            f"polytopes live in dimensions {p.dim} and {q.dim}"
        )
    for name, fn in _INVARIANTS:
        a, b = fn(p), fn(q)
        if a != b:
            payload = {
                "equivalent": False,
                "invariant": name,
                "values": [
                    list(a) if isinstance(a, tuple) else a,
                    list(b) if isinstance(b, tuple) else b,
                ],
            }
            _emit(out, _result("ok", payload))
            return EXIT_OK
    sigma = equivalence.are_equivalent(p, q)
    if sigma is None:
        payload = {"equivalent": False, "invariant": "frame_search"}
        _emit(out, _result("ok", payload))
        return EXIT_OK
    verified = {sigma(z) for z in p.lattice_points()} == set(q.lattice_points())
    payload = {
        "equivalent": True,
        "witness": _map_json(sigma),
        "witness_verified": verified,
    }
    _emit(out, _result("ok", payload))
    return EXIT_OK


def cmd_canon(args, out) -> int:
    p = _load_polytope(args.file)
    payload = {
        "dim": p.dim,
        "vertex_count": len(p.vertices),
        "canonical_form": equivalence.canonical_form(p),
    }
    _emit(out, _result("ok", payload))
    return EXIT_OK


# -- family ----------------------------------------------------------------------


def _sample_subsets(marked: tuple, count: int, seed: int) -> list:
    """Deterministically sample `count` distinct subsets of the marked
    vertices (uniform masks, then size-then-lex fill if draws collide)."""
    total = 2 ** len(marked)
    if count >= total:
        return families._subsets_in_order(marked, None)
    rng = random.Random(seed)
    chosen = set()
    attempts = 0
    while len(chosen) < count and attempts < 50 * count:
        mask = rng.getrandbits(len(marked))
        chosen.add(mask)
        attempts += 1
    for mask in range(total):
        if len(chosen) >= count:
            break
        chosen.add(mask)
    subsets = [
        tuple(v for i, v in enumerate(marked) if mask >> i & 1) for mask in chosen
    ]
    subsets.sort(key=lambda s: (len(s), s))
    return subsets


def cmd_family(args, out) -> int:
    if args.w % 2 == 0:
        raise ConstructionFailureError(
            "Eq30", f"target cardinality must be odd, got {args.w}"
        )
    plan = families.plan_construction(args.dim, args.w)
    if args.subsets == "all":
        if plan.family_size > families.FAMILY_ENUMERATION_CAP:
            raise ResourceCapError(
                f"family of size {plan.family_size} exceeds the enumeration cap "
                f"{families.FAMILY_ENUMERATION_CAP}; pass --subsets K to sample"
            )
        subsets = families._subsets_in_order(plan.marked, None)
    else:
        try:
            count = int(args.subsets)
        except ValueError:
            raise DegenerateInputError(
                f"--subsets takes 'all' or a positive integer, got {args.subsets!r}"
            )
        if count < 1:
            raise DegenerateInputError("--subsets must be at least 1")
        subsets = _sample_subsets(plan.marked, count, args.seed)
    members = []
    forms = set()
    member_payloads = []
    for marks in subsets:
        member = families.build_symmetric_polytope(args.dim, args.w, marks)
        members.append(member)
        form = equivalence.canonical_form(member.polytope)
        forms.add(form)
        member_payloads.append(
            {
                "marks": [list(v) for v in member.marks],
                "cardinality": member.polytope.n_points(),
                "canonical_form": form,
                "checks": [c.to_json_obj() for c in member.checks],
            }
        )
    payload = {
        "d": args.dim,
        "w": args.w,
        "r": plan.r,
        "u": plan.u,
        "marked_vertex_count": len(plan.marked),
        "family_size": plan.family_size,
        "built": len(members),
        "distinct_classes": len(forms),
        "class_lower_bound": families.class_floor(args.dim, plan.family_size),
        "seed": args.seed,
        "subsets": args.subsets,
        "members": member_payloads,
    }
    diagnostics = [c.to_json_obj() for c in plan.checks]
    _emit(out, _result("ok", payload, diagnostics))
    return EXIT_OK


# -- census ----------------------------------------------------------------------


def _parse_range(raw: str) -> tuple:
    parts = raw.split("..")
    try:
        if len(parts) == 1:
            lo = hi = int(parts[0])
        elif len(parts) == 2:
            lo, hi = int(parts[0]), int(parts[1])
        else:
            raise ValueError(raw)
    except ValueError:
        raise DegenerateInputError(f"--range takes A..B or a single value, got {raw!r}")
    if lo < 1 or hi < lo:
        raise DegenerateInputError(f"--range bounds must satisfy 1 <= A <= B, got {raw!r}")
    return lo, hi


def cmd_census(args, out) -> int:
    statistic, constraint = CENSUS_TOKENS[args.statistic]
    lo, hi = _parse_range(args.range)
    values = [v for v in range(lo, hi + 1) if not (args.odd_only and v % 2 == 0)]
    records = []
    status = EXIT_OK
    for value in values:
        query = census.CensusQuery(statistic, value, constraint, args.box)
        try:
            records.append(census.enumerate_classes(query, workers=args.workers))
        except ResourceCapError as exc:
            if isinstance(exc.partial, census.CensusRecord):
                records.append(exc.partial)
            status = EXIT_RESOURCE_CAP
            break
    text = census.records_to_csv(records)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        out.write(text)
    if args.reps:
        with open(args.reps, "w", encoding="utf-8") as fh:
            for rec in records:
                for rep in rec.representatives:
                    fh.write(
                        json.dumps(
                            {
                                "statistic": rec.statistic,
                                "value": rec.value,
                                "constraint": rec.constraint,
                                "dim": 2,
                                "vertices": [[str(c) for c in v] for v in rep],
                            },
                            sort_keys=True,
                        )
                    )
                    fh.write("\n")
    if status == EXIT_OK and any(not rec.stable for rec in records):
        status = EXIT_RESOURCE_CAP
    return status


# -- parser ----------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="latpoly",
        description="Exact-arithmetic toolkit for convex lattice polytopes: "
        "constructions, unimodular symmetry groups, equivalence tests, "
        "prescribed-cardinality families, and plane classification counts.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_construct = sub.add_parser(
        "construct",
        help="build a named polytope and print it with its basic statistics",
    )
    p_construct.add_argument("family", choices=CONSTRUCT_FAMILIES)
    p_construct.add_argument("-d", "--dim", type=int, required=True)
    p_construct.add_argument("-m", type=int, help="ball radius (family 'ball')")
    p_construct.add_argument(
        "--rho", default="2", help="ball norm exponent: positive integer or 'inf'"
    )
    p_construct.add_argument("-r", type=int, help="cap radius (families K/B/C/Q/H/Hprime)")
    p_construct.set_defaults(fn=cmd_construct)

    p_group = sub.add_parser(
        "group", help="symmetry group of a polytope (JSON file or '-' for stdin)"
    )
    p_group.add_argument("file")
    p_group.add_argument(
        "--orthogonal",
        action="store_true",
        help="restrict to elements with orthogonal linear part",
    )
    p_group.set_defaults(fn=cmd_group)

    p_equiv = sub.add_parser(
        "equiv", help="test two polytopes for affine unimodular equivalence"
    )
    p_equiv.add_argument("file1")
    p_equiv.add_argument("file2")
    p_equiv.set_defaults(fn=cmd_equiv)

    p_canon = sub.add_parser("canon", help="canonical class label of a polytope")
    p_canon.add_argument("file")
    p_canon.set_defaults(fn=cmd_canon)

    p_family = sub.add_parser(
        "family",
        help="build the symmetric prescribed-cardinality family for odd w",
    )
    p_family.add_argument("-d", "--dim", type=int, required=True)
    p_family.add_argument("-w", type=int, required=True, help="target cardinality (odd)")
    p_family.add_argument(
        "--subsets",
        default="all",
        help="'all' or an integer K: sample K distinct marked-vertex subsets",
    )
    p_family.add_argument("--seed", type=int, default=DEFAULT_SEED)
    p_family.set_defaults(fn=cmd_family)

    p_census = sub.add_parser(
        "census", help="count plane equivalence classes by exact statistic"
    )
    p_census.add_argument("statistic", choices=sorted(CENSUS_TOKENS))
    p_census.add_argument("--range", required=True, help="value range A..B")
    p_census.add_argument("--odd-only", action="store_true")
    p_census.add_argument("--box", type=int, default=None, help="starting search box")
    p_census.add_argument("--out", default=None, help="write CSV here instead of stdout")
    p_census.add_argument(
        "--reps", default=None, help="dump class representatives as JSON lines"
    )
    p_census.add_argument("--workers", type=int, default=1)
    p_census.set_defaults(fn=cmd_census)

    return parser


def main(argv: Optional[Sequence] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    out = sys.stdout
    try:
        return args.fn(args, out)
    except ConstructionFailureError as exc:
        _emit(
            out,
            _result(
                "construction-failure",
                {"tag": exc.tag, "detail": exc.detail},
                [{"tag": exc.tag, "ok": False, "detail": exc.detail}],
            ),
        )
        return EXIT_CONSTRUCTION_FAILURE
    except ResourceCapError as exc:
        _emit(out, _result("resource-cap", {"detail": str(exc)}))
        return EXIT_RESOURCE_CAP
    except _INVALID_INPUT_ERRORS as exc:
        _emit(out, _result("invalid-input", {"detail": str(exc)}))
        return EXIT_INVALID_INPUT
    except LatPolyError as exc:
        # remaining library errors signal internal inconsistencies loudly
        raise SystemExit(f"latpoly internal error: {exc}")


if __name__ == "__main__":
    sys.exit(main())
