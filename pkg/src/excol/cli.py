"""Command-line frontend: construct collections, verify them, run sweeps.

Exit codes: 0 success / all checks pass, 1 verification failure, 2 invalid
input, 3 mutation hypothesis failure (log still written).
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from itertools import combinations

from .errors import (
    DegenerateCenter,
    InvalidSpec,
    MutationError,
    NotACone,
    UnknownRay,
)
from .fan import Blowup, BundleSpec, CenterSpec, build_projective_bundle_fan, make_blowup
from .mutation import collection_classes, construct
from .verify import certify, expected_length_from_geometry


def _dump(doc, path):
    text = json.dumps(doc, sort_keys=True, indent=2)
    if path:
        with open(path, "w") as fh:
            fh.write(text + "\n")
    else:
        print(text)


def _parse_spec(args):
    degrees = tuple(int(x) for x in args.fiber_degrees.split(","))
    return BundleSpec(s=args.base_dim, fiber_degrees=degrees)


def _parse_center(args):
    return CenterSpec(frozenset(args.center.split(",")))


def _collection_doc(bl: Blowup, col):
    return {
        "spec": {"base_dim": bl.spec.s, "fiber_degrees": list(bl.spec.fiber_degrees)},
        "center": sorted(bl.center.ray_names),
        "objects": [o.to_json() for o in col.objects],
        "log": list(col.log),
    }


def cmd_construct(args):
    try:
        spec = _parse_spec(args)
        center = _parse_center(args)
    except (InvalidSpec, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    try:
        bl, col = construct(spec, center)
    except (InvalidSpec, NotACone, UnknownRay, DegenerateCenter) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except MutationError as exc:
        print(f"mutation hypothesis failed: {exc}", file=sys.stderr)
        _dump({"error": str(exc), "log": list(exc.log)}, args.out)
        return 3
    _dump(_collection_doc(bl, col), args.out)
    return 0


def cmd_verify(args):
    cache = False if args.no_cache else None
    try:
        with open(args.collection) as fh:
            doc = json.load(fh)
        spec = BundleSpec(
            s=int(doc["spec"]["base_dim"]),
            fiber_degrees=tuple(doc["spec"]["fiber_degrees"]),
        )
        center = CenterSpec(frozenset(doc["center"]))
        bl = make_blowup(spec, center)
        classes = [
            bl.fan_xt.pic_class((o["alpha"], o["beta"], o["k"]))
            for o in doc["objects"]
            if o["kind"] == "line"
        ]
        if len(classes) != len(doc["objects"]):
            print("error: collection contains non-line-bundle objects", file=sys.stderr)
            return 2
    except (OSError, KeyError, ValueError, InvalidSpec, NotACone, UnknownRay) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    report = certify(
        bl.fan_xt,
        classes,
        expected_length_from_geometry(bl.geometry),
        cache=cache,
    )
    _dump(report.to_json(), args.out)
    return 0 if report.all_passed else 1


def enumerate_specs(max_dim, max_degree):
    """All BundleSpecs with s + r <= max_dim and degrees <= max_degree."""
    out = []
    for s in range(1, max_dim):
        for r in range(1, max_dim - s + 1):
            for degrees in _nondecreasing(r, max_degree):
                out.append(BundleSpec(s=s, fiber_degrees=(0,) + degrees))
    return out


def _nondecreasing(length, maximum, start=0):
    if length == 0:
        yield ()
        return
    for first in range(start, maximum + 1):
        for rest in _nondecreasing(length - 1, maximum, first):
            yield (first,) + rest


def enumerate_centers(spec: BundleSpec, codim):
    """All codim-element ray sets of the X fan spanning a cone."""
    fan = build_projective_bundle_fan(spec)
    cones = [set(c) for c in fan.max_cones]
    out = []
    for names in combinations(fan.ray_names, codim):
        idx = {fan.name_index[n] for n in names}
        if any(idx <= cone for cone in cones):
            out.append(CenterSpec(frozenset(names)))
    return out


def run_case(spec, center, cache=None):
    """Construct and certify one (spec, center); returns (report, error)."""
    try:
        bl, col = construct(spec, center)
    except MutationError as exc:
        return None, exc
    report = certify(
        bl.fan_xt,
        collection_classes(bl, col),
        expected_length_from_geometry(bl.geometry),
        cache=cache,
    )
    return report, None


def cmd_sweep(args):
    cache = False if args.no_cache else None
    codims = {"2": [2], "3": [3], "both": [2, 3]}[args.codim]
    cases = []
    for spec in enumerate_specs(args.max_dim, args.max_degree):
        for codim in codims:
            for center in enumerate_centers(spec, codim):
                cases.append((spec, center))
    if not cases:
        print("sweep is empty: no valid centers in the requested range")
        return 0
    failures = []
    header = f"{'spec':<24}{'center':<16}{'len':>4}  {'flags':<8}{'sec':>8}"
    print(header)
    print("-" * len(header))
    for spec, center in cases:
        label = f"s={spec.s} a={list(spec.fiber_degrees)}"
        cname = ",".join(sorted(center.ray_names))
        t0 = time.perf_counter()
        report, err = run_case(spec, center, cache=cache)
        dt = time.perf_counter() - t0
        if err is not None:
            print(f"{label:<24}{cname:<16}{'-':>4}  {'ABORT':<8}{dt:>8.2f}")
            failures.append((label, cname, str(err)))
            continue
        flags = "".join(
            "ES1"[i] if ok else "."
            for i, ok in enumerate(
                [report.exceptional, report.semiorthogonal, report.strong]
            )
        )
        ok = report.all_passed
        print(f"{label:<24}{cname:<16}{report.length_actual:>4}  {flags:<8}{dt:>8.2f}")
        if not ok:
            failures.append((label, cname, "verification failed"))
    if failures:
        print(f"\n{len(failures)} failing case(s):", file=sys.stderr)
        for label, cname, why in failures:
            print(f"  {label} center={cname}: {why}", file=sys.stderr)
        return 1
    print(f"\nall {len(cases)} cases passed")
    return 0


def build_parser():
    parser = argparse.ArgumentParser(
        prog="excol",
        description=(
            "Strong full exceptional collections of line bundles on blow-ups "
            "of Picard-rank-two toric varieties, by mutation replay, with "
            "independent cohomological certification."
        ),
    )
    parser.add_argument(
        "--no-cache", action="store_true", help="disable the disk cohomology cache"
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("construct", help="replay the mutation script")
    p.add_argument("--base-dim", type=int, required=True, metavar="S")
    p.add_argument("--fiber-degrees", required=True, metavar="A0,A1,...")
    p.add_argument("--center", required=True, metavar="RAY,RAY[,RAY]")
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser("verify", help="certify a collection file")
    p.add_argument("--collection", required=True, metavar="FILE")
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("sweep", help="construct and certify a whole family")
    p.add_argument("--max-dim", type=int, required=True, metavar="D")
    p.add_argument("--max-degree", type=int, required=True, metavar="A")
    p.add_argument("--codim", choices=["2", "3", "both"], default="both")
    p.set_defaults(func=cmd_sweep)
    return parser


def main(argv=None):
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
