"""Command-line interface.

Exit codes: 0 success, 1 a verification answered "no", 2 invalid input,
3 an internal certification guard tripped.
"""

from __future__ import annotations

import argparse
import csv
import hashlib
import io as _io
import json
import os
import sys
from concurrent.futures import ProcessPoolExecutor

from . import __version__
from . import groups as grp
from .assembly import CertificationError
from .census import census, lower_bound, splice_and_realize
from .factors import realize
from .graph import FreeProductSignature, GraphError, automorphisms, validate
from .io import dumps, graph_from_json, to_dot
from .objects import ObjectError, object_to_json, to_object
from .oracle import enumerate_subgroups, quotient_histogram

EXIT_OK, EXIT_NO, EXIT_INPUT, EXIT_GUARD = 0, 1, 2, 3


class InputError(Exception):
    pass


def _digest(data: bytes) -> str:
    return hashlib.sha256(data).hexdigest()[:16]


def _header(args, inputs: dict) -> None:
    parts = [f"freetelescope {__version__}", f"command={args.command}"]
    parts += [f"{k}={v}" for k, v in sorted(inputs.items())]
    print("# " + " ".join(parts), file=sys.stderr)


def _read_json(path: str):
    try:
        with open(path, "rb") as fh:
            raw = fh.read()
        return json.loads(raw), _digest(raw)
    except (OSError, json.JSONDecodeError) as exc:
        raise InputError(f"cannot read {path}: {exc}") from exc


def _write(path: str | None, text: str) -> None:
    if path is None or path == "-":
        sys.stdout.write(text)
    else:
        with open(path, "w") as fh:
            fh.write(text)


def _group(spec: str):
    if spec.startswith("preset:"):
        return grp.load_group(spec), spec
    data, digest = _read_json(spec)
    return grp.group_from_json(data), f"sha256:{digest}"


def _sig(text: str) -> FreeProductSignature:
    return FreeProductSignature.parse(text)


# -- commands ----------------------------------------------------------------------


def cmd_realize(args) -> int:
    G, gid = _group(args.group)
    _header(args, {"group": gid, "product": args.product})
    sig = _sig(args.product)
    if args.census_N is not None:
        if args.sigma is None:
            raise InputError("--census-N needs --sigma")
        _, entries = census(sig, args.census_N)
        if not 0 <= args.sigma < len(entries):
            raise InputError(f"--sigma must be in 0..{len(entries) - 1}")
        R = splice_and_realize(G, sig, args.census_N, entries[args.sigma].sigma, fast=args.fast)
    else:
        R = realize(G, sig, fast=args.fast)
    _write(args.out, dumps(R.to_json(timings=args.timings)) + "\n")
    print(f"certified: index {R.index}, |Aut| = {R.aut.order}", file=sys.stderr)
    return EXIT_OK


def _load_graph(path: str):
    data, digest = _read_json(path)
    return data, graph_from_json(data), digest


def cmd_verify(args) -> int:
    data, g, digest = _load_graph(args.path)
    _header(args, {"input": f"sha256:{digest}"})
    report = validate(g).to_json()
    ok = report["is_free"]
    if ok and "group" in data:
        G = grp.group_from_json(data["group"])
        aut = automorphisms(g)
        same = aut.order == G.order and grp.groups_isomorphic(grp.group_from_permutation_group(aut), G)
        report["aut_matches_group"] = same
        ok = ok and same
    print(dumps(report))
    return EXIT_OK if ok else EXIT_NO


def cmd_aut(args) -> int:
    _, g, digest = _load_graph(args.path)
    _header(args, {"input": f"sha256:{digest}"})
    A = automorphisms(g)
    print(dumps({"order": A.order, "generators": [list(p) for p in A.generators]}))
    return EXIT_OK


def cmd_convert(args) -> int:
    _, g, digest = _load_graph(args.path)
    _header(args, {"input": f"sha256:{digest}", "to": args.to})
    obj = to_object(g, args.to)
    _write(args.out, dumps(object_to_json(obj)) + "\n")
    return EXIT_OK


def _census_row(job):
    G, sig, N, k, sigma, size = job
    R = splice_and_realize(G, sig, N, sigma, fast=True)
    return k, R, size


def cmd_census(args) -> int:
    sig = _sig(args.product)
    G, gid = _group(args.group)
    _header(args, {"product": args.product, "N": args.N, "group": gid})
    stats: dict = {}
    base, entries = census(sig, args.N, limit=args.limit, stats=stats)
    lb = lower_bound(base.D, base.block) if base.D >= 2 and base.D % base.block == 0 else None
    summary = {
        "product": str(sig),
        "N": args.N,
        "F": base.F,
        "D": base.D,
        "classes": len(entries),
        "dropped_prefixes": stats.get("dropped", 0),
        "lower_bound": None if lb is None else str(lb),
        "lower_bound_float": None if lb is None else float(lb),
    }
    if args.count_only:
        print(dumps(summary))
        return EXIT_OK
    os.makedirs(args.out_dir, exist_ok=True)
    jobs = [(G, sig, args.N, k, e.sigma, e.class_size) for k, e in enumerate(entries)]
    if args.jobs > 1:
        with ProcessPoolExecutor(args.jobs) as pool:
            rows = list(pool.map(_census_row, jobs))
    else:
        rows = [_census_row(j) for j in jobs]
    buf = _io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["sigma_id", "index", "aut_order", "iso_class_size"])
    manifest = {"summary": summary, "graphs": []}
    for k, R, size in rows:
        name = f"sigma_{k:05d}.json"
        _write(os.path.join(args.out_dir, name), dumps(R.to_json()) + "\n")
        w.writerow([k, R.index, R.aut.order, size])
        manifest["graphs"].append({"sigma_id": k, "sigma": list(jobs[k][4]), "file": name})
    _write(os.path.join(args.out_dir, "census.csv"), buf.getvalue())
    _write(os.path.join(args.out_dir, "manifest.json"), dumps(manifest) + "\n")
    print(dumps(summary))
    return EXIT_OK


def cmd_oracle(args) -> int:
    _header(args, {"product": args.product, "index": args.index})
    sig = _sig(args.product)
    classes = enumerate_subgroups(sig, args.index, cap=args.cap, free_only=args.free_only)
    out = {
        "product": str(sig),
        "index": args.index,
        "classes": len(classes),
        "free_classes": sum(c.is_free for c in classes),
        "based_classes": sum(c.based_count for c in classes),
        "histogram": quotient_histogram(sig, args.index, cap=args.cap, free_only=args.free_only),
    }
    _write(args.out, dumps(out) + "\n")
    return EXIT_OK


def cmd_emit_dot(args) -> int:
    _, g, digest = _load_graph(args.path)
    _header(args, {"input": f"sha256:{digest}"})
    _write(args.out, to_dot(g))
    return EXIT_OK


# -- parser ------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="freetelescope", description="Free subgroups with prescribed symmetry.")
    p.add_argument("--version", action="version", version=f"freetelescope {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    r = sub.add_parser("realize", help="realize a finite group over a free product")
    r.add_argument("--group", required=True, help="preset:NAME or a group JSON file")
    r.add_argument("--product", required=True, help="comma list of orders, 'inf' for infinity")
    r.add_argument("--out", help="output file (default stdout)")
    r.add_argument("--census-N", dest="census_N", type=int)
    r.add_argument("--sigma", type=int, help="census class number")
    r.add_argument("--fast", action="store_true", help="skip the S.2 embedding check")
    r.add_argument("--timings", action="store_true", help="include check timings in the certificate")
    r.set_defaults(func=cmd_realize)

    v = sub.add_parser("verify", help="validate a graph or realization file")
    v.add_argument("path")
    v.set_defaults(func=cmd_verify)

    a = sub.add_parser("aut", help="automorphism group of a graph file")
    a.add_argument("path")
    a.set_defaults(func=cmd_aut)

    c = sub.add_parser("convert", help="graph file to map/hypermap/paving/constellation")
    c.add_argument("--to", required=True, choices=["hypermap", "map", "paving", "constellation"])
    c.add_argument("--out")
    c.add_argument("path")
    c.set_defaults(func=cmd_convert)

    s = sub.add_parser("census", help="non-conjugate family for a base product")
    s.add_argument("--product", required=True)
    s.add_argument("--N", type=int, required=True)
    s.add_argument("--group", default="preset:trivial")
    s.add_argument("--count-only", action="store_true")
    s.add_argument("--limit", type=int)
    s.add_argument("--out-dir", default="census_out")
    s.add_argument("--jobs", type=int, default=1)
    s.set_defaults(func=cmd_census)

    o = sub.add_parser("oracle", help="exhaustive low-index subgroup census")
    o.add_argument("--product", required=True)
    o.add_argument("--index", type=int, required=True)
    o.add_argument("--cap", type=int, default=10)
    o.add_argument("--free-only", action="store_true")
    o.add_argument("--out")
    o.set_defaults(func=cmd_oracle)

    d = sub.add_parser("emit-dot", help="DOT rendering of a graph file")
    d.add_argument("path")
    d.add_argument("--out")
    d.set_defaults(func=cmd_emit_dot)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except CertificationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_GUARD
    except (InputError, GraphError, grp.GroupError, ObjectError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
