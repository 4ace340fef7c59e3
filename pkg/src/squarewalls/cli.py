"""Command-line entry points for the pipeline.

Every artifact embeds {version, config, seed}; outputs are canonicalized
(sorted keys, sorted rows) so identical configurations produce identical
bytes regardless of --threads. Exit codes: 0 = report written / checks pass,
1 = a checked invariant failed, 2 = usage error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys

from . import __version__
from .cayley import WordProblemBudget, build_ball
from .complexes import IsoParams, SquareComplex, _id_in, _id_out, _idkey
from .enumeration import (
    check_special_cells,
    enumerate_abstract_complexes,
    scan_local_iso,
)
from .fixtures import REGISTRY, make_fixture
from .fulfill import AbstractComplex, monte_carlo_set_fulfill
from .presentation import Presentation, sample_presentation
from .walls import (
    KINDS,
    PaintingConflict,
    bfs_geodesic,
    check_wall_lower_bound,
    check_window_crossing,
    is_embedded_tree,
    paint,
    wall_decomposition,
)

_NON_CONFIG = {"func", "out", "threads"}


def _config(args) -> dict:
    return {k: v for k, v in sorted(vars(args).items())
            if k not in _NON_CONFIG and v is not None}


def _envelope(args) -> dict:
    return {"version": __version__, "config": _config(args), "seed": args.seed}


def _emit(args, text: str) -> None:
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _emit_json(args, doc: dict) -> None:
    _emit(args, json.dumps(doc, sort_keys=True, indent=2) + "\n")


def _load_complex(args, parser) -> SquareComplex:
    infile = getattr(args, "infile", None)
    if bool(infile) == bool(args.fixture):
        parser.error("provide exactly one of --in / --fixture")
    if args.fixture:
        kwargs = {}
        if args.radius is not None:
            kwargs["radius"] = args.radius
        if args.length is not None:
            kwargs["length"] = args.length
        if args.k is not None:
            kwargs["k"] = args.k
        try:
            return make_fixture(args.fixture, **kwargs)
        except KeyError as exc:
            parser.error(str(exc))
    try:
        with open(infile) as fh:
            doc = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        parser.error(f"cannot read {infile}: {exc}")
    if "complex" in doc:
        doc = doc["complex"]
    return SquareComplex.from_json(json.dumps(doc))


def _kinds(args, parser):
    kinds = tuple(k.strip() for k in args.kinds.split(","))
    for k in kinds:
        if k not in KINDS:
            parser.error(f"unknown wall kind {k!r}; known: {KINDS}")
    return kinds


def _vertex_token(v) -> str:
    return json.dumps(_id_out(v), sort_keys=True, separators=(",", ":"))


def _cmd_sample(args, parser) -> int:
    P = sample_presentation(args.rank, args.density, args.seed)
    doc = _envelope(args)
    doc["presentation"] = json.loads(P.to_json())
    _emit_json(args, doc)
    return 0


def _cmd_enumerate(args, parser) -> int:
    counts: dict = {}
    cursor = enumerate_abstract_complexes(
        args.faces, parent_cap=args.parent_cap, level_cap=args.level_cap)
    total = 0
    for Y in cursor:
        key = f"{len(Y.base.faces)},{Y.n_labels}"
        counts[key] = counts.get(key, 0) + 1
        total += 1
    doc = _envelope(args)
    doc["classes"] = total
    doc["classes_by_faces_labels"] = counts
    _emit_json(args, doc)
    return 0


def _cmd_scan_iso(args, parser) -> int:
    P = sample_presentation(args.rank, args.density, args.seed)
    params = IsoParams(d=args.density, eps=args.epsilon)
    violations = scan_local_iso(list(P.relators), args.faces, params)
    doc = _envelope(args)
    doc["presentation"] = json.loads(P.to_json())
    doc["violations"] = [json.loads(v.to_json_line()) for v in violations]
    _emit_json(args, doc)
    return 1 if violations else 0


def _cmd_special_cells(args, parser) -> int:
    P = sample_presentation(args.rank, args.density, args.seed)
    report = check_special_cells(list(P.relators))
    doc = _envelope(args)
    doc["presentation"] = json.loads(P.to_json())
    doc["report"] = report.to_json_dict()
    _emit_json(args, doc)
    return 1 if report.cross_witness_count else 0


def _cmd_ball(args, parser) -> int:
    if args.infile:
        try:
            with open(args.infile) as fh:
                doc = json.load(fh)
        except (OSError, json.JSONDecodeError) as exc:
            parser.error(f"cannot read {args.infile}: {exc}")
        if "presentation" in doc:
            doc = doc["presentation"]
        P = Presentation.from_json(json.dumps(doc))
    else:
        P = sample_presentation(args.rank, args.density, args.seed)
    budget = WordProblemBudget(hard_cap=args.hard_cap)
    ball = build_ball(P, args.radius, budget)
    doc = json.loads(ball.to_json())
    doc.update(_envelope(args))
    _emit_json(args, doc)
    return 0


def _paint_or_report(args, X: SquareComplex):
    """None, after emitting a conflict artifact, when the complex admits no
    consistent label-level coloring (the command then exits 1)."""
    try:
        return paint(X)
    except PaintingConflict as exc:
        doc = _envelope(args)
        doc["painting_conflict"] = str(exc)
        _emit_json(args, doc)
        return None


def _wall_rows(painted, kinds):
    X = painted.base
    W = wall_decomposition(painted, kinds)
    pairs = []
    verts = sorted(X.vertices, key=_idkey)
    for i, x in enumerate(verts):
        for y in verts[i + 1:]:
            pairs.append((x, y))
    return W, check_wall_lower_bound(W, X, pairs)


def _cmd_walls(args, parser) -> int:
    X = _load_complex(args, parser)
    kinds = _kinds(args, parser)
    painted = _paint_or_report(args, X)
    if painted is None:
        return 1
    W = wall_decomposition(painted, kinds)
    if args.format == "dot":
        lines = [f"// {json.dumps(_envelope(args), sort_keys=True)}"]
        for i, H in enumerate(W.walls):
            lines.append(f'graph "{H.kind}_{i}" {{')
            for e in sorted(H.vertices, key=_idkey):
                lines.append(f'  "{_vertex_token(e)}";')
            for a, b, fid in H.edges:
                lines.append(f'  "{_vertex_token(a)}" -- "{_vertex_token(b)}"'
                             f' [label="{_vertex_token(fid)}"];')
            lines.append("}")
        _emit(args, "\n".join(lines) + "\n")
        return 0
    doc = _envelope(args)
    doc["walls"] = []
    for H, rep in zip(W.walls, W.reports):
        tree = is_embedded_tree(H)
        doc["walls"].append({
            "kind": H.kind,
            "dual_edges": [_id_out(e) for e in sorted(H.vertices, key=_idkey)],
            "carrier": [_id_out(f) for f in sorted(H.carrier, key=_idkey)],
            "segments": [[_id_out(a), _id_out(b), _id_out(f)] for a, b, f in H.edges],
            "complement_count": rep.count,
            "boundary_open": rep.boundary_open,
            "embedded_tree": tree.tree,
        })
    _emit_json(args, doc)
    return 0


def _cmd_wall_metric(args, parser) -> int:
    X = _load_complex(args, parser)
    kinds = _kinds(args, parser)
    painted = _paint_or_report(args, X)
    if painted is None:
        return 1
    _W, reports = _wall_rows(painted, kinds)
    failed = any(r.status == "violation" for r in reports)
    if args.format == "csv":
        buf = io.StringIO()
        buf.write(f"# {json.dumps(_envelope(args), sort_keys=True)}\n")
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["x", "y", "d_edge", "d_wall", "bound", "status"])
        for r in reports:
            w.writerow([_vertex_token(r.x), _vertex_token(r.y),
                        r.d_edge, r.d_wall, r.bound, r.status])
        _emit(args, buf.getvalue())
    else:
        doc = _envelope(args)
        doc["rows"] = [
            {"x": _id_out(r.x), "y": _id_out(r.y), "d_edge": r.d_edge,
             "d_wall": r.d_wall, "bound": r.bound, "status": r.status}
            for r in reports
        ]
        _emit_json(args, doc)
    return 1 if failed else 0


def _cmd_windows(args, parser) -> int:
    X = _load_complex(args, parser)
    kinds = _kinds(args, parser)
    painted = _paint_or_report(args, X)
    if painted is None:
        return 1
    W = wall_decomposition(painted, kinds)
    try:
        x = _id_in(json.loads(args.src))
        y = _id_in(json.loads(args.dst))
    except json.JSONDecodeError as exc:
        parser.error(f"--from/--to must be JSON vertex ids: {exc}")
    try:
        _d, gamma = bfs_geodesic(X, x, y)
        report = check_window_crossing(X, W, gamma)
    except (KeyError, ValueError) as exc:
        parser.error(str(exc))
    doc = _envelope(args)
    doc["geodesic_length"] = report.geodesic_length
    doc["statuses"] = list(report.statuses)
    doc["all_pass"] = report.all_pass
    _emit_json(args, doc)
    return 1 if "fail" in report.statuses else 0


def _cmd_fulfill_mc(args, parser) -> int:
    try:
        with open(args.infile) as fh:
            doc = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        parser.error(f"cannot read {args.infile}: {exc}")
    if "complex" in doc:
        doc = doc["complex"]
    Y = AbstractComplex.from_json(json.dumps(doc))
    report = monte_carlo_set_fulfill(Y, args.rank, args.density,
                                     args.trials, args.seed)
    out = _envelope(args)
    out["report"] = report.to_json_dict()
    _emit_json(args, out)
    return 0


def _cmd_fixtures(args, parser) -> int:
    X = _load_complex(args, parser)
    doc = _envelope(args)
    doc["complex"] = json.loads(X.to_json())
    _emit_json(args, doc)
    return 0


def _add_common(sp):
    sp.add_argument("--format", choices=("json", "csv", "dot"), default="json")
    sp.add_argument("--out", default=None)
    sp.add_argument("--threads", type=int, default=1)
    sp.add_argument("--seed", type=int, default=0)


def _add_input(sp, fixture_only=False):
    if not fixture_only:
        sp.add_argument("--in", dest="infile", default=None)
    sp.add_argument("--fixture" if not fixture_only else "--name",
                    dest="fixture", choices=sorted(REGISTRY), default=None,
                    required=fixture_only)
    sp.add_argument("--radius", type=int, default=None)
    sp.add_argument("--length", type=int, default=None)
    sp.add_argument("--k", type=int, default=None)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="squarewalls",
        description="square-model presentations, Cayley balls, and walls")
    sub = parser.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("sample", help="sample a presentation")
    sp.add_argument("--rank", type=int, required=True)
    sp.add_argument("--density", type=float, required=True)
    _add_common(sp)
    sp.set_defaults(func=_cmd_sample)

    sp = sub.add_parser("enumerate", help="count abstract complex classes")
    sp.add_argument("--faces", type=int, required=True)
    sp.add_argument("--parent-cap", type=int, default=400)
    sp.add_argument("--level-cap", type=int, default=2500)
    _add_common(sp)
    sp.set_defaults(func=_cmd_enumerate)

    sp = sub.add_parser("scan-iso", help="scan enumerated complexes for "
                                         "cancellation over the density bound")
    sp.add_argument("--rank", type=int, required=True)
    sp.add_argument("--density", type=float, required=True)
    sp.add_argument("--faces", type=int, default=2)
    sp.add_argument("--epsilon", type=float, default=0.05)
    _add_common(sp)
    sp.set_defaults(func=_cmd_scan_iso)

    sp = sub.add_parser("special-cells", help="search relator pairs for "
                                              "three-shares and collared third faces")
    sp.add_argument("--rank", type=int, required=True)
    sp.add_argument("--density", type=float, required=True)
    _add_common(sp)
    sp.set_defaults(func=_cmd_special_cells)

    sp = sub.add_parser("ball", help="build a Cayley-complex ball")
    sp.add_argument("--in", dest="infile", default=None,
                    help="presentation JSON (else sample from rank/density/seed)")
    sp.add_argument("--rank", type=int, default=2)
    sp.add_argument("--density", type=float, default=0.25)
    sp.add_argument("--radius", type=int, required=True)
    sp.add_argument("--hard-cap", type=int, default=10**6)
    _add_common(sp)
    sp.set_defaults(func=_cmd_ball)

    sp = sub.add_parser("walls", help="trace and report hypergraph walls")
    _add_input(sp)
    sp.add_argument("--kinds", default="standard,red,blue")
    _add_common(sp)
    sp.set_defaults(func=_cmd_walls)

    sp = sub.add_parser("wall-metric", help="wall-separation counts vs edge "
                                            "distance for all vertex pairs")
    _add_input(sp)
    sp.add_argument("--kinds", default="standard,red,blue")
    _add_common(sp)
    sp.set_defaults(func=_cmd_wall_metric)

    sp = sub.add_parser("windows", help="wall crossings in geodesic windows")
    _add_input(sp)
    sp.add_argument("--kinds", default="standard,red,blue")
    sp.add_argument("--from", dest="src", required=True)
    sp.add_argument("--to", dest="dst", required=True)
    _add_common(sp)
    sp.set_defaults(func=_cmd_windows)

    sp = sub.add_parser("fulfill-mc", help="Monte Carlo set-level fulfill "
                                           "probability for an abstract complex")
    sp.add_argument("--in", dest="infile", required=True)
    sp.add_argument("--rank", type=int, required=True)
    sp.add_argument("--density", type=float, required=True)
    sp.add_argument("--trials", type=int, default=2000)
    _add_common(sp)
    sp.set_defaults(func=_cmd_fulfill_mc)

    sp = sub.add_parser("fixtures", help="emit a built-in fixture complex")
    _add_input(sp, fixture_only=True)
    _add_common(sp)
    sp.set_defaults(func=_cmd_fixtures)

    return parser


def run(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    return args.func(args, parser)


def main() -> None:
    sys.exit(run())
