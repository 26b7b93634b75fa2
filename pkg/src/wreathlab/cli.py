"""Command-line front end.

Exit status: 0 ok, 1 a check failed, 2 usage error, 3 computational error.
"""
from __future__ import annotations

import argparse
import csv
import datetime as _dt
import io
import json
import sys
from pathlib import Path

from . import __version__, scalars
from .characters import character_table_csv, verify_z_cycle_expansion
from .errors import BadCharacterTable, ClassMismatch, NonGroupTable, WreathLabError
from .group_core import load_group, read_group_document
from .measures import (
    check_coherency,
    check_projection,
    ewens_pushforward,
    multiple_z_measure,
    z_measure,
)
from .multipartitions import check_mps
from .samplers import (
    ewens_samples_csv,
    make_rng,
    pd_samples_csv,
    sample_ewens_batch,
    sample_multiple_pd,
    trajectory_csv,
)
from .whittaker import correlation_grid_csv
from .wreath import WreathElement, check_class_sizes

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_COMPUTE = 0, 1, 2, 3


class UsageError(Exception):
    pass


def _split(text: str | None) -> list[str]:
    if text is None:
        return []
    return [p.strip() for p in text.split(",") if p.strip()]


def _scalars(text: str | None, what: str) -> list[str]:
    """Validate comma-separated scalar literals, returning the raw strings."""
    parts = _split(text)
    if not parts:
        raise UsageError(f"{what} is required")
    for p in parts:
        try:
            scalars.parse_scalar(p)
        except scalars.ScalarParseError:
            raise UsageError(f"bad {what} entry {p!r}; grammar: {scalars.GRAMMAR}") from None
    return parts


def _group(ref: str):
    try:
        doc = read_group_document(ref)
    except (FileNotFoundError, json.JSONDecodeError) as exc:
        raise UsageError(str(exc)) from None
    return load_group(doc)


def _emit(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text if text.endswith("\n") else text + "\n")


# subcommands


def cmd_group_validate(args) -> int:
    try:
        g = _group(args.source)
    except (NonGroupTable, BadCharacterTable, ClassMismatch) as exc:
        detail = getattr(exc, "witness", None) or getattr(exc, "rows", None)
        _emit(f"FAIL {type(exc).__name__}: {exc}" + (f" at {detail}" if detail else ""), args.out)
        return EXIT_FAIL
    args.backend_used = g.backend
    lines = [f"group {g.name}: order {g.order}, {g.k} classes, sizes {list(g.class_sizes)}",
             *g.report, "PASS"]
    _emit("\n".join(lines), args.out)
    return EXIT_OK


def _measure_table(kind: str, g, n: int, params: list[str], zprime: str | None = None):
    if kind == "ewens":
        return ewens_pushforward(n, params, g)
    if kind == "zmeasure":
        if len(params) != 1:
            raise UsageError("zmeasure takes one parameter z")
        return z_measure(n, params[0], zprime)
    return multiple_z_measure(n, params, g)


def cmd_measure(args) -> int:
    g = _group(args.group)
    params = _scalars(args.params, "--params")
    table = _measure_table(args.kind, g, args.n, params, args.zprime)
    args.backend_used = table.backend
    _emit(table.to_json(), args.out)
    return EXIT_OK


def cmd_check(args) -> int:
    g = _group(args.group)
    kind = args.kind
    if kind == "classsizes":
        report = check_class_sizes(g, args.n)
    elif kind == "zexpansion":
        report = verify_z_cycle_expansion(g, args.n, _scalars(args.params, "--params"))
    elif kind == "projection":
        report = check_projection(g, args.n, _scalars(args.params, "--params"))
    else:
        params = _scalars(args.params, "--params")
        family = args.family or ("ewens" if kind == "mps" else "multiz")
        name = "ewens" if family == "ewens" else "multizmeasure"
        tables = [_measure_table(name, g, m, params) for m in range(1, args.n + 1)]
        if kind == "mps":
            report = check_mps(tables)
        else:
            reports = [check_coherency(a, b, g) for a, b in zip(tables, tables[1:])]
            failed = [r for r in reports if not r.passed]
            report = failed[0] if failed else max(reports, key=lambda r: r.checked) if reports else None
            if report is None:
                raise UsageError("coherency needs --n >= 2")
    args.backend_used = report.backend
    _emit(f"check {kind} group={g.name} n={args.n}: {report}", args.out)
    return EXIT_OK if report.passed else EXIT_FAIL


def cmd_chartab(args) -> int:
    g = _group(args.group)
    _emit(character_table_csv(g, args.n), args.out)
    return EXIT_OK


def cmd_sample(args) -> int:
    if args.seed is None:
        raise UsageError("sampling needs an explicit --seed")
    params = _scalars(args.params, "--params")
    rng = make_rng(args.seed, args.stream)
    if args.kind == "ewens":
        g = _group(args.group)
        t = [scalars.to_float(scalars.parse_scalar(p)) for p in params]
        if args.trajectory:
            w, p, snaps = sample_ewens_batch(g, args.n, t, rng, args.reps, trajectory=True)
            trajs = [
                [WreathElement(tuple(map(int, sw[r])), tuple(map(int, sp[r]))) for sw, sp in snaps]
                for r in range(args.reps)
            ]
            text = trajectory_csv(trajs)
        else:
            w, p = sample_ewens_batch(g, args.n, t, rng, args.reps)
            text = ewens_samples_csv(g, w, p)
    else:
        t = [scalars.to_float(scalars.parse_scalar(p)) for p in params]
        text = pd_samples_csv([sample_multiple_pd(t, rng, args.residual) for _ in range(args.reps)])
    _emit(text, args.out)
    return EXIT_OK


def _read_grid(args) -> list[list[float]]:
    rows = []
    if args.points:
        for chunk in args.points:
            rows.append([float(v) for v in _split(chunk)])
    if args.grid:
        text = Path(args.grid).read_text()
        for row in csv.reader(io.StringIO(text)):
            if row and not row[0].lstrip().startswith("#"):
                try:
                    rows.append([float(v) for v in row if v.strip()])
                except ValueError:
                    continue  # header line
    if not rows:
        raise UsageError("give --points or --grid")
    if len({len(r) for r in rows}) != 1:
        raise UsageError("all point tuples must have the same length")
    return rows


def cmd_corr(args) -> int:
    zs = _scalars(args.z, "--z")
    rows = _read_grid(args)
    if args.kind == "whittaker":
        if len(zs) != 1:
            raise UsageError("whittaker takes one z")
        z = complex(scalars.to_float(scalars.parse_scalar(zs[0])))
        text = correlation_grid_csv(z, rows)
    else:
        g = _group(args.group)
        sizes = [int(v) for v in _split(args.sizes)]
        if len(sizes) != g.k or sum(sizes) != len(rows[0]):
            raise UsageError(f"--sizes must have {g.k} entries summing to the tuple length {len(rows[0])}")
        text = correlation_grid_csv(zs, rows, group=g, colored=sizes, tol=args.tol)
    _emit(text, args.out)
    return EXIT_OK


def cmd_replay(args) -> int:
    doc = json.loads(Path(args.manifest_file).read_text())
    argv = list(doc["argv"])
    if args.out:
        argv = _replace_out(argv, args.out)
    return main(argv)


def _replace_out(argv: list[str], out: str) -> list[str]:
    """Drop --out/--manifest (and their values) from a recorded argv, then point --out elsewhere."""
    res = []
    it = iter(range(len(argv)))
    for i in it:
        a = argv[i]
        if a.startswith("--out=") or a.startswith("--manifest="):
            continue
        if a == "--out" or (a == "--manifest" and i + 1 < len(argv) and not argv[i + 1].startswith("-")):
            next(it, None)
            continue
        if a == "--manifest":
            continue
        res.append(a)
    return res + ["--out", out]


# parser


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--out", help="write output here instead of stdout")
    common.add_argument("--manifest", nargs="?", const="", default=None,
                        help="write a run manifest (default: <out>.manifest.json)")

    p = argparse.ArgumentParser(prog="wreathlab", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=__version__)
    sub = p.add_subparsers(dest="command", required=True)

    grp = sub.add_parser("group", help="group documents")
    gsub = grp.add_subparsers(dest="action", required=True)
    gv = gsub.add_parser("validate", parents=[common])
    gv.add_argument("source", help="group file or bundled name")
    gv.set_defaults(func=cmd_group_validate)

    ms = sub.add_parser("measure", parents=[common], help="emit a MeasureTable as JSON")
    ms.add_argument("kind", choices=["ewens", "zmeasure", "multizmeasure"])
    ms.add_argument("--group", default="trivial")
    ms.add_argument("--n", type=int, required=True)
    ms.add_argument("--params", required=True, help="comma-separated t or z values")
    ms.add_argument("--zprime", help="independent second parameter for zmeasure")
    ms.set_defaults(func=cmd_measure)

    ck = sub.add_parser("check", parents=[common], help="consistency checks (exit 1 on failure)")
    ck.add_argument("kind", choices=["mps", "coherency", "zexpansion", "classsizes", "projection"])
    ck.add_argument("--group", default="trivial")
    ck.add_argument("--n", type=int, required=True)
    ck.add_argument("--params")
    ck.add_argument("--family", choices=["ewens", "multiz"],
                    help="measure sequence for mps/coherency (defaults: mps=ewens, coherency=multiz)")
    ck.set_defaults(func=cmd_check)

    ct = sub.add_parser("chartab", parents=[common], help="character table of G~S(n) as CSV")
    ct.add_argument("--group", default="trivial")
    ct.add_argument("--n", type=int, required=True)
    ct.set_defaults(func=cmd_chartab)

    sp = sub.add_parser("sample", parents=[common], help="seeded samples as CSV")
    sp.add_argument("kind", choices=["ewens", "mpd"])
    sp.add_argument("--group", default="trivial")
    sp.add_argument("--n", type=int, default=1)
    sp.add_argument("--params", required=True)
    sp.add_argument("--reps", type=int, default=1)
    sp.add_argument("--seed", type=int)
    sp.add_argument("--stream", type=int, default=0)
    sp.add_argument("--trajectory", action="store_true", help="dump every level of each Ewens sample")
    sp.add_argument("--residual", type=float, default=1e-12, help="stick-breaking truncation for mpd")
    sp.set_defaults(func=cmd_sample)

    cr = sub.add_parser("corr", parents=[common], help="correlation functions on a grid as CSV")
    cr.add_argument("kind", choices=["whittaker", "mixed"])
    cr.add_argument("--z", required=True, help="z (whittaker) or comma-separated z-vector (mixed)")
    cr.add_argument("--group", default="trivial")
    cr.add_argument("--sizes", help="points per colour for mixed, e.g. 1,0")
    cr.add_argument("--points", action="append", help="one comma-separated point tuple (repeatable)")
    cr.add_argument("--grid", help="CSV file with one point tuple per row")
    cr.add_argument("--tol", type=float, default=1e-6)
    cr.set_defaults(func=cmd_corr)

    rp = sub.add_parser("replay", help="re-run the command recorded in a manifest")
    rp.add_argument("manifest_file")
    rp.add_argument("--out")
    rp.set_defaults(func=cmd_replay)
    return p


def _write_manifest(args, argv: list[str]) -> None:
    if getattr(args, "manifest", None) is None:
        return
    path = args.manifest or (f"{args.out}.manifest.json" if getattr(args, "out", None) else "")
    if not path:
        raise UsageError("--manifest without a path needs --out")
    params = getattr(args, "params", None) or getattr(args, "z", None)
    group = getattr(args, "group", None) or getattr(args, "source", None)
    backend = getattr(args, "backend_used", scalars.FLOAT)
    doc = {
        "command": " ".join(a for a in (args.command, getattr(args, "action", None) or getattr(args, "kind", None)) if a),
        "argv": argv,
        "group": group,
        "parameters": _split(params) if isinstance(params, str) else params,
        "backend": backend,
        "seed": getattr(args, "seed", None),
        "tool_version": __version__,
        "timestamp": _dt.datetime.now(_dt.timezone.utc).isoformat(),
    }
    Path(path).write_text(json.dumps(doc, indent=1) + "\n")


def main(argv: list[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if isinstance(exc.code, int) else EXIT_USAGE
    try:
        status = args.func(args)
        _write_manifest(args, argv)
        return status
    except UsageError as exc:
        print(f"wreathlab: usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except WreathLabError as exc:
        print(f"wreathlab: {type(exc).__name__}: {exc}", file=sys.stderr)
        for attr in ("diagnostics", "error_estimate", "witness", "rows"):
            val = getattr(exc, attr, None)
            if val:
                print(f"  {attr}: {val}", file=sys.stderr)
        return EXIT_COMPUTE


if __name__ == "__main__":
    sys.exit(main())
