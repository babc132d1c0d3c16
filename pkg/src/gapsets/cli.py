"""Command line front end.

Commands::

  count         per-genus totals with depth / multiplicity breakdowns
  enumerate     dump of matching gapsets, one line each
  verify        sandwich | fibonacci | families | graph | alpha
  graph-export  refinement graph as graphviz dot or a csv edge list
  ratios        table of n'_{g+1} / n_g with the running minimum
  subtree       descendant counts per level below a given root

Exit codes: 0 success (or verification passed), 1 verification failed,
2 usage error.  The dump line format is
``genus;depth;multiplicity;gaps;filtration;generators`` and verify
reports print one csv row per checked genus.  The GAPSETS_WORKERS
environment variable sets the default worker count; --workers wins.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys

from . import analysis, families, growth
from . import graph as graphmod
from .core import (
    Gapset,
    format_filtration,
    is_gapset_filtration,
    min_generators,
    to_filtration,
)
from .tree import EnumFilter, count, iter_gapsets

ENV_WORKERS = "GAPSETS_WORKERS"


def _resolve_workers(args) -> int:
    if getattr(args, "workers", None) is not None:
        if args.workers < 1:
            raise ValueError("--workers must be >= 1")
        return args.workers
    env = os.environ.get(ENV_WORKERS)
    if env:
        try:
            v = int(env)
        except ValueError:
            raise ValueError(f"{ENV_WORKERS} must be an integer, got {env!r}")
        if v < 1:
            raise ValueError(f"{ENV_WORKERS} must be >= 1, got {v}")
        return v
    return 1


def _emit(text: str, output: str | None):
    if output:
        with open(output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _table(headers, rows) -> str:
    cols = [headers] + [[str(c) for c in row] for row in rows]
    widths = [max(len(r[i]) for r in cols) for i in range(len(headers))]
    lines = []
    for r in cols:
        lines.append("  ".join(c.ljust(w) for c, w in zip(r, widths)).rstrip())
    return "\n".join(lines) + "\n"


def _csv_text(headers, rows) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(headers)
    writer.writerows(rows)
    return buf.getvalue()


def _bool(b: bool) -> str:
    return "true" if b else "false"


def _filter_from(args) -> EnumFilter:
    return EnumFilter(
        max_genus=args.max_genus,
        depth_le=args.depth_le,
        depth_eq=args.depth_eq,
        multiplicity_eq=args.multiplicity,
    )


# ── count ───────────────────────────────────────────────────────────

def cmd_count(args) -> int:
    flt = _filter_from(args)
    tbl = count(
        flt,
        workers=_resolve_workers(args),
        split_genus=args.split_genus,
        engine=args.engine,
    )

    def breakdown(d):
        return " ".join(f"{k}:{v}" for k, v in d.items()) or "-"

    if args.format == "table":
        rows = [
            (g, tbl.total(g), breakdown(tbl.by_depth(g)), breakdown(tbl.by_multiplicity(g)))
            for g in range(tbl.max_genus + 1)
        ]
        text = _table(["genus", "total", "by_depth", "by_multiplicity"], rows)
    elif args.format == "csv":
        text = _csv_text(
            ["genus", "total"], [(g, tbl.total(g)) for g in range(tbl.max_genus + 1)]
        )
    else:
        lines = []
        for g in range(tbl.max_genus + 1):
            lines.append(
                json.dumps(
                    {
                        "genus": g,
                        "total": tbl.total(g),
                        "by_depth": {str(k): v for k, v in tbl.by_depth(g).items()},
                        "by_multiplicity": {
                            str(k): v for k, v in tbl.by_multiplicity(g).items()
                        },
                    }
                )
            )
        text = "\n".join(lines) + "\n"
    _emit(text, args.output)
    return 0


# ── enumerate ───────────────────────────────────────────────────────

def _enumerate_rows(flt: EnumFilter, sort: bool):
    rows = []
    for gs in iter_gapsets(flt):
        rows.append(
            {
                "genus": gs.genus,
                "depth": gs.depth,
                "multiplicity": gs.multiplicity,
                "gaps": list(gs.gaps),
                "filtration": format_filtration(to_filtration(gs)),
                "generators": list(min_generators(gs)),
            }
        )
    if sort:
        rows.sort(key=lambda r: (r["genus"], r["gaps"]))
    return rows


def cmd_enumerate(args) -> int:
    rows = _enumerate_rows(_filter_from(args), args.sort)
    if args.format == "csv":
        lines = [
            "{genus};{depth};{multiplicity};{gaps};{filtration};<{gens}>".format(
                genus=r["genus"],
                depth=r["depth"],
                multiplicity=r["multiplicity"],
                gaps=",".join(map(str, r["gaps"])),
                filtration=r["filtration"],
                gens=",".join(map(str, r["generators"])),
            )
            for r in rows
        ]
        text = "\n".join(lines) + "\n"
    elif args.format == "json":
        text = "\n".join(json.dumps(r) for r in rows) + "\n"
    else:
        text = _table(
            ["genus", "depth", "mult", "gaps", "filtration", "generators"],
            [
                (
                    r["genus"],
                    r["depth"],
                    r["multiplicity"],
                    ",".join(map(str, r["gaps"])),
                    r["filtration"],
                    "<" + ",".join(map(str, r["generators"])) + ">",
                )
                for r in rows
            ],
        )
    _emit(text, args.output)
    return 0


# ── verify ──────────────────────────────────────────────────────────

def _verify_sandwich(args) -> tuple[bool, str, str]:
    report = growth.verify_sandwich(args.max_genus)
    headers = ["g", "n_prime", "x1", "x2", "x3", "lower_ok", "upper_ok"]
    rows = [
        (r.genus, r.n_prime, r.x1, r.x2, r.x3, _bool(r.lower_ok), _bool(r.upper_ok))
        for r in report.rows
    ]
    bad = report.first_failure()
    detail = "" if bad is None else f"first failure at genus {bad.genus}: {bad}"
    text = _csv_text(headers, rows) if args.format == "csv" else _table(headers, rows)
    return report.ok, text, detail


def _verify_fibonacci(args) -> tuple[bool, str, str]:
    fib = analysis.fibonacci_report(
        args.max_genus, workers=_resolve_workers(args), engine=args.engine
    )
    trib = analysis.tribonacci_report(60)
    headers = ["g", "depth2_count", "fibonacci", "exact"]
    rows = [(r.genus, r.counted, r.expected, _bool(r.exact)) for r in fib.rows]
    text = _csv_text(headers, rows) if args.format == "csv" else _table(headers, rows)
    ok = fib.ok and trib.ok
    detail = ""
    for r in fib.rows:
        if not r.exact:
            detail = f"genus {r.genus}: counted {r.counted}, expected F_{r.genus + 1} = {r.expected}"
            break
    else:
        for r in trib.rows:
            if not (r.within and r.strengthened is not False):
                detail = f"reference bound fails at genus {r.genus}: {r}"
                break
    return ok, text, detail


def _verify_families(args) -> tuple[bool, str, str]:
    reports = [families.cross_check(3, args.max_genus), families.cross_check(4, args.max_genus)]
    headers = ["m", "g", "closed_form_count", "bruteforce_count", "match"]
    rows = [
        (r.multiplicity, r.genus, r.closed_form_count, r.bruteforce_count, _bool(r.match))
        for rep in reports
        for r in rep.rows
    ]
    text = _csv_text(headers, rows) if args.format == "csv" else _table(headers, rows)
    ok = all(rep.ok for rep in reports)
    detail = ""
    for rep in reports:
        if rep.mismatch:
            detail = "first mismatching filtration: " + format_filtration(rep.mismatch[0])
            break
    # the shape predicate itself, against brute force on a fixed grid
    for shape in _shape_grid():
        if families.is_valid_shape(shape) != families.bruteforce_is_gapset_filtration(shape):
            ok = False
            detail = f"shape predicate disagrees with brute force on {shape}"
            break
    return ok, text, detail


def _shape_grid(a_max: int = 12, bc_max: int = 14):
    for a in range(1, a_max + 1):
        for b in range(bc_max + 1):
            for tail in ({1}, {2}):
                yield families.FamilyShape.mult3(a, tail, b)
        for b in range(bc_max + 1):
            for c in range(bc_max + 1):
                for middle in (frozenset({1, 2}), frozenset({1, 3}), frozenset({2, 3})):
                    for z in middle:
                        yield families.FamilyShape.mult4(a, middle, b, {z}, c)


def _verify_graph(args) -> tuple[bool, str, str]:
    g = graphmod.build_graph(args.max_genus)
    headers = ["g", "vertices", "edges_up", "tree_edges", "extra_edges", "min_out_degree"]
    rows = []
    ok = True
    detail = ""
    for level in range(args.max_genus + 1):
        n_vertices = len(g.levels[level])
        if level < args.max_genus:
            layer = g.edges[level]
            tree_edges = sum(1 for _i, _j, t in layer if t)
            extra = len(layer) - tree_edges
            degs = g.out_degrees(level)
            min_deg = min(degs) if degs else 0
            if min_deg < 1 and ok:
                ok = False
                culprit = g.levels[level][degs.index(0)]
                detail = f"vertex without outgoing edge: {format_filtration(culprit)}"
            # one incoming tree edge per child is the tree-inside-graph check
            incoming = [0] * len(g.levels[level + 1])
            for _i, j, t in layer:
                if t:
                    incoming[j] += 1
            if any(k != 1 for k in incoming) and not detail:
                ok = False
                j = next(idx for idx, k in enumerate(incoming) if k != 1)
                detail = f"tree edge missing for {format_filtration(g.levels[level + 1][j])}"
            rows.append((level, n_vertices, len(layer), tree_edges, extra, min_deg))
        else:
            rows.append((level, n_vertices, "-", "-", "-", "-"))
    text = _csv_text(headers, rows) if args.format == "csv" else _table(headers, rows)
    return ok, text, detail


def _verify_alpha(args) -> tuple[bool, str, str]:
    ok = True
    detail = ""
    top = args.max_genus + 2
    sent1 = [0] * (top + 1)  # inputs sent into each genus by grow1
    sent2 = [0] * (top + 1)
    img1: dict[int, set] = {g: set() for g in range(top + 1)}
    img2: dict[int, set] = {g: set() for g in range(top + 1)}

    def fail(label, f):
        nonlocal ok, detail
        if ok:
            ok = False
            detail = f"{label} fails for {format_filtration(f)}"

    for gs in iter_gapsets(EnumFilter(max_genus=args.max_genus, depth_le=3)):
        f = to_filtration(gs)
        g1 = growth.grow1(f)
        g2 = growth.grow2(f)
        if not is_gapset_filtration(g1):
            fail("grow1 image not a gapset filtration", f)
        if not is_gapset_filtration(g2):
            fail("grow2 image not a gapset filtration", f)
        if g1.genus != f.genus + 1 or g1.multiplicity != f.multiplicity + 1:
            fail("grow1 genus/multiplicity law", f)
        if g2.genus != f.genus + 2 or g2.multiplicity != f.multiplicity + 1:
            fail("grow2 genus/multiplicity law", f)
        if g1.genus >= 2:
            if growth.classify(g1).kind is not growth.GrowthKind.GROW1:
                fail("grow1 classification", f)
            if growth.ungrow1(g1) != f:
                fail("ungrow1 round trip", f)
        if growth.classify(g2).kind is not growth.GrowthKind.GROW2:
            fail("grow2 classification", f)
        if growth.ungrow2(g2) != f:
            fail("ungrow2 round trip", f)
        if f.depth == 3:
            t = growth.trim_maxima(f)
            if not is_gapset_filtration(t):
                fail("trim image not a gapset filtration", f)
            if t.genus != f.genus - 3:
                fail("trim genus law", f)
        sent1[g1.genus] += 1
        sent2[g2.genus] += 1
        img1[g1.genus].add(g1)
        img2[g2.genus].add(g2)

    rows = []
    for genus in range(args.max_genus + 3):
        # image sizes must match input counts (injectivity) and the two
        # images must not meet (disjointness)
        if len(img1[genus]) != sent1[genus] or len(img2[genus]) != sent2[genus]:
            if ok:
                ok = False
                detail = f"growth map not injective into genus {genus}"
        overlap = img1[genus] & img2[genus]
        if overlap and ok:
            ok = False
            detail = "images overlap at " + format_filtration(next(iter(overlap)))
        rows.append((genus, len(img1[genus]), len(img2[genus])))
    headers = ["image_genus", "grow1_images", "grow2_images"]
    text = _csv_text(headers, rows) if args.format == "csv" else _table(headers, rows)
    return ok, text, detail


def cmd_verify(args) -> int:
    runner = {
        "sandwich": _verify_sandwich,
        "fibonacci": _verify_fibonacci,
        "families": _verify_families,
        "graph": _verify_graph,
        "alpha": _verify_alpha,
    }[args.check]
    ok, text, detail = runner(args)
    verdict = f"verify {args.check}: {'PASS' if ok else 'FAIL'}\n"
    if detail:
        verdict += detail + "\n"
    _emit(text + verdict, args.output)
    return 0 if ok else 1


# ── graph-export ────────────────────────────────────────────────────

def cmd_graph_export(args) -> int:
    g = graphmod.build_graph(args.max_genus, depth_le=args.depth_le)
    text = graphmod.export_dot(g) if args.format == "dot" else graphmod.export_edges_csv(g)
    _emit(text, args.output)
    return 0


# ── ratios ──────────────────────────────────────────────────────────

def cmd_ratios(args) -> int:
    report = analysis.ratio_report(
        args.max_genus, workers=_resolve_workers(args), engine=args.engine
    )
    headers = ["g", "n_g", "n_prime_next", "ratio"]
    rows = [
        (r.genus, r.n_g, r.n_prime_next, analysis.format_ratio(r.ratio)) for r in report.rows
    ]
    tail = (
        f"minimum ratio {analysis.format_ratio(report.min_ratio)} "
        f"at genus {report.argmin_genus}\n"
    )
    if args.format == "csv":
        text = _csv_text(headers, rows)
    else:
        text = _table(headers, rows) + tail
    _emit(text, args.output)
    return 0


# ── subtree ─────────────────────────────────────────────────────────

def _parse_root(text: str) -> Gapset:
    if not text:
        return Gapset()
    try:
        gaps = [int(tok) for tok in text.split(",")]
    except ValueError:
        raise ValueError(f"--root expects a comma-separated gap list, got {text!r}")
    return Gapset.from_gaps(gaps)


def cmd_subtree(args) -> int:
    report = analysis.subtree_levels(_parse_root(args.root), args.max_genus)
    headers = ["level", "count", "nondecreasing"]
    rows = [(r.level, r.count, _bool(r.nondecreasing)) for r in report.rows]
    text = _csv_text(headers, rows) if args.format == "csv" else _table(headers, rows)
    _emit(text, args.output)
    return 0


# ── parser ──────────────────────────────────────────────────────────

def _add_common(p, *, filters=False, engine=False, formats=("table", "csv", "json")):
    p.add_argument("--max-genus", type=int, required=True, metavar="G")
    if filters:
        p.add_argument("--depth-le", type=int, metavar="Q")
        p.add_argument("--depth-eq", type=int, metavar="Q")
        p.add_argument("--multiplicity", type=int, metavar="M")
    if engine:
        p.add_argument("--workers", type=int, metavar="N")
        p.add_argument("--split-genus", type=int, default=12, metavar="G")
        p.add_argument("--engine", choices=["auto", "python", "bitset"], default="auto")
    p.add_argument("--format", choices=list(formats), default=formats[0])
    p.add_argument("--output", metavar="PATH")


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="gapsets",
        description="enumerate, count and verify gapsets (complements of numerical semigroups)",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("count", help="per-genus totals with breakdowns")
    _add_common(p, filters=True, engine=True)
    p.set_defaults(func=cmd_count)

    p = sub.add_parser("enumerate", help="dump matching gapsets")
    _add_common(p, filters=True)
    p.add_argument("--sort", action="store_true", help="sort rows by (genus, gaps)")
    p.set_defaults(func=cmd_enumerate)

    p = sub.add_parser("verify", help="run a verification, exit 1 on failure")
    p.add_argument("check", choices=["sandwich", "fibonacci", "families", "graph", "alpha"])
    _add_common(p, engine=True, formats=("table", "csv"))
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("graph-export", help="refinement graph as dot or csv")
    p.add_argument("--max-genus", type=int, required=True, metavar="G")
    p.add_argument("--depth-le", type=int, metavar="Q")
    p.add_argument("--format", choices=["dot", "csv"], default="dot")
    p.add_argument("--output", metavar="PATH")
    p.set_defaults(func=cmd_graph_export)

    p = sub.add_parser("ratios", help="n'_{g+1} / n_g table and minimum")
    _add_common(p, engine=True, formats=("table", "csv"))
    p.set_defaults(func=cmd_ratios)

    p = sub.add_parser("subtree", help="descendant counts below a root")
    p.add_argument("--root", default="", metavar="GAPS", help="comma-separated gap list, empty for the root")
    _add_common(p, formats=("table", "csv"))
    p.set_defaults(func=cmd_subtree)

    return parser


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
