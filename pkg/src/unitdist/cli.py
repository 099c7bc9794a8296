"""Batch command-line interface.

Subcommands: table, verify, bounds, crossover, arcs, case15.  Reports are
emitted as CSV or JSON with a frozen schema (``schema_version`` 1); the
verify and arcs paths can additionally render coordinate-echo figures to a
directory.  Exit codes: 0 success, 1 verification failure, 2 usage error.
"""

from __future__ import annotations

import argparse
import csv
import json
import sys
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from typing import Optional

from . import bounds as bounds_mod
from . import case15 as case15_mod
from . import catalog as catalog_mod
from .drawings import build_arc_multigraph, check_proposition_inequality, circle_crossing_stats

SCHEMA_VERSION = 1

EXIT_OK = 0
EXIT_VERIFICATION = 1
EXIT_USAGE = 2


@dataclass
class RunConfig:
    subcommand: str
    n_from: Optional[int] = None
    n_to: Optional[int] = None
    seed: Optional[dict] = None
    tol: Fraction = Fraction(1, 50)
    fmt: str = "csv"
    rng_seed: int = 2024
    precision: int = 30
    only: Optional[str] = None
    construction: Optional[str] = None
    case: Optional[str] = None
    formula: Optional[str] = None
    n: Optional[int] = None
    m: Optional[int] = None
    k: Optional[int] = None
    figures: Optional[str] = None
    catalog_path: Optional[str] = None


def _emit(fmt: str, command: str, rows: list[dict], out=None):
    out = out or sys.stdout
    if fmt == "json":
        payload = {"schema_version": SCHEMA_VERSION, "command": command, "results": rows}
        json.dump(payload, out, indent=1, default=str)
        out.write("\n")
        return
    if not rows:
        return
    columns = list(rows[0].keys())
    writer = csv.DictWriter(out, fieldnames=columns)
    writer.writeheader()
    for row in rows:
        writer.writerow({k: row.get(k, "") for k in columns})


def _parse_seed(text: Optional[str]) -> Optional[dict]:
    if text is None:
        return None
    raw = json.loads(text) if text.strip().startswith("{") else json.loads(Path(text).read_text())
    seed = {}
    for key, value in raw.items():
        seed[int(key)] = int(value["value"] if isinstance(value, dict) else value)
    return seed


def _fraction_str(value) -> str:
    if isinstance(value, Fraction):
        return str(value)
    return str(value)


# ---------------------------------------------------------------------------
# subcommands
# ---------------------------------------------------------------------------

def cmd_table(config: RunConfig) -> int:
    seed = config.seed if config.seed is not None else bounds_mod.default_known_bounds()
    n_to = config.n_to if config.n_to is not None else 30
    n_from = config.n_from if config.n_from is not None else min(seed)
    if n_from > n_to:
        print(f"error: empty range {n_from}..{n_to}", file=sys.stderr)
        return EXIT_USAGE
    if n_from < min(seed):
        print(f"error: seed gap: no value derivable for n={n_from};"
              f" the seed starts at n={min(seed)}", file=sys.stderr)
        return EXIT_USAGE
    try:
        rows = bounds_mod.build_upper_table(seed, n_to)
    except bounds_mod.BoundsError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    lower = {row.n: row for row in catalog_mod.catalog_summary(
        catalog_mod.load_catalog(config.catalog_path))}
    table = []
    consistent = True
    for row in rows:
        if not (n_from <= row.n <= n_to):
            continue
        low = lower.get(row.n)
        if row.source == "pipeline":
            recomputed = min(row.recursion_value, max(row.degree2_value, row.proposition_value))
            consistent &= recomputed == row.combined
        if low is not None:
            consistent &= low.lower_bound <= row.combined
        table.append({
            "n": row.n,
            "lower_bound": low.lower_bound if low else "",
            "upper_bound": row.combined,
            "recursion": row.recursion_value if row.recursion_value is not None else "",
            "degree2": row.degree2_value if row.degree2_value is not None else "",
            "proposition": row.proposition_value if row.proposition_value is not None else "",
            "source": row.source,
        })
    _emit(config.fmt, "table", table)
    return EXIT_OK if consistent else EXIT_VERIFICATION


def cmd_verify(config: RunConfig) -> int:
    if config.tol <= 0:
        print("error: tolerance must be positive", file=sys.stderr)
        return EXIT_USAGE
    records = catalog_mod.load_catalog(config.catalog_path)
    if config.only is not None:
        records = [rec for rec in records if rec.id == config.only]
        if not records:
            print(f"error: no record {config.only!r}", file=sys.stderr)
            return EXIT_USAGE
    fig_dir = None
    if config.figures:
        fig_dir = Path(config.figures)
        fig_dir.mkdir(parents=True, exist_ok=True)
    rows = []
    failures = 0
    for rec in records:
        approx = catalog_mod.verify_approx(rec, tol=config.tol)
        result = catalog_mod.realize_exact(rec)
        ok = approx.ok and result.status != catalog_mod.FAILED
        if result.status == catalog_mod.EXACT_CERTIFIED:
            ok = ok and result.derived_count >= rec.claimed_count
        if not ok:
            failures += 1
        row = {
            "id": rec.id,
            "n": rec.n,
            "claimed": rec.claimed_count,
            "approx_ok": approx.ok,
            "worst_sq_error": _fraction_str(approx.worst_sq_error),
            "ambiguous_pairs": len(approx.ambiguous),
            "status": result.status,
            "derived": result.derived_count if result.derived_count is not None else "",
            "bonus_edges": len(result.bonus_edges),
            "hinges": result.hinge_placements,
            "flexible": " ".join(map(str, result.flexible)),
        }
        if (config.only is not None and config.fmt == "json"
                and result.status == catalog_mod.EXACT_CERTIFIED):
            from .fields import to_expression, to_interval

            def preview(coord):
                lo, hi = to_interval(coord, config.precision)
                return f"{float((lo + hi) / 2):.10g}"

            row["exact_points"] = [
                [to_expression(p.x), to_expression(p.y)] for p in result.exact_points
            ]
            row["points_decimal"] = [
                [preview(p.x), preview(p.y)] for p in result.exact_points
            ]
        rows.append(row)
        if fig_dir is not None:
            extra = result.bonus_edges if result.status == catalog_mod.EXACT_CERTIFIED else []
            from .figures import render_construction

            render_construction(rec, fig_dir / f"{rec.id}.svg", extra_edges=extra,
                                caption=f"{rec.id}: {result.status}")
    _emit(config.fmt, "verify", rows)
    return EXIT_OK if failures == 0 else EXIT_VERIFICATION


def cmd_bounds(config: RunConfig) -> int:
    if config.formula is None or config.n is None:
        print("error: bounds requires --formula and --n", file=sys.stderr)
        return EXIT_USAGE
    try:
        ev = bounds_mod.evaluate_formula(config.formula, config.n, config.m, config.k)
    except bounds_mod.BoundsError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    row = {
        "formula": ev.formula_id,
        **{key: value for key, value in ev.inputs.items()},
        "applicable": ev.applicable,
        "value": _fraction_str(ev.value) if ev.applicable else "",
        "reason": ev.reason,
    }
    for key, value in ev.extras.items():
        row[f"extra_{key}"] = _fraction_str(value)
    _emit(config.fmt, "bounds", [row])
    return EXIT_OK


def cmd_crossover(config: RunConfig) -> int:
    report = bounds_mod.crossover_theorem_vs_table(config.seed)
    rows = [
        {"threshold": "low_degree_regime", "value": bounds_mod.crossover_case2(),
         "detail": "smallest n where 6.95n falls below the cube-root bound"},
        {"threshold": "balanced_degree_regime", "value": bounds_mod.crossover_case3(),
         "detail": "largest n where the quadratic bound beats the cube-root bound"},
        {"threshold": "theorem_vs_table", "value": report.value,
         "detail": (
             f"chain {report.chain_before} vs closed form {report.theorem_before}"
             f" at n={report.value - 1}; chain {report.chain_at} vs"
             f" {report.theorem_at} at n={report.value}"
         )},
    ]
    for row in bounds_mod.jensen_vs_previous(30):
        rows.append({
            "threshold": f"balanced_vs_previous_n{row.n}",
            "value": row.jensen,
            "detail": f"recursion chain {row.recursion_chain},"
                      f" published chain {row.published_chain}",
        })
    _emit(config.fmt, "crossover", rows)
    return EXIT_OK


def cmd_arcs(config: RunConfig) -> int:
    if config.construction is None:
        print("error: arcs requires --construction", file=sys.stderr)
        return EXIT_USAGE
    records = [r for r in catalog_mod.load_catalog(config.catalog_path)
               if r.id == config.construction]
    if not records:
        print(f"error: no record {config.construction!r}", file=sys.stderr)
        return EXIT_USAGE
    rec = records[0]
    result = catalog_mod.realize_exact(rec)
    if result.status != catalog_mod.EXACT_CERTIFIED:
        print(f"error: {rec.id} is {result.status}; arcs need a certified realization",
              file=sys.stderr)
        return EXIT_VERIFICATION
    graph = result.derived_graph()
    arcs = build_arc_multigraph(graph)
    stats = circle_crossing_stats(graph)
    proposition = check_proposition_inequality(graph)
    row = {
        "construction": rec.id,
        "n": graph.n,
        "m": graph.m,
        "arcs": arcs.arc_count,
        "max_multiplicity": arcs.max_multiplicity(),
        "low_degree_vertices": " ".join(map(str, arcs.low_degree_vertices)),
        "circle_intersections": stats.total_intersections,
        "tangencies": stats.tangencies,
        "at_vertices": stats.at_vertices,
        "budget": stats.budget,
        "arc_crossing_budget": stats.arc_crossing_budget,
        "proposition_lhs": proposition.lhs,
        "proposition_rhs": proposition.rhs,
        "proposition_holds": proposition.holds,
    }
    _emit(config.fmt, "arcs", [row])
    if config.figures:
        fig_dir = Path(config.figures)
        fig_dir.mkdir(parents=True, exist_ok=True)
        from .figures import render_construction

        render_construction(rec, fig_dir / f"{rec.id}_arcs.svg", circles=True,
                            caption=f"{rec.id}: {arcs.arc_count} arcs")
    return EXIT_OK


_CASE_NAMES = {
    "c6": case15_mod.C6,
    "p5p1": case15_mod.P5P1,
    "p4p2": case15_mod.P4P2,
    "p3p3": case15_mod.P3P3,
}


def cmd_case15(config: RunConfig) -> int:
    labels = list(_CASE_NAMES.values()) if config.case in (None, "all") \
        else [_CASE_NAMES[config.case]]
    rows = []
    failures = 0
    for label in labels:
        cert = case15_mod.certify_case(label)
        bad = cert.failed_facts()
        failures += len(bad)
        rows.append({
            "case": cert.case,
            "verdict": cert.verdict,
            "facts": len(cert.facts),
            "failed": len(bad),
            "notes": " | ".join(cert.notes),
        })
    if config.case in (None, "all"):
        chain = case15_mod.verify_observation_chain()
        failures += 0 if chain.consistent else 1
        rows.append({
            "case": "observations",
            "verdict": "consistent" if chain.consistent else "inconsistent",
            "facts": len(chain.edges_n_to_r_by_size) + 4,
            "failed": 0 if chain.consistent else 1,
            "notes": f"caps {chain.r_to_n_cap_total}; min inside {chain.min_edges_inside_n};"
                     f" by size {chain.edges_n_to_r_by_size}",
        })
        profile = case15_mod.derive_degree_profile(33, 38)
        rows.append({
            "case": "degree_profile",
            "verdict": "unique" if profile.unique else "ambiguous",
            "facts": len(profile.profiles),
            "failed": 0 if profile.unique else 1,
            "notes": f"m={profile.forced_m}; profiles {profile.profiles}",
        })
        failures += 0 if profile.unique else 1
    _emit(config.fmt, "case15", rows)
    return EXIT_OK if failures == 0 else EXIT_VERIFICATION


# ---------------------------------------------------------------------------
# argument parsing
# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("csv", "json"), default="csv")
    common.add_argument("--rng-seed", type=int, default=2024,
                        help="root seed for randomized verification paths")
    common.add_argument("--precision", type=int, default=30,
                        help="bits of precision for interval displays")
    common.add_argument("--catalog", help="alternate catalog file")

    parser = argparse.ArgumentParser(
        prog="unitdist",
        description="Exact bounds, constructions, and certificates for planar unit distances.",
    )
    sub = parser.add_subparsers(dest="subcommand", required=True)

    p_table = sub.add_parser("table", parents=[common],
                             help="upper-bound pipeline next to catalog lower bounds")
    p_table.add_argument("--from", dest="n_from", type=int)
    p_table.add_argument("--to", dest="n_to", type=int)
    p_table.add_argument("--seed", help="path to, or inline JSON of, known values")

    p_verify = sub.add_parser("verify", parents=[common],
                              help="tolerance-check and exactly realize the catalog")
    p_verify.add_argument("--only", help="single record id")
    p_verify.add_argument("--tol", type=Fraction, default=Fraction(1, 50))
    p_verify.add_argument("--figures", help="directory for coordinate-echo figures")

    p_bounds = sub.add_parser("bounds", parents=[common], help="evaluate one bound formula")
    p_bounds.add_argument("--formula", required=True)
    p_bounds.add_argument("--n", type=int, required=True)
    p_bounds.add_argument("--m", type=int)
    p_bounds.add_argument("--k", type=int)

    p_cross = sub.add_parser("crossover", parents=[common],
                             help="threshold constants and comparisons")
    p_cross.add_argument("--seed", help="alternate chain seed (path or inline JSON)")

    p_arcs = sub.add_parser("arcs", parents=[common],
                            help="arc multigraph statistics for one construction")
    p_arcs.add_argument("--construction", required=True)
    p_arcs.add_argument("--figures", help="directory for coordinate-echo figures")

    p_case = sub.add_parser("case15", parents=[common],
                            help="case certificates for the 15-point analysis")
    p_case.add_argument("--case", choices=sorted(_CASE_NAMES) + ["all"], default="all")
    p_case.add_argument("--all", action="store_const", const="all", dest="case")

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        seed = _parse_seed(getattr(args, "seed", None))
    except (json.JSONDecodeError, OSError, ValueError) as exc:
        print(f"error: bad seed: {exc}", file=sys.stderr)
        return EXIT_USAGE
    config = RunConfig(
        subcommand=args.subcommand,
        n_from=getattr(args, "n_from", None),
        n_to=getattr(args, "n_to", None),
        seed=seed,
        tol=getattr(args, "tol", Fraction(1, 50)),
        fmt=args.format,
        rng_seed=args.rng_seed,
        precision=args.precision,
        only=getattr(args, "only", None),
        construction=getattr(args, "construction", None),
        case=getattr(args, "case", None),
        formula=getattr(args, "formula", None),
        n=getattr(args, "n", None),
        m=getattr(args, "m", None),
        k=getattr(args, "k", None),
        figures=getattr(args, "figures", None),
        catalog_path=args.catalog,
    )
    handlers = {
        "table": cmd_table,
        "verify": cmd_verify,
        "bounds": cmd_bounds,
        "crossover": cmd_crossover,
        "arcs": cmd_arcs,
        "case15": cmd_case15,
    }
    try:
        return handlers[config.subcommand](config)
    except (catalog_mod.CatalogError, case15_mod.CaseAnalysisError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VERIFICATION


if __name__ == "__main__":
    sys.exit(main())
