"""Command-line front end: ``pinchlab <command> [options]``.

Exit status is 0 on success, 1 for bad input or an unmet precondition and 2
when a result fails its own verification.
"""

from __future__ import annotations

import argparse
import json
import sys
from itertools import combinations
from pathlib import Path

import numpy as np

from .diagram import Diagram, DiagramError, TangleWord, parse_pd, wirtinger
from .fixtures import (
    FAMILIES,
    KNOT_FAMILIES,
    SUM_CONSTRUCTIONS,
    census,
    census_entry,
    parse_census,
)
from .gluing import (
    DegeneracyError,
    PinchConsistencyError,
    WSolution,
    make_solution,
    propagate_pinch,
)
from .holonomy import (
    HolonomyError,
    VerificationError,
    normalize_rep,
    pinched_connected_sum,
    solve_parabolic_reps,
    transport,
)
from .invariants import identify
from .solver import SolverConfig, classify, solve
from .transform import PostconditionError, PreconditionError, insert_tangle, transfer_crossing_change
from .volume import volume, volume_report

# subsets of a pinched set tried when looking for R-related census knots
MAX_SUBSETS = 64


class UsageError(ValueError):
    pass


# -- argument helpers -----------------------------------------------------------

def _int_list(text: str) -> list[int]:
    try:
        return [int(t) for t in text.replace("{", "").replace("}", "").split(",") if t.strip()]
    except ValueError:
        raise UsageError(f"expected comma-separated integers, got {text!r}") from None


def _complex_list(text: str) -> list[complex]:
    try:
        return [complex(t.strip().replace("i", "j")) for t in text.split(",") if t.strip()]
    except ValueError:
        raise UsageError(f"expected comma-separated numbers, got {text!r}") from None


def _diagram(args) -> Diagram:
    given = [x for x in (args.knot, args.pd, args.diagram) if x]
    if len(given) != 1:
        raise UsageError("give exactly one of --knot, --pd, --diagram")
    if args.knot:
        return census_entry(args.knot).diagram()
    if args.pd:
        return parse_pd(args.pd)
    return Diagram.from_json(Path(args.diagram).read_text())


def _solution(args, d: Diagram) -> WSolution:
    if args.solution:
        data = json.loads(Path(args.solution).read_text())
        data = data.get("solution", data)
        w = WSolution.from_dict(data).w
        if len(w) != len(d.regions):
            raise UsageError("solution length does not match the diagram's regions")
        return make_solution(d, w, args.tol)
    if args.family_params is None:
        raise UsageError("a solution is needed: pass --family-params or --solution")
    name = args.family or args.knot
    family = FAMILIES.get(name) or KNOT_FAMILIES.get(name)
    if family is None:
        raise UsageError(
            f"no parametric solution for {name!r}; families: {', '.join(sorted(FAMILIES))}"
        )
    if family.diagram.to_dict() != d.to_dict():
        raise UsageError(f"family {family.name} belongs to a different diagram")
    w = family.evaluate(_complex_list(args.family_params))
    return make_solution(d, w, args.tol)


def _describe(d: Diagram, sol: WSolution) -> WSolution:
    return WSolution(
        sol.w,
        sol.residual_norm,
        sol.pinched,
        sol.tolerance,
        volume(d, sol.w),
        classify(d, sol),
        sol.meta,
    )


def _solver_config(args) -> SolverConfig:
    return SolverConfig(restarts=args.restarts, seed=args.seed, accept_tol=args.tol)


def _fmt_set(s) -> str:
    return "{" + ",".join(str(k) for k in sorted(s)) + "}"


def _fmt_w(w) -> str:
    return "  ".join(f"{z.real:+.6g}{z.imag:+.6g}i" for z in w)


# -- commands -------------------------------------------------------------------

def cmd_validate(args):
    d = _diagram(args)
    pres = wirtinger(d)
    summary = {
        "crossings": d.n,
        "regions": len(d.regions),
        "euler_ok": len(d.regions) == d.n + 2,
        "signs": list(d.signs),
        "writhe": int(sum(d.signs)),
        "outer": d.outer,
        "generators": len(pres.generators),
    }
    if args.format == "json":
        return d.to_dict()
    lines = [f"{k}: {v}" for k, v in summary.items()]
    for r in d.regions:
        corners = " ".join(f"{k}{l}" for k, l in r.corners)
        lines.append(f"r_{r.id}: {corners}")
    return "\n".join(lines)


def cmd_solve(args):
    d = _diagram(args)
    sols = solve(d, _solver_config(args))
    if args.format == "json":
        return [s.to_dict() for s in sols]
    lines = [f"{len(sols)} solution(s)"]
    for s in sols:
        lines.append(
            f"volume {s.volume:+.9f}  {s.classification:<18} pinched {_fmt_set(s.pinched)}"
            f"  residual {s.residual_norm:.1e}"
        )
    return "\n".join(lines)


def cmd_pinch(args):
    d = _diagram(args)
    sol = _describe(d, _solution(args, d))
    if args.format == "json":
        out = sol.to_dict()
        out["propagated"] = sorted(propagate_pinch(d, sol.pinched))
        return out
    return (
        f"pinched {_fmt_set(sol.pinched)}\nclassification {sol.classification}\n"
        f"residual {sol.residual_norm:.2e}"
    )


def _pair(d: Diagram, sol: WSolution, args, extra: str = ""):
    sol = _describe(d, sol)
    if args.format == "json":
        return {"diagram": d.to_dict(), "solution": sol.to_dict()}
    pd = " ".join(f"X[{','.join(map(str, x))}]" for x in d.pd)
    return (
        f"{extra}diagram {pd}\nregions {len(d.regions)}\nresidual {sol.residual_norm:.2e}\n"
        f"pinched {_fmt_set(sol.pinched)}\nvolume {sol.volume:+.9f}\nw {_fmt_w(sol.w)}"
    )


def cmd_change(args):
    d = _diagram(args)
    if not args.crossings:
        raise UsageError("--crossings is required")
    sol = _solution(args, d)
    dj, sol2 = transfer_crossing_change(d, sol, _int_list(args.crossings), args.tol)
    return _pair(dj, sol2, args)


def cmd_tangle(args):
    d = _diagram(args)
    ks = _int_list(args.crossings or "")
    if len(ks) != 1:
        raise UsageError("--crossings must name exactly one crossing")
    if not args.tangle:
        raise UsageError("--tangle is required, e.g. --tangle 2,-2,3")
    sol = _solution(args, d)
    new, sol2 = insert_tangle(d, sol, ks[0], TangleWord.parse(args.tangle), args.tol)
    ids = sol2.meta.get("tangle_crossings", [])
    return _pair(new, sol2, args, f"tangle crossings {_fmt_set(ids)}\n")


def _irreducible(d: Diagram):
    reps = [r for r in solve_parabolic_reps(d) if not r.is_abelian()]
    if not reps:
        raise VerificationError("no irreducible representation found")
    return reps[0]


def run_sum(name: str) -> dict:
    """Pinched connected-sum construction and the knots its two changes give."""
    c = SUM_CONSTRUCTIONS[name]
    d1, d2 = c.factors()
    rho = normalize_rep(_irreducible(d1), c.arc)
    rho2 = normalize_rep(_irreducible(d2), c.arc2)
    rep, ids, r = pinched_connected_sum(
        rho, c.arc, rho2, c.arc2, c.arc_b, c.arc_b2, c.region, c.over
    )
    table = {e.name: e.diagram() for e in census()}
    changes = []
    for k in ids:
        moved = transport(rep.diagram, rep, {k})
        changes.append(
            {
                "crossing": k,
                "knots": identify(moved.diagram, table),
                "relations_ok": bool(moved.verify(1e-9)),
                "rep": moved.to_dict(),
            }
        )
    return {
        "construction": name,
        "shift": [float(np.real(r)), float(np.imag(r))],
        "new_crossings": list(ids),
        "commuting": sorted(rep.commutation_profile()),
        "diagram": rep.diagram.to_dict(),
        "rep": rep.to_dict(),
        "changes": changes,
    }


def cmd_sum(args):
    names = [args.construction] if args.construction else sorted(SUM_CONSTRUCTIONS)
    for n in names:
        if n not in SUM_CONSTRUCTIONS:
            raise UsageError(f"unknown construction {n!r}; known: {', '.join(SUM_CONSTRUCTIONS)}")
    results = [run_sum(n) for n in names]
    if args.format == "json":
        return results
    lines = []
    for res in results:
        r = complex(*res["shift"])
        knots = ", ".join(
            f"c_{ch['crossing']} -> {'/'.join(ch['knots']) or '?'}" for ch in res["changes"]
        )
        lines.append(
            f"{res['construction']}: r = {r.real:+.6g}{r.imag:+.6g}i, "
            f"new crossings {_fmt_set(res['new_crossings'])}, {knots}"
        )
    return "\n".join(lines)


def cmd_volume(args):
    d = _diagram(args)
    if args.family_params is not None or args.solution:
        w = _solution(args, d).w
    else:
        sols = solve(d, _solver_config(args))
        if not sols:
            raise PostconditionError("solver found no solution")
        w = max(sols, key=lambda s: s.volume).w
    report = volume_report(d, w)
    if args.format == "json":
        return report
    per = " ".join(f"{v:+.6f}" for v in report["per_crossing"])
    return f"volume {report['volume']:+.9f}\nper crossing {per}"


def census_report(entries, cfg: SolverConfig) -> dict:
    """Solve every entry and list R-related pairs among the entries."""
    entries = sorted(entries, key=lambda e: e.name)
    table = {e.name: e.diagram() for e in entries}
    rows, edges = [], []
    for e in entries:
        d = table[e.name]
        row = {"name": e.name, "crossings": d.n, "regions": len(d.regions)}
        try:
            sols = solve(d, cfg)
        except (DiagramError, DegeneracyError, ValueError) as exc:
            row["error"] = str(exc)
            rows.append(row)
            continue
        found = {s.pinched for s in sols}
        row.update(
            solutions=len(sols),
            classifications=sorted({s.classification for s in sols}),
            pinched_sets=sorted(sorted(p) for p in found if p),
            volumes=sorted({round(s.volume, 6) + 0.0 for s in sols}),
            expected_found=all(p in found for p in e.pinched_sets)
            and len(d.regions) == e.regions,
            error=None,
        )
        rows.append(row)
        seen = set()
        for s in sols:
            if s.classification != "partially_abelian":
                continue
            subsets = [
                set(J)
                for size in range(1, len(s.pinched) + 1)
                for J in combinations(sorted(s.pinched), size)
            ][:MAX_SUBSETS]
            for J in subsets:
                dj, _ = transfer_crossing_change(d, s, J, cfg.accept_tol)
                for other in identify(dj, table):
                    key = (e.name, other, tuple(sorted(J)))
                    if key not in seen:
                        seen.add(key)
                        edges.append(
                            {"from": e.name, "to": other, "crossings": sorted(J),
                             "volume": round(float(s.volume), 6)}
                        )
    return {"rows": rows, "r_related": edges}


def cmd_census(args):
    if args.census_file:
        entries = parse_census(Path(args.census_file).read_text())
    else:
        entries = list(census())
    if args.knot:
        wanted = set(args.knot)
        unknown = wanted - {e.name for e in entries}
        if unknown:
            raise UsageError(f"unknown knot(s): {', '.join(sorted(unknown))}")
        entries = [e for e in entries if e.name in wanted]
    report = census_report(entries, _solver_config(args))
    if args.format == "json":
        return report
    lines = []
    for row in report["rows"]:
        if row.get("error"):
            lines.append(f"{row['name']}: error {row['error']}")
            continue
        sets = " ".join(_fmt_set(p) for p in row["pinched_sets"]) or "-"
        vols = ", ".join(f"{v:g}" for v in row["volumes"])
        lines.append(
            f"{row['name']}: {row['solutions']} solution(s); pinched {sets}; volumes {vols}"
            + ("" if row["expected_found"] else "  [expected data missing]")
        )
    for e in report["r_related"]:
        lines.append(f"R: {e['from']} -> {e['to']} via {_fmt_set(e['crossings'])}")
    return "\n".join(lines)


COMMANDS = {
    "validate": cmd_validate,
    "solve": cmd_solve,
    "pinch": cmd_pinch,
    "change": cmd_change,
    "tangle": cmd_tangle,
    "sum": cmd_sum,
    "volume": cmd_volume,
    "census": cmd_census,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="pinchlab",
        description="Region-variable gluing equations, pinched crossings and their surgeries.",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        p = sub.add_parser(name)
        if name == "census":
            p.add_argument("--knot", action="append", help="restrict to these census names")
            p.add_argument("--census-file", help="census table to use instead of the bundled one")
        elif name != "sum":
            p.add_argument("--knot", help="census knot name, e.g. 4_1")
            p.add_argument("--pd", help='PD code, e.g. "X[1,4,2,5] X[3,6,4,1] X[5,2,6,3]"')
            p.add_argument("--diagram", help="diagram JSON file")
        if name in ("pinch", "change", "tangle", "volume"):
            p.add_argument("--family-params", help="parameters p,q,r of the knot's solution family")
            p.add_argument("--family", help="family name when a knot has several, e.g. 8_18'")
            p.add_argument("--solution", help="solution JSON file")
        if name in ("change", "tangle"):
            p.add_argument("--crossings", help="comma-separated crossing ids")
        if name == "tangle":
            p.add_argument("--tangle", help="tangle word, e.g. 2,-2,3")
        if name == "sum":
            p.add_argument("--construction", help=f"one of {', '.join(SUM_CONSTRUCTIONS)}")
        p.add_argument("--restarts", type=int, default=200)
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--tol", type=float, default=1e-10)
        p.add_argument("--format", choices=("text", "json"), default="text")
    return parser


def run(argv=None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    args = build_parser().parse_args(argv)
    try:
        result = COMMANDS[args.command](args)
    except (PostconditionError, VerificationError, PinchConsistencyError) as exc:
        print(f"verification failed: {exc}", file=err)
        return 2
    except (
        UsageError,
        PreconditionError,
        HolonomyError,
        DiagramError,
        DegeneracyError,
        ValueError,
        OSError,
    ) as exc:
        print(f"error: {exc}", file=err)
        return 1
    if isinstance(result, str):
        print(result, file=out)
    else:
        print(json.dumps(result, indent=2), file=out)
    return 0


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
