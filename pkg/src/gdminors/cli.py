"""Command-line front end.

Deterministic JSON on stdout (or --out), big integers as decimal strings.
Exit codes: 0 ok, 1 a cross-check disagreed, 2 invalid input, 3 a work
budget was exceeded.
"""

from __future__ import annotations

import argparse
import itertools
import json
import multiprocessing
import os
import sys
import warnings

from . import cmcheck, complexes, groebner, multiplicity
from .complexes import MinorsProblem
from .errors import (
    BadIndex,
    BudgetExceeded,
    CellIsZero,
    GDMinorsError,
    InvalidParameters,
    NotAFace,
    NotTriangleShape,
    RecursionBudget,
    ResultDegenerate,
    UniverseTooLarge,
    ValidationError,
    VertexClash,
)
from .gdmatrix import (
    GDMatrix,
    corners_l1,
    corners_l2,
    is_degenerate,
    is_unpinched,
    make_gd,
    make_triangles,
    parse_matrix_spec,
    triangle_d,
    triangle_u,
    unpinched_blocks,
)
from .stairs import longest_diagonal

EXIT_OK = 0
EXIT_DISAGREE = 1
EXIT_INPUT = 2
EXIT_BUDGET = 3

_INPUT_ERRORS = (
    ValidationError,
    InvalidParameters,
    BadIndex,
    CellIsZero,
    NotAFace,
    VertexClash,
    NotTriangleShape,
    ResultDegenerate,
)
_BUDGET_ERRORS = (UniverseTooLarge, BudgetExceeded, RecursionBudget)


def _int_list(text: str) -> list[int]:
    text = text.strip()
    if not text:
        return []
    return [int(x) for x in text.split(",")]


def _add_matrix_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--n", type=int)
    p.add_argument("--m", type=int)
    p.add_argument("--c", type=_int_list, default=None, help="L1 column heights, comma separated")
    p.add_argument("--d", type=_int_list, default=None, help="L2 column depths for the last columns, comma separated")
    p.add_argument("--t1", type=int, default=None, help="bottom-left triangle size")
    p.add_argument("--t2", type=int, default=None, help="top-right triangle size")
    p.add_argument("--spec", help="matrix spec JSON file")


def _add_common_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--out", help="write the JSON report to this file")
    p.add_argument("--pretty", action="store_true", help="indent the JSON output")
    p.add_argument("--jobs", type=int, default=None, help="parallel workers for sweeps (default: GDMINORS_JOBS or 1)")
    p.add_argument("--budget-cells", type=int, default=complexes.DEFAULT_CELL_BUDGET)
    p.add_argument("--budget-faces", type=int, default=complexes.DEFAULT_FACE_BUDGET)


def _matrix_from_args(args) -> GDMatrix:
    if args.spec:
        with open(args.spec, "r", encoding="utf-8") as fh:
            return parse_matrix_spec(json.load(fh))
    if args.n is None or args.m is None:
        raise ValidationError(["BadSpec: --n and --m (or --spec) are required"])
    has_cd = args.c is not None or args.d is not None
    has_t = args.t1 is not None or args.t2 is not None
    if has_cd and has_t:
        raise ValidationError(["BadSpec: give either --c/--d or --t1/--t2, not both"])
    if has_t:
        return make_triangles(args.n, args.m, args.t1 or 0, args.t2 or 0)
    return make_gd(args.n, args.m, args.c or (), args.d or ())


def _cells_json(cells) -> list[list[int]]:
    return [[c.row, c.col] for c in sorted(cells)]


def _emit(args, report: dict) -> None:
    text = json.dumps(report, indent=2 if args.pretty else None)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
    else:
        print(text)


def cmd_describe(args) -> int:
    M = _matrix_from_args(args)
    report = {
        "input": M.spec_dict(),
        "cells": len(M.cells),
        "corners_l1": _cells_json(corners_l1(M)),
        "corners_l2": _cells_json(corners_l2(M)),
        "unpinched": is_unpinched(M),
        "blocks": [b.spec_dict() for b in unpinched_blocks(M)],
    }
    if args.r is not None:
        P = MinorsProblem(M, args.r)
        report["r"] = args.r
        report["u_triangle"] = _cells_json(triangle_u(M, args.r - 1))
        report["d_triangle"] = _cells_json(triangle_d(M, args.r - 1))
        report["ideal_is_zero"] = longest_diagonal(M.cells) < P.r
    _emit(args, report)
    return EXIT_OK


def cmd_facets(args) -> int:
    M = _matrix_from_args(args)
    P = MinorsProblem(M, args.r)
    fs = complexes.facets(P, engine=args.engine, cell_budget=args.budget_cells)
    top = max(len(f) for f in fs)
    report = {
        "input": M.spec_dict(),
        "r": args.r,
        "facets": [_cells_json(f) for f in fs],
        "pure": len({len(f) for f in fs}) <= 1,
        "dimension": top - 1,
        "height": len(M.cells) - top,
    }
    _emit(args, report)
    return EXIT_OK


def cmd_fvector(args) -> int:
    M = _matrix_from_args(args)
    P = MinorsProblem(M, args.r)
    fv = complexes.f_vector(P, face_budget=args.budget_faces)
    report = {"input": M.spec_dict(), "r": args.r, "f_vector": fv}
    _emit(args, report)
    return EXIT_OK


def _is_triangle_matrix(M: GDMatrix) -> tuple[int, int] | None:
    t1, t2 = len(M.c), len(M.d)
    if M.c == tuple(range(t1, 0, -1)) and M.d == tuple(range(1, t2 + 1)):
        return t1, t2
    return None


def cmd_height(args) -> int:
    M = _matrix_from_args(args)
    P = MinorsProblem(M, args.r)
    tri = _is_triangle_matrix(M)
    report = {"input": M.spec_dict(), "r": args.r, "method": args.method}
    code = EXIT_OK
    if args.method in ("formula", "both") and tri is None:
        raise InvalidParameters("the height formula needs triangle ladders; use --method enum")
    if args.method in ("enum", "both"):
        h = complexes.height(P, cell_budget=args.budget_cells)
        report["height"] = h
        report["dimension"] = len(M.cells) - h - 1
    if args.method in ("formula", "both"):
        f = complexes.height_formula_triangles(M.n, M.m, tri[0], tri[1], args.r)
        report["formula"] = f
        if args.method == "formula":
            report["height"] = f
    if args.method == "both":
        report["agree"] = report["height"] == report["formula"]
        if not report["agree"]:
            code = EXIT_DISAGREE
    _emit(args, report)
    return code


def cmd_multiplicity(args) -> int:
    M = _matrix_from_args(args)
    P = MinorsProblem(M, args.r)
    tri = _is_triangle_matrix(M)
    report = {"input": M.spec_dict(), "r": args.r, "method": args.method}
    code = EXIT_OK
    if args.method in ("formula", "both") and tri is None:
        raise InvalidParameters("the multiplicity formula needs triangle ladders; use --method count")
    value = None
    if args.method in ("formula", "both"):
        value = multiplicity.multiplicity_formula(M.n, M.m, tri[0], tri[1], args.r)
        report["formula"] = str(value)
    if args.method in ("count", "both"):
        cnt = multiplicity.multiplicity_by_count(P, cell_budget=args.budget_cells)
        report["count"] = str(cnt)
        value = cnt if value is None else value
    if args.method == "both":
        report["agree"] = report["formula"] == report["count"]
        if not report["agree"]:
            code = EXIT_DISAGREE
    report["multiplicity"] = str(value)
    _emit(args, report)
    return code


def cmd_check(args) -> int:
    M = _matrix_from_args(args)
    P = MinorsProblem(M, args.r)
    report = {"input": M.spec_dict(), "r": args.r, "check": args.what}
    code = EXIT_OK
    if args.what == "pure":
        report["pure"] = complexes.is_pure(P, cell_budget=args.budget_cells)
        report["predicted"] = complexes.is_pure_predicted(P)
        if args.r == 2:
            report["agrees"] = report["pure"] == report["predicted"]
            if not report["agrees"]:
                code = EXIT_DISAGREE
    elif args.what == "cm":
        report["predicted"] = cmcheck.is_cm_predicted(P)
        K = cmcheck.complex_of(P, cell_budget=args.budget_cells)
        report["reisner"] = cmcheck.reisner_cm(K, face_budget=args.budget_homology)
        report["agrees"] = report["predicted"] == report["reisner"]
        if not report["agrees"]:
            code = EXIT_DISAGREE
    elif args.what == "vd":
        try:
            cert = cmcheck.vd_certificate_triangles(P)
            check = cmcheck.validate_certificate(P, cert, cell_budget=args.budget_cells)
            report["method"] = "certificate"
            report["certificate_valid"] = bool(check)
            report["vertex_decomposable"] = bool(check)
            if not check:
                report["failure"] = check.failure
                code = EXIT_DISAGREE
            if args.certificate:
                with open(args.certificate, "w", encoding="utf-8") as fh:
                    json.dump(cert, fh, indent=2)
                    fh.write("\n")
        except NotTriangleShape:
            K = cmcheck.complex_of(P, cell_budget=args.budget_cells)
            report["method"] = "search"
            report["vertex_decomposable"] = cmcheck.is_vertex_decomposable(
                K, vertex_budget=args.budget_vertices
            )
    elif args.what == "groebner":
        res = groebner.verify_groebner(
            P,
            skip_coprime=not args.no_coprime_skip,
            minor_budget=args.budget_minors,
        )
        report["groebner"] = res.ok
        report["pairs_checked"] = res.pairs_checked
        report["pairs_skipped_coprime"] = res.pairs_skipped_coprime
        if not res.ok:
            code = EXIT_DISAGREE
    _emit(args, report)
    return code


# ---------------------------------------------------------------------------
# sweeps


def _ladder_shapes(n: int, m: int):
    """All valid (c, d) ladder pairs for an n x m matrix."""
    def seqs():
        out = [()]
        for length in range(1, m):
            for comb in itertools.combinations_with_replacement(range(1, n), length):
                out.append(tuple(sorted(comb, reverse=True)))
        return out

    shapes = seqs()
    for c in shapes:
        for d in shapes:
            yield c, tuple(sorted(d))


def _sweep_instances(args) -> list[dict]:
    checks = args.checks.split(",") if args.checks else []
    out = []
    max_m = args.max_m or args.max_n
    for check in checks:
        if check in ("height", "multiplicity", "engines"):
            for n in range(args.min_n, args.max_n + 1):
                for m in range(args.min_n, max_m + 1):
                    for t1 in range(0, min(args.max_t, min(n, m) - 1) + 1):
                        for t2 in range(0, min(args.max_t, min(n, m) - 1) + 1):
                            for r in range(2, min(args.max_r, n, m) + 1):
                                out.append(
                                    {"check": check, "n": n, "m": m, "t1": t1, "t2": t2, "r": r}
                                )
        elif check in ("groebner", "cm"):
            for n in range(args.min_n, args.max_n + 1):
                for m in range(args.min_n, max_m + 1):
                    for c, d in _ladder_shapes(n, m):
                        for r in range(2, min(args.max_r, n, m) + 1):
                            out.append(
                                {"check": check, "n": n, "m": m, "c": list(c), "d": list(d), "r": r}
                            )
        else:
            raise InvalidParameters(f"unknown sweep check {check!r}")
    return out


def _run_sweep_instance(inst: dict) -> dict:
    check = inst["check"]
    row = dict(inst)
    try:
        if check in ("height", "multiplicity", "engines"):
            M = make_triangles(inst["n"], inst["m"], inst["t1"], inst["t2"])
            P = MinorsProblem(M, inst["r"])
            if longest_diagonal(M.cells) < P.r:
                row["ok"] = True
                row["skipped"] = "zero ideal"
                return row
            if check == "height":
                h = complexes.height(P)
                f = complexes.height_formula_triangles(
                    inst["n"], inst["m"], inst["t1"], inst["t2"], inst["r"]
                )
                row["height"] = h
                row["formula"] = f
                row["ok"] = h == f and complexes.is_pure(P)
            elif check == "multiplicity":
                cnt = multiplicity.multiplicity_by_count(P)
                f = multiplicity.multiplicity_formula(
                    inst["n"], inst["m"], inst["t1"], inst["t2"], inst["r"]
                )
                row["count"] = str(cnt)
                row["formula"] = str(f)
                row["ok"] = cnt == f
            else:
                a = complexes.facets(P, engine="general")
                b = complexes.facets(P, engine="paths")
                row["facets"] = len(a)
                row["ok"] = a == b
        else:
            M = make_gd(inst["n"], inst["m"], inst["c"], inst["d"])
            P = MinorsProblem(M, inst["r"])
            if check == "groebner":
                res = groebner.verify_groebner(P)
                row["pairs_checked"] = res.pairs_checked
                row["ok"] = res.ok
            else:
                if len(M.cells) > 12:
                    row["ok"] = True
                    row["skipped"] = "universe above 12 cells"
                    return row
                if is_degenerate(M) or longest_diagonal(M.cells) < P.r:
                    row["ok"] = True
                    row["skipped"] = "outside the characterization scope"
                    return row
                predicted = cmcheck.is_cm_predicted(P)
                actual = cmcheck.reisner_cm(cmcheck.complex_of(P))
                row["predicted"] = predicted
                row["reisner"] = actual
                row["ok"] = predicted == actual
    except _BUDGET_ERRORS as exc:
        row["ok"] = True
        row["skipped"] = f"budget: {exc}"
    return row


def cmd_sweep(args) -> int:
    instances = _sweep_instances(args)
    jobs = args.jobs or int(os.environ.get("GDMINORS_JOBS", "1"))
    if jobs > 1 and len(instances) > 1:
        with multiprocessing.Pool(jobs) as pool:
            rows = pool.map(_run_sweep_instance, instances)
    else:
        rows = [_run_sweep_instance(inst) for inst in instances]
    failures = sum(1 for row in rows if not row["ok"])
    report = {
        "checks": args.checks,
        "instances": len(rows),
        "failures": failures,
        "rows": rows,
    }
    _emit(args, report)
    return EXIT_DISAGREE if failures else EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="gdminors",
        description="Combinatorics of minor ideals of generalized diagonal matrices",
    )
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("describe", help="normalized ladders, universe, corners, blocks")
    _add_matrix_args(p)
    _add_common_args(p)
    p.add_argument("--r", type=int, default=None)
    p.set_defaults(func=cmd_describe)

    p = sub.add_parser("facets", help="enumerate the facets")
    _add_matrix_args(p)
    _add_common_args(p)
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--engine", choices=("auto", "general", "paths"), default="auto")
    p.set_defaults(func=cmd_facets)

    p = sub.add_parser("fvector", help="face counts by dimension")
    _add_matrix_args(p)
    _add_common_args(p)
    p.add_argument("--r", type=int, required=True)
    p.set_defaults(func=cmd_fvector)

    p = sub.add_parser("height", help="height of the minor ideal")
    _add_matrix_args(p)
    _add_common_args(p)
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--method", choices=("enum", "formula", "both"), default="enum")
    p.set_defaults(func=cmd_height)

    p = sub.add_parser("multiplicity", help="top face count (Hilbert multiplicity)")
    _add_matrix_args(p)
    _add_common_args(p)
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--method", choices=("formula", "count", "both"), default="both")
    p.set_defaults(func=cmd_multiplicity)

    p = sub.add_parser("check", help="pure / cm / vd / groebner verdicts")
    p.add_argument("what", choices=("pure", "cm", "vd", "groebner"))
    _add_matrix_args(p)
    _add_common_args(p)
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--certificate", help="write the decision tree to this JSON file")
    p.add_argument("--budget-vertices", type=int, default=cmcheck.DEFAULT_VERTEX_BUDGET)
    p.add_argument("--budget-minors", type=int, default=groebner.DEFAULT_MINOR_BUDGET)
    p.add_argument("--budget-homology", type=int, default=cmcheck.DEFAULT_FACE_BUDGET)
    p.add_argument("--no-coprime-skip", action="store_true", help="reduce coprime S-pairs too")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("sweep", help="run cross-check sweeps over parameter ranges")
    _add_common_args(p)
    p.add_argument("--min-n", type=int, default=2)
    p.add_argument("--max-n", type=int, required=True)
    p.add_argument("--max-m", type=int, default=None)
    p.add_argument("--max-t", type=int, default=2)
    p.add_argument("--max-r", type=int, default=3)
    p.add_argument("--checks", default="height,multiplicity")
    p.set_defaults(func=cmd_sweep)

    return ap


def main(argv=None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    try:
        with warnings.catch_warnings():
            warnings.simplefilter("ignore")
            return args.func(args)
    except _INPUT_ERRORS as exc:
        payload = {"error": {"code": type(exc).__name__, "message": str(exc)}}
        if isinstance(exc, ValidationError):
            payload["error"]["violations"] = exc.violations
        print(json.dumps(payload), file=sys.stderr)
        return EXIT_INPUT
    except _BUDGET_ERRORS as exc:
        print(
            json.dumps({"error": {"code": type(exc).__name__, "message": str(exc)}}),
            file=sys.stderr,
        )
        return EXIT_BUDGET


if __name__ == "__main__":
    sys.exit(main())
