"""Command-line front end: analyze, quiver, verify, construct.

Exit codes: 0 success, 1 a verification suite failed, 2 bad input.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Callable

import numpy as np

from .algebra import AlgebraPresentation, algebra_from_json, algebra_to_json, radical_oracle, validate
from .basic import verify_quiver_equality, verify_two_basics
from .constructions import (
    GroupAction,
    GradedProfile,
    QuiverSpec,
    matrix_algebra,
    paper_example,
    path_algebra,
    random_radical_graded,
    skew_group_algebra,
    triangular,
)
from .errors import AlgebraError, FormatError, NotApplicable, OracleLimit
from .exact_linalg import FieldSpec
from .graded import GradedAlgebra, associated_graded, gabriel_cover, graded_isomorphism, is_radical_graded
from .quiver import (
    Analysis,
    bimodule_rank,
    export_quiver,
    is_dense_subquiver,
    min_generators_oracle,
)
from .wedderburn import lift_idempotents, lifting_properties


class InputError(Exception):
    pass


# ---------------------------------------------------------------------------
# input


def _read_json(path: str):
    try:
        text = sys.stdin.read() if path == "-" else Path(path).read_text()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc}") from exc
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}: malformed JSON ({exc})") from exc


def load_algebra(path: str) -> tuple[AlgebraPresentation, GradedAlgebra | None]:
    doc = _read_json(path)
    try:
        A = algebra_from_json(doc)
    except (FormatError, ValueError, ZeroDivisionError) as exc:
        raise InputError(f"{path}: {exc}") from exc
    rep = validate(A)
    if not rep.ok:
        raise InputError(f"{path}: {rep.describe()}")
    G = None
    if isinstance(doc, dict) and "degrees" in doc:
        degrees = doc["degrees"]
        if not (isinstance(degrees, list) and len(degrees) == A.dim and all(isinstance(d, int) and d >= 0 for d in degrees)):
            raise InputError(f"{path}: field 'degrees' must list {A.dim} non-negative integers")
        G = GradedAlgebra(A, tuple(degrees))
        if not is_radical_graded(G):
            raise InputError(f"{path}: supplied degrees are not a radical grading")
    return A, G


def _emit(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def _dump(doc) -> str:
    return json.dumps(doc, indent=2) + "\n"


# ---------------------------------------------------------------------------
# commands


def cmd_analyze(args) -> int:
    A, _ = load_algebra(args.input)
    _emit(_dump(Analysis(A, args.seed).report()), args.output)
    return 0


def cmd_quiver(args) -> int:
    A, _ = load_algebra(args.input)
    an = Analysis(A, args.seed)
    q = an.natural_quiver if args.kind == "natural" else an.ordinary_quiver
    _emit(export_quiver(q, args.format), args.output)
    return 0


def _suite_core(A, G, args) -> dict:
    an = Analysis(A, args.seed)
    checks: dict = {}
    try:
        checks["radical_matches_oracle"] = radical_oracle(A) == an.radical
    except OracleLimit:
        checks["radical_matches_oracle"] = "skipped"
    W = an.wedderburn
    fam = W.complete_family()
    lifted = lift_idempotents(A, fam, W.projection, an.radical)
    props = lifting_properties(A, fam, lifted, W.projection)
    checks.update({f"lifting_{k}": v for k, v in props.items()})
    return checks


def _suite_prop12(A, G, args) -> dict:
    an = Analysis(A, args.seed)
    nat, ordi = an.natural_quiver, an.ordinary_quiver
    N, O = nat.matrix, ordi.matrix
    n = np.array(an.wedderburn.sizes, dtype=np.int64)
    nn = np.outer(n, n) if n.size else np.zeros((0, 0), dtype=np.int64)
    comps = an.components
    oracle_ok: bool | str = True
    tried = 0
    for c in comps.values():
        if c.dims == 0 or c.dims > args.oracle_limit:
            continue
        tried += 1
        if len(min_generators_oracle(c, args.oracle_limit, args.seed)) != bimodule_rank(c):
            oracle_ok = False
    return {
        "bounds_t_le_m_le_nnt": bool(np.all(N <= O) and np.all(O <= nn * N)),
        "natural_dense_in_ordinary": is_dense_subquiver(nat, ordi),
        "direct_sum_dims": sum(c.dims for c in comps.values()) == an.bimodule.dim,
        "block_count_equals_vertices": len(an.wedderburn.blocks) == nat.size == ordi.size,
        "basic_quivers_equal": (not an.is_basic) or nat.arrows == ordi.arrows,
        "rank_formula_matches_oracle": oracle_ok if tried else "skipped",
    }


def _suite_graded(A, G, args) -> dict:
    gr = associated_graded(A)
    gr2 = associated_graded(gr.presentation)
    checks = {
        "dim_gr_equals_dim": gr.dim == A.dim,
        "gr_is_radical_graded": is_radical_graded(gr),
        "gr_gr_identical": gr2.degrees == gr.degrees
        and bool(np.array_equal(gr2.presentation.table, gr.presentation.table)),
    }
    if G is not None:
        checks["supplied_grading_isomorphic_to_gr"] = graded_isomorphism(G) is not None
    return checks


def _suite_gabriel(A, G, args) -> dict:
    rep = gabriel_cover(G if G is not None else A, args.seed, truncate=args.truncate)
    return {"cover_verdict": rep.verdict, "report": rep.to_json()}


def _suite_basics(A, G, args) -> dict:
    target = G if G is not None else A
    two = verify_two_basics(target, args.seed)
    checks: dict = {"two_basics_verdict": two.verdict, "two_basics": two.to_json()}
    try:
        qe = verify_quiver_equality(target, args.seed)
        checks["quiver_equality_verdict"] = qe.verdict
    except NotApplicable as exc:
        checks["quiver_equality_verdict"] = f"not applicable: {exc}"
    return checks


SUITES: dict[str, Callable] = {
    "core": _suite_core,
    "prop12": _suite_prop12,
    "graded": _suite_graded,
    "gabriel": _suite_gabriel,
    "basics": _suite_basics,
}


def _failures(checks: dict) -> list[str]:
    return [k for k, v in checks.items() if v is False]


def cmd_verify(args) -> int:
    A, G = load_algebra(args.input)
    names = list(SUITES) if args.suite == "all" else [args.suite]
    summary: dict = {"suites": {}, "pass": True}
    for name in names:
        checks = SUITES[name](A, G, args)
        failed = _failures(checks)
        summary["suites"][name] = {"pass": not failed, "checks": checks}
        if failed and summary["pass"]:
            summary["pass"] = False
            summary["counterexample"] = {"suite": name, "check": failed[0], "algebra": algebra_to_json(A)}
    _emit(_dump(summary), args.output)
    return 0 if summary["pass"] else 1


def _field_from_args(args) -> FieldSpec:
    if args.rationals:
        return FieldSpec(None)
    try:
        return FieldSpec(args.char)
    except ValueError as exc:
        raise InputError(str(exc)) from exc


def cmd_construct(args) -> int:
    field = _field_from_args(args)
    kind = args.kind
    degrees = None
    if kind == "paper-example":
        A = paper_example(field).algebra
    elif kind == "matrix":
        A = matrix_algebra(args.n, field)
    elif kind == "triangular":
        A = triangular(args.n, field)
    elif kind == "path-algebra":
        doc = _spec_doc(args)
        q = QuiverSpec.from_json(doc)
        A = path_algebra(q, doc.get("relations", []), doc.get("max_len"), field)
    elif kind == "skew-group":
        doc = _spec_doc(args)
        if "quiver" in doc:
            qd = doc["quiver"]
            base = path_algebra(QuiverSpec.from_json(qd), qd.get("relations", []), qd.get("max_len"), field)
        elif "algebra" in doc:
            base = algebra_from_json(doc["algebra"])
            if base.field != field:
                raise InputError("embedded algebra lives over a different field than --char")
        else:
            raise InputError("skew-group spec needs a 'quiver' or an 'algebra'")
        if "action" not in doc:
            raise InputError("skew-group spec needs an 'action'")
        A = skew_group_algebra(base, GroupAction.from_json(base, doc["action"]))
    elif kind == "random-graded":
        doc = _spec_doc(args) if args.spec else {}
        prof = GradedProfile(
            tuple(doc.get("sizes", [1])),
            tuple(tuple(r) for r in doc.get("corner_counts", [[1]])),
            int(doc.get("L", 2)),
            int(doc.get("relations", 1)),
        )
        G = random_radical_graded(args.seed, prof, field)
        A, degrees = G.presentation, list(G.degrees)
    else:  # pragma: no cover - argparse restricts the choices
        raise InputError(f"unknown kind {kind}")
    rep = validate(A)
    if not rep.ok:
        raise AlgebraError(f"constructed algebra is invalid: {rep.describe()}")
    doc = algebra_to_json(A)
    if degrees is not None:
        doc["degrees"] = degrees
    _emit(_dump(doc), args.output)
    return 0


def _spec_doc(args) -> dict:
    if not args.spec:
        raise InputError(f"construct {args.kind} needs --spec FILE")
    doc = _read_json(args.spec)
    if not isinstance(doc, dict):
        raise InputError("spec must be a JSON object")
    return doc


# ---------------------------------------------------------------------------
# entry point


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="natquiver", description="Natural and ordinary quivers of finite-dimensional algebras.")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp):
        sp.add_argument("--seed", type=int, default=0, help="seed for randomized searches (default 0)")
        sp.add_argument("-o", "--output", help="write to this file instead of stdout")

    a = sub.add_parser("analyze", help="radical, blocks and both quivers as JSON")
    a.add_argument("input", help="algebra JSON file ('-' for stdin)")
    common(a)
    a.set_defaults(func=cmd_analyze)

    q = sub.add_parser("quiver", help="export the natural or ordinary quiver")
    q.add_argument("input")
    q.add_argument("--kind", choices=["natural", "ordinary"], default="natural")
    q.add_argument("--format", choices=["dot", "json"], default="dot")
    common(q)
    q.set_defaults(func=cmd_quiver)

    v = sub.add_parser("verify", help="run invariant suites; exit 1 on failure")
    v.add_argument("input")
    v.add_argument("--suite", choices=[*SUITES, "all"], default="all")
    v.add_argument("--truncate", type=int, default=None, help="tensor truncation L (default rl(A))")
    v.add_argument("--oracle-limit", type=int, default=24, help="largest component given to the generator oracle")
    common(v)
    v.set_defaults(func=cmd_verify)

    c = sub.add_parser("construct", help="write an algebra JSON file")
    c.add_argument("kind", choices=["paper-example", "path-algebra", "matrix", "triangular", "skew-group", "random-graded"])
    fld = c.add_mutually_exclusive_group()
    fld.add_argument("--char", type=int, default=5, help="prime characteristic (default 5)")
    fld.add_argument("--rationals", action="store_true", help="work over Q")
    c.add_argument("--spec", help="JSON spec for path-algebra, skew-group, random-graded")
    c.add_argument("--n", type=int, default=2, help="matrix size for matrix/triangular")
    common(c)
    c.set_defaults(func=cmd_construct)
    return p


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (AlgebraError, ValueError, KeyError, TypeError) as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
