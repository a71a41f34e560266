"""Command-line front end: ``scx <command> ...``.

Exit status is 0 when every requested check passes, 1 when a verification
fails and 2 for usage or input errors.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import replace
from pathlib import Path
from typing import Any, Callable, Optional, Sequence

import numpy as np

from . import generators as gen
from .cochain import KINDS, WEIGHTINGS, laplacian, relative_laplacian
from .complex import proper_difference
from .errors import ScxError
from .interlacing import (
    SLACK_TOL,
    InclusionReport,
    InterlacingReport,
    verify_collapse,
    verify_contraction,
    verify_courant_weyl,
    verify_covering,
    verify_deletion,
    verify_max_bound,
    verify_ratio_bounds,
    verify_relative,
    verify_simplicial_map,
    verify_strong_cover_inclusion,
)
from .io import ComplexDocument, parse_complex_document, parse_map, serialize
from .spectra import DEFAULT_TOL
from .transforms import (
    ContractionSpec,
    apply_map,
    covering_degree,
    elementary_collapse,
    elementary_contraction,
    is_covering,
    is_strong_covering,
    strong_covering_evidence,
)

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2
FLAVORS = ("combinatorial", "normalized")


class UsageError(Exception):
    pass


def fmt(x: float) -> str:
    """Nine significant digits; values within 1e-12 of zero print as 0."""
    x = float(x)
    if abs(x) < 1e-12:
        x = 0.0
    return format(x, ".9g")


def _env_float(name: str, default: float) -> float:
    raw = os.environ.get(name)
    if raw is None:
        return default
    try:
        return float(raw)
    except ValueError:
        raise UsageError(f"{name}={raw!r} is not a number") from None


def _env_int(name: str, default: int) -> int:
    raw = os.environ.get(name)
    if raw is None:
        return default
    try:
        return int(raw)
    except ValueError:
        raise UsageError(f"{name}={raw!r} is not an integer") from None


def _face(doc: ComplexDocument, text: str):
    return doc.face_from_names([t for t in text.split(",") if t])


def _emit(args, payload: dict[str, Any], human: Callable[[], None]) -> None:
    if args.json:
        json.dump(payload, sys.stdout, indent=2, sort_keys=True)
        sys.stdout.write("\n")
    else:
        human()


def _print_report(report, label: str = "") -> None:
    d = report.to_dict()
    head = label or d["theorem"]
    print(f"{head}: {'PASS' if report.passed else 'FAIL'}")
    if isinstance(report, InclusionReport):
        print(f"  strong covering: {report.strong}")
        if report.evidence:
            print(f"  evidence: {report.evidence}")
        print("  source spectrum: " + " ".join(fmt(x) for x in report.source_spectrum))
        print("  target spectrum: " + " ".join(fmt(x) for x in report.target_spectrum))
        print(f"  inclusion (tol {report.tol:g}): {report.contained}")
        return
    if d["shifts"]:
        print("  shifts: " + ", ".join(f"{k}={v}" for k, v in d["shifts"].items()))
    print(f"  tolerance: {report.tol:g}   min slack: "
          + ("n/a" if d["min_slack"] is None else fmt(d["min_slack"])))
    for note in report.notes:
        print(f"  note: {note}")
    print(f"  {'k':>3} {'lower':>14} {'theta_k':>14} {'upper':>14}  ok")
    for r in report.records:
        lo = "-" if r.lower is None else f"{fmt(r.lower)}[{r.lower_index}]"
        up = "-" if r.upper is None else f"{fmt(r.upper)}[{r.upper_index}]"
        print(f"  {r.k:>3} {lo:>14} {fmt(r.theta):>14} {up:>14}  {'yes' if r.passed else 'NO'}")


def _report_exit(args, report, label: str = "") -> int:
    _emit(args, report.to_dict(), lambda: _print_report(report, label))
    return EXIT_OK if report.passed else EXIT_FAIL


# --- plain commands ----------------------------------------------------

def cmd_spectrum(args) -> int:
    doc = parse_complex_document(args.complex)
    lap = laplacian(doc.complex, args.dim, args.op, args.weighting)
    spec = lap.spectrum(tol=args.tol)
    payload = {"dim": args.dim, "op": args.op, "weighting": args.weighting,
               "tol": args.tol, "eigenvalues": [float(fmt(x)) for x in spec.values]}
    _emit(args, payload, lambda: print(" ".join(fmt(x) for x in spec.values)))
    return EXIT_OK


def _matrix_rows(lap):
    return [[str(x) for x in row] for row in lap.exact]


def _print_matrix(doc: ComplexDocument, lap) -> None:
    names = ["".join(doc.face_names(f)) if all(len(n) == 1 for n in doc.face_names(f))
             else "-".join(doc.face_names(f)) for f in lap.basis]
    rows = _matrix_rows(lap)
    width = max([len(n) for n in names] + [len(x) for r in rows for x in r] + [1])
    print(" " * (width + 1) + " ".join(n.rjust(width) for n in names))
    for n, r in zip(names, rows):
        print(n.rjust(width) + " " + " ".join(x.rjust(width) for x in r))


def _matrix_payload(doc: ComplexDocument, lap) -> dict[str, Any]:
    return {"dim": lap.n, "op": lap.kind, "weighting": lap.weighting,
            "basis": [doc.face_names(f) for f in lap.basis], "matrix": _matrix_rows(lap)}


def cmd_laplacian(args) -> int:
    doc = parse_complex_document(args.complex)
    lap = laplacian(doc.complex, args.dim, args.op, args.weighting)
    _emit(args, _matrix_payload(doc, lap), lambda: _print_matrix(doc, lap))
    return EXIT_OK


def cmd_relative(args) -> int:
    doc = parse_complex_document(args.complex)
    sub = parse_complex_document(args.subcomplex)
    K0 = _reindex(sub, doc)
    lap = relative_laplacian(doc.complex, K0, args.dim, args.op, args.weighting)
    _emit(args, _matrix_payload(doc, lap), lambda: _print_matrix(doc, lap))
    return EXIT_OK


def _reindex(sub: ComplexDocument, parent: ComplexDocument):
    """Express ``sub`` in the vertex ids of ``parent`` (matching by name)."""
    from .complex import _from_face_set

    lab = sub.labels
    out = {}
    for f, w in sub.complex.weights.items():
        out[parent.face_from_names([lab[v] for v in f])] = w
    if not out:
        return gen.EMPTY
    return _from_face_set(out, sub.complex.degenerate_allowed)


def cmd_diff(args) -> int:
    doc = parse_complex_document(args.complex)
    H = _reindex(parse_complex_document(args.subcomplex), doc)
    L = proper_difference(doc.complex, H)
    text = serialize(L, doc.labels)
    sys.stdout.write(text)
    return EXIT_OK


def _load_map(args):
    src = parse_complex_document(args.source) if getattr(args, "source", None) else None
    tgt = parse_complex_document(args.target) if getattr(args, "target", None) else None
    return parse_map(args.map, src, tgt)


def _labellers(mdoc):
    def render(doc):
        return lambda face: "{" + ",".join(doc.face_names(face)) + "}"
    return render(mdoc.source), render(mdoc.target)


def cmd_cover(args) -> int:
    mdoc = _load_map(args)
    phi = mdoc.map
    covering = is_covering(phi)
    strong = covering and is_strong_covering(phi)
    degree = None
    if strong:
        try:
            degree = covering_degree(phi)
        except ScxError:
            degree = None
    payload = {"covering": covering, "strong": strong, "degree": degree,
               "evidence": strong_covering_evidence(phi, *_labellers(mdoc))}

    def human():
        print(f"covering: {covering}")
        print(f"strong covering: {strong}")
        if degree is not None:
            print(f"degree: {degree}")
        if payload["evidence"]:
            print(f"evidence: {payload['evidence']}")
    _emit(args, payload, human)
    return EXIT_OK


def cmd_map(args) -> int:
    mdoc = _load_map(args)
    image = apply_map(mdoc.map, args.rule)
    sys.stdout.write(serialize(image, mdoc.target.labels))
    return EXIT_OK


def _contraction_spec(doc: ComplexDocument, args) -> ContractionSpec:
    return ContractionSpec(_face(doc, args.fbar), _face(doc, args.face), _face(doc, args.face_prime))


def cmd_contract(args) -> int:
    doc = parse_complex_document(args.complex)
    res = elementary_contraction(doc.complex, _contraction_spec(doc, args))
    if args.json:
        payload = {"type": res.spec.kind, "m": res.spec.pairs, "reducible": res.spec.reducible,
                   "complex": json.loads(serialize(res.complex, doc.labels))}
        _emit(args, payload, lambda: None)
    else:
        print(f"# type ({res.spec.kind}), m = {res.spec.pairs}"
              + (", reducible to collapses" if res.spec.reducible else ""))
        sys.stdout.write(serialize(res.complex, doc.labels))
    return EXIT_OK


def cmd_collapse(args) -> int:
    doc = parse_complex_document(args.complex)
    out = elementary_collapse(doc.complex, _face(doc, args.coface), _face(doc, args.free))
    sys.stdout.write(serialize(out, doc.labels))
    return EXIT_OK


# --- verify ---------------------------------------------------------------

def verify_main(args) -> int:
    kind = args.kind
    tol = args.tol
    if kind in ("deletion", "ratio", "courant-weyl"):
        doc = parse_complex_document(args.complex)
        H = _reindex(parse_complex_document(args.subcomplex), doc)
        if kind == "deletion":
            rep = verify_deletion(doc.complex, H, args.dim, args.weighting, tol)
        elif kind == "ratio":
            rep = verify_ratio_bounds(doc.complex, H, args.dim, tol)
        else:
            rep = verify_courant_weyl(doc.complex, H, args.dim, tol)
        return _report_exit(args, rep)
    if kind == "max-bound":
        doc = parse_complex_document(args.complex)
        return _report_exit(args, verify_max_bound(doc.complex, args.weighting, tol))
    if kind == "cover":
        mdoc = _load_map(args)
        phi = mdoc.map
        if args.strong:
            rep = verify_strong_cover_inclusion(phi, args.dim, args.flavor)
            if rep.evidence:
                rep = replace(rep, evidence=strong_covering_evidence(phi, *_labellers(mdoc)))
            return _report_exit(args, rep)
        return _report_exit(args, verify_covering(phi, args.dim, args.weighting, tol))
    if kind == "map":
        phi = _load_map(args).map
        return _report_exit(args, verify_simplicial_map(phi, args.dim, args.rule, tol))
    if kind == "contract":
        doc = parse_complex_document(args.complex)
        return _report_exit(args, verify_contraction(doc.complex, _contraction_spec(doc, args),
                                                     args.flavor, tol))
    if kind == "collapse":
        doc = parse_complex_document(args.complex)
        pair = (_face(doc, args.coface), _face(doc, args.free))
        return _report_exit(args, verify_collapse(doc.complex, pair, args.flavor, tol))
    if kind == "relative":
        doc = parse_complex_document(args.complex)
        K0 = _reindex(parse_complex_document(args.subcomplex), doc)
        return _report_exit(args, verify_relative(doc.complex, K0, args.dim, args.weighting, tol))
    if kind == "random":
        return verify_random(args)
    raise UsageError(f"unknown verify kind {kind!r}")


RANDOM_FAMILIES = {
    "deletion-raw": (lambda r: gen.random_deletion(r, "raw"),
                     lambda K, H, n, t: verify_deletion(K, H, n, "raw", t)),
    "deletion-combinatorial": (lambda r: gen.random_deletion(r, "combinatorial"),
                               lambda K, H, n, t: verify_deletion(K, H, n, "combinatorial", t)),
    "deletion-normalized": (lambda r: gen.random_deletion(r, "normalized"),
                            lambda K, H, n, t: verify_deletion(K, H, n, "normalized", t)),
    "ratio": (lambda r: gen.random_deletion(r, "raw"), verify_ratio_bounds),
    "courant-weyl": (gen.random_courant_weyl, verify_courant_weyl),
    "covering": (lambda r: (gen.random_covering(r), int(r.integers(0, 2))),
                 lambda phi, n, t: verify_covering(phi, min(n, phi.source.dim), "raw", t)),
    "map-i": (lambda r: gen.random_simplicial_map(r, "i"),
              lambda phi, n, t: verify_simplicial_map(phi, n, "i", t)),
    "map-ii": (lambda r: gen.random_simplicial_map(r, "ii"),
               lambda phi, n, t: verify_simplicial_map(phi, n, "ii", t)),
    "contraction-i": (lambda r: gen.random_contraction(r, "i"),
                      lambda K, s, t: verify_contraction(K, s, "combinatorial", t)),
    "contraction-ii": (lambda r: gen.random_contraction(r, "ii"),
                       lambda K, s, t: verify_contraction(K, s, "combinatorial", t)),
    "collapse": (gen.random_collapse, lambda K, p, t: verify_collapse(K, p, "combinatorial", t)),
    "relative": (gen.random_relative, lambda K, K0, n, t: verify_relative(K, K0, n, "raw", t)),
}


def verify_random(args) -> int:
    family = args.family
    if family not in RANDOM_FAMILIES:
        raise UsageError(f"unknown family {family!r}; choose from {', '.join(RANDOM_FAMILIES)}")
    make, check = RANDOM_FAMILIES[family]
    rng = np.random.default_rng(args.seed)
    failures, worst = 0, float("inf")
    for _ in range(args.count):
        rep = check(*make(rng), args.tol)
        failures += not rep.passed
        worst = min(worst, rep.min_slack)
    payload = {"family": family, "count": args.count, "seed": args.seed, "failures": failures,
               "min_slack": None if worst == float("inf") else worst, "tol": args.tol,
               "passed": failures == 0}
    _emit(args, payload, lambda: print(
        f"{family}: {args.count} instances, seed {args.seed}, failures {failures}, "
        f"min slack {fmt(worst) if worst != float('inf') else 'n/a'} (tol {args.tol:g})"))
    return EXIT_OK if failures == 0 else EXIT_FAIL


def cmd_selftest(args) -> int:
    from .fixtures import run_selftest

    results = run_selftest()
    ok = all(passed for _, passed, _ in results)
    payload = {"passed": ok, "checks": [{"name": n, "passed": p, "detail": d} for n, p, d in results]}

    def human():
        for name, passed, detail in results:
            print(f"[{'PASS' if passed else 'FAIL'}] {name}" + (f"  ({detail})" if detail else ""))
        print(f"{sum(p for _, p, _ in results)}/{len(results)} checks passed")
    _emit(args, payload, human)
    return EXIT_OK if ok else EXIT_FAIL


# --- parser ---------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="structured output")
    common.add_argument("--tol", type=float, default=None,
                        help="comparison tolerance (env SCX_TOL)")
    common.add_argument("--seed", type=int, default=None, help="random seed (env SCX_SEED)")

    p = argparse.ArgumentParser(prog="scx", description="Weighted simplicial complex spectra and interlacing checks.")
    sub = p.add_subparsers(dest="command", required=True)

    def lap_opts(sp, default_op="up"):
        sp.add_argument("--dim", type=int, default=0)
        sp.add_argument("--op", choices=KINDS, default=default_op)
        sp.add_argument("--weighting", choices=WEIGHTINGS, default="raw")

    sp = sub.add_parser("spectrum", parents=[common], help="eigenvalues of a Laplacian")
    sp.add_argument("complex")
    lap_opts(sp)
    sp.set_defaults(func=cmd_spectrum)

    sp = sub.add_parser("laplacian", parents=[common], help="exact Laplacian matrix")
    sp.add_argument("complex")
    lap_opts(sp)
    sp.set_defaults(func=cmd_laplacian)

    sp = sub.add_parser("diff", parents=[common], help="proper difference K - H")
    sp.add_argument("complex")
    sp.add_argument("subcomplex")
    sp.set_defaults(func=cmd_diff)

    def map_opts(sp):
        sp.add_argument("source", nargs="?")
        sp.add_argument("target", nargs="?")
        sp.add_argument("--map", required=True)

    sp = sub.add_parser("cover", parents=[common], help="covering / strong covering / degree")
    map_opts(sp)
    sp.set_defaults(func=cmd_cover)

    sp = sub.add_parser("map", parents=[common], help="image complex with induced weights")
    map_opts(sp)
    sp.add_argument("--rule", choices=("i", "ii"), default="ii")
    sp.set_defaults(func=cmd_map)

    def contraction_opts(sp):
        sp.add_argument("--fbar", required=True, help="comma-separated vertex names")
        sp.add_argument("--face", required=True)
        sp.add_argument("--face-prime", required=True)

    sp = sub.add_parser("contract", parents=[common], help="elementary contraction")
    sp.add_argument("complex")
    contraction_opts(sp)
    sp.set_defaults(func=cmd_contract)

    def collapse_opts(sp):
        sp.add_argument("--coface", required=True)
        sp.add_argument("--free", required=True)

    sp = sub.add_parser("collapse", parents=[common], help="elementary collapse")
    sp.add_argument("complex")
    collapse_opts(sp)
    sp.set_defaults(func=cmd_collapse)

    sp = sub.add_parser("relative", parents=[common], help="relative Laplacian of (K, K0)")
    sp.add_argument("complex")
    sp.add_argument("subcomplex")
    lap_opts(sp)
    sp.set_defaults(func=cmd_relative)

    sp = sub.add_parser("selftest", parents=[common], help="run the built-in fixtures")
    sp.set_defaults(func=cmd_selftest)

    vp = sub.add_parser("verify", help="run an interlacing check")
    vsub = vp.add_subparsers(dest="kind", required=True)
    for kind in ("deletion", "ratio", "courant-weyl"):
        sp = vsub.add_parser(kind, parents=[common])
        sp.add_argument("complex")
        sp.add_argument("subcomplex")
        sp.add_argument("--dim", type=int, default=0)
        if kind == "deletion":
            sp.add_argument("--weighting", choices=WEIGHTINGS, default="raw")
    sp = vsub.add_parser("max-bound", parents=[common])
    sp.add_argument("complex")
    sp.add_argument("--weighting", choices=WEIGHTINGS, default="raw")
    sp = vsub.add_parser("cover", parents=[common])
    map_opts(sp)
    sp.add_argument("--dim", type=int, default=0)
    sp.add_argument("--strong", action="store_true", help="check spectrum inclusion")
    sp.add_argument("--flavor", choices=FLAVORS, default="combinatorial")
    sp.add_argument("--weighting", choices=WEIGHTINGS, default="raw")
    sp = vsub.add_parser("map", parents=[common])
    map_opts(sp)
    sp.add_argument("--dim", type=int, default=0)
    sp.add_argument("--rule", choices=("i", "ii"), default="ii")
    sp = vsub.add_parser("contract", parents=[common])
    sp.add_argument("complex")
    contraction_opts(sp)
    sp.add_argument("--flavor", choices=FLAVORS, default="combinatorial")
    sp = vsub.add_parser("collapse", parents=[common])
    sp.add_argument("complex")
    collapse_opts(sp)
    sp.add_argument("--flavor", choices=FLAVORS, default="combinatorial")
    sp = vsub.add_parser("relative", parents=[common])
    sp.add_argument("complex")
    sp.add_argument("subcomplex")
    sp.add_argument("--dim", type=int, default=0)
    sp.add_argument("--weighting", choices=WEIGHTINGS, default="raw")
    sp = vsub.add_parser("random", parents=[common], help="randomized batch")
    sp.add_argument("family", choices=sorted(RANDOM_FAMILIES))
    sp.add_argument("--count", type=int, default=100)
    vp.set_defaults(func=verify_main)
    return p


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if exc.code is not None else EXIT_OK
    try:
        default_tol = SLACK_TOL if args.command == "verify" else DEFAULT_TOL
        if getattr(args, "tol", None) is None:
            args.tol = _env_float("SCX_TOL", default_tol)
        if getattr(args, "seed", None) is None:
            args.seed = _env_int("SCX_SEED", 0)
        if not hasattr(args, "json"):
            args.json = False
        return args.func(args)
    except (UsageError, ScxError, OSError, KeyError) as exc:
        print(f"scx: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
