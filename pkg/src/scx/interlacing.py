"""Executable interlacing checks.

Each verifier computes the two spectra involved in an interlacing statement,
the integer shifts that statement uses, pads the reference spectrum outside
its index range, and records the slack of every inequality.  Nothing is
asserted: callers inspect :attr:`InterlacingReport.passed`.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Optional, Sequence

import numpy as np

from .cochain import (
    apply_weighting,
    coboundary,
    is_normalized_at,
    normalize_weights,
    relative_laplacian,
    up_laplacian,
)
from .complex import (
    Simplex,
    WeightedComplex,
    is_pure,
    nonzero_part,
    proper_difference,
    skeleton,
)
from .errors import (
    HypothesisError,
    NotACovering,
    NotASubcomplex,
    NotPure,
    NotStrong,
)
from .spectra import eigenvalues, exact_rank, multiset_contains, padded_lookup
from .transforms import (
    ContractionSpec,
    SimplicialMap,
    apply_map,
    elementary_collapse,
    elementary_contraction,
    free_facet_of_reducible,
    is_covering,
    is_strong_covering,
    strong_covering_evidence,
)

SLACK_TOL = 1e-9
INCLUSION_TOL = 1e-7


@dataclass(frozen=True)
class IndexRecord:
    """One index k: ``lower <= theta_k <= upper`` with the padded lambda indices used.

    A side whose index is ``None`` was not checked for this k.
    """

    k: int
    theta: float
    lower_index: Optional[int]
    lower: Optional[float]
    upper_index: Optional[int]
    upper: Optional[float]
    lower_slack: Optional[float]
    upper_slack: Optional[float]
    tol: float = SLACK_TOL

    @property
    def lower_ok(self) -> bool:
        return self.lower_slack is None or self.lower_slack >= -self.tol

    @property
    def upper_ok(self) -> bool:
        return self.upper_slack is None or self.upper_slack >= -self.tol

    @property
    def passed(self) -> bool:
        return self.lower_ok and self.upper_ok

    def to_dict(self) -> dict[str, Any]:
        return {
            "k": self.k, "theta": self.theta,
            "lower_index": self.lower_index, "lower": self.lower,
            "upper_index": self.upper_index, "upper": self.upper,
            "lower_slack": self.lower_slack, "upper_slack": self.upper_slack,
            "passed": self.passed,
        }


@dataclass(frozen=True)
class InterlacingReport:
    theorem: str
    n: int
    shifts: dict[str, Any]
    records: tuple[IndexRecord, ...]
    lambdas: tuple[float, ...]
    thetas: tuple[float, ...]
    tol: float = SLACK_TOL
    notes: tuple[str, ...] = ()
    extra_ok: bool = True

    @property
    def lower_passed(self) -> bool:
        return all(r.lower_ok for r in self.records)

    @property
    def upper_passed(self) -> bool:
        return all(r.upper_ok for r in self.records)

    @property
    def passed(self) -> bool:
        return self.lower_passed and self.upper_passed and self.extra_ok

    @property
    def min_slack(self) -> float:
        slacks = [s for r in self.records for s in (r.lower_slack, r.upper_slack) if s is not None]
        return min(slacks) if slacks else float("inf")

    def failures(self) -> list[IndexRecord]:
        return [r for r in self.records if not r.passed]

    def to_dict(self) -> dict[str, Any]:
        ms = self.min_slack
        return {
            "theorem": self.theorem,
            "n": self.n,
            "passed": self.passed,
            "lower_passed": self.lower_passed,
            "upper_passed": self.upper_passed,
            "min_slack": None if ms == float("inf") else ms,
            "tol": self.tol,
            "shifts": dict(self.shifts),
            "lambda": list(self.lambdas),
            "theta": list(self.thetas),
            "records": [r.to_dict() for r in self.records],
            "notes": list(self.notes),
        }


@dataclass(frozen=True)
class InclusionReport:
    """Whether the target spectrum is a sub-multiset of the source spectrum."""

    flavor: str
    n: int
    strong: bool
    contained: bool
    source_spectrum: tuple[float, ...]
    target_spectrum: tuple[float, ...]
    evidence: Optional[str] = None
    tol: float = INCLUSION_TOL

    @property
    def passed(self) -> bool:
        return self.contained

    def to_dict(self) -> dict[str, Any]:
        return {
            "theorem": "strong-cover-inclusion",
            "flavor": self.flavor,
            "n": self.n,
            "passed": self.passed,
            "strong": self.strong,
            "contained": self.contained,
            "source_spectrum": list(self.source_spectrum),
            "target_spectrum": list(self.target_spectrum),
            "evidence": self.evidence,
            "tol": self.tol,
        }


def _spectrum(K: WeightedComplex, n: int, weighting: str = "raw") -> np.ndarray:
    return up_laplacian(K, n, weighting).spectrum().values


def _window(theorem: str, n: int, lam: Sequence[float], theta: Sequence[float], *,
            lower_shift: Optional[int], upper_shift: Optional[int],
            high_pad: Optional[float], upper_limit: Optional[int] = None,
            lower_scale: float = 1.0, upper_scale: float = 1.0,
            shifts: Optional[dict] = None, notes: Sequence[str] = (),
            tol: float = SLACK_TOL, extra_ok: bool = True) -> InterlacingReport:
    """Check ``lower_scale*lam[k-a] <= theta[k] <= upper_scale*lam[k+b]``.

    Indices below 1 read as 0; indices above ``len(lam)`` read as
    ``high_pad``, or are left unchecked when ``high_pad`` is None.
    ``upper_limit`` restricts the upper check to ``k <= upper_limit``.
    """
    lam = [float(x) for x in lam]
    records = []
    for k, t in enumerate(theta, start=1):
        t = float(t)
        li = lo = ls = None
        if lower_shift is not None:
            li = k - lower_shift
            lo = lower_scale * padded_lookup(lam, li, 0.0, high_pad if high_pad is not None else np.inf)
            ls = t - lo
        ui = up = us = None
        if upper_shift is not None and (upper_limit is None or k <= upper_limit):
            ui = k + upper_shift
            if ui <= len(lam) or high_pad is not None:
                up = upper_scale * padded_lookup(lam, ui, 0.0, high_pad if high_pad is not None else np.inf)
                us = up - t
            else:
                ui = None
        records.append(IndexRecord(k, t, li, lo, ui, up, ls, us, tol))
    return InterlacingReport(theorem, n, dict(shifts or {}), tuple(records),
                             tuple(lam), tuple(float(x) for x in theta), tol,
                             tuple(notes), extra_ok)


def _level_weights(K: WeightedComplex, n: int, levels: Sequence[int]) -> list[Fraction]:
    return [K.weights[f] for d in levels for f in K.n_faces(d)]


def _check_deletion_hypotheses(K: WeightedComplex, L: WeightedComplex, n: int, weighting: str) -> None:
    if weighting == "combinatorial":
        if any(w != 1 for w in _level_weights(K, n, (n, n + 1))):
            raise HypothesisError("combinatorial deletion needs w_K = 1 on n- and (n+1)-faces")
        if any(w not in (0, 1) for w in _level_weights(L, n, (n, n + 1))):
            raise HypothesisError("combinatorial deletion needs w_L in {0, 1}")
    elif weighting == "normalized":
        if not is_normalized_at(skeleton(K, n + 1), n):
            raise HypothesisError("normalized deletion needs K normalized at level n")
        if not is_normalized_at(skeleton(L, n + 1), n):
            raise HypothesisError("normalized deletion needs L normalized at level n")
    elif weighting != "raw":
        raise ValueError(f"unknown weighting {weighting!r}")


def deletion_shifts(H: WeightedComplex, n: int) -> tuple[int, int]:
    """``(D_W, D_H)``: the rank of the coboundary of H at level n and the n-face count of H."""
    return exact_rank(coboundary(H, n)), H.count(n)


def verify_deletion(K: WeightedComplex, H: WeightedComplex, n: int,
                    weighting: str = "raw", tol: float = SLACK_TOL) -> InterlacingReport:
    """Interlacing between K and its proper difference with H.

    The weighting names the hypothesis set: ``raw`` (any weights, upper
    bound only where the shifted index stays in range), ``combinatorial``
    (unit weights, pad ``|V|``) or ``normalized`` (pad ``n+2``).  Weights are
    used as given; the hypotheses are validated, not imposed.
    """
    L = proper_difference(K, H)
    _check_deletion_hypotheses(K, L, n, weighting)
    lam = _spectrum(K, n)
    theta = _spectrum(L, n)
    d_w, d_h = deletion_shifts(H, n)
    N = len(lam)
    if weighting == "raw":
        pad, limit = None, N - d_h
    elif weighting == "combinatorial":
        pad, limit = float(K.num_vertices), None
    else:
        pad, limit = float(n + 2), None
    return _window(f"deletion-{weighting}", n, lam, theta,
                   lower_shift=d_w, upper_shift=d_h, high_pad=pad, upper_limit=limit,
                   shifts={"D_W": d_w, "D_H": d_h, "N": N}, tol=tol)


def ratio_constants(K: WeightedComplex, L: WeightedComplex, n: int):
    """``(D_Z, min_ratio, max_ratio)``; a ratio is None when its range is empty."""
    positive = nonzero_part(L)
    d_z = K.count(n) - exact_rank(coboundary(positive, n)) if n <= positive.dim else K.count(n)
    tops = [f for f in L.n_faces(n + 1) if L.weights[f] > 0]
    faces = [f for f in L.n_faces(n) if L.weights[f] > 0]
    lo = min((L.weights[f] / K.weights[f] for f in tops), default=None)
    hi = max((K.weights[f] / L.weights[f] for f in faces), default=None)
    return d_z, lo, hi


def verify_ratio_bounds(K: WeightedComplex, H: WeightedComplex, n: int,
                        tol: float = SLACK_TOL) -> InterlacingReport:
    """Two-sided bound scaling lambda by the extreme weight ratios of K and L = K - H.

    When L has no positive (n+1)-face the lower bound has no coefficient and
    is skipped (noted in the report).
    """
    L = proper_difference(K, H)
    lam = _spectrum(K, n)
    theta = _spectrum(L, n)
    d_z, lo, hi = ratio_constants(K, L, n)
    notes = []
    if lo is None:
        notes.append("lower bound vacuous: no positive-weight (n+1)-face in L")
    if hi is None:
        notes.append("upper bound vacuous: no positive-weight n-face in L")
    return _window("ratio-bounds", n, lam, theta,
                   lower_shift=None if lo is None else d_z,
                   upper_shift=None if hi is None else 0,
                   high_pad=None,
                   lower_scale=float(lo or 0), upper_scale=float(hi or 0),
                   shifts={"D_Z": d_z, "min_ratio": str(lo) if lo is not None else None,
                           "max_ratio": str(hi) if hi is not None else None},
                   notes=notes, tol=tol)


def verify_courant_weyl(K: WeightedComplex, H: WeightedComplex, n: int,
                        tol: float = SLACK_TOL) -> InterlacingReport:
    """``theta_k <= lambda_k`` when only unit-weight (n+1)-faces are removed."""
    L = proper_difference(K, H)
    if any(w != 1 for w in _level_weights(K, n, (n, n + 1))):
        raise HypothesisError("needs w_K = 1 on n- and (n+1)-faces")
    if any(w != 1 for w in _level_weights(L, n, (n,))):
        raise HypothesisError("L must keep every n-face at weight 1")
    if any(w not in (0, 1) for w in _level_weights(L, n, (n + 1,))):
        raise HypothesisError("L must have (n+1)-weights in {0, 1}")
    lam = _spectrum(K, n)
    theta = _spectrum(L, n)
    return _window("courant-weyl", n, lam, theta, lower_shift=None, upper_shift=0,
                   high_pad=None, shifts={}, tol=tol)


def max_eigenvalue_bound(L: WeightedComplex, n: int, weighting: str = "raw") -> float:
    """Upper bound on the largest up-Laplacian eigenvalue at level n.

    ``combinatorial``: vertex count.  ``normalized``: n + 2.  ``raw``:
    ``N * max(1, M) / m`` with N the vertex count, M the largest weight on
    n- and (n+1)-faces and m the smallest positive n-face weight.
    """
    if weighting == "combinatorial":
        return float(L.num_vertices)
    if weighting == "normalized":
        return float(n + 2)
    positive = [w for w in _level_weights(L, n, (n,)) if w > 0]
    if not positive:
        return 0.0
    biggest = max(_level_weights(L, n, (n, n + 1)))
    return float(L.num_vertices * max(Fraction(1), biggest) / min(positive))


def verify_max_bound(L: WeightedComplex, weighting: str = "raw",
                     tol: float = SLACK_TOL) -> InterlacingReport:
    """Largest eigenvalue against :func:`max_eigenvalue_bound` at every level.

    Records use ``k = n`` and carry the bound in the ``upper`` field.
    """
    records = []
    tops = []
    for n in range(L.dim + 1):
        spec = up_laplacian(L, n, weighting).spectrum().values
        top = float(spec[-1]) if len(spec) else 0.0
        bound = max_eigenvalue_bound(L, n, weighting)
        records.append(IndexRecord(n, top, None, None, None, bound, None, bound - top, tol))
        tops.append(top)
    return InterlacingReport(f"max-bound-{weighting}", L.dim, {"N": L.num_vertices},
                             tuple(records), (), tuple(tops), tol)


def _flavored(K: WeightedComplex, n: int, flavor: str) -> WeightedComplex:
    """Unit weights on the (n+1)-skeleton, degree weights below for ``normalized``."""
    base = skeleton(K, n + 1).constant(1)
    if flavor == "combinatorial":
        return base
    if flavor == "normalized":
        return normalize_weights(base)
    raise ValueError(f"unknown flavor {flavor!r}")


def _require_covering(phi: SimplicialMap) -> None:
    if not is_covering(phi):
        raise NotACovering(strong_covering_evidence(phi) or "not a covering")


def verify_covering(phi: SimplicialMap, n: int, weighting: str = "raw",
                    tol: float = SLACK_TOL) -> InterlacingReport:
    """``lambda_k <= theta_k <= lambda_{k + N_K - N_L}`` for a covering with induced weights."""
    _require_covering(phi)
    source = apply_weighting(phi.source, weighting)
    target = apply_map(phi.with_source(source), "ii")
    lam = _spectrum(source, n)
    theta = _spectrum(target, n)
    shift = len(lam) - len(theta)
    return _window(f"covering-{weighting}", n, lam, theta, lower_shift=0, upper_shift=shift,
                   high_pad=float(source.num_vertices),
                   shifts={"N_K": len(lam), "N_L": len(theta)}, tol=tol)


def verify_strong_cover_inclusion(phi: SimplicialMap, n: int, flavor: str = "combinatorial",
                                  evidence: bool = True,
                                  tol: float = INCLUSION_TOL) -> InclusionReport:
    """Spectrum of the target inside the spectrum of the source.

    With ``evidence=False`` a non-strong covering raises :class:`NotStrong`;
    otherwise the report records why the map is not strong and whether the
    inclusion happens to fail.
    """
    _require_covering(phi)
    strong = is_strong_covering(phi)
    reason = None if strong else strong_covering_evidence(phi)
    if not strong and not evidence:
        raise NotStrong(reason or "not a strong covering")
    src = apply_weighting(phi.source.constant(1), flavor)
    tgt = apply_weighting(phi.image_complex().constant(1), flavor)
    lam = _spectrum(src, n)
    theta = _spectrum(tgt, n)
    return InclusionReport(flavor, n, strong, multiset_contains(lam, theta, tol),
                           tuple(float(x) for x in lam), tuple(float(x) for x in theta),
                           reason, tol)


def collapsed_image_count(phi: SimplicialMap, n: int) -> int:
    """Number of distinct target n-faces hit by a collapsing source (n+1)-face."""
    return len({phi.image_face(f) for f in phi.source.n_faces(n + 1)
                if len(phi.image_face(f)) == n + 1})


def verify_simplicial_map(phi: SimplicialMap, n: int, rule: str = "ii",
                          tol: float = SLACK_TOL) -> InterlacingReport:
    """Interlacing for a simplicial map with induced target weights.

    The check runs on the (n+1)-skeleton of the source, which is all the
    level-n up-Laplacian sees.  Rule ``i`` needs a source normalized at n.
    """
    source = skeleton(phi.source, n + 1) if phi.source.dim > n + 1 else phi.source
    if rule == "i" and not is_normalized_at(source, n):
        raise HypothesisError("rule (i) needs source weights normalized at level n")
    psi = SimplicialMap(source, phi.target, phi.vertex_map)
    target = apply_map(psi, rule)
    lam = _spectrum(source, n)
    theta = _spectrum(target, n)
    z = collapsed_image_count(psi, n) if rule == "i" else 0
    shift = len(lam) - len(theta) + z
    return _window(f"simplicial-map-rule-{rule}", n, lam, theta, lower_shift=0,
                   upper_shift=shift, high_pad=float(source.num_vertices),
                   shifts={"N_K": len(lam), "N_L": len(theta), "z": z}, tol=tol)


def verify_collapse(K: WeightedComplex, pair: tuple[Simplex, Simplex],
                    flavor: str = "combinatorial", tol: float = SLACK_TOL,
                    notes: Sequence[str] = ()) -> InterlacingReport:
    """``lambda_k <= theta_k <= lambda_{k+n+3}`` for an elementary collapse, n = dim of the free face."""
    coface, free = tuple(pair[0]), tuple(pair[1])
    collapsed = elementary_collapse(K, coface, free)
    n = len(free) - 1
    lam = _spectrum(_flavored(K, n, flavor), n)
    theta = _spectrum(_flavored(collapsed, n, flavor), n) if collapsed.count(n) else np.zeros(0)
    return _window(f"collapse-{flavor}", n, lam, theta, lower_shift=0, upper_shift=n + 3,
                   high_pad=float(K.num_vertices),
                   shifts={"N_K": len(lam), "N_K'": len(theta)}, notes=notes, tol=tol)


def verify_contraction(K: WeightedComplex, spec: ContractionSpec,
                       flavor: str = "combinatorial", tol: float = SLACK_TOL) -> InterlacingReport:
    """Type-dependent window for an elementary contraction.

    Type (i) with m identified pairs: ``lambda_{k-m(n+2)} <= theta_k <=
    lambda_{k+N_K-N_K'+m(n+2)}``; type (ii): ``lambda_k <= theta_k <=
    lambda_{k+n+2}``.  Contractions that amount to collapses are handed to
    :func:`verify_collapse`.
    """
    result = elementary_contraction(K, spec)
    done = result.spec
    if done.reducible:
        free = free_facet_of_reducible(K, done)
        return verify_collapse(K, (done.fbar, free), flavor, tol,
                               notes=("contraction reducible to a collapse",))
    n = done.n
    lam = _spectrum(_flavored(K, n, flavor), n)
    theta = _spectrum(_flavored(result.complex, n, flavor), n)
    diff = len(lam) - len(theta)
    if done.kind == "i":
        lower, upper = done.pairs * (n + 2), diff + done.pairs * (n + 2)
    else:
        lower, upper = 0, n + 2
    return _window(f"contraction-{done.kind}-{flavor}", n, lam, theta,
                   lower_shift=lower, upper_shift=upper, high_pad=float(K.num_vertices),
                   shifts={"type": done.kind, "m": done.pairs, "N_K": len(lam),
                           "N_K'": len(theta)}, tol=tol)


def verify_relative(K: WeightedComplex, K0: WeightedComplex, n: int,
                    weighting: str = "raw", tol: float = SLACK_TOL) -> InterlacingReport:
    """Relative up-Laplacian of (K, K0) against the absolute one.

    Also runs an independent Cauchy check: delete K0's rows and columns from
    the symmetrized absolute matrix and compare eigenvalues and verdict.
    """
    for f, w in K0.weights.items():
        if f not in K.weights or K.weights[f] != w:
            raise NotASubcomplex(f"{f} is not a face of K with the same weight")
    if K0.count(0) and not is_pure(K0, n):
        raise NotPure(f"K0 must be pure of dimension {n}")
    absolute = up_laplacian(K, n, weighting)
    rel = relative_laplacian(K, K0, n, "up", weighting)
    lam = absolute.spectrum().values
    theta = rel.spectrum().values
    shift = len(lam) - len(theta)

    excluded = set(K0.weights)
    keep = [i for i, f in enumerate(absolute.basis) if f not in excluded]
    S = absolute.symmetrized()
    cauchy = eigenvalues(S[np.ix_(keep, keep)]).values if keep else np.zeros(0)
    agree = len(cauchy) == len(theta) and bool(np.allclose(cauchy, theta, atol=1e-9, rtol=0))
    oracle = _window("relative-cauchy", n, lam, cauchy, lower_shift=0, upper_shift=shift,
                     high_pad=None, tol=tol)
    main = _window(f"relative-{weighting}", n, lam, theta, lower_shift=0, upper_shift=shift,
                   high_pad=None, shifts={"N_K": len(lam), "N_L": len(theta)}, tol=tol)
    same_verdict = oracle.passed == main.lower_passed and oracle.passed == main.upper_passed
    notes = [] if agree else ["relative spectrum differs from the Cauchy principal submatrix"]
    if not same_verdict:
        notes.append("Cauchy oracle verdict differs")
    return InterlacingReport(main.theorem, n, main.shifts, main.records, main.lambdas,
                             main.thetas, tol, tuple(notes), agree and same_verdict)
