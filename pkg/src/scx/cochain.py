"""Coboundary matrices, weighted adjoints and Laplace operators.

All matrices act on cochains written in the elementary-cochain basis, with the
lexicographic face order of :class:`~scx.complex.WeightedComplex`.  Laplacians
are assembled in exact rational arithmetic and then converted to floats.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Literal, Optional

import numpy as np
import scipy.sparse as sp

from .complex import (
    Simplex,
    WeightedComplex,
    boundary_sign,
    facets_of,
    skeleton,
)
from .errors import NotAComplex, NotASubcomplex, NotSymmetric

Kind = Literal["up", "down", "full"]
Weighting = Literal["raw", "combinatorial", "normalized"]
KINDS = ("up", "down", "full")
WEIGHTINGS = ("raw", "combinatorial", "normalized")

SYMMETRY_RTOL = 1e-12


def coboundary(K: WeightedComplex, n: int) -> sp.csr_matrix:
    """Signed incidence of n-faces (columns) into (n+1)-faces (rows)."""
    rows, cols, vals = [], [], []
    tops = K.n_faces(n + 1)
    if n >= 0:
        for r, g in enumerate(tops):
            for f in facets_of(g):
                rows.append(r)
                cols.append(K.index(f))
                vals.append(boundary_sign(f, g))
    shape = (len(tops), K.count(n) if n >= 0 else 0)
    return sp.csr_matrix((np.array(vals, dtype=np.int64), (rows, cols)), shape=shape)


def weight_vector(K: WeightedComplex, n: int) -> list[Fraction]:
    """Diagonal of the inner product on n-cochains."""
    return [K.weights[f] for f in K.n_faces(n)]


def _floats(ws: list[Fraction]) -> np.ndarray:
    return np.array([float(w) for w in ws], dtype=float)


def formal_adjoint(D, w_n, w_next) -> np.ndarray:
    """``P(W_n) D^T W_{n+1}`` with ``P`` inverting only the positive weights."""
    D = D.toarray() if sp.issparse(D) else np.asarray(D, dtype=float)
    w_n = np.asarray([float(w) for w in w_n], dtype=float)
    w_next = np.asarray([float(w) for w in w_next], dtype=float)
    inv = np.zeros_like(w_n)
    pos = w_n > 0
    inv[pos] = 1.0 / w_n[pos]
    return (inv[:, None] * D.T) * w_next[None, :]


def normalize_weights(K: WeightedComplex) -> WeightedComplex:
    """Give every non-maximal face the total weight of its cofaces.

    Maximal faces keep their weight.  Propagation runs from the top
    dimension down, so the condition holds exactly at every level.
    """
    if K.is_degenerate():
        raise ValueError("normalize_weights needs a non-degenerate complex")
    w = dict(K.weights)
    for d in range(K.dim - 1, -1, -1):
        for f in K.n_faces(d):
            up = K.cofaces(f)
            if up:
                w[f] = sum((w[g] for g in up), Fraction(0))
    return WeightedComplex(K.faces, w, K.degenerate_allowed)


def is_normalized_at(K: WeightedComplex, n: int) -> bool:
    """Normalizing condition on every n-face that has a positive-weight coface."""
    for f in K.n_faces(n):
        total = sum((K.weights[g] for g in K.cofaces(f)), Fraction(0))
        if total > 0 and K.weights[f] != total:
            return False
    return True


def apply_weighting(K: WeightedComplex, weighting: Weighting) -> WeightedComplex:
    """Reweight K: ``raw`` keeps it, ``combinatorial`` sets every positive
    weight to 1 (zeros stay zero), ``normalized`` runs :func:`normalize_weights`."""
    if weighting == "raw":
        return K
    if weighting == "combinatorial":
        one = Fraction(1)
        return WeightedComplex(
            K.faces, {f: (one if w > 0 else w) for f, w in K.weights.items()},
            K.degenerate_allowed)
    if weighting == "normalized":
        return normalize_weights(K)
    raise ValueError(f"unknown weighting {weighting!r}")


@dataclass(frozen=True)
class LaplacianMatrix:
    """A Laplace operator in the elementary-cochain basis.

    ``exact`` holds the rational entries, ``matrix`` their float image and
    ``weights`` the n-face weights used to symmetrize by similarity.
    """

    n: int
    kind: str
    weighting: str
    basis: tuple[Simplex, ...]
    exact: tuple[tuple[Fraction, ...], ...]
    weights: tuple[Fraction, ...]

    @cached_property
    def matrix(self) -> np.ndarray:
        m = len(self.basis)
        return np.array([[float(x) for x in row] for row in self.exact], dtype=float).reshape(m, m)

    @property
    def shape(self) -> tuple[int, int]:
        return (len(self.basis), len(self.basis))

    def positive_indices(self) -> np.ndarray:
        return np.array([i for i, w in enumerate(self.weights) if w > 0], dtype=int)

    def symmetrized(self) -> np.ndarray:
        """``W^{1/2} L W^{-1/2}`` on the positive-weight faces."""
        pos = self.positive_indices()
        M = self.matrix[np.ix_(pos, pos)]
        s = np.sqrt(np.array([float(self.weights[i]) for i in pos], dtype=float))
        S = s[:, None] * M / s[None, :]
        scale = max(1.0, float(np.abs(S).max())) if S.size else 1.0
        if S.size and np.abs(S - S.T).max() > SYMMETRY_RTOL * scale * 10:
            raise NotSymmetric(
                f"symmetrized {self.kind}-Laplacian is not symmetric "
                f"(max asymmetry {np.abs(S - S.T).max():.3e})")
        return (S + S.T) / 2

    def _check_triangular(self) -> None:
        # zero-weight faces must split off as a block-triangular part
        pos = self.positive_indices()
        zero = np.setdiff1d(np.arange(len(self.basis)), pos)
        if not len(zero) or not len(pos):
            return
        M = self.matrix
        upper = np.abs(M[np.ix_(pos, zero)]).max()
        lower = np.abs(M[np.ix_(zero, pos)]).max()
        if upper > 0 and lower > 0:
            raise NotAComplex(
                "zero-weight faces are entangled with positive ones; "
                "the positive-weight part is not a subcomplex")

    def spectrum(self, tol: Optional[float] = None, method: str = "eigh"):
        """Eigenvalues with multiplicity: the symmetrized positive-weight block
        plus one zero per zero-weight face."""
        from .spectra import Spectrum, eigenvalues

        self._check_triangular()
        S = self.symmetrized()
        vals = eigenvalues(S, method=method).values if S.size else np.zeros(0)
        zeros = len(self.basis) - len(vals)
        all_vals = np.sort(np.concatenate([vals, np.zeros(zeros)]))
        return Spectrum(all_vals) if tol is None else Spectrum(all_vals, tol)


def _up_entries(K: WeightedComplex, n: int) -> list[list[Fraction]]:
    basis = K.n_faces(n)
    m = len(basis)
    L = [[Fraction(0)] * m for _ in range(m)]
    for g in K.n_faces(n + 1):
        wg = K.weights[g]
        if wg == 0:
            continue
        fs = facets_of(g)
        signs = [boundary_sign(f, g) for f in fs]
        idx = [K.index(f) for f in fs]
        for f, s, i in zip(fs, signs, idx):
            wf = K.weights[f]
            if wf == 0:
                continue
            ratio = wg / wf
            for s2, j in zip(signs, idx):
                L[i][j] += ratio * s * s2
    return L


def _down_entries(K: WeightedComplex, n: int) -> list[list[Fraction]]:
    basis = K.n_faces(n)
    m = len(basis)
    L = [[Fraction(0)] * m for _ in range(m)]
    if n <= 0:
        return L
    by_facet: dict[Simplex, list[tuple[int, int]]] = {}
    for j, f in enumerate(basis):
        for e in facets_of(f):
            by_facet.setdefault(e, []).append((j, boundary_sign(e, f)))
    for e, incident in by_facet.items():
        we = K.weights[e]
        if we == 0:
            continue
        for i, s in incident:
            for j, s2 in incident:
                L[i][j] += K.weights[basis[j]] / we * s * s2
    return L


def _laplacian(K: WeightedComplex, n: int, kind: str, weighting: Weighting) -> LaplacianMatrix:
    if kind not in KINDS:
        raise ValueError(f"unknown Laplacian kind {kind!r}")
    Kw = apply_weighting(K, weighting)
    if kind == "up":
        entries = _up_entries(Kw, n)
    elif kind == "down":
        entries = _down_entries(Kw, n)
    else:
        up, down = _up_entries(Kw, n), _down_entries(Kw, n)
        entries = [[a + b for a, b in zip(r1, r2)] for r1, r2 in zip(up, down)]
    return LaplacianMatrix(
        n=n, kind=kind, weighting=weighting, basis=Kw.n_faces(n),
        exact=tuple(tuple(r) for r in entries), weights=tuple(weight_vector(Kw, n)))


def up_laplacian(K: WeightedComplex, n: int, weighting: Weighting = "raw") -> LaplacianMatrix:
    return _laplacian(K, n, "up", weighting)


def down_laplacian(K: WeightedComplex, n: int, weighting: Weighting = "raw") -> LaplacianMatrix:
    """``delta_{n-1} delta_{n-1}^*``; the zero matrix for n = 0."""
    return _laplacian(K, n, "down", weighting)


def full_laplacian(K: WeightedComplex, n: int, weighting: Weighting = "raw") -> LaplacianMatrix:
    return _laplacian(K, n, "full", weighting)


def laplacian(K: WeightedComplex, n: int, kind: str = "up",
              weighting: Weighting = "raw") -> LaplacianMatrix:
    return _laplacian(K, n, kind, weighting)


def relative_laplacian(K: WeightedComplex, K0: WeightedComplex, n: int,
                       kind: str = "up", weighting: Weighting = "raw") -> LaplacianMatrix:
    """Laplacian of the pair (K, K0) on cochains vanishing on K0.

    Built from the restricted coboundaries: columns of K0's faces are dropped
    from every coboundary, and rows of K0's faces from its codomain.  For the
    up-Laplacian this coincides with deleting K0's rows and columns from the
    absolute matrix.
    """
    if any(f not in K.weights for f in K0.weights):
        raise NotASubcomplex("K0 is not a subcomplex of K")
    if kind not in KINDS:
        raise ValueError(f"unknown Laplacian kind {kind!r}")
    Kw = apply_weighting(K, weighting)
    excluded = set(K0.weights)
    rel_faces = {f: w for f, w in Kw.weights.items() if f not in excluded}
    keep = [i for i, f in enumerate(Kw.n_faces(n)) if f not in excluded]
    basis = tuple(Kw.n_faces(n)[i] for i in keep)
    pos_in_basis = {f: i for i, f in enumerate(basis)}
    m = len(basis)
    L = [[Fraction(0)] * m for _ in range(m)]

    if kind in ("up", "full"):
        for g in Kw.n_faces(n + 1):
            if g in excluded or Kw.weights[g] == 0:
                continue
            wg = Kw.weights[g]
            terms = [(pos_in_basis[f], boundary_sign(f, g), Kw.weights[f])
                     for f in facets_of(g) if f in pos_in_basis]
            for i, s, wf in terms:
                if wf == 0:
                    continue
                for j, s2, _ in terms:
                    L[i][j] += wg / wf * s * s2
    if kind in ("down", "full") and n > 0:
        for e in Kw.n_faces(n - 1):
            if e in excluded or Kw.weights[e] == 0:
                continue
            we = Kw.weights[e]
            terms = [(pos_in_basis[f], boundary_sign(e, f)) for f in Kw.cofaces(e)
                     if f in pos_in_basis]
            for i, s in terms:
                for j, s2 in terms:
                    L[i][j] += rel_faces[basis[j]] / we * s * s2
    return LaplacianMatrix(
        n=n, kind=f"relative-{kind}", weighting=weighting, basis=basis,
        exact=tuple(tuple(r) for r in L),
        weights=tuple(Kw.weights[f] for f in basis))


def up_via_adjoint(K: WeightedComplex, n: int) -> np.ndarray:
    """``formal_adjoint(D) @ D``; an independent route to the up-Laplacian."""
    D = coboundary(K, n)
    A = formal_adjoint(D, weight_vector(K, n), weight_vector(K, n + 1))
    return A @ D.toarray()


def down_via_adjoint(K: WeightedComplex, n: int) -> np.ndarray:
    if n <= 0:
        m = K.count(n)
        return np.zeros((m, m))
    D = coboundary(K, n - 1)
    A = formal_adjoint(D, weight_vector(K, n - 1), weight_vector(K, n))
    return D.toarray() @ A


def restrict_to_up_support(K: WeightedComplex, n: int) -> WeightedComplex:
    """The (n+1)-skeleton, which determines every up-Laplacian at level n."""
    return skeleton(K, n + 1) if K.dim > n + 1 else K
