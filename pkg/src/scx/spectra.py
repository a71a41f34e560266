"""Spectra, exact ranks and cohomology dimensions."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional, Sequence

import numpy as np

from .complex import WeightedComplex, nonzero_part, skeleton
from .errors import NotSymmetric

DEFAULT_TOL = 1e-7


@dataclass(frozen=True)
class Spectrum:
    """Eigenvalues in ascending order, with multiplicity."""

    values: np.ndarray
    tol: float = DEFAULT_TOL

    def __post_init__(self) -> None:
        object.__setattr__(self, "values", np.sort(np.asarray(self.values, dtype=float)))

    def __len__(self) -> int:
        return len(self.values)

    def __getitem__(self, k: int) -> float:
        """One-based lookup, so ``spec[1]`` is the smallest eigenvalue."""
        if not 1 <= k <= len(self.values):
            raise IndexError(f"eigenvalue index {k} outside 1..{len(self.values)}")
        return float(self.values[k - 1])

    def multiplicity(self, value: float) -> int:
        return int(np.sum(np.abs(self.values - value) <= self.tol))

    def zeros(self) -> int:
        return self.multiplicity(0.0)

    def max(self) -> float:
        return float(self.values[-1]) if len(self.values) else 0.0

    def tolist(self) -> list[float]:
        return [float(v) for v in self.values]


def _jacobi_eigenvalues(S: np.ndarray, sweeps: int = 100) -> np.ndarray:
    # cyclic Jacobi rotations; slow but independent of LAPACK
    A = np.array(S, dtype=float)
    m = A.shape[0]
    for _ in range(sweeps):
        scale = max(1.0, float(np.abs(A).max()))
        if np.sqrt(np.sum(np.triu(A, 1) ** 2)) < 1e-14 * scale:
            break
        for p in range(m - 1):
            for q in range(p + 1, m):
                if abs(A[p, q]) < 1e-18 * scale:
                    continue
                theta = (A[q, q] - A[p, p]) / (2 * A[p, q])
                if abs(theta) > 1e150:
                    t = 1 / (2 * theta)
                else:
                    t = np.sign(theta) / (abs(theta) + np.sqrt(theta * theta + 1)) if theta else 1.0
                c = 1 / np.sqrt(t * t + 1)
                s = t * c
                R = np.eye(m)
                R[p, p] = R[q, q] = c
                R[p, q], R[q, p] = s, -s
                A = R.T @ A @ R
    return np.sort(np.diag(A))


def eigenvalues(M: np.ndarray, method: str = "eigh", tol: float = DEFAULT_TOL) -> Spectrum:
    """Spectrum of a real symmetric matrix (``eigh`` or ``jacobi``)."""
    M = np.asarray(M, dtype=float)
    if M.ndim != 2 or M.shape[0] != M.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {M.shape}")
    if M.size == 0:
        return Spectrum(np.zeros(0), tol)
    scale = max(1.0, float(np.abs(M).max()))
    if np.abs(M - M.T).max() > 1e-10 * scale:
        raise NotSymmetric("matrix is not symmetric")
    if method == "eigh":
        vals = np.linalg.eigvalsh(M)
    elif method == "jacobi":
        vals = _jacobi_eigenvalues(M)
    else:
        raise ValueError(f"unknown eigenvalue method {method!r}")
    return Spectrum(vals, tol)


def exact_rank(rows: Iterable[Iterable]) -> int:
    """Rank over the rationals by sparse Gaussian elimination.

    ``rows`` may be a dense nested sequence, a numpy array or a scipy sparse
    matrix.  Pivots are chosen among rows with fewest nonzeros to keep fill-in
    low on incidence matrices.
    """
    if hasattr(rows, "tocsr"):
        M = rows.tocsr()
        sparse_rows = []
        for i in range(M.shape[0]):
            start, end = M.indptr[i], M.indptr[i + 1]
            r = {int(j): Fraction(int(v)) if float(v).is_integer() else Fraction(str(v))
                 for j, v in zip(M.indices[start:end], M.data[start:end]) if v != 0}
            if r:
                sparse_rows.append(r)
    else:
        sparse_rows = []
        for row in rows:
            r = {}
            for j, v in enumerate(row):
                fv = v if isinstance(v, Fraction) else (
                    Fraction(int(v)) if float(v).is_integer() else Fraction(str(v)))
                if fv != 0:
                    r[j] = fv
            if r:
                sparse_rows.append(r)

    rank = 0
    pool = sparse_rows
    while pool:
        pool.sort(key=len)
        pivot = pool.pop(0)
        col = min(pivot)
        pv = pivot[col]
        rank += 1
        rest = []
        for r in pool:
            if col in r:
                factor = r[col] / pv
                for j, v in pivot.items():
                    nv = r.get(j, Fraction(0)) - factor * v
                    if nv:
                        r[j] = nv
                    else:
                        r.pop(j, None)
            if r:
                rest.append(r)
        pool = rest
    return rank


def numerical_rank(M, tol: Optional[float] = None) -> int:
    A = M.toarray() if hasattr(M, "toarray") else np.asarray(M, dtype=float)
    if A.size == 0:
        return 0
    return int(np.linalg.matrix_rank(A, tol=tol))


def betti_numbers(K: WeightedComplex) -> list[int]:
    """Rational cohomology dimensions in every degree 0..dim K."""
    from .cochain import coboundary

    ranks = [exact_rank(coboundary(K, n)) for n in range(K.dim + 1)]
    out = []
    for n in range(K.dim + 1):
        below = ranks[n - 1] if n > 0 else 0
        out.append(K.count(n) - ranks[n] - below)
    return out


def cohomology_dim(K: WeightedComplex, n: int) -> int:
    """``dim H^n`` of the positive-weight part of K."""
    if n < 0:
        return 0
    P = nonzero_part(K)
    if n > P.dim:
        return 0
    P = skeleton(P, n + 1) if P.dim > n + 1 else P
    return betti_numbers(P)[n]


def euler_characteristic(K: WeightedComplex) -> int:
    return sum((-1) ** n * K.count(n) for n in range(K.dim + 1))


def check_euler(K: WeightedComplex) -> bool:
    """Alternating Betti sum equals the alternating face count."""
    b = betti_numbers(K)
    return sum((-1) ** n * x for n, x in enumerate(b)) == euler_characteristic(K)


@dataclass(frozen=True)
class HodgeReport:
    n: int
    zeros_of_full: int
    cohomology: int
    zero_weight_faces: int
    exact_rank: int
    numerical_rank: int

    @property
    def passed(self) -> bool:
        return (self.zeros_of_full == self.cohomology + self.zero_weight_faces
                and self.exact_rank == self.numerical_rank)


def hodge_check(K: WeightedComplex, n: int, tol: float = 1e-7) -> HodgeReport:
    """Compare the kernel of the full Laplacian with cohomology.

    A zero-weight n-face adds a trivial zero eigenvalue, so the expected
    kernel size is ``dim H^n(positive part) + #zero-weight n-faces``.
    """
    from .cochain import coboundary, full_laplacian

    spec = full_laplacian(K, n).spectrum(tol=tol)
    D = coboundary(K, n)
    return HodgeReport(
        n=n,
        zeros_of_full=spec.zeros(),
        cohomology=cohomology_dim(K, n),
        zero_weight_faces=len(K.zero_weight_faces(n)),
        exact_rank=exact_rank(D),
        numerical_rank=numerical_rank(D),
    )


def multiset_contains(big: Sequence[float], small: Sequence[float], tol: float = DEFAULT_TOL) -> bool:
    """Whether ``small`` is a sub-multiset of ``big`` up to ``tol``."""
    a = sorted(float(x) for x in big)
    b = sorted(float(x) for x in small)
    i = 0
    for x in b:
        while i < len(a) and a[i] < x - tol:
            i += 1
        if i == len(a) or abs(a[i] - x) > tol:
            return False
        i += 1
    return True


def padded_lookup(values: Sequence[float], k: int, low: float, high: float) -> float:
    """One-based lookup that returns ``low`` below the range and ``high`` above."""
    if k < 1:
        return low
    if k > len(values):
        return high
    return float(values[k - 1])
