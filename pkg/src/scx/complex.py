"""Weighted abstract simplicial complexes and their structural predicates.

Simplices are plain tuples of strictly increasing non-negative integers; the
ascending order is the positive orientation.  Weights are kept as exact
:class:`fractions.Fraction` values and only converted to floats when a
spectrum is requested.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from itertools import combinations
from typing import Iterable, Mapping, Optional, Union

from .errors import (
    EmptyFacet,
    NegativeWeight,
    NotAComplex,
    NotAFacet,
    NotASubcomplex,
    NotProper,
)

Simplex = tuple[int, ...]
Number = Union[int, Fraction, str]


def as_fraction(value: Number) -> Fraction:
    if isinstance(value, bool):
        raise TypeError("booleans are not weights")
    if isinstance(value, float):
        return Fraction(str(value))
    return Fraction(value)


def simplex(vertices: Iterable[int]) -> Simplex:
    """Canonical (ascending, deduplicated) form of a vertex collection."""
    vs = tuple(sorted(set(int(v) for v in vertices)))
    if not vs:
        raise EmptyFacet("a simplex needs at least one vertex")
    if vs[0] < 0:
        raise ValueError(f"vertex identifiers must be non-negative: {vs}")
    return vs


def facets_of(face: Simplex) -> list[Simplex]:
    """Codimension-one faces, ordered by the index of the omitted vertex."""
    if len(face) == 1:
        return []
    return [face[:i] + face[i + 1:] for i in range(len(face))]


def boundary_sign(face: Simplex, coface: Simplex) -> int:
    """Sign of ``[face]`` in the boundary of ``[coface]``: ``(-1)**i`` where
    ``i`` is the position of the omitted vertex."""
    if len(face) + 1 != len(coface):
        raise NotAFacet(f"{face} is not a facet of {coface}")
    fs = set(face)
    missing = [i for i, v in enumerate(coface) if v not in fs]
    if len(missing) != 1 or not fs <= set(coface):
        raise NotAFacet(f"{face} is not a facet of {coface}")
    return -1 if missing[0] % 2 else 1


@dataclass(frozen=True)
class WeightedComplex:
    """A finite simplicial complex with a non-negative weight on every face.

    ``faces[n]`` lists the n-faces in lexicographic order; that order fixes
    the basis of every matrix assembled from the complex.
    """

    faces: tuple[tuple[Simplex, ...], ...]
    weights: Mapping[Simplex, Fraction] = field(compare=True)
    degenerate_allowed: bool = False

    def __post_init__(self) -> None:
        for dim_faces in self.faces:
            for f in dim_faces:
                w = self.weights[f]
                if w < 0:
                    raise NegativeWeight(f"negative weight {w} on {f}")
                if w == 0 and not self.degenerate_allowed:
                    raise NegativeWeight(
                        f"zero weight on {f} requires degenerate_allowed=True")

    # --- basic queries -------------------------------------------------
    @property
    def dim(self) -> int:
        return len(self.faces) - 1

    def n_faces(self, n: int) -> tuple[Simplex, ...]:
        if 0 <= n < len(self.faces):
            return self.faces[n]
        return ()

    def count(self, n: int) -> int:
        return len(self.n_faces(n))

    @cached_property
    def face_set(self) -> frozenset[Simplex]:
        return frozenset(self.weights)

    @cached_property
    def _index(self) -> dict[Simplex, int]:
        return {f: i for dim_faces in self.faces for i, f in enumerate(dim_faces)}

    def index(self, face: Simplex) -> int:
        """Position of ``face`` in the basis of its dimension."""
        return self._index[face]

    def __contains__(self, face: object) -> bool:
        return face in self.weights

    def weight(self, face: Simplex) -> Fraction:
        return self.weights[face]

    @property
    def vertices(self) -> tuple[int, ...]:
        return tuple(f[0] for f in self.n_faces(0))

    @property
    def num_vertices(self) -> int:
        return self.count(0)

    def all_faces(self) -> list[Simplex]:
        return [f for dim_faces in self.faces for f in dim_faces]

    def __len__(self) -> int:
        return len(self.weights)

    @cached_property
    def _cofaces(self) -> dict[Simplex, tuple[Simplex, ...]]:
        up: dict[Simplex, list[Simplex]] = {f: [] for f in self.weights}
        for dim_faces in self.faces[1:]:
            for g in dim_faces:
                for f in facets_of(g):
                    up[f].append(g)
        return {f: tuple(sorted(gs)) for f, gs in up.items()}

    def cofaces(self, face: Simplex) -> tuple[Simplex, ...]:
        """Faces of dimension ``dim face + 1`` containing ``face``."""
        return self._cofaces[face]

    def maximal_faces(self) -> list[Simplex]:
        return [f for f in self.all_faces() if not self._cofaces[f]]

    def is_degenerate(self) -> bool:
        return any(w == 0 for w in self.weights.values())

    def zero_weight_faces(self, n: int) -> list[Simplex]:
        return [f for f in self.n_faces(n) if self.weights[f] == 0]

    def with_weights(self, weights: Mapping[Simplex, Fraction],
                     degenerate_allowed: Optional[bool] = None) -> "WeightedComplex":
        """Same faces, new weights (missing faces keep their old weight)."""
        merged = dict(self.weights)
        merged.update({f: as_fraction(w) for f, w in weights.items()})
        deg = self.degenerate_allowed if degenerate_allowed is None else degenerate_allowed
        return WeightedComplex(self.faces, merged, deg)

    def constant(self, value: Number = 1) -> "WeightedComplex":
        """Copy with every weight replaced by ``value`` (w = 1 is combinatorial)."""
        v = as_fraction(value)
        return WeightedComplex(self.faces, {f: v for f in self.weights}, self.degenerate_allowed)

    def __repr__(self) -> str:
        counts = ", ".join(str(len(fs)) for fs in self.faces)
        return f"WeightedComplex(f-vector=({counts}), degenerate={self.is_degenerate()})"


def _from_face_set(face_weights: Mapping[Simplex, Fraction],
                   degenerate_allowed: bool) -> WeightedComplex:
    by_dim: dict[int, list[Simplex]] = {}
    for f in face_weights:
        by_dim.setdefault(len(f) - 1, []).append(f)
    top = max(by_dim) if by_dim else -1
    faces = tuple(tuple(sorted(by_dim.get(d, ()))) for d in range(top + 1))
    return WeightedComplex(faces, dict(face_weights), degenerate_allowed)


def complex_from_faces(face_weights: Mapping[Simplex, Number],
                       degenerate_allowed: bool = False) -> WeightedComplex:
    """Wrap an explicit face -> weight map, checking closure under inclusion."""
    fw = {simplex(f): as_fraction(w) for f, w in face_weights.items()}
    for f in fw:
        for g in facets_of(f):
            if g not in fw:
                raise NotAComplex(f"facet {g} of {f} is missing")
    return _from_face_set(fw, degenerate_allowed)


def build_complex(facets: Iterable[Iterable[int]],
                  weights: Optional[Mapping[Iterable[int], Number]] = None,
                  default_weight: Number = 1,
                  degenerate_allowed: bool = False) -> WeightedComplex:
    """Downward closure of ``facets``; faces without an explicit weight get
    ``default_weight``."""
    explicit: dict[Simplex, Fraction] = {}
    for f, w in (weights or {}).items():
        wf = as_fraction(w)
        if wf < 0:
            raise NegativeWeight(f"negative weight {wf} on {tuple(f)}")
        explicit[simplex(f)] = wf
    default = as_fraction(default_weight)
    if default < 0:
        raise NegativeWeight(f"negative default weight {default}")

    closure: set[Simplex] = set()
    for facet in facets:
        top = simplex(facet)
        for k in range(1, len(top) + 1):
            closure.update(combinations(top, k))
    for f in explicit:
        if f not in closure:
            raise NotAComplex(f"weight given for {f}, which is not a face")
    return _from_face_set({f: explicit.get(f, default) for f in closure}, degenerate_allowed)


def skeleton(K: WeightedComplex, n: int) -> WeightedComplex:
    """Faces of dimension <= n with their weights."""
    if n < 0:
        raise ValueError("skeleton dimension must be non-negative")
    faces = K.faces[: n + 1]
    keep = {f: K.weights[f] for fs in faces for f in fs}
    return WeightedComplex(tuple(faces), keep, K.degenerate_allowed)


def is_subcomplex(H: WeightedComplex, K: WeightedComplex) -> bool:
    """Every face of H is in K with ``w_H <= w_K``."""
    return all(f in K.weights and w <= K.weights[f] for f, w in H.weights.items())


def nonzero_part(L: WeightedComplex) -> WeightedComplex:
    """Maximal subcomplex on the faces of positive weight."""
    keep = {f: w for f, w in L.weights.items() if w > 0}
    for f in keep:
        for g in facets_of(f):
            if g not in keep:
                raise NotAComplex(f"{f} has positive weight but its facet {g} does not")
    return _from_face_set(keep, False)


def proper_difference(K: WeightedComplex, H: WeightedComplex) -> WeightedComplex:
    """Degenerate complex on K's faces with weights ``w_K - w_H``."""
    if not is_subcomplex(H, K):
        raise NotASubcomplex("H is not a weighted subcomplex of K")
    w = {f: K.weights[f] - H.weights.get(f, Fraction(0)) for f in K.weights}
    L = WeightedComplex(K.faces, w, True)
    try:
        nonzero_part(L)
    except NotAComplex as exc:
        raise NotProper(str(exc)) from None
    return L


def is_n_path_connected(K: WeightedComplex, n: int) -> bool:
    """Whether the (n+1)-faces form one class under sharing n-faces."""
    tops = K.n_faces(n + 1)
    if len(tops) <= 1:
        return True
    by_facet: dict[Simplex, list[int]] = {}
    for i, g in enumerate(tops):
        for f in facets_of(g):
            by_facet.setdefault(f, []).append(i)
    seen = {0}
    queue = deque([0])
    while queue:
        i = queue.popleft()
        for f in facets_of(tops[i]):
            for j in by_facet[f]:
                if j not in seen:
                    seen.add(j)
                    queue.append(j)
    return len(seen) == len(tops)


def is_connected(K: WeightedComplex) -> bool:
    """Path-connectedness of the underlying space (via the 1-skeleton)."""
    verts = K.vertices
    if not verts:
        return True
    adj: dict[int, list[int]] = {v: [] for v in verts}
    for a, b in K.n_faces(1):
        adj[a].append(b)
        adj[b].append(a)
    seen = {verts[0]}
    stack = [verts[0]]
    while stack:
        v = stack.pop()
        for u in adj[v]:
            if u not in seen:
                seen.add(u)
                stack.append(u)
    return len(seen) == len(verts)


def is_pure(K: WeightedComplex, n: int) -> bool:
    """Every maximal face has dimension exactly n."""
    return all(len(f) - 1 == n for f in K.maximal_faces())


def closure(faces: Iterable[Simplex]) -> set[Simplex]:
    out: set[Simplex] = set()
    for f in faces:
        for k in range(1, len(f) + 1):
            out.update(combinations(f, k))
    return out


def star(K: WeightedComplex, faces: Iterable[Simplex]) -> set[Simplex]:
    """All faces of K containing at least one of ``faces``."""
    targets = [frozenset(f) for f in faces]
    return {g for g in K.weights if any(t <= set(g) for t in targets)}
