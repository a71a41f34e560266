"""Simplicial maps, induced weights, coverings, collapses and contractions."""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Mapping, NamedTuple, Optional

from .complex import (
    Simplex,
    WeightedComplex,
    _from_face_set,
    facets_of,
    is_connected,
)
from .errors import (
    InvalidMap,
    NegativeInducedWeight,
    NotACovering,
    NotConstant,
    NotContractible,
    NotFree,
    SourceNotConnected,
)


def permutation_parity(seq: tuple[int, ...]) -> int:
    """+1 for an even permutation of distinct values, -1 for odd, 0 on repeats."""
    if len(set(seq)) != len(seq):
        return 0
    inversions = sum(1 for i in range(len(seq)) for j in range(i + 1, len(seq)) if seq[i] > seq[j])
    return -1 if inversions % 2 else 1


@dataclass(frozen=True)
class SimplicialMap:
    """A vertex map that sends every face of ``source`` onto a face of ``target``."""

    source: WeightedComplex
    target: WeightedComplex
    vertex_map: Mapping[int, int] = field(hash=False)

    def __post_init__(self) -> None:
        vm = dict(self.vertex_map)
        missing = [v for v in self.source.vertices if v not in vm]
        if missing:
            raise InvalidMap(f"source vertices without an image: {missing}")
        tverts = set(self.target.vertices)
        for v in self.source.vertices:
            if vm[v] not in tverts:
                raise InvalidMap(f"vertex {v} maps to {vm[v]}, which is not a target vertex")
        for f in self.source.all_faces():
            img = tuple(sorted(set(vm[v] for v in f)))
            if img not in self.target:
                raise InvalidMap(f"image {img} of {f} is not a face of the target")
        object.__setattr__(self, "vertex_map", vm)

    def image_face(self, face: Simplex) -> Simplex:
        return tuple(sorted(set(self.vertex_map[v] for v in face)))

    def face_sign(self, face: Simplex) -> int:
        """Orientation sign of the induced cochain map; 0 if the face collapses."""
        return permutation_parity(tuple(self.vertex_map[v] for v in face))

    def collapses(self, face: Simplex) -> bool:
        return len(self.image_face(face)) < len(face)

    def preimages(self, target_face: Simplex) -> list[Simplex]:
        """Source faces mapped bijectively onto ``target_face``."""
        d = len(target_face) - 1
        return [f for f in self.source.n_faces(d) if self.image_face(f) == target_face]

    def image_complex(self) -> WeightedComplex:
        faces = {self.image_face(f): self.target.weights[self.image_face(f)]
                 for f in self.source.all_faces()}
        return _from_face_set(faces, self.target.degenerate_allowed)

    def with_source(self, source: WeightedComplex) -> "SimplicialMap":
        return SimplicialMap(source, self.target, self.vertex_map)


def apply_map(phi: SimplicialMap, rule: str = "ii") -> WeightedComplex:
    """Image complex of ``phi`` carrying induced weights.

    Rule ``ii`` sums the weights of all faces mapped bijectively onto G.
    Rule ``i`` additionally subtracts the weights of one-dimension-higher
    faces that collapse onto G, which keeps normalized weights normalized.
    """
    if rule not in ("i", "ii"):
        raise ValueError(f"unknown induced-weight rule {rule!r}")
    K = phi.source
    w: dict[Simplex, Fraction] = {}
    for f in K.all_faces():
        g = phi.image_face(f)
        w.setdefault(g, Fraction(0))
        if len(g) == len(f):
            w[g] += K.weights[f]
        elif rule == "i" and len(g) == len(f) - 1:
            w[g] -= K.weights[f]
    for g, val in w.items():
        if val < 0:
            raise NegativeInducedWeight(
                f"rule (i) gives weight {val} on {g}; the source weights are not normalized")
    degenerate = any(val == 0 for val in w.values())
    return _from_face_set(w, degenerate or K.degenerate_allowed)


FaceLabel = Callable[[Simplex], str]


def _covering_violation(phi: SimplicialMap, src: FaceLabel = str, tgt: FaceLabel = str) -> Optional[str]:
    for f in phi.source.all_faces():
        if phi.collapses(f):
            return f"face {src(f)} is not mapped bijectively (image {tgt(phi.image_face(f))})"
    for g in phi.image_complex().all_faces():
        pre = phi.preimages(g)
        used: set[int] = set()
        for f in pre:
            if used & set(f):
                return f"preimages of {tgt(g)} are not disjoint"
            used |= set(f)
    for g in phi.target.all_faces():
        if not phi.preimages(g):
            return f"target face {tgt(g)} has no preimage"
    return None


def is_covering(phi: SimplicialMap) -> bool:
    """Whether every target simplex has a preimage made of disjoint copies,
    each mapped bijectively onto it.  The source must be connected."""
    if not is_connected(phi.source):
        raise SourceNotConnected("covering maps need a connected source")
    return _covering_violation(phi) is None


def _strong_violation(phi: SimplicialMap, src: FaceLabel = str, tgt: FaceLabel = str) -> Optional[str]:
    T = phi.target
    for gbar in T.all_faces():
        for g in facets_of(gbar):
            for f in phi.preimages(g):
                if not any(phi.image_face(fbar) == gbar for fbar in phi.source.cofaces(f)):
                    return f"{src(f)} over {tgt(g)} has no coface lifting {tgt(gbar)}"
    return None


def is_strong_covering(phi: SimplicialMap) -> bool:
    """Covering in which every lift of a facet G extends to a lift of each coface of G."""
    if not is_covering(phi):
        raise NotACovering("map is not a covering")
    return _strong_violation(phi) is None


def strong_covering_evidence(phi: SimplicialMap, src: FaceLabel = str,
                             tgt: FaceLabel = str) -> Optional[str]:
    """Human-readable reason the map fails to be a strong covering, or None.

    ``src`` and ``tgt`` render source and target faces (vertex names, say).
    """
    return _covering_violation(phi, src, tgt) or _strong_violation(phi, src, tgt)


def covering_degree(phi: SimplicialMap) -> int:
    """The common number of preimages of every target face.

    Connectivity of the source is not required here, so disconnected covers
    (e.g. two disjoint copies of the target) still have a degree.
    """
    reason = strong_covering_evidence(phi)
    if reason is not None:
        raise NotConstant(f"not a strong covering: {reason}")
    sizes = {g: len(phi.preimages(g)) for g in phi.target.all_faces()}
    distinct = set(sizes.values())
    if len(distinct) != 1:
        raise NotConstant(f"preimage sizes differ: {sorted(distinct)}")
    return distinct.pop()


def elementary_collapse(K: WeightedComplex, coface: Simplex, free_face: Simplex) -> WeightedComplex:
    """Remove a free face together with its unique coface."""
    coface, free_face = tuple(coface), tuple(free_face)
    if coface not in K or free_face not in K:
        raise NotFree(f"{free_face} / {coface} are not faces of the complex")
    if free_face not in facets_of(coface):
        raise NotFree(f"{free_face} is not a facet of {coface}")
    if K.cofaces(free_face) != (coface,):
        raise NotFree(f"{free_face} has cofaces other than {coface}")
    if K.cofaces(coface):
        raise NotFree(f"{coface} is not maximal")
    keep = {f: w for f, w in K.weights.items() if f not in (coface, free_face)}
    return _from_face_set(keep, K.degenerate_allowed)


@dataclass(frozen=True)
class ContractionSpec:
    """Which (n+1)-face to delete and which two of its facets to identify.

    ``kind`` and ``pairs`` are filled in by :func:`elementary_contraction`:
    ``kind`` is ``"i"`` when ``pairs`` >= 1 further pairs of (n+1)-faces are
    identified, ``"ii"`` when the map is injective on (n+1)-faces.
    ``reducible`` marks contractions where one of the two facets has no
    other coface, which amount to collapses.
    """

    fbar: Simplex
    face: Simplex
    face_prime: Simplex
    kind: Optional[str] = None
    pairs: int = 0
    reducible: bool = False

    @property
    def n(self) -> int:
        return len(self.face) - 1


class ContractionResult(NamedTuple):
    complex: WeightedComplex
    map: SimplicialMap
    spec: ContractionSpec


def contraction_vertices(spec: ContractionSpec) -> tuple[int, int]:
    """The two vertices glued together: ``a`` lies only in ``face_prime``,
    ``b`` only in ``face``."""
    fbar = set(spec.fbar)
    (a,) = fbar - set(spec.face)
    (b,) = fbar - set(spec.face_prime)
    return a, b


def elementary_contraction(K: WeightedComplex, spec: ContractionSpec) -> ContractionResult:
    """Delete ``spec.fbar`` and identify ``spec.face`` with ``spec.face_prime``.

    The quotient carries weight 1 on every face; reweight it afterwards if a
    different flavor is needed.
    """
    fbar, F, Fp = tuple(spec.fbar), tuple(spec.face), tuple(spec.face_prime)
    if fbar not in K:
        raise NotContractible(f"{fbar} is not a face")
    n = len(fbar) - 2
    if K.dim != n + 1:
        raise NotContractible(f"complex has dimension {K.dim}, expected {n + 1}")
    facets = facets_of(fbar)
    if F not in facets or Fp not in facets or F == Fp:
        raise NotContractible("face and face_prime must be two distinct facets of fbar")
    for g in facets:
        if g in (F, Fp):
            continue
        if any(c != fbar for c in K.cofaces(g)):
            raise NotContractible(f"facet {g} of {fbar} has other cofaces")
    a, b = contraction_vertices(spec)
    lo, hi = min(a, b), max(a, b)
    vmap = {v: (lo if v == hi else v) for v in K.vertices}

    image = {tuple(sorted(set(vmap[v] for v in f))) for f in K.all_faces()}
    quotient = _from_face_set({g: Fraction(1) for g in image}, False)
    phi = SimplicialMap(K, quotient, vmap)

    groups: dict[Simplex, list[Simplex]] = {}
    for g in K.n_faces(n + 1):
        if g == fbar:
            continue
        if phi.collapses(g):
            raise NotContractible(f"identification also collapses {g}, not only {fbar}")
        groups.setdefault(phi.image_face(g), []).append(g)
    pairs = sum(1 for gs in groups.values() if len(gs) > 1)
    outside = lambda face: [c for c in K.cofaces(face) if c != fbar]
    reducible = not outside(F) or not outside(Fp)
    done = ContractionSpec(fbar, F, Fp, "i" if pairs else "ii", pairs, reducible)
    return ContractionResult(quotient, phi, done)


def free_facet_of_reducible(K: WeightedComplex, spec: ContractionSpec) -> Simplex:
    """The identified facet whose only coface is ``fbar``."""
    for face in (spec.face_prime, spec.face):
        if K.cofaces(face) == (tuple(spec.fbar),):
            return face
    raise NotContractible("contraction is not reducible to a collapse")
