"""Random instances whose theorem hypotheses hold by construction.

Every generator takes a :class:`numpy.random.Generator` so batches are
reproducible from a single seed.
"""
from __future__ import annotations

from fractions import Fraction
from itertools import combinations
from typing import Optional

import numpy as np

from .cochain import normalize_weights
from .complex import (
    Simplex,
    WeightedComplex,
    _from_face_set,
    build_complex,
    closure,
    facets_of,
    is_connected,
    star,
)
from .errors import NotContractible
from .transforms import ContractionSpec, SimplicialMap, elementary_contraction

MAX_VERTICES = 12
MAX_DIM = 2
EMPTY = WeightedComplex((), {}, True)


def random_weight(rng: np.random.Generator, top: int = 5) -> Fraction:
    return Fraction(int(rng.integers(1, top + 1)), int(rng.integers(1, 4)))


def random_facets(rng: np.random.Generator, n_vertices: int, max_dim: int = MAX_DIM,
                  density: float = 0.5) -> list[Simplex]:
    """Random maximal-face candidates covering every vertex."""
    vs = list(range(n_vertices))
    facets: list[Simplex] = []
    count = int(rng.integers(1, max(2, int(n_vertices * (1 + density))) + 1))
    for _ in range(count):
        d = int(rng.integers(1, max_dim + 1)) if n_vertices > 1 else 0
        d = min(d, n_vertices - 1)
        facets.append(tuple(sorted(int(v) for v in rng.choice(vs, d + 1, replace=False))))
    used = {v for f in facets for v in f}
    facets.extend((v,) for v in vs if v not in used)
    return facets


def random_complex(rng: np.random.Generator, max_vertices: int = 8, max_dim: int = MAX_DIM,
                   weights: str = "rational", connected: bool = False,
                   min_vertices: int = 2) -> WeightedComplex:
    """Random complex with ``rational`` weights, ``unit`` weights or
    ``normalized`` weights (random facet weights pushed down)."""
    max_vertices = min(max_vertices, MAX_VERTICES)
    for _ in range(1000):
        nv = int(rng.integers(min_vertices, max_vertices + 1))
        K = build_complex(random_facets(rng, nv, max_dim))
        if connected and not is_connected(K):
            continue
        break
    if weights == "unit":
        return K
    w = {f: random_weight(rng) for f in K.weights}
    K = K.with_weights(w)
    if weights == "normalized":
        return normalize_weights(K)
    if weights != "rational":
        raise ValueError(f"unknown weight mode {weights!r}")
    return K


def random_upward_closed(rng: np.random.Generator, K: WeightedComplex, min_dim: int = 0,
                         max_seeds: int = 3) -> set[Simplex]:
    """Star of a few random faces of dimension >= min_dim."""
    pool = [f for f in K.all_faces() if len(f) - 1 >= min_dim]
    if not pool:
        return set()
    k = int(rng.integers(0, min(max_seeds, len(pool)) + 1))
    seeds = [pool[i] for i in rng.choice(len(pool), k, replace=False)]
    return star(K, seeds)


def _subcomplex(face_weights: dict[Simplex, Fraction]) -> WeightedComplex:
    if not face_weights:
        return EMPTY
    return _from_face_set(face_weights, True)


def random_deletion(rng: np.random.Generator, weighting: str = "raw",
                    max_vertices: int = 8) -> tuple[WeightedComplex, WeightedComplex, int]:
    """``(K, H, n)`` with a proper difference matching the weighting's hypotheses."""
    if weighting == "normalized":
        return _normalized_deletion(rng, max_vertices)
    K = random_complex(rng, max_vertices, weights="unit" if weighting == "combinatorial" else "rational")
    n = int(rng.integers(0, max(K.dim, 1)))
    deleted = random_upward_closed(rng, K)
    hw: dict[Simplex, Fraction] = {}
    for f in closure(deleted):
        if f in deleted:
            hw[f] = K.weights[f]
        elif weighting == "combinatorial":
            hw[f] = Fraction(0)
        else:
            hw[f] = K.weights[f] * Fraction(int(rng.integers(0, 4)), 4)
    return K, _subcomplex(hw), n


def _normalized_deletion(rng: np.random.Generator, max_vertices: int):
    K = random_complex(rng, max_vertices, weights="normalized")
    n = int(rng.integers(0, max(K.dim, 1)))
    tops = list(K.n_faces(n + 1))
    k = int(rng.integers(0, len(tops) + 1)) if tops else 0
    chosen = [tops[i] for i in rng.choice(len(tops), k, replace=False)] if k else []
    hw: dict[Simplex, Fraction] = {}
    for g in chosen:
        wk = K.weights[g]
        if K.cofaces(g):
            # keep g positive so its cofaces stay attached
            hw[g] = wk * Fraction(int(rng.integers(1, 4)), 4)
        else:
            hw[g] = wk * Fraction(int(rng.integers(1, 5)), 4)
    for g, w in list(hw.items()):
        for f in facets_of(g):
            hw[f] = hw.get(f, Fraction(0)) + w
    for f in K.n_faces(n):
        if not K.cofaces(f) and rng.random() < 0.3:
            hw[f] = K.weights[f] * Fraction(int(rng.integers(0, 5)), 4)
    for f in closure(hw):
        hw.setdefault(f, Fraction(0))
    return K, _subcomplex(hw), n


def random_courant_weyl(rng: np.random.Generator, max_vertices: int = 8):
    """Unit-weight K and H made of whole (n+1)-faces (and everything above them)."""
    for _ in range(1000):
        K = random_complex(rng, max_vertices, weights="unit")
        if K.dim >= 1:
            break
    n = int(rng.integers(0, K.dim))
    deleted = random_upward_closed(rng, K, min_dim=n + 1)
    hw = {f: Fraction(1) for f in deleted}
    for f in closure(deleted):
        hw.setdefault(f, Fraction(0))
    return K, _subcomplex(hw), n


def random_degenerate(rng: np.random.Generator, max_vertices: int = 8) -> WeightedComplex:
    """Random complex whose zero-weight faces form an upward-closed set."""
    K = random_complex(rng, max_vertices)
    zero = random_upward_closed(rng, K)
    w = {f: (Fraction(0) if f in zero else wt) for f, wt in K.weights.items()}
    return WeightedComplex(K.faces, w, True)


def _lift(rng: np.random.Generator, base: WeightedComplex, sheets: int, cyclic: bool):
    """Permutation-voltage lift; vertex (v, i) becomes ``v * sheets + i``."""
    perm = {}
    for e in base.n_faces(1):
        if cyclic:
            shift = int(rng.integers(0, sheets))
            perm[e] = [(i + shift) % sheets for i in range(sheets)]
        else:
            perm[e] = [int(x) for x in rng.permutation(sheets)]
    faces: set[Simplex] = set()
    for v in base.vertices:
        faces.update((v * sheets + i,) for i in range(sheets))
    for (u, v), p in perm.items():
        faces.update((u * sheets + i, v * sheets + p[i]) for i in range(sheets))
    for u, v, w in base.n_faces(2):
        for i in range(sheets):
            j, k = perm[(u, v)][i], perm[(u, w)][i]
            if perm[(v, w)][j] == k:
                faces.add((u * sheets + i, v * sheets + j, w * sheets + k))
    return faces


def random_covering(rng: np.random.Generator, strong: Optional[bool] = None,
                    max_vertices: int = 12, weights: str = "rational") -> SimplicialMap:
    """Covering map from a connected random lift onto its image in a random base.

    ``strong=True`` uses cyclic voltages and drops nothing; ``False`` uses
    arbitrary permutations and thins duplicated edges.  Weights on the
    source follow ``weights``; the target carries unit weights.
    """
    for _ in range(1000):
        sheets = int(rng.integers(1, 4))
        cap = max(2, max_vertices // sheets)
        base = random_complex(rng, cap, weights="unit", connected=True)
        mode_strong = bool(rng.integers(0, 2)) if strong is None else strong
        faces = _lift(rng, base, sheets, cyclic=mode_strong)
        if not mode_strong:
            faces = _thin_edges(rng, faces, sheets)
        src = _from_face_set({f: Fraction(1) for f in faces}, False)
        if not is_connected(src):
            continue
        vmap = {v: v // sheets for v in src.vertices}
        image = {tuple(sorted({vmap[v] for v in f})) for f in faces}
        target = _from_face_set({g: Fraction(1) for g in image}, False)
        if weights == "rational":
            src = src.with_weights({f: random_weight(rng) for f in src.weights})
        elif weights == "normalized":
            src = normalize_weights(src.with_weights({f: random_weight(rng) for f in src.weights}))
        return SimplicialMap(src, target, vmap)
    raise RuntimeError("could not generate a connected covering")


def _thin_edges(rng: np.random.Generator, faces: set[Simplex], sheets: int) -> set[Simplex]:
    faces = set(faces)
    edges = [f for f in faces if len(f) == 2]
    rng.shuffle(edges)
    for e in edges[: len(edges) // 3]:
        base_edge = tuple(sorted({v // sheets for v in e}))
        copies = [f for f in faces if len(f) == 2 and tuple(sorted({v // sheets for v in f})) == base_edge]
        if len(copies) < 2:
            continue
        trial = {f for f in faces if not set(e) <= set(f)}
        # keep every base triangle covered
        tris = {tuple(sorted({v // sheets for v in f})) for f in faces if len(f) == 3}
        if {tuple(sorted({v // sheets for v in f})) for f in trial if len(f) == 3} != tris:
            continue
        if is_connected(_from_face_set({f: Fraction(1) for f in trial}, False)):
            faces = trial
    return faces


def random_simplicial_map(rng: np.random.Generator, rule: str = "ii",
                          max_vertices: int = 8) -> tuple[SimplicialMap, int]:
    """Vertex-merging map onto the image complex, plus a level n.

    Rule ``i`` instances get normalized source weights.
    """
    K = random_complex(rng, max_vertices, weights="normalized" if rule == "i" else "rational")
    n = int(rng.integers(0, max(K.dim, 1)))
    vs = list(K.vertices)
    merges = int(rng.integers(0, max(1, len(vs) // 2) + 1))
    label = {v: v for v in vs}
    for _ in range(merges):
        a, b = (int(x) for x in rng.choice(vs, 2, replace=False))
        target_label = label[a]
        for v in vs:
            if label[v] == label[b]:
                label[v] = target_label
    image = {tuple(sorted({label[v] for v in f})) for f in K.all_faces()}
    target = _from_face_set({g: Fraction(1) for g in image}, False)
    return SimplicialMap(K, target, label), n


def _legal_contractions(K: WeightedComplex) -> list[ContractionSpec]:
    n = K.dim - 1
    out = []
    for fbar in K.n_faces(n + 1):
        facets = facets_of(fbar)
        for F, Fp in combinations(facets, 2):
            others = [g for g in facets if g not in (F, Fp)]
            if all(K.cofaces(g) == (fbar,) for g in others):
                out.append(ContractionSpec(fbar, F, Fp))
    return out


def random_contraction(rng: np.random.Generator, kind: Optional[str] = None,
                       max_vertices: int = 8, allow_reducible: bool = False):
    """``(K, spec)`` for a legal elementary contraction, optionally of a given type."""
    for _ in range(5000):
        dim = int(rng.integers(1, MAX_DIM + 1))
        K = random_complex(rng, max_vertices, max_dim=dim, weights="unit", min_vertices=dim + 1)
        if K.dim != dim:
            continue
        options = _legal_contractions(K)
        if not options:
            continue
        spec = options[int(rng.integers(0, len(options)))]
        try:
            done = elementary_contraction(K, spec).spec
        except NotContractible:
            continue
        if done.reducible and not allow_reducible:
            continue
        if kind is not None and done.kind != kind:
            continue
        return K, done
    raise RuntimeError("could not generate a contraction")


def free_pairs(K: WeightedComplex) -> list[tuple[Simplex, Simplex]]:
    """All ``(coface, free_face)`` pairs of K."""
    return [(K.cofaces(f)[0], f) for f in K.all_faces() if len(K.cofaces(f)) == 1]


def random_collapse(rng: np.random.Generator, max_vertices: int = 8):
    for _ in range(1000):
        K = random_complex(rng, max_vertices, weights="unit")
        pairs = free_pairs(K)
        if pairs:
            return K, pairs[int(rng.integers(0, len(pairs)))]
    raise RuntimeError("could not generate a collapsible complex")


def random_relative(rng: np.random.Generator, max_vertices: int = 8):
    """``(K, K0, n)`` with K0 the closure of random n-faces, sharing K's weights."""
    K = random_complex(rng, max_vertices)
    n = int(rng.integers(0, K.dim + 1))
    faces = list(K.n_faces(n))
    k = int(rng.integers(0, len(faces) + 1))
    chosen = [faces[i] for i in rng.choice(len(faces), k, replace=False)] if k else []
    sub = closure(chosen)
    K0 = _from_face_set({f: K.weights[f] for f in sub}, False) if sub else EMPTY
    return K, K0, n


def complete_graph(N: int) -> WeightedComplex:
    return build_complex(list(combinations(range(N), 2)) if N > 1 else [(0,)])


def cycle(N: int) -> WeightedComplex:
    return build_complex([(i, (i + 1) % N) for i in range(N)])


def cyclic_double_cover(m: int) -> SimplicialMap:
    """``C_{2m} -> C_m`` by reduction mod m."""
    return SimplicialMap(cycle(2 * m), cycle(m), {i: i % m for i in range(2 * m)})
