"""Worked examples with known answers, shared by ``scx selftest`` and the tests."""
from __future__ import annotations

from fractions import Fraction
from typing import Callable

import numpy as np

from .cochain import relative_laplacian, up_laplacian
from .complex import WeightedComplex, build_complex
from .generators import cycle
from .interlacing import verify_collapse, verify_relative, verify_strong_cover_inclusion
from .transforms import (
    SimplicialMap,
    apply_map,
    covering_degree,
    elementary_collapse,
    is_covering,
    is_strong_covering,
)

# triangle 123 with two pendant edges at vertex 3
TWO_PENDANT_FACETS = [(1, 2, 3), (3, 4), (3, 5)]
TWO_PENDANT_SUBCOMPLEX = [(1, 2), (3, 4)]

UP0_TWO_PENDANT = [
    [2, -1, -1, 0, 0],
    [-1, 2, -1, 0, 0],
    [-1, -1, 4, -1, -1],
    [0, 0, -1, 1, 0],
    [0, 0, -1, 0, 1],
]
# basis 12, 13, 23, 34, 35
UP1_TWO_PENDANT = [
    [1, -1, 1, 0, 0],
    [-1, 1, -1, 0, 0],
    [1, -1, 1, 0, 0],
    [0, 0, 0, 0, 0],
    [0, 0, 0, 0, 0],
]
RELATIVE_UP0 = [[1]]
# basis 13, 23, 35
RELATIVE_UP1 = [[1, -1, 0], [-1, 1, 0], [0, 0, 0]]

PATH_FIVE_TWO_DECIMALS = (0.0, 0.38, 1.38, 2.61, 3.61)
TRIANGLE_PENDANT_SPECTRUM = (0.0, 1.0, 3.0, 4.0)
TWO_DECIMAL_TOL = 5e-3


def triangle_two_pendants() -> WeightedComplex:
    return build_complex(TWO_PENDANT_FACETS)


def two_pendant_subcomplex() -> WeightedComplex:
    return build_complex(TWO_PENDANT_SUBCOMPLEX)


def path(n: int) -> WeightedComplex:
    return build_complex([(i, i + 1) for i in range(1, n)])


def triangle_with_pendant() -> WeightedComplex:
    # vertices 1', 2', 3', 5' written as 1, 2, 3, 5
    return build_complex([(1, 2), (2, 3), (1, 3), (1, 5)])


def path_to_triangle_pendant() -> SimplicialMap:
    return SimplicialMap(path(5), triangle_with_pendant(), {1: 1, 4: 1, 2: 2, 3: 3, 5: 5})


def hexagon_to_triangle() -> SimplicialMap:
    return SimplicialMap(cycle(6), cycle(3), {i: i % 3 for i in range(6)})


def path_closed_form(n: int) -> list[float]:
    """Laplacian eigenvalues of the path on n vertices: ``2 - 2 cos(k pi / n)``."""
    return sorted(2 - 2 * np.cos(k * np.pi / n) for k in range(n))


def _exact(lap) -> list[list[Fraction]]:
    return [list(r) for r in lap.exact]


def _checks() -> list[tuple[str, Callable[[], tuple[bool, str]]]]:
    K, K0 = triangle_two_pendants(), two_pendant_subcomplex()

    def up0():
        return _exact(up_laplacian(K, 0)) == UP0_TWO_PENDANT, ""

    def up1():
        return _exact(up_laplacian(K, 1)) == UP1_TWO_PENDANT, ""

    def rel():
        ok0 = _exact(relative_laplacian(K, K0, 0)) == RELATIVE_UP0
        ok1 = _exact(relative_laplacian(K, K0, 1)) == RELATIVE_UP1
        return ok0 and ok1, ""

    def rel_window():
        rep = verify_relative(K, K0, 1)
        return rep.passed, "theta " + " ".join(f"{x:.3g}" for x in rep.thetas)

    def p5_spectrum():
        # the two-decimal reference list is cut, not rounded, to two decimals
        vals = up_laplacian(path(5), 0).spectrum().values
        closed = float(np.max(np.abs(vals - np.array(path_closed_form(5)))))
        cut = tuple(float(np.floor(max(v, 0.0) * 100 + 1e-9) / 100) for v in vals)
        dev = float(np.max(np.abs(vals - np.array(PATH_FIVE_TWO_DECIMALS))))
        ok = closed <= 1e-6 and bool(np.allclose(cut, PATH_FIVE_TWO_DECIMALS, atol=1e-12))
        return ok, f"closed-form error {closed:.1e}, distance to reference {dev:.2e}"

    def tpp_spectrum():
        vals = up_laplacian(triangle_with_pendant(), 0).spectrum().values
        return bool(np.allclose(vals, TRIANGLE_PENDANT_SPECTRUM, atol=1e-9)), ""

    def p5_cover():
        phi = path_to_triangle_pendant()
        return is_covering(phi) and not is_strong_covering(phi), "covering, not strong"

    def p5_inclusion():
        rep = verify_strong_cover_inclusion(path_to_triangle_pendant(), 0)
        return not rep.contained, "inclusion fails as expected"

    def hexagon():
        phi = hexagon_to_triangle()
        weights = apply_map(phi, "ii").weights
        ok = is_covering(phi) and is_strong_covering(phi) and covering_degree(phi) == 2
        return ok and all(w == 2 for w in weights.values()), "degree 2, induced weights 2"

    def hexagon_inclusion():
        phi = hexagon_to_triangle()
        ok = all(verify_strong_cover_inclusion(phi, 0, f).contained
                 for f in ("combinatorial", "normalized"))
        return ok, ""

    def collapse_edges():
        out = elementary_collapse(K, (1, 2, 3), (1, 2))
        return out.n_faces(1) == ((1, 3), (2, 3), (3, 4), (3, 5)) and out.dim == 1, ""

    def collapse_window():
        rep = verify_collapse(K, ((1, 2, 3), (1, 2)))
        return rep.passed, ""

    def max_bound():
        vals = up_laplacian(K, 0).spectrum().values
        return float(vals[-1]) <= K.num_vertices + 1e-9, f"max {vals[-1]:.4g} <= {K.num_vertices}"

    return [
        ("example complex: up-Laplacian, level 0", up0),
        ("example complex: up-Laplacian, level 1", up1),
        ("example pair: relative up-Laplacians", rel),
        ("example pair: relative interlacing window", rel_window),
        ("path P5: two-decimal eigenvalues", p5_spectrum),
        ("triangle with pendant: eigenvalues 0,1,3,4", tpp_spectrum),
        ("P5 onto triangle with pendant: covering, not strong", p5_cover),
        ("P5 onto triangle with pendant: inclusion fails", p5_inclusion),
        ("hexagon onto triangle: strong covering of degree 2", hexagon),
        ("hexagon onto triangle: spectrum inclusion", hexagon_inclusion),
        ("collapse of triangle 123 through edge 12", collapse_edges),
        ("collapse window at level 1", collapse_window),
        ("unit weights: largest eigenvalue at most |V|", max_bound),
    ]


def run_selftest() -> list[tuple[str, bool, str]]:
    results = []
    for name, check in _checks():
        try:
            ok, detail = check()
        except Exception as exc:  # report, keep going
            ok, detail = False, f"{type(exc).__name__}: {exc}"
        results.append((name, bool(ok), detail))
    return results
