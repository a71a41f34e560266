from fractions import Fraction

import pytest
from hypothesis import given

from scx.complex import (
    WeightedComplex,
    boundary_sign,
    build_complex,
    closure,
    complex_from_faces,
    facets_of,
    is_connected,
    is_n_path_connected,
    is_pure,
    is_subcomplex,
    nonzero_part,
    proper_difference,
    simplex,
    skeleton,
    star,
)
from scx.errors import (
    EmptyFacet,
    NegativeWeight,
    NotAComplex,
    NotAFacet,
    NotASubcomplex,
    NotProper,
)

from strategies import complexes, degenerate_complexes


def test_closure_and_lexicographic_bases():
    K = build_complex([(2, 0, 1), (3, 2)])
    assert K.n_faces(0) == ((0,), (1,), (2,), (3,))
    assert K.n_faces(1) == ((0, 1), (0, 2), (1, 2), (2, 3))
    assert K.n_faces(2) == ((0, 1, 2),)
    assert K.dim == 2 and len(K) == 9
    assert K.maximal_faces() == [(2, 3), (0, 1, 2)]
    assert K.cofaces((2,)) == ((0, 2), (1, 2), (2, 3))


def test_simplex_canonical_form():
    assert simplex([3, 1, 1, 2]) == (1, 2, 3)
    with pytest.raises(EmptyFacet):
        simplex([])
    with pytest.raises(ValueError):
        simplex([-1, 2])


@pytest.mark.parametrize("face, sign", [((1, 2), 1), ((0, 2), -1), ((0, 1), 1)])
def test_boundary_sign_alternates(face, sign):
    assert boundary_sign(face, (0, 1, 2)) == sign


def test_boundary_sign_rejects_non_facets():
    with pytest.raises(NotAFacet):
        boundary_sign((0,), (0, 1, 2))
    with pytest.raises(NotAFacet):
        boundary_sign((0, 3), (0, 1, 2))


def test_weights_must_be_non_negative_and_on_faces():
    with pytest.raises(NegativeWeight):
        build_complex([(0, 1)], {(0, 1): -1})
    with pytest.raises(NegativeWeight):
        build_complex([(0, 1)], {(0,): 0})
    with pytest.raises(NotAComplex):
        build_complex([(0, 1)], {(1, 2): 1})
    K = build_complex([(0, 1)], {(0,): 0}, degenerate_allowed=True)
    assert K.is_degenerate() and K.zero_weight_faces(0) == [(0,)]


def test_exact_rational_weights():
    K = build_complex([(0, 1)], {(0, 1): "1/3"}, default_weight=Fraction(2))
    assert K.weight((0, 1)) == Fraction(1, 3)
    assert K.weight((0,)) == 2


def test_complex_from_faces_requires_closure():
    with pytest.raises(NotAComplex):
        complex_from_faces({(0, 1): 1, (0,): 1})
    K = complex_from_faces({(0, 1): 1, (0,): 1, (1,): 2})
    assert K.weight((1,)) == 2


def test_proper_difference_of_edge_deletion():
    K = build_complex([(0, 1), (1, 2), (0, 2)])
    H = complex_from_faces({(0, 1): 1, (0,): 0, (1,): 0}, True)
    L = proper_difference(K, H)
    assert L.weight((0, 1)) == 0 and L.weight((0,)) == 1
    assert nonzero_part(L).n_faces(1) == ((0, 2), (1, 2))


def test_proper_difference_errors():
    K = build_complex([(0, 1)])
    with pytest.raises(NotASubcomplex):
        proper_difference(K, complex_from_faces({(0,): 2}))
    # removing a vertex but keeping its edge leaves a non-complex
    with pytest.raises(NotProper):
        proper_difference(K, complex_from_faces({(0,): 1}))


def test_path_connectivity():
    shared_edge = build_complex([(0, 1, 2), (1, 2, 3)])
    shared_vertex = build_complex([(0, 1, 2), (2, 3, 4)])
    assert is_n_path_connected(shared_edge, 1)
    assert not is_n_path_connected(shared_vertex, 1)
    assert is_n_path_connected(shared_vertex, 0)
    assert is_connected(shared_vertex)
    assert not is_connected(build_complex([(0, 1), (2, 3)]))


def test_purity_skeleton_star():
    K = build_complex([(0, 1, 2), (2, 3)])
    assert not is_pure(K, 2)
    assert is_pure(skeleton(K, 1), 1)
    assert star(K, [(2, 3)]) == {(2, 3)}
    assert star(K, [(3,)]) == {(3,), (2, 3)}
    assert closure([(0, 1)]) == {(0,), (1,), (0, 1)}


@given(complexes())
def test_built_complexes_are_closed_and_sorted(K):
    for d in range(K.dim + 1):
        assert list(K.n_faces(d)) == sorted(K.n_faces(d))
        for f in K.n_faces(d):
            assert all(g in K for g in facets_of(f))
            assert all(f in K.cofaces(g) for g in facets_of(f))
            assert K.index(f) == K.n_faces(d).index(f)


@given(degenerate_complexes())
def test_subtracting_zero_part_is_proper(L):
    zero = WeightedComplex(L.faces, {f: (w if w == 0 else Fraction(0)) for f, w in L.weights.items()}, True)
    assert is_subcomplex(zero, L)
    assert proper_difference(L, zero).weights == L.weights
    P = nonzero_part(L)
    assert all(w > 0 for w in P.weights.values())
