"""Generated instances satisfy the hypotheses of the check they feed."""
import numpy as np
from hypothesis import given

from scx import generators as gen
from scx.cochain import is_normalized_at
from scx.complex import is_connected, is_pure, is_subcomplex, nonzero_part, proper_difference, skeleton
from scx.transforms import is_covering

from strategies import seeds


def rng(seed):
    return np.random.default_rng(seed)


@given(seeds)
def test_random_complexes_respect_limits(seed):
    K = gen.random_complex(rng(seed), 12)
    assert 2 <= K.num_vertices <= 12 and K.dim <= 2
    assert all(w > 0 for w in K.weights.values())
    assert is_connected(gen.random_complex(rng(seed), 8, connected=True))


@given(seeds)
def test_deletions_are_proper(seed):
    for weighting in ("raw", "combinatorial", "normalized"):
        K, H, n = gen.random_deletion(rng(seed), weighting, max_vertices=12)
        assert is_subcomplex(H, K)
        L = proper_difference(K, H)
        if weighting == "combinatorial":
            assert all(w in (0, 1) for w in L.weights.values())
        if weighting == "normalized":
            assert is_normalized_at(skeleton(L, n + 1), n)


@given(seeds)
def test_degenerate_complexes_have_a_positive_subcomplex(seed):
    K = gen.random_degenerate(rng(seed))
    nonzero_part(K)


@given(seeds)
def test_coverings_both_modes(seed):
    for strong in (True, False):
        phi = gen.random_covering(rng(seed), strong=strong)
        assert is_covering(phi) and phi.source.num_vertices <= 12


@given(seeds)
def test_relative_pairs_are_pure(seed):
    K, K0, n = gen.random_relative(rng(seed))
    assert not K0.count(0) or is_pure(K0, n)
    assert all(K.weights[f] == w for f, w in K0.weights.items())


@given(seeds)
def test_collapse_pairs_are_free(seed):
    K, (coface, free) = gen.random_collapse(rng(seed))
    assert K.cofaces(free) == (coface,) and not K.cofaces(coface)


def test_same_seed_same_instance():
    a = gen.random_deletion(rng(7), "raw")
    b = gen.random_deletion(rng(7), "raw")
    assert a == b


def test_fixed_families():
    assert gen.complete_graph(5).count(1) == 10
    assert gen.cycle(6).count(1) == 6
    assert gen.cyclic_double_cover(4).vertex_map[7] == 3
