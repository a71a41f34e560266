from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given

from scx import generators as gen
from scx.cochain import normalize_weights, up_laplacian
from scx.complex import build_complex, complex_from_faces
from scx.errors import HypothesisError, NotACovering, NotASubcomplex, NotFree, NotPure, NotStrong
from scx.fixtures import (
    triangle_two_pendants,
    two_pendant_subcomplex,
    hexagon_to_triangle,
    path,
    path_to_triangle_pendant,
)
from scx.interlacing import (
    collapsed_image_count,
    deletion_shifts,
    max_eigenvalue_bound,
    ratio_constants,
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
from scx.complex import proper_difference
from scx.transforms import ContractionSpec, SimplicialMap

from strategies import seeds

EMPTY = gen.EMPTY


def edge_without_vertices(a, b, weight=1):
    return complex_from_faces({(a, b): weight, (a,): 0, (b,): 0}, True)


def close(xs, ys):
    return np.allclose(np.asarray(xs, dtype=float), np.asarray(ys, dtype=float), atol=1e-9)


def test_deletion_of_an_edge_from_a_triangle():
    K = gen.cycle(3)
    rep = verify_deletion(K, edge_without_vertices(0, 1), 0, "combinatorial")
    assert rep.shifts["D_W"] == 1 and rep.shifts["D_H"] == 2
    assert close(rep.lambdas, [0, 3, 3]) and close(rep.thetas, [0, 1, 3])
    assert rep.passed


def test_deleting_nothing_changes_nothing():
    K = triangle_two_pendants()
    rep = verify_deletion(K, EMPTY, 0, "combinatorial")
    assert rep.shifts["D_W"] == 0 and rep.shifts["D_H"] == 0
    assert rep.lambdas == rep.thetas and rep.passed


def test_pendant_deletion_shifts_by_one():
    star = build_complex([(0, 1), (0, 2), (0, 3)])
    H = complex_from_faces({(0, 3): 1, (3,): 1, (0,): 0}, True)
    rep = verify_deletion(star, H, 0, "combinatorial")
    assert rep.shifts["D_W"] == 1
    assert all(r.lower_index == r.k - 1 for r in rep.records)
    assert rep.passed


def test_deletion_hypotheses_are_checked():
    K = build_complex([(0, 1)], {(0, 1): 2})
    with pytest.raises(HypothesisError):
        verify_deletion(K, EMPTY, 0, "combinatorial")
    with pytest.raises(HypothesisError):
        verify_deletion(K, EMPTY, 0, "normalized")
    with pytest.raises(ValueError):
        verify_deletion(K, EMPTY, 0, "bogus")


def test_raw_deletion_skips_upper_bound_past_n_minus_d_h():
    K = gen.cycle(3)
    rep = verify_deletion(K, edge_without_vertices(0, 1), 0, "raw")
    # N = 3, D_H = 2: only k = 1 gets an upper check
    assert [r.upper_index for r in rep.records] == [3, None, None]


def test_deletion_shift_counts_zero_weight_faces():
    assert deletion_shifts(edge_without_vertices(0, 1), 0) == (1, 2)


def test_ratio_bounds_with_unchanged_weights():
    K = gen.cycle(3)
    zero = complex_from_faces({(0,): 0}, True)
    rep = verify_ratio_bounds(K, zero, 0)
    assert rep.shifts["min_ratio"] == "1" and rep.shifts["max_ratio"] == "1"
    assert rep.shifts["D_Z"] == 1
    assert rep.lambdas == rep.thetas and rep.passed


def test_ratio_bounds_with_half_weight_edge():
    K = gen.cycle(3)
    H = edge_without_vertices(0, 1, Fraction(1, 2))
    L = proper_difference(K, H)
    d_z, lo, hi = ratio_constants(K, L, 0)
    assert (d_z, lo, hi) == (1, Fraction(1, 2), Fraction(1))
    rep = verify_ratio_bounds(K, H, 0)
    # unit vertices, so the matrix is already symmetric
    oracle = np.linalg.eigvalsh(np.array([[1.5, -0.5, -1], [-0.5, 1.5, -1], [-1, -1, 2]]))
    assert close(oracle, rep.thetas)
    assert rep.passed


def test_ratio_lower_bound_counterexample():
    # K4 minus a triangle's edges leaves a star; the stated lower bound fails at k = 3
    K = gen.complete_graph(4)
    H = complex_from_faces({(0, 1): 1, (0, 2): 1, (1, 2): 1, (0,): 0, (1,): 0, (2,): 0}, True)
    rep = verify_ratio_bounds(K, H, 0)
    assert close(rep.lambdas, [0, 4, 4, 4]) and close(rep.thetas, [0, 1, 1, 4])
    assert rep.shifts["D_Z"] == 1
    assert rep.upper_passed and not rep.lower_passed
    assert [r.k for r in rep.failures()] == [3]


def test_ratio_bound_without_positive_top_faces_is_noted():
    K = build_complex([(0, 1)])
    rep = verify_ratio_bounds(K, edge_without_vertices(0, 1), 0)
    assert any("lower bound vacuous" in note for note in rep.notes)
    assert all(r.lower_index is None for r in rep.records)


def test_courant_weyl_on_square_minus_edge():
    rep = verify_courant_weyl(gen.cycle(4), edge_without_vertices(0, 1), 0)
    assert close(rep.lambdas, [0, 2, 2, 4])
    assert close(rep.thetas, sorted(2 - 2 * np.cos(k * np.pi / 4) for k in range(4)))
    assert rep.passed
    with pytest.raises(HypothesisError):
        verify_courant_weyl(gen.cycle(4), complex_from_faces({(0,): Fraction(1, 2)}, True), 0)


def test_max_bound_is_tight_on_complete_graphs():
    for N in (2, 4, 7):
        rep = verify_max_bound(gen.complete_graph(N), "combinatorial")
        assert rep.passed
        assert abs(rep.records[0].theta - N) < 1e-9


def test_max_bound_single_vertex():
    rep = verify_max_bound(build_complex([(0,)]), "combinatorial")
    assert rep.thetas == (0.0,) and rep.records[0].upper == 1.0 and rep.passed


def test_max_bound_scales_with_large_weights():
    K = build_complex([(0, 1)], {(0, 1): 10, (0,): 10, (1,): 10})
    assert max_eigenvalue_bound(K, 0, "raw") == 2 * 10 / 10
    assert verify_max_bound(K, "raw").passed
    assert max_eigenvalue_bound(K, 1, "normalized") == 3


@given(seeds)
def test_max_bound_on_random_weights(seed):
    K = gen.random_complex(np.random.default_rng(seed), 10)
    assert verify_max_bound(K, "raw").passed
    assert verify_max_bound(K, "normalized").passed


def test_covering_examples():
    for phi in (hexagon_to_triangle(), path_to_triangle_pendant()):
        assert verify_covering(phi, 0).passed
    weighted = hexagon_to_triangle()
    weighted = weighted.with_source(weighted.source.with_weights({(0, 1): 3, (2, 3): Fraction(1, 2)}))
    assert verify_covering(weighted, 0).passed


def test_identity_covering_has_equal_spectra():
    K = triangle_two_pendants()
    rep = verify_covering(SimplicialMap(K, K, {v: v for v in K.vertices}), 1)
    assert close(rep.lambdas, rep.thetas) and rep.passed


def test_covering_verifier_rejects_non_coverings():
    phi = SimplicialMap(path(3), build_complex([(0,)]), {1: 0, 2: 0, 3: 0})
    with pytest.raises(NotACovering):
        verify_covering(phi, 0)


def test_strong_inclusion_on_hexagon():
    comb = verify_strong_cover_inclusion(hexagon_to_triangle(), 0, "combinatorial")
    assert close(comb.target_spectrum, [0, 3, 3]) and close(comb.source_spectrum, [0, 1, 1, 3, 3, 4])
    norm = verify_strong_cover_inclusion(hexagon_to_triangle(), 0, "normalized")
    assert close(norm.target_spectrum, [0, 1.5, 1.5])
    assert close(norm.source_spectrum, [0, 0.5, 0.5, 1.5, 1.5, 2])
    assert comb.contained and norm.contained and comb.strong


def test_strong_inclusion_fails_for_path_cover():
    rep = verify_strong_cover_inclusion(path_to_triangle_pendant(), 0)
    assert not rep.strong and not rep.contained and rep.evidence
    with pytest.raises(NotStrong):
        verify_strong_cover_inclusion(path_to_triangle_pendant(), 0, evidence=False)


@pytest.mark.parametrize("m", [3, 4, 5])
def test_cyclic_double_covers(m):
    for flavor in ("combinatorial", "normalized"):
        assert verify_strong_cover_inclusion(gen.cyclic_double_cover(m), 0, flavor).contained


def test_map_collapsing_an_edge_of_a_triangle():
    phi = SimplicialMap(gen.cycle(3), build_complex([(0, 1)]), {0: 0, 1: 0, 2: 1})
    assert collapsed_image_count(phi, 0) == 1
    two = verify_simplicial_map(phi, 0, "ii")
    assert two.shifts["z"] == 0 and two.passed
    one = verify_simplicial_map(phi.with_source(normalize_weights(phi.source)), 0, "i")
    assert one.shifts["z"] == 1 and one.passed
    with pytest.raises(HypothesisError):
        verify_simplicial_map(phi.with_source(phi.source.with_weights({(0,): 5})), 0, "i")


def test_identity_map_under_both_rules():
    K = normalize_weights(triangle_two_pendants())
    phi = SimplicialMap(K, K, {v: v for v in K.vertices})
    for rule in ("i", "ii"):
        rep = verify_simplicial_map(phi, 0, rule)
        assert close(rep.lambdas, rep.thetas) and rep.shifts["z"] == 0


def test_contract_square_to_triangle():
    rep = verify_contraction(gen.cycle(4), ContractionSpec((0, 1), (1,), (0,)))
    assert rep.shifts["type"] == "ii"
    assert close(rep.lambdas, [0, 2, 2, 4]) and close(rep.thetas, [0, 3, 3])
    assert rep.passed


def test_contract_triangle_to_edge():
    rep = verify_contraction(gen.cycle(3), ContractionSpec((0, 1), (1,), (0,)))
    assert rep.shifts["type"] == "i" and rep.shifts["m"] == 1
    assert close(rep.lambdas, [0, 3, 3]) and close(rep.thetas, [0, 2])
    assert [r.lower_index for r in rep.records] == [-1, 0]
    assert rep.passed


def test_reducible_contraction_routes_to_collapse():
    K = build_complex([(0, 1, 2), (0, 2, 3)])
    rep = verify_contraction(K, ContractionSpec((0, 1, 2), (0, 1), (0, 2)))
    assert rep.theorem.startswith("collapse") and "reducible" in rep.notes[0]


def test_collapse_of_path_end():
    rep = verify_collapse(path(3), ((2, 3), (3,)))
    assert close(rep.lambdas, [0, 1, 3]) and close(rep.thetas, [0, 2])
    assert [r.upper_index for r in rep.records] == [4, 5]
    assert rep.passed


def test_collapse_of_triangle_through_edge():
    for flavor in ("combinatorial", "normalized"):
        rep = verify_collapse(triangle_two_pendants(), ((1, 2, 3), (1, 2)), flavor)
        assert rep.n == 1 and rep.passed


def test_collapse_down_to_a_single_face():
    rep = verify_collapse(build_complex([(0, 1)]), ((0, 1), (1,)))
    assert rep.thetas == (0.0,) and rep.passed
    with pytest.raises(NotFree):
        verify_collapse(build_complex([(0,)]), ((0,), (0,)))


def test_relative_pair_at_level_one():
    rep = verify_relative(triangle_two_pendants(), two_pendant_subcomplex(), 1)
    assert close(rep.lambdas, [0, 0, 0, 0, 3]) and close(rep.thetas, [0, 0, 2])
    assert rep.shifts["N_K"] - rep.shifts["N_L"] == 2 and rep.passed


def test_relative_with_empty_subcomplex():
    rep = verify_relative(triangle_two_pendants(), EMPTY, 0)
    assert rep.lambdas == rep.thetas and rep.passed


def test_relative_preconditions():
    K = triangle_two_pendants()
    with pytest.raises(NotPure):
        verify_relative(K, two_pendant_subcomplex(), 0)
    with pytest.raises(NotASubcomplex):
        verify_relative(K, build_complex([(1, 2)], {(1, 2): 2}), 1)


@given(seeds)
def test_relative_agrees_with_cauchy_oracle(seed):
    K, K0, n = gen.random_relative(np.random.default_rng(seed))
    rep = verify_relative(K, K0, n)
    assert rep.extra_ok and not rep.notes and rep.passed


def test_reports_serialize():
    rep = verify_deletion(gen.cycle(3), edge_without_vertices(0, 1), 0, "combinatorial")
    d = rep.to_dict()
    assert d["passed"] is True and len(d["records"]) == 3
    assert d["records"][1]["lower_index"] == 1
