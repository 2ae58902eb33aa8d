from __future__ import annotations

import random
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from artifact.errors import CardinalityMismatch, NonCoprime, NotNegativeDefinite, OutOfRange
from artifact.linalg import det_fraction_free
from artifact.plumbing import (
    SIGMA_2_3_19,
    SIGMA_3_5_19,
    SeifertData,
    build_plumbing,
    canonical_class,
    eval_neg_cont_frac,
    intersection_matrix,
    is_negative_definite,
    n_hat,
    n_y,
    neg_cont_frac,
    random_homology_sphere,
    random_seifert,
    seifert_from_plumbing,
    si_red_enumerate,
    si_red_full_range,
    wu_cycle,
)

POINCARE = SeifertData(-2, ((2, 1), (3, 2), (5, 4)))


@st.composite
def coprime_pair(draw):
    p = draw(st.integers(2, 60))
    q = draw(st.integers(1, p - 1).filter(lambda q: Fraction(q, p).denominator == p))
    return p, q


@given(coprime_pair())
def test_continued_fraction_roundtrip(pq):
    p, q = pq
    ks = neg_cont_frac(p, q)
    assert all(k >= 2 for k in ks)
    assert eval_neg_cont_frac(ks) == Fraction(p, q)


def test_known_expansions():
    assert neg_cont_frac(19, 3) == [7, 2, 2]
    assert neg_cont_frac(5, 2) == [3, 2]


def test_plumbing_of_sigma_2_3_19():
    g = build_plumbing(SIGMA_2_3_19)
    assert g.weights == (-1, -2, -3, -7, -2, -2)
    assert is_negative_definite(g)
    assert seifert_from_plumbing(g) == SIGMA_2_3_19


@pytest.mark.parametrize("s, ny", [(SIGMA_2_3_19, 13), (SIGMA_3_5_19, 118), (POINCARE, -1)])
def test_n_y_and_canonical_coefficient(s, ny):
    assert n_y(s) == ny
    g = build_plumbing(s)
    _, k = canonical_class(g)
    assert k.coeffs[g.central] == -ny - 1


def test_homology_sphere_order():
    for s in (SIGMA_2_3_19, SIGMA_3_5_19, POINCARE):
        assert s.h1_order == 1
        assert abs(det_fraction_free(intersection_matrix(build_plumbing(s)))) == 1


@pytest.mark.parametrize("s, central", [(SIGMA_2_3_19, 7), (SIGMA_3_5_19, 60)])
def test_wu_cycle_central_multiplicity(s, central):
    g = build_plumbing(s)
    lam, x = wu_cycle(g)
    assert x.coeffs[g.central] == central
    _, k = canonical_class(g)
    assert [l - kk for l, kk in zip(lam.coeffs, k.coeffs)] == [2 * c for c in x.coeffs]


def test_n_hat():
    assert n_hat(118) == 60
    assert n_hat(13) == 7


def test_input_errors():
    with pytest.raises(NonCoprime):
        SeifertData(-1, ((4, 2), (3, 1)))
    with pytest.raises(OutOfRange):
        SeifertData(-1, ((3, 3),))
    with pytest.raises(NotNegativeDefinite):
        SeifertData(0, ((2, 1), (3, 1)))


def test_si_red_default_range_can_miss():
    s = SeifertData(-1, ((7, 2), (7, 4)))
    with pytest.raises(CardinalityMismatch):
        si_red_enumerate(s)
    assert len(si_red_enumerate(s, si_red_full_range(s))) == s.h1_order


def test_si_red_cardinality_random():
    rng = random.Random(11)
    for _ in range(40):
        s = random_seifert(rng, max_p=8)
        g = build_plumbing(s)
        det = abs(det_fraction_free(intersection_matrix(g)))
        assert len(si_red_enumerate(s, si_red_full_range(s))) == det == s.h1_order


def test_random_homology_spheres_are_spheres():
    rng = random.Random(2)
    for _ in range(20):
        s = random_homology_sphere(rng, max_p=13)
        assert s.h1_order == 1
        assert isinstance(n_y(s), int)


def test_dot_rendering():
    dot = build_plumbing(POINCARE).to_dot()
    assert dot.startswith("graph plumbing {") and dot.endswith("}")
    assert dot.count("--") == 7  # the E8 tree
