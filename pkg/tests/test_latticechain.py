from __future__ import annotations

import pytest

from artifact.coeffring import localize_pin, s1zp
from artifact.errors import NotReflective
from artifact.gradedroot import root_from_seifert
from artifact.latticechain import build_pin2_chain, build_s1zp_chain, reference_module, same_module
from artifact.plumbing import SIGMA_2_3_19, SIGMA_3_5_19


def test_pin2_chain_matches_hand_entered_module():
    root = root_from_seifert(SIGMA_3_5_19, 2)
    assert same_module(build_pin2_chain(root.twist(1)), reference_module()) == []


def test_untwisted_chain_differs_only_by_relabelling():
    root = root_from_seifert(SIGMA_3_5_19, 2)
    diffs = same_module(build_pin2_chain(root), reference_module())
    assert diffs and all("->" in d for d in diffs)


@pytest.mark.parametrize("side", ["negative", "positive"])
def test_both_q2_sides_are_complexes(side):
    root = root_from_seifert(SIGMA_3_5_19, 2).twist(1)
    m = build_pin2_chain(root, q2_side=side)
    assert m.is_chain_complex()
    assert localize_pin(m).is_swf_type()


def test_non_reflective_root_rejected():
    with pytest.raises(NotReflective):
        build_pin2_chain(root_from_seifert(SIGMA_2_3_19, 2))


def test_s1zp_chain_at_p_127():
    m = build_s1zp_chain(root_from_seifert(SIGMA_3_5_19), 127)
    ring = s1zp(127)
    U, S = ring.var("U"), ring.var("S")
    assert m.entry("x_0", "y_{-1}") == U + S * 58
    assert m.entry("x_0", "y_1") == U + S * 60
    assert m.d_of(m.index("x_{-5}")) == {m.index("y_{-5}"): U}
    assert m.is_chain_complex()


def test_degrees_of_m():
    m = reference_module()
    deg = dict(zip(m.names, m.degrees))
    assert deg["x_0"] == 0 and deg["x_5"] == -12 and deg["y_{-4}"] == -7


@pytest.mark.parametrize("p", [2, 3, 17, 127])
def test_s1zp_chains_square_to_zero(p):
    for s in (SIGMA_2_3_19, SIGMA_3_5_19):
        assert build_s1zp_chain(root_from_seifert(s), p).is_chain_complex()
