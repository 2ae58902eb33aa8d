from __future__ import annotations

import json
from importlib import resources

import pytest
from hypothesis import given, strategies as st

from artifact.errors import NotEventuallyIncreasing
from artifact.gradedroot import (
    GroupRingElt,
    LabelledGradedRoot,
    angle_indices,
    leaf_indices,
    root_from_sequence,
    root_from_seifert,
)
from artifact.plumbing import SIGMA_2_3_19, SIGMA_3_5_19, SeifertData

KEEP = ("leaf", "i", "lambda_V", "angle", "angle_i", "lambda_A")


def golden(name):
    return json.loads(resources.files("artifact").joinpath("golden", f"{name}.json").read_text())


@pytest.mark.parametrize("name", ["labels_sigma_2_3_19", "labels_sigma_3_5_19", "labels_sigma_3_5_19_p2"])
def test_label_tables_verbatim(name):
    ref = golden(name)
    s = SeifertData(ref["seifert"]["e0"], tuple(tuple(a) for a in ref["seifert"]["arms"]))
    rows = [{k: r[k] for k in KEEP if k in r} for r in root_from_seifert(s, ref["p"]).table()]
    assert rows == ref["rows"]


def test_sigma_3_5_19_last_leaf():
    rows = root_from_seifert(SIGMA_3_5_19, 2).table()
    assert rows[-1]["leaf"] == "v_5" and rows[-1]["i"] == 119 and rows[-1]["lambda_V"] == "0"


def test_structural_checks_pass():
    for s in (SIGMA_2_3_19, SIGMA_3_5_19):
        for p in (None, 2, 127):
            assert root_from_seifert(s, p).check() == []


def test_reflective_flags():
    assert root_from_seifert(SIGMA_3_5_19, 2).is_reflective()
    assert not root_from_seifert(SIGMA_2_3_19, 2).is_reflective()


def test_symmetrize_centre():
    sym = root_from_seifert(SIGMA_3_5_19, 2).symmetrize()
    assert sym.center == "leaf" and sym.index == 5


def test_twist_is_an_equivalence():
    root = root_from_seifert(SIGMA_3_5_19, 2)
    tw = root.twist(1)
    assert tw != root
    assert tw.equivalent(root)
    assert tw.twist(1) == root


def test_json_roundtrip():
    for p in (None, 2):
        root = root_from_seifert(SIGMA_3_5_19, p)
        assert LabelledGradedRoot.from_json(json.loads(json.dumps(root.to_json()))) == root


def test_dot_is_stable_and_balanced():
    root = root_from_seifert(SIGMA_2_3_19, 2)
    a, b = root.to_dot(), root.to_dot()
    assert a == b and a.startswith("digraph") and a.count("{") == a.count("}")


def test_names():
    assert leaf_indices(4) == [-2, -1, 1, 2]
    assert leaf_indices(3) == [-1, 0, 1]
    assert angle_indices(4) == [-2, 0, 2]
    assert angle_indices(3) == [-1, 1]


@given(st.dictionaries(st.integers(-5, 5), st.integers(-3, 3)), st.dictionaries(st.integers(-5, 5), st.integers(-3, 3)))
def test_group_ring_arithmetic(a, b):
    x, y = GroupRingElt.make(a, 3), GroupRingElt.make(b, 3)
    assert (x + y) - y == x
    assert (x + y).norm() == x.norm() + y.norm()
    assert GroupRingElt.make(a).reduce(3) == x


def test_sequence_errors():
    with pytest.raises(NotEventuallyIncreasing):
        root_from_sequence([])
    with pytest.raises(NotEventuallyIncreasing):
        root_from_sequence([0, 1, 0])


@given(st.lists(st.sampled_from([-1, 0, 1]), min_size=1, max_size=30))
def test_sequence_roots_satisfy_checks(steps):
    vals = [0]
    for d in steps:
        vals.append(vals[-1] + d)
    vals += [vals[-1] + 1, vals[-1] + 2]
    root = root_from_sequence(vals)
    assert root.check() == []
    assert len(root.angle_pos) == root.n_leaves - 1
    assert min(root.leaf_weight) == min(vals)
