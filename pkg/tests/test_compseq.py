from __future__ import annotations

import random

import pytest

from artifact.compseq import (
    SIRedVector,
    characteristic_vector,
    chi,
    computation_sequences,
    default_horizon,
    delta_closed_form,
    delta_from_laufer,
    laufer_cycles,
)
from artifact.plumbing import SIGMA_2_3_19, SIGMA_3_5_19, build_plumbing, n_y, random_seifert

SIGMA_2_3_19_ROWS = {0: 1, 1: -1, 6: 1, 7: -1, 12: 1, 13: -1}
SIGMA_3_5_19_ROWS = {
    0: 1, 1: -1, 4: -1, 8: -1, 13: -1, 15: 1, 16: -1, 23: -1, 28: -1,
    30: 1, 31: -1, 43: -1, 45: 1, 46: -1, 57: 1, 58: -1, 60: 1, 61: -1,
    72: 1, 73: -1, 75: 1, 87: 1, 88: -1, 90: 1, 95: 1, 102: 1, 103: -1,
    105: 1, 110: 1, 114: 1, 117: 1, 118: -1,
}


@pytest.mark.parametrize("s, rows", [(SIGMA_2_3_19, SIGMA_2_3_19_ROWS), (SIGMA_3_5_19, SIGMA_3_5_19_ROWS)])
def test_delta_tables(s, rows):
    assert delta_closed_form(s, horizon=n_y(s)).nonzero() == rows


@pytest.mark.parametrize("s", [SIGMA_2_3_19, SIGMA_3_5_19])
def test_closed_form_matches_lattice(s):
    h = default_horizon(s)
    assert delta_from_laufer(build_plumbing(s), h).values == delta_closed_form(s, horizon=h).values


def test_weight_at_center_of_sigma_3_5_19():
    g = build_plumbing(SIGMA_3_5_19)
    k = characteristic_vector(g)
    xs = laufer_cycles(g, 59)
    assert chi(g, k, xs[59]) == -6


def test_computation_sequences_keep_weight():
    g = build_plumbing(SIGMA_2_3_19)
    seqs = computation_sequences(g, 15)
    assert len(seqs) == 15
    assert all(seq[0][g.central] == i + 1 for i, seq in enumerate(seqs))


def test_laufer_order_independence():
    g = build_plumbing(SIGMA_3_5_19)
    base = laufer_cycles(g, 40)
    for seed in range(5):
        assert laufer_cycles(g, 40, rng=random.Random(seed)) == base


def test_only_si_red_vector_of_a_sphere_gives_canonical_delta():
    from artifact.plumbing import si_red_enumerate, si_red_full_range

    for s in (SIGMA_2_3_19, SIGMA_3_5_19):
        (a,) = si_red_enumerate(s, si_red_full_range(s))
        ny = n_y(s)
        assert delta_closed_form(s, SIRedVector(a), ny).values == delta_closed_form(s, horizon=ny).values


def test_symmetry_on_random_integral_inputs():
    rng = random.Random(4)
    for _ in range(20):
        s = random_seifert(rng, integral_k=True)
        ny = n_y(s)
        d = delta_closed_form(s, horizon=ny)
        assert all(d[ny - i] == -d[i] for i in range(ny + 1))
