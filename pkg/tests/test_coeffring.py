from __future__ import annotations

import json

import pytest
from hypothesis import given, strategies as st

from artifact.coeffring import (
    DgModule,
    RingElt,
    free_module,
    localize_pin,
    pin,
    pin_only,
    q_poly_parts,
    s1zp,
    u_exp,
    uq_exp,
)
from artifact.errors import NegativeExponent
from artifact.gradedroot import GroupRingElt
from artifact.latticechain import reference_module

exps = st.dictionaries(st.integers(0, 1), st.integers(0, 3))


@given(exps, exps)
def test_u_exp_multiplicative_char2(a, b):
    for ring in (pin(), s1zp(2)):
        x, y = GroupRingElt.make(a, 2), GroupRingElt.make(b, 2)
        assert u_exp(ring, x + y) == u_exp(ring, x) * u_exp(ring, y)


@given(st.dictionaries(st.integers(0, 6), st.integers(0, 2)), st.dictionaries(st.integers(0, 6), st.integers(0, 2)))
def test_u_exp_multiplicative_odd_p(a, b):
    ring = s1zp(7)
    x, y = GroupRingElt.make(a, 7), GroupRingElt.make(b, 7)
    assert u_exp(ring, x + y) == u_exp(ring, x) * u_exp(ring, y)


@given(exps)
def test_uq_exp_is_the_u_derivative(a):
    ring = pin()
    n = GroupRingElt.make(a, 2)
    u = u_exp(ring, n)
    assert uq_exp(ring, n) == u.derivative("U")
    q3 = ring.var("Q") ** 3
    assert u.d() == uq_exp(ring, n) * q3


def test_r_p_relation():
    ring = s1zp(5)
    r = ring.var("R")
    assert r * r == ring.zero()
    assert u_exp(ring, GroupRingElt.basis(2, 5)) == ring.var("U") + ring.var("S") * 2


def test_negative_exponent_rejected():
    with pytest.raises(NegativeExponent):
        u_exp(pin(), GroupRingElt.make({0: -1}, 2))


@given(st.integers(0, 6), st.integers(0, 4), st.integers(0, 4))
def test_ring_differential_squares_to_zero(i, j, k):
    ring = pin()
    m = ring.mono(Q=i, U=j, theta=k)
    assert m.d().d() == ring.zero()
    assert m.d().degree in (None, m.degree + 1)


def test_homology_of_pin_ring():
    m = free_module(pin_only(), 0, "1")
    dims = [m.homology_in_degree(d)[0] for d in range(13)]
    assert dims == [1, 1, 1, 0, 1, 1, 1, 0, 1, 1, 1, 0, 1]


def test_module_json_roundtrip():
    m = reference_module()
    back = DgModule.from_json(json.loads(json.dumps(m.to_json())))
    assert back.to_json() == m.to_json()


def test_ringelt_json_roundtrip():
    ring = pin()
    x = ring.var("Q") * (ring.var("U") + ring.var("theta") ** 2)
    assert RingElt.from_json(ring, x.to_json()) == x


def test_module_d_squared_and_tensor():
    m = reference_module()
    assert m.is_chain_complex()
    mm = m.tensor(m)
    assert mm.rank == 441 and mm.is_chain_complex()


def test_localization_of_m_is_swf_type():
    loc = localize_pin(reference_module())
    assert loc.homology() == (0, [3])


def test_q_poly_parts():
    ring = pin()
    Q, U, t = ring.var("Q"), ring.var("U"), ring.var("theta")
    even, odd = q_poly_parts(Q * Q + U * Q + U * U + t)
    assert even == 0b101 and odd == 0b10
