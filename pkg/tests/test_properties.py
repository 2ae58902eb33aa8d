from __future__ import annotations

import random

import pytest

from propcheck import CHECKS


@pytest.mark.parametrize("seed", range(10))
@pytest.mark.parametrize("name", sorted(CHECKS))
def test_property(name, seed):
    assert CHECKS[name](random.Random(f"{name}:{seed}")) == []
