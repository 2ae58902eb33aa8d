"""Minimal cycles, computation sequences, weights and Delta-sequences."""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple, Union

from .errors import InvariantViolation, NonIntegralWeight, NonTermination, WeightDrift
from .plumbing import PlumbingGraph, SeifertData, canonical_class, n_y


@dataclass(frozen=True)
class Canonical:
    def to_json(self):
        return "canonical"


@dataclass(frozen=True)
class SIRedVector:
    a: Tuple[int, ...]

    def to_json(self):
        return list(self.a)


SpincSelector = Union[Canonical, SIRedVector]


def characteristic_vector(g: PlumbingGraph, lprime: Optional[Sequence] = None) -> List:
    """k = K + 2 l', evaluated on the nodes (l' given in the node basis)."""
    k = list(canonical_class(g)[0].coeffs)
    if lprime is not None:
        ql = g.apply(lprime)
        k = [a + 2 * b for a, b in zip(k, ql)]
    return k


def chi(g: PlumbingGraph, k: Sequence, x: Sequence[int]) -> int:
    """Weight -(k(x) + x.x)/2 of an integral cycle x."""
    val = sum(a * b for a, b in zip(k, x)) + g.dot(x, x)
    val = Fraction(val)
    if val.denominator != 1 or val.numerator % 2:
        raise NonIntegralWeight(f"k(x) + x.x = {val} is not even")
    return -val.numerator // 2


class _Laufer:
    """Generalized Laufer iteration along the central node.

    Keeps Qx incrementally so each step costs one column update.
    """

    def __init__(self, g: PlumbingGraph, lprime: Optional[Sequence] = None,
                 rng: Optional[random.Random] = None, cap: int = 10 ** 6) -> None:
        self.g = g
        self.n = g.size
        self.cols = [g.apply([int(u == v) for u in range(self.n)]) for v in range(self.n)]
        self.offset = g.apply(lprime) if lprime is not None else [0] * self.n
        self.rng = rng
        self.cap = cap
        self.x = [0] * self.n
        self.qx = [0] * self.n

    def _add(self, v: int) -> None:
        self.x[v] += 1
        col = self.cols[v]
        for u in range(self.n):
            self.qx[u] += col[u]

    def _eligible(self) -> List[int]:
        c = self.g.central
        return [v for v in range(self.n) if v != c and self.qx[v] + self.offset[v] > 0]

    def step(self) -> List[Tuple[int, ...]]:
        """Advance x(i) -> x(i+1); return the computation sequence."""
        self._add(self.g.central)
        seq = [tuple(self.x)]
        for _ in range(self.cap):
            elig = self._eligible()
            if not elig:
                return seq
            v = self.rng.choice(elig) if self.rng else elig[0]
            self._add(v)
            seq.append(tuple(self.x))
        raise NonTermination("Laufer iteration did not stop; graph not negative definite?")


def laufer_cycles(g: PlumbingGraph, upto: int, lprime: Optional[Sequence] = None,
                  rng: Optional[random.Random] = None) -> List[Tuple[int, ...]]:
    """x(0), ..., x(upto)."""
    it = _Laufer(g, lprime, rng)
    out = [tuple(it.x)]
    for _ in range(upto):
        it.step()
        out.append(tuple(it.x))
    return out


def laufer_min_cycle(g: PlumbingGraph, lprime: Optional[Sequence] = None, i: int = 0,
                     rng: Optional[random.Random] = None) -> Tuple[int, ...]:
    if i < 0:
        raise ValueError("i must be nonnegative")
    return laufer_cycles(g, i, lprime, rng)[-1]


def computation_sequences(g: PlumbingGraph, upto: int, lprime: Optional[Sequence] = None,
                          check: bool = True) -> List[List[Tuple[int, ...]]]:
    """All computation sequences for i = 0..upto-1 in one pass."""
    it = _Laufer(g, lprime)
    k = characteristic_vector(g, lprime)
    out = []
    for i in range(upto):
        seq = it.step()
        if check:
            weights = {chi(g, k, x) for x in seq}
            if len(weights) != 1:
                raise WeightDrift(f"weights along sequence {i} vary: {sorted(weights)}")
        out.append(seq)
    return out


def computation_sequence(g: PlumbingGraph, lprime: Optional[Sequence] = None,
                         i: int = 0) -> List[Tuple[int, ...]]:
    """Path x(i)+v_c, ..., x(i+1); all its weights must agree."""
    it = _Laufer(g, lprime)
    for _ in range(i):
        it.step()
    seq = it.step()
    k = characteristic_vector(g, lprime)
    weights = {chi(g, k, x) for x in seq}
    if len(weights) != 1:
        raise WeightDrift(f"weights along the sequence vary: {sorted(weights)}")
    return seq


@dataclass(frozen=True)
class DeltaSequence:
    values: Tuple[int, ...]
    horizon: int
    spinc: SpincSelector = Canonical()

    def __getitem__(self, i: int) -> int:
        return self.values[i]

    def nonzero(self) -> Dict[int, int]:
        return {i: d for i, d in enumerate(self.values) if d}

    def weights(self) -> List[int]:
        """chi(x(0)), ..., chi(x(horizon+1)) as partial sums."""
        out = [0]
        for d in self.values:
            out.append(out[-1] + d)
        return out

    def to_json(self) -> list:
        return [{"i": i, "delta": d} for i, d in self.nonzero().items()]


def delta_closed_form(s: SeifertData, sel: SpincSelector = Canonical(),
                      horizon: Optional[int] = None) -> DeltaSequence:
    arms = s.real_arms
    if horizon is None:
        horizon = default_horizon(s)
    if isinstance(sel, Canonical):
        vals = tuple(
            1 - s.e0 * i - sum(-(-i * q // p) for p, q in arms) for i in range(horizon + 1)
        )
    else:
        a0, rest = sel.a[0], sel.a[1:]
        if len(rest) != len(arms):
            raise ValueError("SI_red vector length does not match the arms")
        vals = tuple(
            1 + a0 - s.e0 * i + sum((-i * q + a) // p for (p, q), a in zip(arms, rest))
            for i in range(horizon + 1)
        )
    return DeltaSequence(vals, horizon, sel)


def default_horizon(s: SeifertData) -> int:
    ny = n_y(s, strict=False)
    return max(int(math.floor(ny)), 0) + 2


def delta_from_laufer(g: PlumbingGraph, horizon: int,
                      lprime: Optional[Sequence] = None) -> DeltaSequence:
    """Delta(i) = chi(x(i+1)) - chi(x(i)) computed on the lattice."""
    k = characteristic_vector(g, lprime)
    xs = laufer_cycles(g, horizon + 1, lprime)
    w = [chi(g, k, x) for x in xs]
    return DeltaSequence(tuple(w[i + 1] - w[i] for i in range(horizon + 1)), horizon)


def check_canonical_tail(d: DeltaSequence, ny: int) -> None:
    bad = [i for i in range(max(ny + 1, 0), d.horizon + 1) if d[i] < 0]
    if bad:
        raise InvariantViolation(f"Delta negative past N_Y at {bad}")
