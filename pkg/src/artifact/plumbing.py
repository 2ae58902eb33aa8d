"""Star-shaped plumbing graphs built from Seifert invariants.

Nodes are ordered central node first, then each arm from the node adjacent
to the centre outwards. Every matrix and vector in the package uses this
order.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from typing import Dict, List, Optional, Sequence, Tuple

from .errors import (
    CardinalityMismatch,
    InputError,
    NonCoprime,
    NonIntegral,
    NotNegativeDefinite,
    NotSelfConjugate,
    OutOfRange,
)
from .linalg import det_fraction_free, solve_fraction


def neg_cont_frac(p: int, q: int) -> List[int]:
    """Expand p/q = k1 - 1/(k2 - 1/(... - 1/ks)) with every k >= 2."""
    if (p, q) == (1, 1):
        return []
    if not (0 < q < p):
        raise OutOfRange(f"need 0 < q < p, got ({p}, {q})")
    if math.gcd(p, q) != 1:
        raise NonCoprime(f"({p}, {q}) are not coprime")
    out = []
    while q:
        k = -(-p // q)
        out.append(k)
        p, q = q, k * q - p
    return out


def eval_neg_cont_frac(ks: Sequence[int]) -> Fraction:
    val = Fraction(ks[-1])
    for k in reversed(ks[:-1]):
        val = k - 1 / val
    return val


@dataclass(frozen=True)
class SeifertData:
    e0: int
    arms: Tuple[Tuple[int, int], ...]

    def __post_init__(self) -> None:
        arms = tuple(tuple(int(x) for x in arm) for arm in self.arms)
        object.__setattr__(self, "arms", arms)
        for arm in arms:
            if len(arm) != 2:
                raise InputError(f"arm {arm} is not a pair")
            p, q = arm
            if (p, q) == (1, 1):
                continue
            if not (0 < q < p):
                raise OutOfRange(f"arm ({p}, {q}) needs 0 < q < p")
            if math.gcd(p, q) != 1:
                raise NonCoprime(f"arm ({p}, {q}) is not coprime")
        if self.orbifold_euler >= 0:
            raise NotNegativeDefinite(
                f"e0 + sum q/p = {self.orbifold_euler} is not negative"
            )

    @property
    def real_arms(self) -> Tuple[Tuple[int, int], ...]:
        return tuple(a for a in self.arms if a != (1, 1))

    @property
    def nu(self) -> int:
        return len(self.real_arms)

    @property
    def orbifold_euler(self) -> Fraction:
        return self.e0 + sum((Fraction(q, p) for p, q in self.real_arms), Fraction(0))

    @property
    def p_product(self) -> int:
        return math.prod(p for p, _ in self.real_arms)

    @property
    def h1_order(self) -> int:
        return int(abs(self.orbifold_euler * self.p_product))

    def to_json(self) -> dict:
        return {"e0": self.e0, "arms": [list(a) for a in self.arms]}


@dataclass(frozen=True)
class LatticeVector:
    """Coefficients indexed by node. ``dual`` marks the dual-lattice basis."""

    coeffs: Tuple
    dual: bool = False

    def m(self, v: int):
        return self.coeffs[v]

    def is_integral(self) -> bool:
        return all(Fraction(c).denominator == 1 for c in self.coeffs)

    def as_ints(self) -> Tuple[int, ...]:
        if not self.is_integral():
            raise NonIntegral(f"{self.coeffs} is not integral")
        return tuple(int(c) for c in self.coeffs)

    def __len__(self) -> int:
        return len(self.coeffs)

    def to_json(self) -> list:
        return [int(c) if Fraction(c).denominator == 1 else str(c) for c in self.coeffs]


@dataclass(frozen=True)
class PlumbingGraph:
    weights: Tuple[int, ...]
    edges: Tuple[Tuple[int, int], ...]
    central: int = 0
    # node -> (arm index, position from the centre, 1-based); None for v_c
    arm_of: Tuple[Optional[Tuple[int, int]], ...] = field(default=())

    def __post_init__(self) -> None:
        n = len(self.weights)
        object.__setattr__(self, "weights", tuple(int(w) for w in self.weights))
        edges = tuple(tuple(sorted((int(a), int(b)))) for a, b in self.edges)
        object.__setattr__(self, "edges", edges)
        if not (0 <= self.central < n):
            raise InputError("central node out of range")
        if len(edges) != n - 1 or len(set(edges)) != len(edges):
            raise InputError("plumbing graph is not a tree")
        for a, b in edges:
            if not (0 <= a < n and 0 <= b < n) or a == b:
                raise InputError(f"bad edge ({a}, {b})")
        seen = {self.central}
        stack = [self.central]
        while stack:
            v = stack.pop()
            for u in self.neighbours(v):
                if u not in seen:
                    seen.add(u)
                    stack.append(u)
        if len(seen) != n:
            raise InputError("plumbing graph is not connected")
        if not self.arm_of:
            object.__setattr__(self, "arm_of", self._walk_arms())

    def _walk_arms(self) -> Tuple[Optional[Tuple[int, int]], ...]:
        arm_of: List[Optional[Tuple[int, int]]] = [None] * len(self.weights)
        for a, start in enumerate(sorted(self.neighbours(self.central))):
            prev, cur, pos = self.central, start, 1
            while True:
                arm_of[cur] = (a, pos)
                nxt = [u for u in self.neighbours(cur) if u != prev]
                if len(nxt) > 1:
                    raise InputError("graph is not star-shaped")
                if not nxt:
                    break
                prev, cur, pos = cur, nxt[0], pos + 1
        return tuple(arm_of)

    @property
    def size(self) -> int:
        return len(self.weights)

    def neighbours(self, v: int) -> List[int]:
        out = []
        for a, b in self.edges:
            if a == v:
                out.append(b)
            elif b == v:
                out.append(a)
        return out

    def arms(self) -> List[List[int]]:
        """Node ids of each arm, ordered outwards from the centre."""
        arms: Dict[int, List[Tuple[int, int]]] = {}
        for v, tag in enumerate(self.arm_of):
            if tag is not None:
                arms.setdefault(tag[0], []).append((tag[1], v))
        return [[v for _, v in sorted(arms[a])] for a in sorted(arms)]

    def dot(self, x: Sequence, y: Sequence):
        """Intersection pairing of two node-basis vectors."""
        total = sum(w * a * b for w, a, b in zip(self.weights, x, y))
        for a, b in self.edges:
            total += x[a] * y[b] + x[b] * y[a]
        return total

    def apply(self, x: Sequence) -> List:
        """Q_Gamma applied to a node-basis vector."""
        out = [w * a for w, a in zip(self.weights, x)]
        for a, b in self.edges:
            out[a] += x[b]
            out[b] += x[a]
        return out

    def to_dot(self) -> str:
        lines = ["graph plumbing {", "  node [shape=circle, fontsize=10];"]
        for v, w in enumerate(self.weights):
            shape = ", shape=doublecircle" if v == self.central else ""
            lines.append(f'  v{v} [label="{w}"{shape}];')
        for a, b in self.edges:
            lines.append(f"  v{a} -- v{b};")
        lines.append("}")
        return "\n".join(lines)

    def to_json(self) -> dict:
        return {
            "weights": list(self.weights),
            "edges": [list(e) for e in self.edges],
            "central": self.central,
        }


def intersection_matrix(g: PlumbingGraph) -> List[List[int]]:
    n = g.size
    mat = [[0] * n for _ in range(n)]
    for v, w in enumerate(g.weights):
        mat[v][v] = w
    for a, b in g.edges:
        mat[a][b] = mat[b][a] = 1
    return mat


def is_negative_definite(g: PlumbingGraph) -> bool:
    neg = [[-x for x in row] for row in intersection_matrix(g)]
    return all(det_fraction_free([row[:k] for row in neg[:k]]) > 0 for k in range(1, g.size + 1))


def build_plumbing(s: SeifertData) -> PlumbingGraph:
    weights = [s.e0]
    edges = []
    arm_of: List[Optional[Tuple[int, int]]] = [None]
    for a, (p, q) in enumerate(s.real_arms):
        prev = 0
        for pos, k in enumerate(neg_cont_frac(p, q), start=1):
            v = len(weights)
            weights.append(-k)
            edges.append((prev, v))
            arm_of.append((a, pos))
            prev = v
    g = PlumbingGraph(tuple(weights), tuple(edges), 0, tuple(arm_of))
    if not is_negative_definite(g):
        raise NotNegativeDefinite("intersection form is not negative definite")
    return g


def seifert_from_plumbing(g: PlumbingGraph) -> SeifertData:
    """Recover Seifert invariants from a star-shaped graph."""
    arms = []
    for arm in g.arms():
        ks = [-g.weights[v] for v in arm]
        if any(k < 2 for k in ks):
            raise InputError("arm weights must be <= -2")
        frac = eval_neg_cont_frac(ks)
        arms.append((frac.numerator, frac.denominator))
    return SeifertData(g.weights[g.central], tuple(arms))


def canonical_class(g: PlumbingGraph) -> Tuple[LatticeVector, LatticeVector]:
    """K(v) = -w(v) - 2, together with its node-basis expansion Q^-1 K."""
    k = tuple(-w - 2 for w in g.weights)
    node = solve_fraction(intersection_matrix(g), k)
    return LatticeVector(k, dual=True), LatticeVector(tuple(node))


def n_y(s: SeifertData, strict: bool = True):
    """The horizon (nu-2)P - sum P/p_l over |H1|; an int when integral."""
    arms = s.real_arms
    if not arms:
        raise InputError("need at least one nondegenerate arm")
    big = s.p_product
    val = Fraction((len(arms) - 2) * big - sum(big // p for p, _ in arms), s.h1_order)
    if val.denominator == 1:
        return int(val)
    if strict:
        raise NonIntegral(f"N_Y = {val} is not an integer")
    return val


def si_red_enumerate(s: SeifertData, index_range: Optional[Sequence[int]] = None,
                     check: bool = True) -> List[Tuple[int, ...]]:
    """Enumerate SI_red vectors (a_0, ..., a_nu).

    By default the inequality is imposed for i = 1..nu. Pass an explicit
    ``index_range`` to test other ranges. With ``check`` the count is
    compared against |H1| and a mismatch raises.
    """
    arms = s.real_arms
    nu = len(arms)
    if index_range is None:
        index_range = range(1, nu + 1)
    # i = 1 bounds a_0 from above since every floor term is >= 0
    a0_max = -1 - s.e0
    out = []
    for a0 in range(0, max(a0_max, -1) + 1):
        for tail in product(*(range(p) for p, _ in arms)):
            ok = True
            for i in index_range:
                val = 1 + a0 + i * s.e0 + sum((i * q + a) // p for (p, q), a in zip(arms, tail))
                if val > 0:
                    ok = False
                    break
            if ok:
                out.append((a0,) + tuple(tail))
    if check and len(out) != s.h1_order:
        raise CardinalityMismatch(
            f"SI_red has {len(out)} elements but |H1| = {s.h1_order}"
        )
    return out


def si_red_full_range(s: SeifertData) -> range:
    """Indices i >= 1 past which the SI_red inequality holds automatically."""
    e = -s.orbifold_euler
    bound = math.ceil((1 + (-1 - s.e0) + s.nu) / e) if e else 1
    return range(1, max(bound, s.nu) + 1)


def wu_cycle(g: PlumbingGraph) -> Tuple[LatticeVector, LatticeVector]:
    """Return (Wu set as a 0/1 node vector, x_can) with Wu = K + 2 x_can."""
    n = g.size
    _, k_node = canonical_class(g)
    if not k_node.is_integral():
        raise NotSelfConjugate("canonical class is not integral in the node basis")
    # rows of Q mod 2 as bitsets, augmented with the target w(v) mod 2 at bit n
    rows = []
    for v in range(n):
        row = (g.weights[v] & 1) << v
        for u in g.neighbours(v):
            row ^= 1 << u
        rows.append(row | ((g.weights[v] & 1) << n))
    # Gauss-Jordan on the augmented rows, pivoting on variable bits only
    pivots: Dict[int, int] = {}
    mask = (1 << n) - 1
    for row in rows:
        for col, prow in pivots.items():
            if row >> col & 1:
                row ^= prow
        if row & mask == 0:
            if row:
                raise NotSelfConjugate("no characteristic 0/1 vector exists")
            continue
        col = (row & mask & -(row & mask)).bit_length() - 1
        for c in list(pivots):
            if pivots[c] >> col & 1:
                pivots[c] ^= row
        pivots[col] = row
    lam = [0] * n
    for col, row in pivots.items():
        lam[col] = row >> n & 1
    x = [Fraction(l - k, 2) for l, k in zip(lam, k_node.coeffs)]
    xv = LatticeVector(tuple(x))
    if not xv.is_integral():
        raise NotSelfConjugate("Wu set minus K is not divisible by 2")
    return LatticeVector(tuple(lam)), LatticeVector(xv.as_ints())


def n_hat(ny: int) -> int:
    return ny // 2 + 1 if ny % 2 == 0 else (ny + 1) // 2


# ---------------------------------------------------------------------------
# random inputs for property runs


def random_homology_sphere(rng: random.Random, arms: int = 3, max_p: int = 30) -> SeifertData:
    """Seifert invariants of a random Brieskorn-type integral homology sphere."""
    while True:
        ps: List[int] = []
        while len(ps) < arms:
            p = rng.randint(2, max_p)
            if all(math.gcd(p, r) == 1 for r in ps):
                ps.append(p)
        big = math.prod(ps)
        qs = [(-pow(big // p, -1, p)) % p for p in ps]
        num = -1 - sum(q * (big // p) for p, q in zip(ps, qs))
        if num % big:
            continue
        return SeifertData(num // big, tuple(zip(ps, qs)))


def random_seifert(rng: random.Random, max_arms: int = 4, max_p: int = 12,
                   integral_k: bool = False) -> SeifertData:
    """Random negative-definite star-shaped data, optionally with integral K."""
    while True:
        nu = rng.randint(1, max_arms)
        arms = []
        for _ in range(nu):
            p = rng.randint(2, max_p)
            q = rng.randint(1, p - 1)
            while math.gcd(p, q) != 1:
                q = rng.randint(1, p - 1)
            arms.append((p, q))
        excess = sum(Fraction(q, p) for p, q in arms)
        e0 = -math.floor(excess) - 1 - rng.randint(0, 2)
        s = SeifertData(e0, tuple(arms))
        if integral_k and not canonical_class(build_plumbing(s))[1].is_integral():
            continue
        return s


SIGMA_2_3_19 = SeifertData(-1, ((2, 1), (3, 1), (19, 3)))
SIGMA_3_5_19 = SeifertData(-1, ((3, 1), (5, 2), (19, 5)))
