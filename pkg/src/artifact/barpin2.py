"""A finite model of Pin(2) chains, its bar construction and the twisting map.

The algebra is F_2<s, j>/(sj + j^3 s, s^2, j^4 + 1) with |j| = 0, |s| = 1 and
ds = 1 + j^2. Elements are 8-bit masks: bit a is j^a, bit 4 + a is j^a s.

The bar side uses the augmentation ideal with basis t, t^2, t^3 (t = 1 + j)
and j^a s. A bar word's degree is its length plus the number of s letters.
The comparison side is the coalgebra dual to F_2[Q, U] with dU = Q^3, where
|Q| = 1 and |U| = 2.
"""

from __future__ import annotations

import time
from dataclasses import dataclass
from functools import lru_cache
from itertools import product
from typing import Dict, List, Optional, Tuple

from .errors import IdentityFails
from .linalg import GF2Echelon, bits

Word = Tuple[int, ...]


# ---------------------------------------------------------------------------
# the algebra


def _j(a: int) -> int:
    return 1 << (a % 4)


def _js(a: int) -> int:
    return 1 << (4 + a % 4)


def _basis_mul(x: int, y: int) -> int:
    """Product of two basis indices (0..7) as a mask."""
    if x < 4 and y < 4:
        return _j(x + y)
    if x < 4:
        return _js(x + (y - 4))  # j^a . j^b s
    if y < 4:
        return _js((x - 4) + 3 * y)  # j^a s . j^b = j^(a+3b) s
    return 0


def mul(x: int, y: int) -> int:
    out = 0
    for a in bits(x):
        for b in bits(y):
            out ^= _basis_mul(a, b)
    return out


def diff(x: int) -> int:
    out = 0
    for a in bits(x):
        if a >= 4:
            out ^= _j(a - 4) ^ _j(a - 2)
    return out


def augment(x: int) -> int:
    return bin(x & 0xF).count("1") % 2


def degree(x: int) -> Optional[int]:
    if x == 0:
        return None
    if x & 0xF and x & 0xF0:
        return None
    return 0 if x & 0xF else 1


J, S = _j(1), _js(0)
ONE = _j(0)
T = ONE ^ J


@dataclass(frozen=True)
class FiniteDga:
    names: Tuple[str, ...] = ("1", "j", "j^2", "j^3", "s", "js", "j^2s", "j^3s")

    def basis(self) -> List[int]:
        return [1 << i for i in range(8)]

    def check(self) -> List[str]:
        """Associativity, Leibniz, d^2 = 0 and the defining relations."""
        problems = []
        b = self.basis()
        for x in b:
            if diff(diff(x)):
                problems.append(f"d^2 != 0 on {self.fmt(x)}")
            for y in b:
                lhs = diff(mul(x, y))
                rhs = mul(diff(x), y) ^ mul(x, diff(y))
                if lhs != rhs:
                    problems.append(f"Leibniz fails on {self.fmt(x)}, {self.fmt(y)}")
                for z in b:
                    if mul(mul(x, y), z) != mul(x, mul(y, z)):
                        problems.append(f"associativity fails on {self.fmt(x)}, {self.fmt(y)}, {self.fmt(z)}")
        j3 = mul(J, mul(J, J))
        if mul(S, J) != mul(j3, S):
            problems.append("sj != j^3 s")
        if mul(S, S):
            problems.append("s^2 != 0")
        if mul(j3, J) != ONE:
            problems.append("j^4 != 1")
        if diff(S) != ONE ^ mul(J, J):
            problems.append("ds != 1 + j^2")
        for x in b:
            for y in b:
                if augment(mul(x, y)) != augment(x) * augment(y) % 2:
                    problems.append("augmentation is not multiplicative")
        return problems

    def fmt(self, x: int) -> str:
        if not x:
            return "0"
        return " + ".join(self.names[i] for i in bits(x))


# ---------------------------------------------------------------------------
# augmentation ideal basis

LETTERS: Tuple[int, ...] = (T, mul(T, T), mul(T, mul(T, T)), _js(0), _js(1), _js(2), _js(3))
LETTER_NAMES = ("t", "t^2", "t^3", "s", "js", "j^2s", "j^3s")
LETTER_DEG = (1, 1, 1, 2, 2, 2, 2)


@lru_cache(maxsize=None)
def decompose(x: int) -> Tuple[int, ...]:
    """Letters summing to x, for x in the augmentation ideal."""
    for sel in range(1 << len(LETTERS)):
        acc = 0
        for i in bits(sel):
            acc ^= LETTERS[i]
        if acc == x:
            return tuple(bits(sel))
    raise ValueError(f"{x:#x} is not in the augmentation ideal")


@lru_cache(maxsize=None)
def _letter_product(a: int, b: int) -> Tuple[int, ...]:
    return decompose(mul(LETTERS[a], LETTERS[b]))


@lru_cache(maxsize=None)
def _letter_diff(a: int) -> Tuple[int, ...]:
    return decompose(diff(LETTERS[a]))


def words(deg: int) -> List[Word]:
    """All bar words of the given degree, in a fixed order."""
    out: List[Word] = []

    def rec(left: int, acc: List[int]) -> None:
        if left == 0:
            out.append(tuple(acc))
            return
        for a, da in enumerate(LETTER_DEG):
            if da <= left:
                acc.append(a)
                rec(left - da, acc)
                acc.pop()

    rec(deg, [])
    return out


def bar_d(w: Word) -> Dict[Word, int]:
    """Internal differentials plus adjacent products (no signs in char 2)."""
    out: Dict[Word, int] = {}
    for i, a in enumerate(w):
        for b in _letter_diff(a):
            key = w[:i] + (b,) + w[i + 1:]
            out[key] = out.get(key, 0) ^ 1
    for i in range(len(w) - 1):
        for b in _letter_product(w[i], w[i + 1]):
            key = w[:i] + (b,) + w[i + 2:]
            out[key] = out.get(key, 0) ^ 1
    return {k: 1 for k, v in out.items() if v}


def bar_d_elem(x: Dict[Word, int]) -> Dict[Word, int]:
    out: Dict[Word, int] = {}
    for w, c in x.items():
        if c % 2:
            for k in bar_d(w):
                out[k] = out.get(k, 0) ^ 1
    return {k: 1 for k, v in out.items() if v}


def coproduct(w: Word) -> List[Tuple[Word, Word]]:
    return [(w[:i], w[i:]) for i in range(len(w) + 1)]


def fmt_word(w: Word) -> str:
    return "[" + "|".join(LETTER_NAMES[a] for a in w) + "]"


def word_from_elements(parts: List[int]) -> Dict[Word, int]:
    """Multilinear expansion of [x1|...|xn] for x_i in the augmentation ideal."""
    out: Dict[Word, int] = {}
    for combo in product(*(decompose(x) for x in parts)):
        out[combo] = out.get(combo, 0) ^ 1
    return {k: 1 for k, v in out.items() if v}


# ---------------------------------------------------------------------------
# homology of the bar complex


@dataclass
class BarReduction:
    """The truncated bar complex after cancelling every acyclic pair.

    Cancelling a pair (a, b) with b in d(a) replaces d(x) by d(x) + d(a) for
    every other x hitting b, and drops a from the boundaries that contain it.
    Each step is the quotient by the acyclic subcomplex {a, d(a)}, so the
    survivors in degree e < top have zero differential and count H_e.
    Tracked chains are pushed through the same quotient maps.
    """

    top: int
    survivors: Dict[int, List[Word]]
    tracked: List[Tuple[int, List[Word]]]
    pairs: int
    seconds: float

    def homology_dims(self) -> List[int]:
        return [len(self.survivors[d]) for d in range(self.top)]


def reduce_bar(top: int, tracked: Optional[List[Tuple[int, Dict[Word, int]]]] = None) -> BarReduction:
    """Cancel pairs in the bar complex truncated at degree ``top`` (inclusive)."""
    t0 = time.time()
    names: List[Word] = []
    deg_of: List[int] = []
    for d in range(top + 1):
        for w in words(d):
            names.append(w)
            deg_of.append(d)
    ids = {w: i for i, w in enumerate(names)}
    bd: List[set] = [set() for _ in names]
    cobd: List[set] = [set() for _ in names]
    for i, w in enumerate(names):
        if deg_of[i] == 0:
            continue
        tgt = {ids[k] for k in bar_d(w)}
        bd[i] = tgt
        for j in tgt:
            cobd[j].add(i)
    chains = [(e, {ids[w] for w, c in x.items() if c % 2}) for e, x in (tracked or [])]
    alive = [True] * len(names)
    pairs = 0

    def cancel(a: int, b: int) -> List[int]:
        """Quotient by {a, d(a)}; return words whose incoming set shrank."""
        da = bd[a]
        for x in list(cobd[b]):
            if x == a:
                continue
            bx = bd[x]
            for z in da:
                if z in bx:
                    bx.discard(z)
                    cobd[z].discard(x)
                else:
                    bx.add(z)
                    cobd[z].add(x)
        for _, ch in chains:
            if b in ch:
                ch ^= da
            ch.discard(a)
        touched = []
        for y in cobd[a]:
            bd[y].discard(a)
        for z in bd[b]:
            cobd[z].discard(b)
            touched.append(z)
        for z in da:
            if z != b:
                cobd[z].discard(a)
                touched.append(z)
        bd[a] = set()
        bd[b] = set()
        cobd[a] = set()
        cobd[b] = set()
        alive[a] = alive[b] = False
        return touched

    # free pairs first (b hit by a single a): no fill-in at all
    queue = [b for b in range(len(names)) if len(cobd[b]) == 1]
    for i in range(len(names) - 1, -1, -1):
        while True:
            while queue:
                b = queue.pop()
                if alive[b] and len(cobd[b]) == 1:
                    (a,) = cobd[b]
                    queue.extend(z for z in cancel(a, b) if len(cobd[z]) == 1)
                    pairs += 1
            if not bd[i]:
                break
            # fall back to the cheapest target of this word
            b = min(bd[i], key=lambda j: (len(cobd[j]), j))
            queue.extend(z for z in cancel(i, b) if len(cobd[z]) == 1)
            pairs += 1
    survivors: Dict[int, List[Word]] = {d: [] for d in range(top + 1)}
    for i, w in enumerate(names):
        if alive[i]:
            survivors[deg_of[i]].append(w)
    out_chains = [(e, sorted(names[j] for j in ch)) for e, ch in chains]
    return BarReduction(top, survivors, out_chains, pairs, time.time() - t0)


def bar_homology(max_degree: int = 8) -> List[int]:
    """dim H_d of the bar complex for 0 <= d <= max_degree."""
    if max_degree > 10:
        raise ValueError("degree cap above 10 is out of reach")
    return reduce_bar(max_degree + 1).homology_dims()


def check_d_squared(deg: int) -> bool:
    return all(not bar_d_elem(bar_d(w)) for w in words(deg))


def check_coassociative(deg: int) -> bool:
    """(Delta (x) 1) Delta = (1 (x) Delta) Delta on every word of the degree."""
    for w in words(deg):
        left = sorted((u1, u2, v) for u, v in coproduct(w) for u1, u2 in coproduct(u))
        right = sorted((u, v1, v2) for u, v in coproduct(w) for v1, v2 in coproduct(v))
        if left != right:
            return False
    return True


PHI: Dict[Word, int] = word_from_elements([T])
PSI: Dict[Word, int] = word_from_elements([_js(1) ^ _js(3), _js(1) ^ _js(3)])


# ---------------------------------------------------------------------------
# the dual coalgebra of F_2[Q, U], dU = Q^3

Mono = Tuple[int, int]  # (i, j) for Q^i U^j


def mono_deg(m: Mono) -> int:
    return m[0] + 2 * m[1]


def monomials(deg: int) -> List[Mono]:
    return [(deg - 2 * j, j) for j in range(deg // 2 + 1)]


def dual_d(m: Mono) -> Optional[Mono]:
    """Dual of the differential: (Q^i U^j)* -> (Q^(i-3) U^(j+1))* when j is even."""
    i, j = m
    if j % 2 == 0 and i >= 3:
        return (i - 3, j + 1)
    return None


def dual_coproduct(m: Mono) -> List[Tuple[Mono, Mono]]:
    i, j = m
    return [((a, b), (i - a, j - b)) for a in range(i + 1) for b in range(j + 1)]


def check_coleibniz(max_degree: int) -> List[Mono]:
    """Monomials where Delta d != (d (x) 1 + 1 (x) d) Delta."""
    bad = []
    for deg in range(max_degree + 1):
        for m in monomials(deg):
            lhs: Dict[Tuple[Mono, Mono], int] = {}
            dm = dual_d(m)
            if dm is not None:
                for pair in dual_coproduct(dm):
                    lhs[pair] = lhs.get(pair, 0) ^ 1
            rhs: Dict[Tuple[Mono, Mono], int] = {}
            for a, b in dual_coproduct(m):
                da, db = dual_d(a), dual_d(b)
                if da is not None:
                    rhs[(da, b)] = rhs.get((da, b), 0) ^ 1
                if db is not None:
                    rhs[(a, db)] = rhs.get((a, db), 0) ^ 1
            if {k for k, v in lhs.items() if v} != {k for k, v in rhs.items() if v}:
                bad.append(m)
    return bad


def dual_homology(max_degree: int) -> List[int]:
    """Dimensions of the homology of the dual coalgebra."""
    out = []
    for deg in range(max_degree + 1):
        src = monomials(deg)
        cycles = sum(1 for m in src if dual_d(m) is None)
        hit = sum(1 for m in monomials(deg + 1) if dual_d(m) is not None)
        out.append(cycles - hit)
    return out


def dual_cycle_reps(deg: int) -> List[Mono]:
    """Cycles of the dual coalgebra that are not boundaries (basis is monomial)."""
    hit = {dual_d(m) for m in monomials(deg + 1)}
    return [m for m in monomials(deg) if dual_d(m) is None and m not in hit]


# ---------------------------------------------------------------------------
# the twisting map and its extension

Q, Q2, U = (1, 0), (2, 0), (0, 1)
PHI0_TABLE: Dict[Mono, int] = {Q: T, Q2: S, U: _js(1) ^ _js(3)}


def phi0(m: Mono, table: Dict[Mono, int] = PHI0_TABLE) -> int:
    return table.get(m, 0)


def twisting_defect(m: Mono, table: Dict[Mono, int] = PHI0_TABLE) -> Tuple[int, int]:
    """Both sides of d Phi0 + Phi0 d = mu (Phi0 (x) Phi0) Delta on one monomial."""
    lhs = diff(phi0(m, table))
    dm = dual_d(m)
    if dm is not None:
        lhs ^= phi0(dm, table)
    rhs = 0
    for a, b in dual_coproduct(m):
        rhs ^= mul(phi0(a, table), phi0(b, table))
    return lhs, rhs


def verify_twisting(table: Dict[Mono, int] = PHI0_TABLE, max_q: int = 4, max_u: int = 2) -> bool:
    for i in range(max_q + 1):
        for j in range(max_u + 1):
            lhs, rhs = twisting_defect((i, j), table)
            if lhs != rhs:
                raise IdentityFails(f"twisting identity fails on Q^{i}U^{j}: {lhs:#x} vs {rhs:#x}")
    return True


@lru_cache(maxsize=None)
def _factorizations(m: Mono) -> Tuple[Tuple[Mono, ...], ...]:
    """Ordered factorizations of m into the support {Q, Q^2, U} of Phi0."""
    if m == (0, 0):
        return ((),)
    out = []
    for f in (Q, Q2, U):
        rest = (m[0] - f[0], m[1] - f[1])
        if rest[0] >= 0 and rest[1] >= 0:
            out.extend((f,) + tail for tail in _factorizations(rest))
    return tuple(out)


def phi(m: Mono, table: Dict[Mono, int] = PHI0_TABLE) -> Dict[Word, int]:
    """Phi(m) = sum over factorizations of [Phi0(f1)|...|Phi0(fn)]."""
    out: Dict[Word, int] = {}
    if m == (0, 0):
        return {(): 1}
    for fs in _factorizations(m):
        parts = [phi0(f, table) for f in fs]
        if not all(parts):
            continue
        for w in word_from_elements(parts):
            out[w] = out.get(w, 0) ^ 1
    return {k: 1 for k, v in out.items() if v}


@dataclass
class QuasiIsoReport:
    ok: bool
    bar_dims: List[int]
    dual_dims: List[int]
    chain_map: bool
    failures: List[str]
    seconds: float


def verify_phi_quasi_iso(max_degree: int = 8) -> QuasiIsoReport:
    """Phi is a chain map, and sends a homology basis to a homology basis up to max_degree."""
    t0 = time.time()
    failures = []
    chain = True
    for deg in range(max_degree + 2):
        for m in monomials(deg):
            lhs = bar_d_elem(phi(m))
            dm = dual_d(m)
            rhs = phi(dm) if dm is not None else {}
            if lhs != rhs:
                chain = False
                failures.append(f"d Phi != Phi d on Q^{m[0]}U^{m[1]}")
    reps = [(deg, m) for deg in range(max_degree + 1) for m in dual_cycle_reps(deg)]
    red = reduce_bar(max_degree + 1, [(deg, phi(m)) for deg, m in reps])
    bar_dims = red.homology_dims()
    dual_dims = dual_homology(max_degree)
    for deg in range(max_degree + 1):
        if bar_dims[deg] != dual_dims[deg]:
            failures.append(f"H_{deg}: bar {bar_dims[deg]} vs dual {dual_dims[deg]}")
    # survivors have zero differential, so projected images are their classes
    by_deg: Dict[int, List[List[Word]]] = {}
    for (deg, m), (_, img) in zip(reps, red.tracked):
        by_deg.setdefault(deg, []).append(img)
        if not img:
            failures.append(f"Phi(Q^{m[0]}U^{m[1]}) is a boundary")
    for deg, imgs in by_deg.items():
        idx = {w: i for i, w in enumerate(red.survivors[deg])}
        ech = GF2Echelon()
        for img in imgs:
            if not ech.add(sum(1 << idx[w] for w in img))[0]:
                failures.append(f"Phi images in degree {deg} are dependent in homology")
    return QuasiIsoReport(not failures and chain, bar_dims, dual_dims, chain, failures, time.time() - t0)


def nontrivial_in_homology(deg: int, x: Dict[Word, int]) -> bool:
    """A cycle x of the given degree is not a boundary."""
    if bar_d_elem(x):
        raise ValueError("not a cycle")
    red = reduce_bar(deg + 1, [(deg, x)])
    return bool(red.tracked[0][1])
