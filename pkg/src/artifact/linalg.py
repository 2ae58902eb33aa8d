"""Exact linear algebra over GF(2), GF(p) and the polynomial ring GF(2)[t].

GF(2) vectors are Python ints used as bitsets. GF(p) vectors are sparse
dicts ``{index: coefficient}``. Polynomials over GF(2) are ints too, bit ``k``
holding the coefficient of ``t**k``.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

SparseVec = Dict[int, int]


def lowbit(v: int) -> int:
    return (v & -v).bit_length() - 1


def bits(v: int) -> Iterable[int]:
    while v:
        low = v & -v
        yield low.bit_length() - 1
        v ^= low


class GF2Echelon:
    """Incremental echelon basis over GF(2), pivoting on the lowest set bit.

    With ``track=True`` every stored row remembers which inserted vectors
    (by insertion tag) it is the sum of, so kernels and preimages can be read
    back out.
    """

    def __init__(self, track: bool = False) -> None:
        self.track = track
        self.rows: Dict[int, int] = {}
        self.combos: Dict[int, int] = {}
        self.count = 0

    def __len__(self) -> int:
        return len(self.rows)

    def reduce(self, v: int, combo: int = 0) -> Tuple[int, int]:
        rows = self.rows
        if self.track:
            combos = self.combos
            while v:
                low = lowbit(v)
                row = rows.get(low)
                if row is None:
                    break
                v ^= row
                combo ^= combos[low]
        else:
            while v:
                row = rows.get(lowbit(v))
                if row is None:
                    break
                v ^= row
        return v, combo

    def add(self, v: int, tag: Optional[int] = None) -> Tuple[bool, int]:
        """Insert ``v``; return (independent, combination reducing it)."""
        if tag is None:
            tag = self.count
        self.count += 1
        combo = (1 << tag) if self.track else 0
        v, combo = self.reduce(v, combo)
        if v == 0:
            return False, combo
        low = lowbit(v)
        self.rows[low] = v
        if self.track:
            self.combos[low] = combo
        return True, combo

    def contains(self, v: int) -> bool:
        return self.reduce(v)[0] == 0


class ModpEchelon:
    """Incremental echelon basis over GF(p) for sparse dict vectors."""

    def __init__(self, p: int, track: bool = False) -> None:
        self.p = p
        self.track = track
        self.rows: Dict[int, SparseVec] = {}
        self.combos: Dict[int, SparseVec] = {}
        self.count = 0

    def __len__(self) -> int:
        return len(self.rows)

    def _axpy(self, y: SparseVec, a: int, x: SparseVec) -> None:
        p = self.p
        for k, c in x.items():
            val = (y.get(k, 0) + a * c) % p
            if val:
                y[k] = val
            else:
                y.pop(k, None)

    def reduce(self, v: SparseVec, combo: Optional[SparseVec] = None) -> Tuple[SparseVec, SparseVec]:
        v = {k: c % self.p for k, c in v.items() if c % self.p}
        combo = dict(combo or {})
        while v:
            low = min(v)
            row = self.rows.get(low)
            if row is None:
                break
            a = -v[low] % self.p
            self._axpy(v, a, row)
            if self.track:
                self._axpy(combo, a, self.combos[low])
        return v, combo

    def add(self, v: SparseVec, tag: Optional[int] = None) -> Tuple[bool, SparseVec]:
        if tag is None:
            tag = self.count
        self.count += 1
        combo = {tag: 1} if self.track else {}
        v, combo = self.reduce(v, combo)
        if not v:
            return False, combo
        low = min(v)
        inv = pow(v[low], -1, self.p)
        v = {k: c * inv % self.p for k, c in v.items()}
        self.rows[low] = v
        if self.track:
            self.combos[low] = {k: c * inv % self.p for k, c in combo.items()}
        return True, combo

    def contains(self, v: SparseVec) -> bool:
        return not self.reduce(v)[0]


def rank(p: int, vectors: Iterable) -> int:
    ech = GF2Echelon() if p == 2 else ModpEchelon(p)
    for v in vectors:
        ech.add(v)
    return len(ech)


def kernel(p: int, columns: Sequence) -> List:
    """Basis of the kernel of the map whose i-th column is ``columns[i]``.

    Kernel vectors come back in the column-index space (bitset for p=2,
    sparse dict otherwise).
    """
    ech = GF2Echelon(track=True) if p == 2 else ModpEchelon(p, track=True)
    out = []
    for i, col in enumerate(columns):
        indep, combo = ech.add(col, tag=i)
        if not indep:
            out.append(combo)
    return out


# ---------------------------------------------------------------------------
# exact rational helpers


def det_fraction_free(matrix: Sequence[Sequence[int]]) -> int:
    """Bareiss determinant of an integer matrix."""
    a = [list(row) for row in matrix]
    n = len(a)
    if n == 0:
        return 1
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            swap = next((r for r in range(k + 1, n) if a[r][k] != 0), None)
            if swap is None:
                return 0
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def solve_fraction(matrix: Sequence[Sequence[int]], rhs: Sequence) -> List[Fraction]:
    """Solve a nonsingular square system exactly over the rationals."""
    n = len(matrix)
    a = [[Fraction(x) for x in row] + [Fraction(rhs[i])] for i, row in enumerate(matrix)]
    for col in range(n):
        piv = next((r for r in range(col, n) if a[r][col] != 0), None)
        if piv is None:
            raise ZeroDivisionError("singular matrix")
        a[col], a[piv] = a[piv], a[col]
        inv = 1 / a[col][col]
        a[col] = [x * inv for x in a[col]]
        for r in range(n):
            if r != col and a[r][col] != 0:
                f = a[r][col]
                a[r] = [x - f * y for x, y in zip(a[r], a[col])]
    return [a[r][n] for r in range(n)]


# ---------------------------------------------------------------------------
# GF(2)[t] with polynomials packed into ints


def pdeg(a: int) -> int:
    return a.bit_length() - 1


def pmul(a: int, b: int) -> int:
    out = 0
    while b:
        if b & 1:
            out ^= a
        a <<= 1
        b >>= 1
    return out


def pdivmod(a: int, b: int) -> Tuple[int, int]:
    if b == 0:
        raise ZeroDivisionError("polynomial division by zero")
    q = 0
    db = pdeg(b)
    while a and pdeg(a) >= db:
        shift = pdeg(a) - db
        q ^= 1 << shift
        a ^= b << shift
    return q, a


def smith_gf2t(matrix: List[List[int]]) -> List[int]:
    """Nonzero invariant factors of a matrix over GF(2)[t].

    Euclidean reduction to a diagonal, then gcd/lcm passes until each
    factor divides the next.
    """
    a = [list(row) for row in matrix]
    nrows = len(a)
    ncols = len(a[0]) if a else 0
    factors: List[int] = []
    top = 0
    while top < min(nrows, ncols):
        best = None
        for i in range(top, nrows):
            for j in range(top, ncols):
                if a[i][j] and (best is None or pdeg(a[i][j]) < pdeg(a[best[0]][best[1]])):
                    best = (i, j)
        if best is None:
            break
        i, j = best
        a[top], a[i] = a[i], a[top]
        for row in a:
            row[top], row[j] = row[j], row[top]
        while True:
            piv = a[top][top]
            dirty = False
            for i in range(top + 1, nrows):
                if a[i][top]:
                    q, r = pdivmod(a[i][top], piv)
                    a[i] = [x ^ pmul(q, y) for x, y in zip(a[i], a[top])]
                    if r:
                        dirty = True
            for j in range(top + 1, ncols):
                if a[top][j]:
                    q, r = pdivmod(a[top][j], piv)
                    for row in a:
                        row[j] ^= pmul(q, row[top])
                    if r:
                        dirty = True
            if not dirty:
                break
            best = None
            for i in range(top, nrows):
                if a[i][top] and (best is None or pdeg(a[i][top]) < pdeg(a[best][top])):
                    best = i
            colbest = None
            for j in range(top, ncols):
                if a[top][j] and (colbest is None or pdeg(a[top][j]) < pdeg(a[top][colbest])):
                    colbest = j
            if pdeg(a[best][top]) <= pdeg(a[top][colbest]):
                a[top], a[best] = a[best], a[top]
            else:
                for row in a:
                    row[top], row[colbest] = row[colbest], row[top]
        factors.append(a[top][top])
        top += 1
    return normalize_diagonal(factors)


def pgcd(a: int, b: int) -> int:
    while b:
        a, b = b, pdivmod(a, b)[1]
    return a


def normalize_diagonal(diag: List[int]) -> List[int]:
    """Invariant factors of a diagonal matrix over GF(2)[t] (divisibility chain)."""
    d = [x for x in diag if x]
    for i in range(len(d)):
        for j in range(i + 1, len(d)):
            g = pgcd(d[i], d[j])
            lcm = pdivmod(pmul(d[i], d[j]), g)[0]
            d[i], d[j] = g, lcm
    return d
