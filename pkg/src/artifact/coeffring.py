"""Graded coefficient rings and free dg-modules over them.

Three ring families are supported:

* ``s1zp(2)``: F_2[U, theta] with |U| = 2, |theta| = 1;
* ``s1zp(p)`` for odd p: F_p[U, R, S]/(R^2) with |R| = 1, |S| = 2;
* ``pin()``: F_2[Q, U, theta] with dU = Q^3 and |Q| = |theta| = 1;
* ``pin_only()``: the theta-free subring F_2[Q, U].

Polynomials are dicts from exponent tuples to nonzero coefficients.
Modules act on the right, so d(g r) = d(g) r + (-1)^|g| g d(r).
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Dict, List, Optional, Sequence, Tuple

from .errors import InhomogeneousDifferential, NegativeExponent, RingMismatch
from .gradedroot import GroupRingElt
from .linalg import GF2Echelon, ModpEchelon, bits, kernel, pdeg, smith_gf2t

Mono = Tuple[int, ...]
Poly = Dict[Mono, int]

_SUPERSCRIPT = str.maketrans("0123456789", "⁰¹²³⁴⁵⁶⁷⁸⁹")


@dataclass(frozen=True)
class RingSpec:
    name: str
    p: int
    names: Tuple[str, ...]
    degrees: Tuple[int, ...]
    caps: Tuple[Optional[int], ...]  # exponent bound (R^2 = 0 -> cap 1), None if free
    dvars: Tuple[Optional[Tuple[Tuple[Mono, int], ...]], ...]  # d of each variable

    # -- bookkeeping -----------------------------------------------------
    def index(self, var: str) -> int:
        return self.names.index(var)

    def mono_deg(self, m: Mono) -> int:
        return sum(e * d for e, d in zip(m, self.degrees))

    def monomials(self, deg: int) -> List[Mono]:
        return _monomials(self, deg)

    @property
    def has_differential(self) -> bool:
        return any(self.dvars)

    # -- arithmetic on raw dicts -----------------------------------------
    def norm(self, f: Poly) -> Poly:
        return {m: c % self.p for m, c in f.items() if c % self.p}

    def add_into(self, acc: Poly, f: Poly, scale: int = 1) -> None:
        p = self.p
        for m, c in f.items():
            v = (acc.get(m, 0) + scale * c) % p
            if v:
                acc[m] = v
            else:
                acc.pop(m, None)

    def mul_mono(self, a: Mono, b: Mono) -> Optional[Mono]:
        out = tuple(x + y for x, y in zip(a, b))
        for e, cap in zip(out, self.caps):
            if cap is not None and e > cap:
                return None
        return out

    def mul(self, f: Poly, g: Poly) -> Poly:
        acc: Poly = {}
        p = self.p
        for a, ca in f.items():
            for b, cb in g.items():
                m = self.mul_mono(a, b)
                if m is not None:
                    acc[m] = (acc.get(m, 0) + ca * cb) % p
        return {m: c for m, c in acc.items() if c}

    def d_mono(self, m: Mono) -> Poly:
        acc: Poly = {}
        for i, dv in enumerate(self.dvars):
            if dv is None or m[i] == 0:
                continue
            lower = m[:i] + (m[i] - 1,) + m[i + 1:]
            self.add_into(acc, self.mul({lower: m[i]}, dict(dv)))
        return acc

    def d(self, f: Poly) -> Poly:
        acc: Poly = {}
        for m, c in f.items():
            self.add_into(acc, self.d_mono(m), c)
        return acc

    # -- constructors ----------------------------------------------------
    def zero(self) -> "RingElt":
        return RingElt(self, {})

    def one(self) -> "RingElt":
        return RingElt(self, {(0,) * len(self.names): 1})

    def const(self, c: int) -> "RingElt":
        return RingElt(self, self.norm({(0,) * len(self.names): c}))

    def var(self, name: str) -> "RingElt":
        m = [0] * len(self.names)
        m[self.index(name)] = 1
        return RingElt(self, {tuple(m): 1})

    def mono(self, **exps: int) -> "RingElt":
        m = [0] * len(self.names)
        for k, v in exps.items():
            m[self.index(k)] = v
        return RingElt(self, self.norm({tuple(m): 1}))

    # -- formatting --------------------------------------------------------
    def fmt_mono(self, m: Mono, unicode: bool = True) -> str:
        out = ""
        for name, e in zip(self.names, m):
            if e == 0:
                continue
            sym = "θ" if (name == "theta" and unicode) else name
            if e == 1:
                out += sym
            elif unicode:
                out += sym + str(e).translate(_SUPERSCRIPT)
            else:
                out += f"{sym}^{e}"
        return out

    def fmt(self, f: Poly, unicode: bool = True) -> str:
        if not f:
            return "0"
        # highest U power first, then Q, reading like hand-written formulas
        order = sorted(f, key=lambda m: tuple(-e for e in m))
        if "U" in self.names:
            u = self.index("U")
            order = sorted(f, key=lambda m: (-m[u], tuple(-e for e in m)))
        parts = []
        for m in order:
            c = f[m]
            body = self.fmt_mono(m, unicode)
            if not body:
                parts.append(str(c))
            elif c == 1:
                parts.append(body)
            else:
                parts.append(f"{c}{body}")
        return "+".join(parts)


@lru_cache(maxsize=None)
def _monomials(ring: RingSpec, deg: int) -> List[Mono]:
    out: List[Mono] = []
    n = len(ring.names)

    def rec(i: int, left: int, acc: List[int]) -> None:
        if i == n:
            if left == 0:
                out.append(tuple(acc))
            return
        d = ring.degrees[i]
        top = left // d
        if ring.caps[i] is not None:
            top = min(top, ring.caps[i])
        for e in range(top + 1):
            acc.append(e)
            rec(i + 1, left - e * d, acc)
            acc.pop()

    if deg >= 0:
        rec(0, deg, [])
    return out


def s1zp(p: int) -> RingSpec:
    if p == 2:
        return RingSpec("R_2", 2, ("U", "theta"), (2, 1), (None, None), (None, None))
    return RingSpec(f"R_{p}", p, ("U", "R", "S"), (2, 1, 2), (None, 1, None), (None, None, None))


def pin() -> RingSpec:
    q3 = (((3, 0, 0), 1),)
    return RingSpec("r", 2, ("Q", "U", "theta"), (1, 2, 1), (None, None, None), (None, q3, None))


def pin_only() -> RingSpec:
    """F_2[Q, U] with dU = Q^3, the cochain model of BPin(2) alone."""
    q3 = (((3, 0), 1),)
    return RingSpec("r_pin", 2, ("Q", "U"), (1, 2), (None, None), (None, q3))


def polyu(p: int) -> RingSpec:
    return RingSpec(f"F_{p}[U]", p, ("U",), (2,), (None,), (None,))


@dataclass(frozen=True, eq=False)
class RingElt:
    ring: RingSpec
    terms: Dict[Mono, int]

    def _coerce(self, other) -> "RingElt":
        if isinstance(other, RingElt):
            if other.ring != self.ring:
                raise RingMismatch(f"{self.ring.name} vs {other.ring.name}")
            return other
        return self.ring.const(int(other))

    def __add__(self, other) -> "RingElt":
        other = self._coerce(other)
        acc = dict(self.terms)
        self.ring.add_into(acc, other.terms)
        return RingElt(self.ring, acc)

    __radd__ = __add__

    def __neg__(self) -> "RingElt":
        return RingElt(self.ring, self.ring.norm({m: -c for m, c in self.terms.items()}))

    def __sub__(self, other) -> "RingElt":
        return self + (-self._coerce(other))

    def __mul__(self, other) -> "RingElt":
        other = self._coerce(other)
        return RingElt(self.ring, self.ring.mul(self.terms, other.terms))

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "RingElt":
        out = self.ring.one()
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            other = self.ring.const(other)
        return isinstance(other, RingElt) and self.ring == other.ring and self.terms == other.terms

    def __hash__(self) -> int:
        return hash((self.ring, frozenset(self.terms.items())))

    def __bool__(self) -> bool:
        return bool(self.terms)

    def d(self) -> "RingElt":
        return RingElt(self.ring, self.ring.d(self.terms))

    def degrees(self) -> set:
        return {self.ring.mono_deg(m) for m in self.terms}

    def is_homogeneous(self) -> bool:
        return len(self.degrees()) <= 1

    @property
    def degree(self) -> Optional[int]:
        degs = self.degrees()
        if len(degs) > 1:
            raise InhomogeneousDifferential(f"{self} is not homogeneous")
        return next(iter(degs)) if degs else None

    def coeff(self, **exps: int) -> int:
        m = [0] * len(self.ring.names)
        for k, v in exps.items():
            m[self.ring.index(k)] = v
        return self.terms.get(tuple(m), 0)

    def derivative(self, var: str) -> "RingElt":
        """Formal partial derivative."""
        i = self.ring.index(var)
        acc: Poly = {}
        for m, c in self.terms.items():
            if m[i]:
                lower = m[:i] + (m[i] - 1,) + m[i + 1:]
                self.ring.add_into(acc, {lower: c * m[i]})
        return RingElt(self.ring, acc)

    def __str__(self) -> str:
        return self.ring.fmt(self.terms)

    def __repr__(self) -> str:
        return f"RingElt({self.ring.name}: {self})"

    def to_json(self) -> List[dict]:
        out = []
        for m, c in sorted(self.terms.items()):
            row = {name: e for name, e in zip(self.ring.names, m)}
            row["coef"] = c
            out.append(row)
        return out

    @classmethod
    def from_json(cls, ring: RingSpec, rows: List[dict]) -> "RingElt":
        acc: Poly = {}
        for row in rows:
            m = tuple(int(row.get(name, 0)) for name in ring.names)
            ring.add_into(acc, {m: int(row.get("coef", 1))})
        return cls(ring, acc)


# ---------------------------------------------------------------------------
# group-ring exponents


def _s_element(ring: RingSpec) -> RingElt:
    if "S" in ring.names:
        return ring.var("S")
    return ring.var("theta") ** 2


def u_exp(ring: RingSpec, n: GroupRingElt) -> RingElt:
    """prod_k (U + k S)^{n_k}; S is theta^2 in characteristic 2."""
    if not n.nonnegative():
        raise NegativeExponent(f"exponent {n} has a negative coefficient")
    u, s = ring.var("U"), _s_element(ring)
    out = ring.one()
    for k, c in n.terms:
        out = out * (u + s * (k % ring.p)) ** c
    return out


def uq_exp(ring: RingSpec, n: GroupRingElt) -> RingElt:
    """The four-case companion exponent for n = n_+[0] + n_-[1]."""
    if ring.p != 2:
        raise RingMismatch("U_Q exponents live over characteristic 2")
    if not n.nonnegative():
        raise NegativeExponent(f"exponent {n} has a negative coefficient")
    n2 = n.reduce(2)
    npos, nneg = n2[0], n2[1]
    u = ring.var("U")
    ut = u + ring.var("theta") ** 2
    if npos == 0 and nneg == 0:
        return ring.zero()
    if nneg == 0:
        return u ** (npos - 1) * npos
    if npos == 0:
        return ut ** (nneg - 1) * nneg
    return u ** (npos - 1) * ut ** nneg * npos + u ** npos * ut ** (nneg - 1) * nneg


# ---------------------------------------------------------------------------
# free dg-modules

Element = Dict[Tuple[int, Mono], int]


@dataclass(frozen=True, eq=False)
class DgModule:
    """Free graded module with d(g_i) = sum_j g_j * diff[i][j]."""

    ring: RingSpec
    names: Tuple[str, ...]
    degrees: Tuple[int, ...]
    diff: Tuple[Tuple[Tuple[int, RingElt], ...], ...]

    def __post_init__(self) -> None:
        if not (len(self.names) == len(self.degrees) == len(self.diff)):
            raise ValueError("names, degrees and differential must align")
        for i, row in enumerate(self.diff):
            for j, c in row:
                if c.ring != self.ring:
                    raise RingMismatch("differential entry over the wrong ring")
                if c and (not c.is_homogeneous() or self.degrees[j] + c.degree != self.degrees[i] + 1):
                    raise InhomogeneousDifferential(
                        f"d({self.names[i]}) -> {self.names[j]} with coefficient {c} "
                        f"breaks degrees {self.degrees[i]} -> {self.degrees[j]}"
                    )

    @property
    def rank(self) -> int:
        return len(self.names)

    def index(self, name: str) -> int:
        return self.names.index(name)

    def d_of(self, i: int) -> Dict[int, RingElt]:
        return {j: c for j, c in self.diff[i] if c}

    def entry(self, src: str, tgt: str) -> RingElt:
        return self.d_of(self.index(src)).get(self.index(tgt), self.ring.zero())

    # -- elements -------------------------------------------------------
    def element(self, parts: Dict[str, RingElt]) -> Element:
        out: Element = {}
        for name, r in parts.items():
            g = self.index(name)
            for m, c in r.terms.items():
                out[(g, m)] = (out.get((g, m), 0) + c) % self.ring.p
        return {k: v for k, v in out.items() if v}

    def coefficients(self, x: Element) -> Dict[int, RingElt]:
        acc: Dict[int, Poly] = {}
        for (g, m), c in x.items():
            acc.setdefault(g, {})[m] = c
        return {g: RingElt(self.ring, f) for g, f in acc.items()}

    def d_basis(self, g: int, m: Mono) -> Element:
        """d(g * m) expanded in the free basis."""
        ring = self.ring
        out: Element = {}
        p = ring.p
        for j, c in self.diff[g]:
            for cm, cc in c.terms.items():
                mm = ring.mul_mono(cm, m)
                if mm is None:
                    continue
                key = (j, mm)
                out[key] = (out.get(key, 0) + cc) % p
        if ring.has_differential:
            sign = -1 if self.degrees[g] % 2 else 1
            for mm, cc in ring.d_mono(m).items():
                key = (g, mm)
                out[key] = (out.get(key, 0) + sign * cc) % p
        return {k: v for k, v in out.items() if v}

    def d_elem(self, x: Element) -> Element:
        out: Element = {}
        p = self.ring.p
        for (g, m), c in x.items():
            for key, v in self.d_basis(g, m).items():
                out[key] = (out.get(key, 0) + c * v) % p
        return {k: v for k, v in out.items() if v}

    def elem_degree(self, x: Element) -> Optional[int]:
        degs = {self.degrees[g] + self.ring.mono_deg(m) for g, m in x}
        if len(degs) > 1:
            raise InhomogeneousDifferential("element is not homogeneous")
        return next(iter(degs)) if degs else None

    def fmt_elem(self, x: Element, unicode: bool = True) -> str:
        if not x:
            return "0"
        parts = []
        for g, r in sorted(self.coefficients(x).items()):
            s = self.ring.fmt(r.terms, unicode)
            if s == "1":
                parts.append(self.names[g])
            elif len(r.terms) > 1:
                parts.append(f"({s}){self.names[g]}")
            else:
                parts.append(f"{s}{self.names[g]}")
        return " + ".join(parts)

    # -- structure checks --------------------------------------------------
    def d_squared(self) -> Dict[int, Element]:
        """Nonzero d(d(g)) per generator; empty means d o d = 0 exactly."""
        bad = {}
        zero = (0,) * len(self.ring.names)
        for g in range(self.rank):
            dd = self.d_elem(self.d_basis(g, zero))
            if dd:
                bad[g] = dd
        return bad

    def is_chain_complex(self) -> bool:
        return not self.d_squared()

    # -- constructions -------------------------------------------------------
    def tensor(self, other: "DgModule", sep: str = "⊗") -> "DgModule":
        if other.ring != self.ring:
            raise RingMismatch("tensor factors over different rings")
        n2 = other.rank
        names, degs, diff = [], [], []
        for a in range(self.rank):
            for b in range(n2):
                names.append(f"{self.names[a]}{sep}{other.names[b]}")
                degs.append(self.degrees[a] + other.degrees[b])
                row: Dict[int, RingElt] = {}
                for t, c in self.diff[a]:
                    sgn = -1 if (c.degree or 0) * other.degrees[b] % 2 else 1
                    k = t * n2 + b
                    row[k] = row.get(k, self.ring.zero()) + c * sgn
                sgn_a = -1 if self.degrees[a] % 2 else 1
                for t, c in other.diff[b]:
                    k = a * n2 + t
                    row[k] = row.get(k, self.ring.zero()) + c * sgn_a
                diff.append(tuple((k, c) for k, c in sorted(row.items()) if c))
        return DgModule(self.ring, tuple(names), tuple(degs), tuple(diff))

    def tensor_power(self, n: int) -> "DgModule":
        out = self
        for _ in range(n - 1):
            out = out.tensor(self)
        return out

    # -- graded pieces ---------------------------------------------------------
    def piece(self, deg: int) -> List[Tuple[int, Mono]]:
        out = []
        for g, dg in enumerate(self.degrees):
            for m in self.ring.monomials(deg - dg):
                out.append((g, m))
        return out

    def differential_columns(self, deg: int) -> Tuple[List, List, List]:
        """Basis of degree deg, of degree deg+1, and the columns of d between them."""
        src = self.piece(deg)
        tgt = self.piece(deg + 1)
        idx = {b: i for i, b in enumerate(tgt)}
        cols = []
        for g, m in src:
            img = self.d_basis(g, m)
            if self.ring.p == 2:
                v = 0
                for key in img:
                    v |= 1 << idx[key]
                cols.append(v)
            else:
                cols.append({idx[key]: c for key, c in img.items()})
        return src, tgt, cols

    def homology_in_degree(self, deg: int) -> Tuple[int, List[Element]]:
        """dim H^deg with representative cycles."""
        p = self.ring.p
        src, _, cols = self.differential_columns(deg)
        prev_src, _, prev_cols = self.differential_columns(deg - 1)
        ech = GF2Echelon() if p == 2 else ModpEchelon(p)
        for c in prev_cols:
            ech.add(c)
        reps = []
        for vec in kernel(p, cols):
            if p == 2:
                if ech.add(vec)[0]:
                    reps.append({src[i]: 1 for i in bits(vec)})
            else:
                if ech.add(vec)[0]:
                    reps.append({src[i]: c for i, c in vec.items()})
        return len(reps), reps

    # -- serialization ---------------------------------------------------------
    def to_json(self) -> dict:
        return {
            "ring": self.ring.name,
            "p": self.ring.p,
            "variables": list(self.ring.names),
            "generators": [{"name": n, "degree": d} for n, d in zip(self.names, self.degrees)],
            "differential": [
                {"source": self.names[i], "target": self.names[j], "coefficient": c.to_json()}
                for i, row in enumerate(self.diff)
                for j, c in row
            ],
        }

    @classmethod
    def from_json(cls, data: dict) -> "DgModule":
        ring = ring_by_name(data["ring"], data["p"])
        names = tuple(g["name"] for g in data["generators"])
        degrees = tuple(g["degree"] for g in data["generators"])
        rows: List[Dict[int, RingElt]] = [{} for _ in names]
        for e in data["differential"]:
            i, j = names.index(e["source"]), names.index(e["target"])
            rows[i][j] = RingElt.from_json(ring, e["coefficient"])
        return cls(ring, names, degrees, tuple(tuple(sorted(r.items())) for r in rows))

    def pretty(self, unicode: bool = True) -> List[str]:
        zero = (0,) * len(self.ring.names)
        lines = []
        for g in range(self.rank):
            img = self.d_basis(g, zero)
            lines.append(f"d{self.names[g]} = {self.fmt_elem(img, unicode)}")
        return lines


def ring_by_name(name: str, p: int) -> RingSpec:
    if name == "r":
        return pin()
    if name == "r_pin":
        return pin_only()
    if name.startswith("F_"):
        return polyu(p)
    return s1zp(p)


def free_module(ring: RingSpec, degree: int = 0, name: str = "1") -> DgModule:
    return DgModule(ring, (name,), (degree,), ((),))


# ---------------------------------------------------------------------------
# localization


@dataclass(frozen=True)
class LocalizedS1:
    """Complex over F_p after R, S, theta -> 0 and U -> 1, graded mod 2."""

    p: int
    parity: Tuple[int, ...]
    columns: Tuple[Dict[int, int], ...]  # d(g_i) = sum columns[i][j] g_j

    def homology_rank(self) -> int:
        return len(self.parity) - 2 * _rank(self.p, self.columns)


def _rank(p: int, cols: Sequence[Dict[int, int]]) -> int:
    if p == 2:
        ech = GF2Echelon()
        for c in cols:
            v = 0
            for j, a in c.items():
                if a % 2:
                    v |= 1 << j
            ech.add(v)
        return len(ech)
    ech = ModpEchelon(p)
    for c in cols:
        ech.add(dict(c))
    return len(ech)


def pure_u_coefficient(r: RingElt) -> int:
    """Sum of coefficients of the monomials that are pure powers of U."""
    u = r.ring.index("U")
    return sum(c for m, c in r.terms.items() if all(e == 0 for i, e in enumerate(m) if i != u)) % r.ring.p


def localize_s1(m: DgModule) -> LocalizedS1:
    if m.ring.has_differential:
        raise RingMismatch("use localize_pin for the Pin(2) ring")
    cols = []
    for i in range(m.rank):
        col = {}
        for j, c in m.diff[i]:
            a = pure_u_coefficient(c)
            if a:
                col[j] = a
        cols.append(col)
    return LocalizedS1(m.ring.p, tuple(d % 2 for d in m.degrees), tuple(cols))


@dataclass(frozen=True)
class LocalizedPin:
    """Complex of free F_2[Q]-modules with basis g, gU after theta -> 0, U^2 -> 1.

    Entries are GF(2)[Q] polynomials packed into ints.
    """

    names: Tuple[str, ...]
    matrix: Tuple[Tuple[int, ...], ...]  # matrix[row][col], d(col) = sum_row

    def invariant_factors(self) -> List[int]:
        return smith_gf2t([list(r) for r in self.matrix])

    def homology(self) -> Tuple[int, List[int]]:
        """(free rank, degrees of the nontrivial torsion factors)."""
        facs = self.invariant_factors()
        free = len(self.names) - 2 * len(facs)
        return free, sorted(pdeg(f) for f in facs if pdeg(f) > 0)

    def is_swf_type(self) -> bool:
        return self.homology() == (0, [3])


def q_poly_parts(r: RingElt) -> Tuple[int, int]:
    """theta -> 0 and U^2 -> 1: return (even-U part, odd-U part) in GF(2)[Q]."""
    ring = r.ring
    qi, ui = ring.index("Q"), ring.index("U")
    ti = ring.index("theta")
    even = odd = 0
    for m, c in r.terms.items():
        if m[ti] or not c % 2:
            continue
        if m[ui] % 2:
            odd ^= 1 << m[qi]
        else:
            even ^= 1 << m[qi]
    return even, odd


def localize_pin(m: DgModule) -> LocalizedPin:
    if m.ring != pin():
        raise RingMismatch("localize_pin needs a module over the Pin(2) ring")
    n = m.rank
    mat = [[0] * (2 * n) for _ in range(2 * n)]
    for i in range(n):
        for j, c in m.diff[i]:
            even, odd = q_poly_parts(c)
            # d(g) = sum t c: even part stays on t, odd part lands on tU
            mat[2 * j][2 * i] ^= even
            mat[2 * j + 1][2 * i] ^= odd
            # d(gU) = d(g) U + g Q^3
            mat[2 * j + 1][2 * i + 1] ^= even
            mat[2 * j][2 * i + 1] ^= odd
        mat[2 * i][2 * i + 1] ^= 1 << 3
    names = []
    for nm in m.names:
        names += [nm, f"U{nm}"]
    return LocalizedPin(tuple(names), tuple(tuple(r) for r in mat))
