"""Existence of level-k local maps from the Pin(2) ring into tensor powers.

A level-k map r -> N is determined by the image alpha of 1: a degree-k
cocycle of N whose coefficient on the anchor generator (x_0 in every
factor) is Q^k + theta*y with no U terms. Deciding whether such a cocycle
exists is a GF(2) question: the anchor column of the differential must lie
in the span of the other admissible columns.

Two searches are used. The quotient search works modulo the dg-ideal
(U, Q^3); it is sound for nonexistence and keeps the system finite for
large tensor powers. The exact search works over the full ring on the
generators of degree >= -bound and only ever reports genuine cocycles.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

from .coeffring import DgModule, Element, LocalizedPin, Mono, RingElt, localize_pin, q_poly_parts
from .errors import DegreePieceTooLarge, InputError
from .linalg import GF2Echelon, bits

DEFAULT_MAX_UNKNOWNS = 200_000


@dataclass
class LocalMapQuery:
    target: DgModule
    level: int
    anchor: Optional[Tuple[int, ...]] = None  # factor generator indices; default all x_0
    copies: int = 1
    degree: Optional[int] = None

    def anchor_index(self, base: DgModule) -> int:
        """Index of the anchor generator inside the tensor power."""
        parts = self.anchor or (base.index("x_0"),) * self.copies
        idx = 0
        for a in parts:
            idx = idx * base.rank + a
        return idx


@dataclass
class LocalMapReport:
    satisfiable: Optional[bool]
    method: str
    level: int
    copies: int
    unknowns: int
    equations: int
    rank: int
    seconds: float
    witness: Element = field(default_factory=dict)
    coefficient: Optional[RingElt] = None
    notes: List[str] = field(default_factory=list)

    def to_json(self, module: Optional[DgModule] = None) -> dict:
        out = {
            "satisfiable": self.satisfiable,
            "method": self.method,
            "copies": self.copies,
            "level": self.level,
            "unknowns": self.unknowns,
            "equations": self.equations,
            "rank": self.rank,
            "seconds": round(self.seconds, 3),
            "notes": self.notes,
        }
        if self.coefficient is not None:
            out["anchor_coefficient"] = str(self.coefficient)
        if module is not None and self.witness:
            out["witness"] = module.fmt_elem(self.witness, unicode=False)
        return out


# ---------------------------------------------------------------------------
# coefficients and witnesses


def coef(module: DgModule, x: Element, gens: Sequence[str] | str) -> RingElt:
    """The ring coefficient of one free generator in x."""
    name = gens if isinstance(gens, str) else "⊗".join(gens)
    g = module.index(name)
    return RingElt(module.ring, {m: c for (h, m), c in x.items() if h == g})


def admissible_anchor(r: RingElt, k: int) -> bool:
    """r = Q^k + theta*y with y free of U."""
    ring = r.ring
    qi, ui, ti = ring.index("Q"), ring.index("U"), ring.index("theta")
    qk = tuple(k if i == qi else 0 for i in range(len(ring.names)))
    if r.terms.get(qk, 0) != 1:
        return False
    for m in r.terms:
        if m == qk:
            continue
        if m[ui] or not m[ti]:
            return False
    return True


def localized_class(r: RingElt) -> int:
    """Class of a cocycle of r in H(r_0) = F_2[Q]/(Q^3) (V set to 1), as a packed poly."""
    even, _ = q_poly_parts(r)
    return even & 0b111


def verify_local_witness(module: DgModule, alpha: Element, k: int, anchor: int) -> List[str]:
    problems = []
    if module.d_elem(alpha):
        problems.append("d(alpha) != 0")
    deg = module.elem_degree(alpha)
    if deg != k + module.degrees[anchor]:
        problems.append(f"degree {deg} != {k + module.degrees[anchor]}")
    c = RingElt(module.ring, {m: v for (h, m), v in alpha.items() if h == anchor})
    if not admissible_anchor(c, k):
        problems.append(f"anchor coefficient {c} is not Q^{k} + theta*y")
    if k < 3 and localized_class(c) != 1 << k:
        problems.append("localized class is not Q^k")
    return problems


# ---------------------------------------------------------------------------
# span test


def _span_test(columns: List[int], target: int, track: bool) -> Tuple[bool, int, int]:
    """Is columns[target] a sum of the others? Returns (yes, combination, rank)."""
    ech = GF2Echelon(track=track)
    for i, col in enumerate(columns):
        if i != target:
            ech.add(col, tag=i)
    rest, combo = ech.reduce(columns[target], 0)
    return rest == 0, combo, len(ech)


# ---------------------------------------------------------------------------
# quotient by (U, Q^3)


def _reduce_entry(ring, c: RingElt) -> Dict[Tuple[int, int], int]:
    """Image of a ring element in F_2[Q, theta]/(Q^3), keyed by (a, b) for Q^a theta^b."""
    qi, ui, ti = ring.index("Q"), ring.index("U"), ring.index("theta")
    out: Dict[Tuple[int, int], int] = {}
    for m, v in c.terms.items():
        if m[ui] or m[qi] >= 3 or not v % 2:
            continue
        key = (m[qi], m[ti])
        out[key] = out.get(key, 0) ^ 1
    return {k: 1 for k, v in out.items() if v}


def quotient_search(module: DgModule, k: int, anchor: int,
                    max_unknowns: int = DEFAULT_MAX_UNKNOWNS, track: bool = False) -> LocalMapReport:
    t0 = time.time()
    ring = module.ring
    reduced = [[(j, _reduce_entry(ring, c)) for j, c in row] for row in module.diff]
    unknowns: List[Tuple[int, int, int]] = []  # (generator, a, b) for Q^a theta^b
    deg = k + module.degrees[anchor]
    for g, dg in enumerate(module.degrees):
        m = deg - dg
        for a in range(min(2, m) + 1):
            if m - a >= 0:
                unknowns.append((g, a, m - a))
    if len(unknowns) > max_unknowns:
        raise DegreePieceTooLarge(f"{len(unknowns)} unknowns exceed the cap {max_unknowns}")
    rows: Dict[Tuple[int, int, int], int] = {}
    columns = []
    target = None
    for i, (g, a, b) in enumerate(unknowns):
        if g == anchor and a == k and b == 0:
            target = i
        v = 0
        for j, entry in reduced[g]:
            for (ea, eb) in entry:
                qa = ea + a
                if qa >= 3:
                    continue
                key = (j, qa, eb + b)
                r = rows.get(key)
                if r is None:
                    r = rows[key] = len(rows)
                v ^= 1 << r
        columns.append(v)
    if target is None:
        raise InputError("anchor monomial is outside the degree-k piece")
    # anchor coefficients other than Q^k that carry no theta are forced to vanish
    keep = [i for i, (g, a, b) in enumerate(unknowns) if not (g == anchor and b == 0 and i != target)]
    cols = [columns[i] for i in keep]
    tpos = keep.index(target)
    ok, combo, rank = _span_test(cols, tpos, track)
    rep = LocalMapReport(
        satisfiable=None if ok else False,
        method="quotient (U, Q^3)",
        level=k,
        copies=0,
        unknowns=len(cols),
        equations=len(rows),
        rank=rank,
        seconds=time.time() - t0,
    )
    if ok:
        rep.notes.append("quotient system is feasible; the quotient test is inconclusive")
    else:
        rep.notes.append(
            f"anchor column independent of the other {len(cols) - 1} columns (rank {rank})"
        )
    return rep


# ---------------------------------------------------------------------------
# exact search over the full ring


def exact_search(module: DgModule, k: int, anchor: int, bound: Optional[int] = None,
                 max_unknowns: int = DEFAULT_MAX_UNKNOWNS) -> LocalMapReport:
    """Search over generators of degree >= -bound (all generators if None)."""
    t0 = time.time()
    ring = module.ring
    ui, ti = ring.index("U"), ring.index("theta")
    deg = k + module.degrees[anchor]
    qk = tuple(k if i == ring.index("Q") else 0 for i in range(len(ring.names)))
    unknowns: List[Tuple[int, Mono]] = []
    for g, dg in enumerate(module.degrees):
        if bound is not None and dg < -bound:
            continue
        for m in ring.monomials(deg - dg):
            if g == anchor and (m[ui] or (m[ti] == 0 and m != qk)):
                continue
            unknowns.append((g, m))
        if len(unknowns) > max_unknowns:
            raise DegreePieceTooLarge(f"more than {max_unknowns} unknowns")
    target = unknowns.index((anchor, qk))
    rows: Dict[Tuple[int, Mono], int] = {}
    columns = []
    for g, m in unknowns:
        v = 0
        for key, c in module.d_basis(g, m).items():
            if not c:
                continue
            r = rows.get(key)
            if r is None:
                r = rows[key] = len(rows)
            v |= 1 << r
        columns.append(v)
    ok, combo, rank = _span_test(columns, target, track=True)
    full = bound is None or bound >= -min(module.degrees)
    rep = LocalMapReport(
        satisfiable=True if ok else (False if full else None),
        method="exact" + ("" if full else f" (generators of degree >= -{bound})"),
        level=k,
        copies=0,
        unknowns=len(unknowns),
        equations=len(rows),
        rank=rank,
        seconds=0.0,
    )
    if ok:
        sel = combo | (1 << target)
        alpha = {unknowns[i]: 1 for i in bits(sel)}
        rep.witness = alpha
        rep.coefficient = RingElt(ring, {m: 1 for (g, m) in alpha if g == anchor})
        problems = verify_local_witness(module, alpha, k, anchor)
        if problems:
            raise AssertionError(f"solver witness failed verification: {problems}")
    elif not full:
        rep.notes.append("no witness on the restricted support")
    rep.seconds = time.time() - t0
    return rep


# ---------------------------------------------------------------------------
# driver


def local_map_exists(q: LocalMapQuery, bounds: Sequence[int] = (0, 1, 2, 4, 8),
                     max_unknowns: int = DEFAULT_MAX_UNKNOWNS) -> LocalMapReport:
    if q.level not in (0, 1, 2):
        raise InputError("level must be 0, 1 or 2")
    base = q.target
    module = base.tensor_power(q.copies)
    anchor = q.anchor_index(base)
    k = q.level if q.degree is None else q.degree - module.degrees[anchor]
    rep = quotient_search(module, k, anchor, max_unknowns)
    rep.copies = q.copies
    if rep.satisfiable is False:
        return rep
    notes = list(rep.notes)
    last = rep
    for b in list(bounds) + [None]:
        try:
            last = exact_search(module, k, anchor, b, max_unknowns)
        except DegreePieceTooLarge as exc:
            notes.append(str(exc))
            break
        last.copies = q.copies
        if last.satisfiable is not None:
            break
    last.notes = notes + last.notes
    return last


def tensor_witness(module1: DgModule, a: Element, b: Element, product: DgModule) -> Element:
    """a (x) b inside module1 (x) module1 (characteristic 2, no signs)."""
    ring = module1.ring
    out: Element = {}
    n = module1.rank
    for (g1, m1), c1 in a.items():
        for (g2, m2), c2 in b.items():
            m = ring.mul_mono(m1, m2)
            key = (g1 * n + g2, m)
            out[key] = out.get(key, 0) ^ (c1 & c2)
    return {k: v for k, v in out.items() if v}


def apply_projection(base: DgModule, copies: int, alpha: Element, target: str = "x_0") -> Element:
    """id^(n-1) (x) p applied to an element of base^(x)copies."""
    t = base.index(target)
    n = base.rank
    out: Element = {}
    for (g, m), c in alpha.items():
        if g % n == t:
            key = (g // n, m)
            out[key] = out.get(key, 0) ^ c
    return {k: v for k, v in out.items() if v}


# ---------------------------------------------------------------------------
# projection


def _loc_solve_unit(loc: LocalizedPin, t: int, max_q: int) -> bool:
    """Cocycle z over F_2[Q] (coefficients of Q-degree <= max_q) whose t-component has constant term 1."""
    n = len(loc.names)
    columns = []
    unknowns = []
    for b in range(n):
        for e in range(max_q + 1):
            v = 0
            for r in range(n):
                ent = loc.matrix[r][b]
                if ent:
                    for s in bits(ent):
                        v |= 1 << (r * (max_q + 8) + s + e)
            columns.append(v)
            unknowns.append((b, e))
    target = unknowns.index((2 * t, 0))
    return _span_test(columns, target, track=False)[0]


def projection_is_local(m: DgModule, target: str = "x_0", max_q: int = 8) -> bool:
    """The projection onto one generator is a chain map and a localized quasi-isomorphism."""
    t = m.index(target)
    for i in range(m.rank):
        if t in m.d_of(i):
            return False
    loc = localize_pin(m)
    if not loc.is_swf_type():
        return False
    return _loc_solve_unit(loc, t, max_q)


def derive_4copy_obstruction(n3: LocalMapReport, base: DgModule) -> bool:
    """A level-2 map into base^4 would give one into base^3 after id^3 (x) p."""
    return n3.satisfiable is False and n3.level == 2 and projection_is_local(base)
