"""Lattice chain models built from labelled graded roots.

Generators are x_i for leaves and y_j for simple angles, named by the
symmetric leaf indexing. Leaves map to the adjacent angles; angles are
cycles in the S^1 x Z_p model. Degrees are anchored so the leaves of
lowest weight sit in degree 0.
"""

from __future__ import annotations

from typing import Dict, List, Optional, Tuple

from .coeffring import DgModule, RingElt, pin, s1zp, u_exp, uq_exp
from .errors import InputError, NotReflective
from .gradedroot import GroupRingElt, LabelledGradedRoot, SymmetricLabelledRoot


def gen_name(letter: str, i: int) -> str:
    return f"{letter}_{i}" if i >= 0 else f"{letter}_{{{i}}}"


def _degrees(root: LabelledGradedRoot) -> Tuple[List[int], List[int]]:
    c = 2 * min(root.leaf_weight)
    xs = [-2 * w + c for w in root.leaf_weight]
    ys = [-2 * w + c + 1 for w in root.angle_weight]
    return xs, ys


def build_s1zp_chain(root: LabelledGradedRoot, p: Optional[int] = None) -> DgModule:
    """Free R_p-module with d(x_v) = U^{lam_A} y_right + U^{lam_A'} y_left."""
    if p is None:
        p = root.p
    if p is None:
        raise InputError("need a prime p for integer-labelled roots")
    if root.p != p:
        root = root.reduce_mod_p(p)
    ring = s1zp(p)
    xdeg, ydeg = _degrees(root)
    nl = root.n_leaves
    names = [gen_name("x", i) for i in root.leaf_names()] + [gen_name("y", j) for j in root.angle_names()]
    degrees = xdeg + ydeg
    diff: List[Tuple[Tuple[int, RingElt], ...]] = []
    for k in range(nl):
        row = []
        if k > 0:
            row.append((nl + k - 1, u_exp(ring, root.lam_a_right(k - 1))))
        if k < nl - 1:
            row.append((nl + k, u_exp(ring, root.lam_a(k))))
        diff.append(tuple(sorted(row)))
    diff += [()] * (nl - 1)
    return DgModule(ring, tuple(names), tuple(degrees), tuple(diff))


def build_pin2_chain(sym: SymmetricLabelledRoot | LabelledGradedRoot,
                     q2_side: str = "negative") -> DgModule:
    """The Pin(2) x Z_2 model over F_2[Q, U, theta] with dU = Q^3.

    Non-central leaves {v_i, v_-i} and angles {y_j, y_-j} pair into blocks
    with the Q(x_+ + x_-) and Q(y_+ + y_-) terms. By default the Q^2
    correction of a block map is a component x_+ -> y_-; ``q2_side="positive"``
    gives the homotopic variant x_- -> y_+.
    """
    if q2_side not in ("negative", "positive"):
        raise InputError("q2_side must be 'negative' or 'positive'")
    if isinstance(sym, LabelledGradedRoot):
        sym = sym.symmetrize()
    root = sym.root
    if root.p != 2:
        if root.p is None:
            root = root.reduce_mod_p(2)
        else:
            raise InputError("the Pin(2) model needs Z_2 labels")
    if not root.is_reflective():
        raise NotReflective("root is not reflective")
    ring = pin()
    xdeg, ydeg = _degrees(root)
    nl = root.n_leaves
    lnames, anames = root.leaf_names(), root.angle_names()
    names = [gen_name("x", i) for i in lnames] + [gen_name("y", j) for j in anames]
    index = {n: k for k, n in enumerate(names)}
    degrees = xdeg + ydeg
    q = ring.var("Q")
    q2 = q * q
    rows: List[Dict[int, RingElt]] = [dict() for _ in names]

    def add(src: str, tgt: str, c: RingElt) -> None:
        row = rows[index[src]]
        j = index[tgt]
        row[j] = row.get(j, ring.zero()) + c

    leaf_at = {n: k for k, n in enumerate(lnames)}

    def neighbours(i: int) -> List[Tuple[int, GroupRingElt]]:
        """Angles next to leaf v_i (i > 0) with the exponent seen from v_i."""
        k = leaf_at[i]
        out = []
        if k > 0:
            out.append((anames[k - 1], root.lam_a_right(k - 1)))
        if k < nl - 1:
            out.append((anames[k], root.lam_a(k)))
        return out

    for i in (n for n in lnames if n > 0):
        xp, xm = gen_name("x", i), gen_name("x", -i)
        for j, n in neighbours(i):
            if j == 0:
                # central angle: one generator shared by both sides
                y0 = gen_name("y", 0)
                add(xp, y0, u_exp(ring, n))
                add(xm, y0, u_exp(ring, n) + q2 * uq_exp(ring, n))
                continue
            yp, ym = gen_name("y", j), gen_name("y", -j)
            add(xp, yp, u_exp(ring, n))
            add(xm, ym, u_exp(ring, n))
            if q2_side == "negative":
                add(xp, ym, q2 * uq_exp(ring, n))
            else:
                add(xm, yp, q2 * uq_exp(ring, n))
        for g in (xp, xm):
            add(g, xp, q)
            add(g, xm, q)
    if 0 in lnames:
        lam = root.lam_a(leaf_at[0])
        add("x_0", "y_1", u_exp(ring, lam))
        add("x_0", "y_{-1}", u_exp(ring, lam) + q2 * uq_exp(ring, lam))
    for j in (n for n in anames if n > 0):
        yp, ym = gen_name("y", j), gen_name("y", -j)
        for g in (yp, ym):
            add(g, yp, q)
            add(g, ym, q)
    diff = tuple(tuple(sorted((j, c) for j, c in r.items() if c)) for r in rows)
    return DgModule(ring, tuple(names), tuple(degrees), diff)


def reference_module() -> DgModule:
    """The explicit Sigma(3,5,19) module, entered by hand as a golden reference."""
    r = pin()
    Q, U, t = r.var("Q"), r.var("U"), r.var("theta")
    ut = U + t * t
    u4 = U * U + t ** 4
    xs = [gen_name("x", i) for i in range(-5, 6)]
    ys = [gen_name("y", j) for j in list(range(-5, 0)) + list(range(1, 6))]
    names = xs + ys
    deg = {0: 0, 1: 0, 2: 0, 3: -2, 4: -6, 5: -12}
    ydeg = {1: -1, 2: -1, 3: -3, 4: -7, 5: -13}
    degrees = [deg[abs(i)] for i in range(-5, 6)] + [ydeg[abs(j)] for j in list(range(-5, 0)) + list(range(1, 6))]

    def x(i):
        return gen_name("x", i)

    def y(j):
        return gen_name("y", j)

    table: Dict[str, Dict[str, RingElt]] = {
        x(0): {y(1): ut, y(-1): ut + Q * Q},
        x(1): {y(1): U, y(2): ut, y(-1): Q * Q, y(-2): Q * Q},
        x(-1): {y(-1): U, y(-2): ut},
        x(2): {y(2): U, y(3): U * U, y(-2): Q * Q},
        x(-2): {y(-2): U, y(-3): U * U},
        x(3): {y(3): ut, y(4): U * u4, y(-3): Q * Q, y(-4): Q * Q * u4},
        x(-3): {y(-3): ut, y(-4): U * u4},
        x(4): {y(4): U, y(5): U * U * u4, y(-4): Q * Q},
        x(-4): {y(-4): U, y(-5): U * U * u4},
        x(5): {y(5): ut, y(-5): Q * Q},
        x(-5): {y(-5): ut},
    }
    for i in range(1, 6):
        for g in (x(i), x(-i)):
            table[g][x(i)] = Q
            table[g][x(-i)] = Q
        for g in (y(i), y(-i)):
            table.setdefault(g, {})
            table[g][y(i)] = Q
            table[g][y(-i)] = Q
    index = {n: k for k, n in enumerate(names)}
    diff = tuple(
        tuple(sorted((index[t], c) for t, c in table.get(n, {}).items()))
        for n in names
    )
    return DgModule(r, tuple(names), tuple(degrees), diff)


def same_module(a: DgModule, b: DgModule) -> List[str]:
    """Differences between two modules with the same generator names."""
    if a.ring != b.ring:
        return ["different rings"]
    if set(a.names) != set(b.names):
        return [f"generator sets differ: {sorted(set(a.names) ^ set(b.names))}"]
    out = []
    for n in a.names:
        if a.degrees[a.index(n)] != b.degrees[b.index(n)]:
            out.append(f"deg {n}: {a.degrees[a.index(n)]} vs {b.degrees[b.index(n)]}")
        da = {a.names[j]: c for j, c in a.d_of(a.index(n)).items()}
        db = {b.names[j]: c for j, c in b.d_of(b.index(n)).items()}
        for t in set(da) | set(db):
            ca = da.get(t, a.ring.zero())
            cb = db.get(t, b.ring.zero())
            if ca != cb:
                out.append(f"d{n} -> {t}: {ca} vs {cb}")
    return out
