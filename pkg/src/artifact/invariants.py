"""Froyshov-type invariants and the reduced Floer rank of a graded root."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Tuple

from .coeffring import DgModule, Element, RingElt, localize_s1, polyu, pure_u_coefficient, u_exp
from .errors import DegreeCapExceeded, InputError, TheoremViolated
from .gradedroot import GroupRingElt, LabelledGradedRoot, root_from_seifert
from .latticechain import build_s1zp_chain
from .linalg import GF2Echelon, ModpEchelon, bits, kernel, pdeg, smith_gf2t
from .plumbing import SeifertData, n_y


@dataclass
class FroyshovReport:
    delta: Fraction
    delta0: Fraction
    hf_red: int
    p: int
    witness: Element = field(default_factory=dict)
    witness_degree: int = 0
    degree_cap: int = 0

    def to_json(self, module: Optional[DgModule] = None) -> dict:
        out = {
            "p": self.p,
            "delta": str(self.delta),
            "delta0": str(self.delta0),
            "hf_red": self.hf_red,
            "witness_degree": self.witness_degree,
            "degree_cap": self.degree_cap,
        }
        if module is not None:
            out["witness"] = module.fmt_elem(self.witness, unicode=False)
        return out


def _is_prime(p: int) -> bool:
    return p >= 2 and all(p % k for k in range(2, int(p ** 0.5) + 1))


def _u_quotient(m: DgModule) -> DgModule:
    """Set every variable except U to zero: a module over F_p[U]."""
    ring = polyu(m.ring.p)
    diff = []
    for row in m.diff:
        new = []
        for j, c in row:
            a = pure_u_coefficient(c)
            if a:
                k = (c.degree or 0) // 2
                new.append((j, RingElt(ring, {(k,): a})))
        diff.append(tuple(new))
    return DgModule(ring, m.names, m.degrees, tuple(diff))


def local_class_search(m: DgModule, deg: int) -> Optional[Element]:
    """A degree-deg cycle whose localization at U is not a boundary, if any."""
    p = m.ring.p
    loc = localize_s1(m)
    bound = GF2Echelon() if p == 2 else ModpEchelon(p)
    for col in loc.columns:
        if p == 2:
            v = 0
            for j, a in col.items():
                if a % 2:
                    v |= 1 << j
            bound.add(v)
        else:
            bound.add(dict(col))
    src, _, cols = m.differential_columns(deg)
    u = m.ring.index("U")

    def pure(mono) -> bool:
        return all(e == 0 for i, e in enumerate(mono) if i != u)

    for vec in kernel(p, cols):
        items = [(i, 1) for i in bits(vec)] if p == 2 else list(vec.items())
        if p == 2:
            lv = 0
            for i, _ in items:
                g, mono = src[i]
                if pure(mono):
                    lv ^= 1 << g
            hit = lv and not bound.contains(lv)
        else:
            lv: Dict[int, int] = {}
            for i, c in items:
                g, mono = src[i]
                if pure(mono):
                    lv[g] = (lv.get(g, 0) + c) % p
            lv = {g: c for g, c in lv.items() if c}
            hit = bool(lv) and not bound.contains(lv)
        if hit:
            return {src[i]: c for i, c in items}
    return None


def _min_local_degree(m: DgModule, cap: int) -> Tuple[int, Element]:
    start = min(m.degrees)
    for deg in range(start, cap + 1):
        w = local_class_search(m, deg)
        if w is not None:
            return deg, w
    raise DegreeCapExceeded(f"no localization-surviving class up to degree {cap}")


def delta(m: DgModule, cap: Optional[int] = None) -> Fraction:
    """Half the least degree of a U-nontorsion class, over F_p[U]."""
    if cap is None:
        cap = max(m.degrees) + 8
    deg, _ = _min_local_degree(_u_quotient(m), cap)
    return Fraction(deg, 2)


def delta0(m: DgModule, cap: Optional[int] = None) -> Tuple[Fraction, Element, int]:
    """Half the least degree of a class surviving localization, with a witness."""
    if cap is None:
        cap = default_cap(m)
    deg, w = _min_local_degree(m, cap)
    return Fraction(deg, 2), w, deg


def default_cap(m: DgModule) -> int:
    """Twice the weight span of the anchored generators, plus headroom."""
    return 2 * (max(m.degrees) - min(m.degrees)) + 8


def verify_witness(m: DgModule, w: Element) -> bool:
    """d(w) = 0 and its localization is not a boundary."""
    if m.d_elem(w):
        return False
    deg = m.elem_degree(w)
    return deg is not None and local_class_search_contains(m, w)


def local_class_search_contains(m: DgModule, w: Element) -> bool:
    p = m.ring.p
    loc = localize_s1(m)
    u = m.ring.index("U")
    vec: Dict[int, int] = {}
    for (g, mono), c in w.items():
        if all(e == 0 for i, e in enumerate(mono) if i != u):
            vec[g] = (vec.get(g, 0) + c) % p
    vec = {g: c for g, c in vec.items() if c}
    if not vec:
        return False
    if p == 2:
        ech = GF2Echelon()
        for col in loc.columns:
            ech.add(sum(1 << j for j, a in col.items() if a % 2))
        return not ech.contains(sum(1 << g for g in vec))
    ech = ModpEchelon(p)
    for col in loc.columns:
        ech.add(dict(col))
    return not ech.contains(vec)


# ---------------------------------------------------------------------------
# reduced rank


def _drops(root: LabelledGradedRoot) -> Tuple[List[int], List[int]]:
    """For angle j (between leaves j-1 and j): rises from its left and right leaves."""
    left = [root.angle_weight[k] - root.leaf_weight[k] for k in range(len(root.angle_weight))]
    right = [root.angle_weight[k] - root.leaf_weight[k + 1] for k in range(len(root.angle_weight))]
    return left, right


def hf_red_formula(root: LabelledGradedRoot) -> int:
    left, right = _drops(root)
    ell = root.leaf_weight.index(min(root.leaf_weight))
    # angle k sits between leaves k and k+1; it lies left of v_ell when k < ell
    return sum(left[k] for k in range(ell)) + sum(right[k] for k in range(ell, len(left)))


def hf_red_oracle(root: LabelledGradedRoot) -> int:
    """U-torsion of the leaf-to-angle complex over F_2[U], via Smith form."""
    left, right = _drops(root)
    m = len(left)
    if m == 0:
        return 0
    mat = [[0] * (m + 1) for _ in range(m)]
    for k in range(m):
        mat[k][k] = 1 << left[k]
        mat[k][k + 1] = 1 << right[k]
    return sum(pdeg(f) for f in smith_gf2t(mat))


def hf_red_dim(root: LabelledGradedRoot, check: bool = True) -> int:
    val = hf_red_formula(root)
    if check:
        other = hf_red_oracle(root)
        if other != val:
            raise TheoremViolated(f"closed formula {val} != Smith form torsion {other}")
    return val


# ---------------------------------------------------------------------------
# the large-p comparison


def froyshov(s_or_root, p: int, cap: Optional[int] = None) -> FroyshovReport:
    if not _is_prime(p):
        raise InputError(f"{p} is not prime")
    root = s_or_root if isinstance(s_or_root, LabelledGradedRoot) else root_from_seifert(s_or_root)
    if root.p is not None and root.p != p:
        raise InputError("root labels already reduced with a different p")
    m = build_s1zp_chain(root, p)
    d = delta(m)
    d0, w, deg = delta0(m, cap)
    if d0 < d:
        raise TheoremViolated(f"delta0 = {d0} < delta = {d}")
    return FroyshovReport(d, d0, hf_red_dim(root.reduce_mod_p(p) if root.p is None else root),
                          p, w, deg, cap if cap is not None else default_cap(m))


def beta_witness(root: LabelledGradedRoot, p: int) -> Tuple[DgModule, Element]:
    """The alternating sum of U^{E_i} x_i built from the angle labels."""
    if root.p is None:
        root = root.reduce_mod_p(p)
    m = build_s1zp_chain(root, p)
    ring = m.ring
    nl = root.n_leaves
    neg = [root.lam_a(k) for k in range(nl - 1)]
    pos = [root.lam_a_right(k) for k in range(nl - 1)]
    zero = GroupRingElt((), p)
    parts: Dict[str, RingElt] = {}
    for i in range(nl):
        e = zero
        for k in range(nl - 1):
            e = e + (neg[k] if k < i else pos[k])
        coeff = u_exp(ring, e) * (-1 if i % 2 else 1)
        parts[m.names[i]] = coeff
    return m, m.element(parts)


def check_large_p(s: SeifertData, p: int, require_coprime: bool = False) -> bool:
    """delta0 - delta = dim HF_red for a prime p > N_Y, plus the explicit witness.

    Only p > N_Y is needed for the residues [0..N_Y] to stay distinct; the
    coprimality guard is opt-in.
    """
    ny = n_y(s)
    if not _is_prime(p):
        raise InputError(f"{p} is not prime")
    if p <= ny:
        raise InputError(f"need p > N_Y = {ny}")
    if require_coprime and any(q % p == 0 for q, _ in s.real_arms):
        raise InputError(f"p = {p} divides a Seifert multiplicity")
    root = root_from_seifert(s)
    rep = froyshov(root, p)
    gap = rep.delta0 - rep.delta
    if gap != rep.hf_red:
        raise TheoremViolated(f"delta0 - delta = {gap} but dim HF_red = {rep.hf_red}")
    m, beta = beta_witness(root, p)
    if m.d_elem(beta):
        raise TheoremViolated("the alternating witness is not a cycle")
    if m.elem_degree(beta) != 2 * rep.hf_red:
        raise TheoremViolated(f"witness degree {m.elem_degree(beta)} != 2 dim HF_red")
    if not local_class_search_contains(m, beta):
        raise TheoremViolated("the alternating witness dies under localization")
    return True
