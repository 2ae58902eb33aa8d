"""Planar graded roots with group-ring labels on leaves and simple angles.

A root is read off an eventually increasing integer sequence n_0, n_1, ...
(the weights chi(x(i))). Runs of equal values that sit below both
neighbouring runs are leaves; between two consecutive leaves the first
index of maximal value is the angle. Labels record the residues of the
steps n_{s+1} - n_s, either as plain integers (``p=None``) or mod p.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from .compseq import delta_closed_form
from .errors import InputError, NotEventuallyIncreasing, NotReflective
from .plumbing import SeifertData, n_y


@dataclass(frozen=True)
class GroupRingElt:
    """Finite Z-combination of residues [k]; ``p=None`` keeps integer indices."""

    terms: Tuple[Tuple[int, int], ...] = ()
    p: Optional[int] = None

    @classmethod
    def make(cls, coeffs: Dict[int, int] | Iterable[Tuple[int, int]], p: Optional[int] = None) -> "GroupRingElt":
        items = coeffs.items() if isinstance(coeffs, dict) else coeffs
        acc: Dict[int, int] = {}
        for k, c in items:
            k = k % p if p else k
            acc[k] = acc.get(k, 0) + c
        return cls(tuple(sorted((k, c) for k, c in acc.items() if c)), p)

    @classmethod
    def basis(cls, k: int, p: Optional[int] = None, coeff: int = 1) -> "GroupRingElt":
        return cls.make({k: coeff}, p)

    def as_dict(self) -> Dict[int, int]:
        return dict(self.terms)

    def __getitem__(self, k: int) -> int:
        return self.as_dict().get(k % self.p if self.p else k, 0)

    def _check(self, other: "GroupRingElt") -> None:
        if self.p != other.p:
            raise InputError(f"group ring mismatch: p={self.p} vs p={other.p}")

    def __add__(self, other: "GroupRingElt") -> "GroupRingElt":
        self._check(other)
        return GroupRingElt.make(list(self.terms) + list(other.terms), self.p)

    def __neg__(self) -> "GroupRingElt":
        return GroupRingElt(tuple((k, -c) for k, c in self.terms), self.p)

    def __sub__(self, other: "GroupRingElt") -> "GroupRingElt":
        return self + (-other)

    def __bool__(self) -> bool:
        return bool(self.terms)

    def norm(self) -> int:
        return sum(c for _, c in self.terms)

    def nonnegative(self) -> bool:
        return all(c >= 0 for _, c in self.terms)

    def reduce(self, p: int) -> "GroupRingElt":
        if self.p is not None and self.p != p:
            if self.p % p:
                raise InputError(f"cannot fold residues mod {self.p} into mod {p}")
        return GroupRingElt.make(self.terms, p)

    def shift(self, k: int) -> "GroupRingElt":
        return GroupRingElt.make(((r + k, c) for r, c in self.terms), self.p)

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        out = ""
        for k, c in self.terms:
            mag = "" if abs(c) == 1 else str(abs(c))
            sign = "-" if c < 0 else ("+" if out else "")
            out += f"{sign}{mag}[{k}]"
        return out

    def to_json(self) -> Dict[str, int]:
        return {str(k): c for k, c in self.terms}


def leaf_indices(count: int) -> List[int]:
    """Symmetric names v_{-n}..v_n, skipping 0 when the count is even."""
    half = count // 2
    if count % 2:
        return list(range(-half, half + 1))
    return list(range(-half, 0)) + list(range(1, half + 1))


def angle_indices(count: int) -> List[int]:
    """Names y_j of the angles between consecutive leaves."""
    names = leaf_indices(count)
    out = []
    for a, b in zip(names, names[1:]):
        if a < 0 < b:
            out.append(0)
        elif a >= 0:
            out.append(b)
        else:
            out.append(a)
    return out


@dataclass(frozen=True)
class LabelledGradedRoot:
    p: Optional[int]
    leaf_pos: Tuple[int, ...]
    leaf_weight: Tuple[int, ...]
    leaf_label: Tuple[GroupRingElt, ...]
    angle_pos: Tuple[int, ...]
    angle_weight: Tuple[int, ...]
    angle_label: Tuple[GroupRingElt, ...]

    @property
    def n_leaves(self) -> int:
        return len(self.leaf_pos)

    def leaf_names(self) -> List[int]:
        return leaf_indices(self.n_leaves)

    def angle_names(self) -> List[int]:
        return angle_indices(self.n_leaves)

    def lam_v(self, k: int) -> GroupRingElt:
        return self.leaf_label[k]

    def lam_a(self, k: int) -> GroupRingElt:
        """Label of the angle between leaf k and leaf k+1 (0-based)."""
        return self.angle_label[k]

    def lam_a_right(self, k: int) -> GroupRingElt:
        """The opposite-side label lam_A + lam_V(left) - lam_V(right)."""
        return self.angle_label[k] + self.leaf_label[k] - self.leaf_label[k + 1]

    def check(self) -> List[str]:
        """Structural invariants; returns a list of violations."""
        bad = []
        for k in range(len(self.angle_pos)):
            a, b = self.lam_a(k), self.lam_a_right(k)
            if not (a.nonnegative() and b.nonnegative()):
                bad.append(f"angle {k}: negative label coefficient")
            if a.norm() != self.angle_weight[k] - self.leaf_weight[k]:
                bad.append(f"angle {k}: |lam_A| != angle drop")
            if self.angle_weight[k] < max(self.leaf_weight[k], self.leaf_weight[k + 1]):
                bad.append(f"angle {k}: below a leaf")
            diff = self.leaf_label[k] - self.leaf_label[k + 1]
            if diff.norm() != self.leaf_weight[k] - self.leaf_weight[k + 1]:
                bad.append(f"leaves {k},{k + 1}: |lam_V difference| mismatch")
        return bad

    def reduce_mod_p(self, p: int) -> "LabelledGradedRoot":
        return replace(
            self,
            p=p,
            leaf_label=tuple(x.reduce(p) for x in self.leaf_label),
            angle_label=tuple(x.reduce(p) for x in self.angle_label),
        )

    def twist(self, k: int = 1) -> "LabelledGradedRoot":
        """Cyclically shift every residue by k."""
        return replace(
            self,
            leaf_label=tuple(x.shift(k) for x in self.leaf_label),
            angle_label=tuple(x.shift(k) for x in self.angle_label),
        )

    def canonical_form(self) -> tuple:
        """Normal form up to cyclic residue shift and lam_V translation."""
        shifts = range(self.p) if self.p else [0]
        best = None
        for k in shifts:
            r = self.twist(k)
            base = r.leaf_label[0]
            key = (
                self.leaf_weight,
                self.angle_weight,
                tuple((x - base).terms for x in r.leaf_label),
                tuple(x.terms for x in r.angle_label),
            )
            if best is None or key < best:
                best = key
        return best

    def equivalent(self, other: "LabelledGradedRoot") -> bool:
        return self.p == other.p and self.canonical_form() == other.canonical_form()

    def is_reflective(self) -> bool:
        n = self.n_leaves - 1
        for i in range(n + 1):
            if self.leaf_label[i] != self.leaf_label[n - i]:
                return False
        for i in range(1, n + 1):
            lhs = self.lam_a(i - 1) + self.leaf_label[i - 1] - self.leaf_label[i]
            if lhs != self.lam_a(n - i):
                return False
        return True

    def symmetrize(self) -> "SymmetricLabelledRoot":
        if not self.is_reflective():
            raise NotReflective("labelled root fails the reflection conditions")
        mid = self.n_leaves // 2
        if self.n_leaves % 2:
            return SymmetricLabelledRoot(self, "leaf", mid)
        return SymmetricLabelledRoot(self, "angle", mid - 1)

    def table(self) -> List[dict]:
        """Rows in the leaf/angle table layout."""
        rows = []
        leaf_names = self.leaf_names()
        for k, name in enumerate(leaf_names):
            row = {
                "leaf": f"v_{name}",
                "i": self.leaf_pos[k],
                "weight": self.leaf_weight[k],
                "lambda_V": str(self.leaf_label[k]),
            }
            if k < len(self.angle_pos):
                row.update({
                    "angle": f"(v_{name},v_{leaf_names[k + 1]})",
                    "angle_i": self.angle_pos[k],
                    "angle_weight": self.angle_weight[k],
                    "lambda_A": str(self.angle_label[k]),
                })
            rows.append(row)
        return rows

    def to_json(self) -> dict:
        names = self.leaf_names()
        return {
            "p": self.p,
            "leaves": [
                {"name": f"v_{n}", "i": i, "weight": w, "label": x.to_json()}
                for n, i, w, x in zip(names, self.leaf_pos, self.leaf_weight, self.leaf_label)
            ],
            "angles": [
                {"between": [f"v_{names[k]}", f"v_{names[k + 1]}"], "i": i, "weight": w,
                 "label": x.to_json()}
                for k, (i, w, x) in enumerate(zip(self.angle_pos, self.angle_weight, self.angle_label))
            ],
        }

    @classmethod
    def from_json(cls, data: dict) -> "LabelledGradedRoot":
        p = data["p"]

        def elt(d):
            return GroupRingElt.make({int(k): c for k, c in d.items()}, p)

        return cls(
            p,
            tuple(x["i"] for x in data["leaves"]),
            tuple(x["weight"] for x in data["leaves"]),
            tuple(elt(x["label"]) for x in data["leaves"]),
            tuple(x["i"] for x in data["angles"]),
            tuple(x["weight"] for x in data["angles"]),
            tuple(elt(x["label"]) for x in data["angles"]),
        )

    def to_dot(self) -> str:
        """Leaves on top, merge vertices below, weights increasing downwards."""
        names = self.leaf_names()
        lines = ["digraph graded_root {", "  rankdir=TB;", "  node [shape=circle, fontsize=10];"]
        for k, n in enumerate(names):
            lines.append(
                f'  leaf{k} [label="v_{n}\\n{self.leaf_weight[k]}\\n{self.leaf_label[k]}"];'
            )
        # merge vertices: each angle joins the subtrees on either side
        prev = "leaf0"
        for k, w in enumerate(self.angle_weight):
            lines.append(f'  angle{k} [shape=point, xlabel="{w}: {self.angle_label[k]}"];')
            lines.append(f"  {prev} -> angle{k};")
            lines.append(f"  leaf{k + 1} -> angle{k};")
            prev = f"angle{k}"
        lines.append('  stem [shape=none, label="..."];')
        lines.append(f"  {prev} -> stem;")
        lines.append("}")
        return "\n".join(lines) + "\n"


@dataclass(frozen=True)
class SymmetricLabelledRoot:
    root: LabelledGradedRoot
    center: str  # "leaf" or "angle"
    index: int


def root_from_sequence(values: Sequence[int], p: Optional[int] = None) -> LabelledGradedRoot:
    """Graded root of n_0, ..., n_H; the last run is taken as the final plateau."""
    n = list(values)
    if not n:
        raise NotEventuallyIncreasing("empty sequence")
    runs: List[Tuple[int, int]] = []  # (first index, value)
    for i, v in enumerate(n):
        if not runs or runs[-1][1] != v:
            runs.append((i, v))
    leaves = []
    for r, (start, v) in enumerate(runs):
        left_ok = r == 0 or runs[r - 1][1] > v
        right_ok = r == len(runs) - 1 or runs[r + 1][1] > v
        if left_ok and right_ok:
            leaves.append(start)
    last_start, last_val = runs[-1]
    if len(runs) > 1 and runs[-2][1] > last_val and last_start == len(n) - 1:
        # ends on a single descending step: cannot tell whether it keeps falling
        raise NotEventuallyIncreasing("sequence ends mid-descent; extend the horizon")

    def res(s: int) -> int:
        return s % p if p else s

    def label(lo: int, hi: int) -> GroupRingElt:
        return GroupRingElt.make(((res(s), n[s + 1] - n[s]) for s in range(lo, hi)), p)

    leaf_label = tuple(label(0, i) for i in leaves)
    angle_pos = []
    for a, b in zip(leaves, leaves[1:]):
        top = max(n[a:b + 1])
        angle_pos.append(next(j for j in range(a, b + 1) if n[j] == top))
    return LabelledGradedRoot(
        p=p,
        leaf_pos=tuple(leaves),
        leaf_weight=tuple(n[i] for i in leaves),
        leaf_label=leaf_label,
        angle_pos=tuple(angle_pos),
        angle_weight=tuple(n[j] for j in angle_pos),
        angle_label=tuple(label(a, j) for a, j in zip(leaves, angle_pos)),
    )


def root_from_seifert(s: SeifertData, p: Optional[int] = None,
                      horizon: Optional[int] = None) -> LabelledGradedRoot:
    """Labelled root of the canonical structure."""
    ny = n_y(s)
    if horizon is None:
        horizon = max(ny, 0) + 2
    if horizon < ny + 1:
        raise InputError(f"horizon {horizon} is below N_Y + 1 = {ny + 1}")
    delta = delta_closed_form(s, horizon=horizon)
    if any(delta[i] < 0 for i in range(max(ny + 1, 0), horizon + 1)):
        raise NotEventuallyIncreasing("Delta is negative past N_Y")
    return root_from_sequence(delta.weights()[: horizon + 1], p)
