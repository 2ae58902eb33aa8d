"""Seeded property checks shared by the property suite and the acceptance run."""

from __future__ import annotations

import random
from typing import Dict, List

from artifact.coeffring import pin, s1zp, u_exp
from artifact.compseq import laufer_cycles
from artifact.gradedroot import GroupRingElt, root_from_seifert
from artifact.invariants import beta_witness, froyshov, local_class_search_contains, verify_witness
from artifact.latticechain import build_pin2_chain, build_s1zp_chain, reference_module
from artifact.linalg import det_fraction_free
from artifact.localmaps import LocalMapQuery, local_map_exists, verify_local_witness
from artifact.plumbing import (
    build_plumbing,
    intersection_matrix,
    n_y,
    random_homology_sphere,
    random_seifert,
    si_red_enumerate,
    si_red_full_range,
)

PRIMES = (2, 3, 5, 7, 11, 13)


def _next_prime(n: int) -> int:
    n = max(n, 1) + 1
    while any(n % k == 0 for k in range(2, int(n ** 0.5) + 1)):
        n += 1
    return n


def check_d_squared(rng: random.Random) -> List[str]:
    bad = []
    s = random_homology_sphere(rng, max_p=11)
    root = root_from_seifert(s)
    for p in (2, rng.choice(PRIMES[1:]), _next_prime(n_y(s))):
        if not build_s1zp_chain(root, p).is_chain_complex():
            bad.append(f"S1xZ_{p} chain of {s}")
    root2 = root_from_seifert(s, 2)
    for t in (0, 1):
        twisted = root2.twist(t)
        if twisted.is_reflective() and not build_pin2_chain(twisted).is_chain_complex():
            bad.append(f"Pin(2) chain of {s}, twist {t}")
    return bad


def check_u_exp(rng: random.Random) -> List[str]:
    bad = []
    for _ in range(20):
        p = rng.choice(PRIMES)
        ring = pin() if p == 2 and rng.random() < 0.5 else s1zp(p)
        a: Dict[int, int] = {rng.randrange(p): rng.randint(0, 3) for _ in range(2)}
        b: Dict[int, int] = {rng.randrange(p): rng.randint(0, 3) for _ in range(2)}
        x, y = GroupRingElt.make(a, p), GroupRingElt.make(b, p)
        if u_exp(ring, x + y) != u_exp(ring, x) * u_exp(ring, y):
            bad.append(f"u_exp({a}+{b}) over {ring.names} p={p}")
    return bad


def check_laufer_confluence(rng: random.Random) -> List[str]:
    s = random_seifert(rng, max_p=9)
    g = build_plumbing(s)
    upto = min(max(int(n_y(s, strict=False)), 0) + 2, 40)
    base = laufer_cycles(g, upto)
    bad = []
    for k in range(20):
        if laufer_cycles(g, upto, rng=random.Random(rng.random())) != base:
            bad.append(f"order {k} on {s}")
    return bad


def check_si_red(rng: random.Random) -> List[str]:
    s = random_seifert(rng, max_p=8)
    det = abs(det_fraction_free(intersection_matrix(build_plumbing(s))))
    found = len(si_red_enumerate(s, si_red_full_range(s), check=False))
    return [] if found == det else [f"{s}: |SI_red| = {found}, |det| = {det}"]


def check_witnesses(rng: random.Random) -> List[str]:
    bad = []
    s = random_homology_sphere(rng, max_p=9)
    root = root_from_seifert(s)
    p = _next_prime(n_y(s))
    rep = froyshov(root, p)
    m = build_s1zp_chain(root, p)
    if not verify_witness(m, rep.witness):
        bad.append(f"delta0 witness of {s}")
    mb, beta = beta_witness(root, p)
    if mb.d_elem(beta) or not local_class_search_contains(mb, beta):
        bad.append(f"alternating witness of {s}")
    level = rng.choice((1, 2))
    base = reference_module()
    rep = local_map_exists(LocalMapQuery(base, level, copies=1))
    if verify_local_witness(base, rep.witness, level, base.index("x_0")):
        bad.append(f"local map witness at level {level}")
    return bad


CHECKS = {
    "d^2=0": check_d_squared,
    "u_exp multiplicative": check_u_exp,
    "Laufer confluence": check_laufer_confluence,
    "|SI_red| = |det|": check_si_red,
    "witness re-verification": check_witnesses,
}


def run_seed(seed: int) -> Dict[str, List[str]]:
    return {name: fn(random.Random(f"{name}:{seed}")) for name, fn in CHECKS.items()}
