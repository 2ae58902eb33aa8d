"""Command line entry point: ``artifact <subcommand> [input] [flags]``.

Input is a JSON file path or an inline JSON string holding either
``{"seifert": {"e0": .., "arms": [[p, q], ..]}}`` or
``{"plumbing": {"weights": [..], "edges": [[i, j], ..], "central": c}}``.
``--example`` selects a built-in manifold instead. Exit codes: 0 ok,
2 invariant violation, 3 input error.
"""

from __future__ import annotations

import argparse
import json
import os
import random
import sys
import time
from dataclasses import dataclass
from importlib import resources
from typing import Callable, Dict, List, Optional

from . import barpin2, localmaps
from .compseq import delta_closed_form
from .errors import ArtifactError, GoldenMismatch, InputError
from .gradedroot import LabelledGradedRoot, root_from_seifert
from .invariants import _is_prime, froyshov, hf_red_formula, hf_red_oracle
from .latticechain import build_pin2_chain, build_s1zp_chain, reference_module
from .plumbing import (
    SIGMA_2_3_19,
    SIGMA_3_5_19,
    PlumbingGraph,
    SeifertData,
    build_plumbing,
    canonical_class,
    n_y,
    seifert_from_plumbing,
)

EXAMPLES: Dict[str, SeifertData] = {
    "sigma-2-3-19": SIGMA_2_3_19,
    "sigma-3-5-19": SIGMA_3_5_19,
    "poincare": SeifertData(-2, ((2, 1), (3, 2), (5, 4))),
}
CAP_ENV = "ARTIFACT_DEGREE_CAP"


@dataclass
class RunConfig:
    command: str
    seifert: Optional[SeifertData]
    p: Optional[int]
    max_degree: Optional[int]
    fmt: str
    seed: Optional[int]
    args: argparse.Namespace


# ---------------------------------------------------------------------------
# input


def parse_input(raw: Optional[str], example: Optional[str]) -> Optional[SeifertData]:
    if example:
        if example not in EXAMPLES:
            raise InputError(f"unknown example {example!r}; choose from {sorted(EXAMPLES)}")
        return EXAMPLES[example]
    if raw is None:
        return None
    text = raw
    if not raw.lstrip().startswith("{"):
        try:
            with open(raw, encoding="utf-8") as fh:
                text = fh.read()
        except OSError as exc:
            raise InputError(f"cannot read {raw}: {exc}") from exc
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"invalid JSON: {exc}") from exc
    return seifert_from_json(data)


def seifert_from_json(data: dict) -> SeifertData:
    if not isinstance(data, dict):
        raise InputError("input must be a JSON object")
    try:
        if "seifert" in data:
            s = data["seifert"]
            return SeifertData(int(s["e0"]), tuple(tuple(a) for a in s["arms"]))
        if "plumbing" in data:
            g = data["plumbing"]
            graph = PlumbingGraph(
                tuple(int(w) for w in g["weights"]),
                tuple(tuple(e) for e in g["edges"]),
                int(g.get("central", 0)),
            )
            return seifert_from_plumbing(graph)
    except (KeyError, TypeError) as exc:
        raise InputError(f"malformed input: {exc}") from exc
    raise InputError("input needs a 'seifert' or 'plumbing' key")


def _need(cfg: RunConfig) -> SeifertData:
    if cfg.seifert is None:
        raise InputError("this subcommand needs an input (path, inline JSON or --example)")
    return cfg.seifert


def _prime(p: Optional[int], default: Optional[int] = None) -> int:
    p = default if p is None else p
    if p is None or not _is_prime(p):
        raise InputError(f"--p must be a prime, got {p}")
    return p


def _cap(cfg: RunConfig) -> Optional[int]:
    if cfg.max_degree is not None:
        return cfg.max_degree
    env = os.environ.get(CAP_ENV)
    if env:
        try:
            return int(env)
        except ValueError as exc:
            raise InputError(f"{CAP_ENV} must be an integer") from exc
    return None


# ---------------------------------------------------------------------------
# subcommands; each returns (json payload, text lines, dot text or None)

Result = tuple


def cmd_plumb(cfg: RunConfig) -> Result:
    s = _need(cfg)
    g = build_plumbing(s)
    _, knodes = canonical_class(g)
    ny = n_y(s, strict=False)
    payload = {
        "seifert": s.to_json(),
        "plumbing": g.to_json(),
        "h1_order": s.h1_order,
        "n_y": str(ny),
        "canonical_class": knodes.to_json(),
        "central_coefficient": str(knodes.coeffs[g.central]),
    }
    lines = [
        f"weights: {list(g.weights)}",
        f"edges:   {[list(e) for e in g.edges]}",
        f"|H_1| = {s.h1_order}   N_Y = {ny}   m_vc(K) = {knodes.coeffs[g.central]}",
    ]
    return payload, lines, g.to_dot()


def cmd_delta(cfg: RunConfig) -> Result:
    s = _need(cfg)
    horizon = cfg.args.horizon if cfg.args.horizon is not None else table_horizon(s)
    d = delta_closed_form(s, horizon=horizon)
    payload = {"horizon": horizon, "rows": d.to_json()}
    if cfg.args.laufer:
        g = build_plumbing(s)
        rng = random.Random(cfg.seed) if cfg.seed is not None else None
        from .compseq import characteristic_vector, chi, laufer_cycles

        k = characteristic_vector(g)
        xs = laufer_cycles(g, horizon + 1, None, rng)
        w = [chi(g, k, x) for x in xs]
        lat = tuple(w[i + 1] - w[i] for i in range(horizon + 1))
        if lat != d.values:
            from .errors import WeightDrift

            raise WeightDrift("lattice walk disagrees with the closed form")
        payload["laufer_agrees"] = True
    lines = [f"{'i':>5} {'delta':>6}"] + [f"{i:>5} {v:>6}" for i, v in d.nonzero().items()]
    return payload, lines, None


def table_horizon(s: SeifertData) -> int:
    """Delta tables stop at N_Y; past it every entry is nonnegative."""
    return max(int(n_y(s, strict=False)), 0)


def _root(cfg: RunConfig) -> LabelledGradedRoot:
    s = _need(cfg)
    p = cfg.p
    if p is not None:
        _prime(p)
    return root_from_seifert(s, p, cfg.args.horizon)


def cmd_root(cfg: RunConfig) -> Result:
    root = _root(cfg)
    names = root.leaf_names()
    lines = [f"v_{n}: i={i} weight={w}" for n, i, w in zip(names, root.leaf_pos, root.leaf_weight)]
    lines += [
        f"(v_{names[k]},v_{names[k + 1]}): i={i} weight={w}"
        for k, (i, w) in enumerate(zip(root.angle_pos, root.angle_weight))
    ]
    payload = root.to_json()
    payload["reflective"] = root.is_reflective()
    return payload, lines, root.to_dot()


def cmd_labels(cfg: RunConfig) -> Result:
    root = _root(cfg)
    rows = root.table()
    lines = []
    for r in rows:
        line = f"{r['leaf']:>6} {r['i']:>4} {r['lambda_V']}"
        if "angle" in r:
            line += f" || {r['angle']} {r['angle_i']} {r['lambda_A']}"
        lines.append(line)
    return {"p": root.p, "rows": rows}, lines, root.to_dot()


def _chain_dot(m) -> str:
    lines = ["digraph chain {", "  node [shape=box, fontsize=10];"]
    for i, (n, d) in enumerate(zip(m.names, m.degrees)):
        lines.append(f'  g{i} [label="{n} ({d})"];')
    for i, row in enumerate(m.diff):
        for j, c in row:
            lines.append(f'  g{i} -> g{j} [label="{m.ring.fmt(c.terms, False)}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"


def _pin_chain(cfg: RunConfig):
    if cfg.seifert is None:
        return reference_module()
    root = root_from_seifert(cfg.seifert, 2, cfg.args.horizon)
    return build_pin2_chain(root.twist(cfg.args.twist))


def cmd_chain(cfg: RunConfig) -> Result:
    if cfg.args.group == "pin2":
        m = _pin_chain(cfg)
    else:
        root = root_from_seifert(_need(cfg), None, cfg.args.horizon)
        m = build_s1zp_chain(root, _prime(cfg.p, 2))
    if not m.is_chain_complex():
        from .errors import InvariantViolation

        raise InvariantViolation("d^2 != 0 on the constructed chain")
    lines = [f"{n} (deg {d})" for n, d in zip(m.names, m.degrees)] + m.pretty(cfg.args.pretty)
    return m.to_json(), lines, _chain_dot(m)


def cmd_froyshov(cfg: RunConfig) -> Result:
    s = _need(cfg)
    p = _prime(cfg.p, 2)
    rep = froyshov(root_from_seifert(s), p, _cap(cfg))
    payload = {
        "delta": str(rep.delta),
        "delta0": str(rep.delta0),
        "hf_red": rep.hf_red,
        "witness_degree": rep.witness_degree,
        "p": p,
    }
    lines = [f"{k} = {v}" for k, v in payload.items()]
    return payload, lines, None


def cmd_hfred(cfg: RunConfig) -> Result:
    s = _need(cfg)
    root = root_from_seifert(s, None, cfg.args.horizon)
    a, b = hf_red_formula(root), hf_red_oracle(root)
    if a != b:
        from .errors import TheoremViolated

        raise TheoremViolated(f"closed formula {a} != Smith form {b}")
    payload = {"hf_red": a, "closed_formula": a, "smith_form": b}
    return payload, [f"dim HF_red = {a} (closed formula {a}, Smith form {b})"], None


def cmd_localmap(cfg: RunConfig) -> Result:
    m = _pin_chain(cfg)
    copies, level = cfg.args.copies, cfg.args.level
    if copies < 1:
        raise InputError("--copies must be >= 1")
    if copies >= 4:
        n3 = localmaps.local_map_exists(localmaps.LocalMapQuery(m, level, copies=3, degree=cfg.args.degree))
        ok = localmaps.derive_4copy_obstruction(n3, m) if level == 2 else False
        payload = n3.to_json()
        payload.update({"copies": copies, "method": "reduction to 3 copies via id (x) p",
                        "satisfiable": False if ok else None})
    else:
        rep = localmaps.local_map_exists(localmaps.LocalMapQuery(m, level, copies=copies, degree=cfg.args.degree))
        module = m.tensor_power(copies) if rep.witness else None
        payload = rep.to_json(module)
    verdict = {True: "SAT", False: "UNSAT", None: "UNKNOWN"}[payload["satisfiable"]]
    lines = [f"{verdict}  copies={copies} level={level}  method: {payload['method']}",
             f"system: {payload['unknowns']} unknowns, {payload['equations']} equations, rank {payload['rank']}",
             f"time: {payload['seconds']} s"]
    if payload.get("witness"):
        lines.append(f"witness: {payload['witness']}")
    return payload, lines, None


def cmd_barcheck(cfg: RunConfig) -> Result:
    top = cfg.max_degree if cfg.max_degree is not None else 8
    if top > 8:
        raise InputError("--max-degree for barcheck is at most 8")
    t0 = time.time()
    dga_ok = not barpin2.FiniteDga().check()
    twist_ok = barpin2.verify_twisting()
    q = barpin2.verify_phi_quasi_iso(top)
    checks = {
        "algebra": dga_ok,
        "twisting": twist_ok,
        "phi_chain_map": q.chain_map,
        "phi_quasi_iso": q.ok,
        "phi_is_Phi(Q)": barpin2.phi((1, 0)) == barpin2.PHI,
        "psi_is_Phi(U^2)": barpin2.phi((0, 2)) == barpin2.PSI,
    }
    payload = {"bar_dims": q.bar_dims, "dual_dims": q.dual_dims, "checks": checks,
               "failures": q.failures, "seconds": round(time.time() - t0, 2)}
    lines = ["d  bar  dual"] + [f"{d}  {a}    {b}" for d, (a, b) in enumerate(zip(q.bar_dims, q.dual_dims))]
    lines += [f"{k}: {'pass' if v else 'FAIL'}" for k, v in checks.items()]
    if not all(checks.values()):
        from .errors import IdentityFails

        raise IdentityFails("; ".join(q.failures) or "a bar check failed")
    return payload, lines, None


# ---------------------------------------------------------------------------
# golden replay


GOLDEN = ("delta_sigma_2_3_19", "delta_sigma_3_5_19", "labels_sigma_2_3_19",
          "labels_sigma_3_5_19", "labels_sigma_3_5_19_p2")


def load_golden(name: str) -> dict:
    text = resources.files("artifact").joinpath("golden", f"{name}.json").read_text(encoding="utf-8")
    return json.loads(text)


def _first_diff(expected, actual, path="") -> Optional[str]:
    if isinstance(expected, dict) and isinstance(actual, dict):
        for k in expected:
            if k not in actual:
                return f"{path}.{k} missing"
            d = _first_diff(expected[k], actual[k], f"{path}.{k}")
            if d:
                return d
        return None
    if isinstance(expected, list) and isinstance(actual, list):
        if len(expected) != len(actual):
            return f"{path}: length {len(actual)} != {len(expected)}"
        for i, (e, a) in enumerate(zip(expected, actual)):
            d = _first_diff(e, a, f"{path}[{i}]")
            if d:
                return d
        return None
    return None if expected == actual else f"{path}: {actual!r} != {expected!r}"


def golden_suite(golden: Optional[Dict[str, dict]] = None) -> List[str]:
    """Replay every vendored table; raise GoldenMismatch on the first divergence."""
    passed = []
    for name in GOLDEN:
        ref = golden[name] if golden and name in golden else load_golden(name)
        s = seifert_from_json(ref)
        if name.startswith("delta"):
            actual = delta_closed_form(s, horizon=table_horizon(s)).to_json()
        else:
            keep = ("leaf", "i", "lambda_V", "angle", "angle_i", "lambda_A")
            actual = [{k: r[k] for k in keep if k in r} for r in root_from_seifert(s, ref["p"]).table()]
        diff = _first_diff(ref["rows"], actual)
        if diff:
            raise GoldenMismatch(f"{name}: {diff}")
        passed.append(name)
    return passed


def cmd_golden(cfg: RunConfig) -> Result:
    names = golden_suite()
    return {"passed": names}, [f"{n}: pass" for n in names], None


COMMANDS: Dict[str, Callable[[RunConfig], Result]] = {
    "plumb": cmd_plumb,
    "delta": cmd_delta,
    "root": cmd_root,
    "labels": cmd_labels,
    "chain": cmd_chain,
    "froyshov": cmd_froyshov,
    "hfred": cmd_hfred,
    "localmap": cmd_localmap,
    "barcheck": cmd_barcheck,
    "golden": cmd_golden,
}


# ---------------------------------------------------------------------------
# argument parsing


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("input", nargs="?", help="JSON file or inline JSON")
    common.add_argument("--example", choices=sorted(EXAMPLES))
    common.add_argument("--config", help="JSON file with default flag values")
    common.add_argument("--p", type=int)
    common.add_argument("--max-degree", type=int, dest="max_degree")
    common.add_argument("--format", choices=("text", "json", "dot"), default="text", dest="fmt")
    common.add_argument("--seed", type=int)
    common.add_argument("--horizon", type=int)
    common.add_argument("--pretty", action="store_true", help="unicode output")

    parser = argparse.ArgumentParser(prog="artifact", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        sp = sub.add_parser(name, parents=[common])
        if name == "delta":
            sp.add_argument("--laufer", action="store_true", help="cross-check on the lattice")
        if name in ("chain", "localmap"):
            sp.add_argument("--group", choices=("s1zp", "pin2"), default="pin2" if name == "localmap" else "s1zp")
            sp.add_argument("--twist", type=int, default=1, help="residue shift for the Pin(2) chain")
        if name == "localmap":
            sp.add_argument("--copies", type=int, default=1)
            sp.add_argument("--level", type=int, default=0)
            sp.add_argument("--degree", type=int)
    return parser


def _apply_config(args: argparse.Namespace) -> None:
    if not args.config:
        return
    try:
        with open(args.config, encoding="utf-8") as fh:
            conf = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise InputError(f"bad config file: {exc}") from exc
    for k, v in conf.items():
        key = k.replace("-", "_")
        if key == "format":
            key = "fmt"
        if getattr(args, key, None) in (None, False, "text"):
            setattr(args, key, v)


def render(payload, lines: List[str], dot: Optional[str], fmt: str, pretty: bool) -> str:
    if fmt == "json":
        return json.dumps(payload, indent=2 if pretty else None, ensure_ascii=not pretty, sort_keys=True)
    if fmt == "dot":
        if dot is None:
            raise InputError("this subcommand has no DOT rendering")
        return dot.rstrip("\n")
    return "\n".join(lines)


def run(argv: Optional[List[str]] = None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code == 0 else 3
    try:
        _apply_config(args)
        cfg = RunConfig(args.command, parse_input(args.input, args.example), args.p,
                        args.max_degree, args.fmt, args.seed, args)
        payload, lines, dot = COMMANDS[args.command](cfg)
        print(render(payload, lines, dot, args.fmt, args.pretty), file=out)
        return 0
    except ArtifactError as exc:
        print(f"error [{type(exc).__module__.split('.')[-1]}.{type(exc).__name__}]: {exc}", file=sys.stderr)
        return exc.exit_code
    except AssertionError as exc:
        print(f"error [assertion]: {exc}", file=sys.stderr)
        return 2
    except ValueError as exc:
        print(f"error [input]: {exc}", file=sys.stderr)
        return 3


def main() -> None:
    sys.exit(run())
