"""Command line: ``moduli construct | check | selftest``.

Every command prints a JSON run report on stdout and a one-line summary on
stderr.  Exit codes: 0 ok, 1 usage error, 2 condition or check failed,
3 inconclusive.
"""

from __future__ import annotations

import argparse
import json
import os
import random
import re
import sys
import time
from dataclasses import dataclass
from fractions import Fraction
from typing import Any

from .cyclofield import CycloNum, zeta
from .descent import (
    certify_pseudoreal,
    cocycle_composite,
    diagonal_automorphisms,
    find_descent_witness_klein_four,
    is_odd_signature,
    signature_cyclic_homology,
    weil_cocycle_real,
)
from .errors import CapExceeded, ConditionFailed, ModuliError, NotAnIsomorphism
from .groupkit import classify_group, closure, normalizes
from .planecurve import BinaryForm, smoothness_check
from .projgeom import ProjTransform
from .selftest import run_selftest
from .strata import (
    CurveFamilyInstance,
    build_C1,
    build_C1_prime,
    build_C1_prime_0,
    build_C2,
    build_C2_subfamily,
    build_example101,
    build_fermat,
    build_huggins,
    build_klein,
    build_klein_four_even,
    build_quartic_abc,
    default_example101_params,
    generic_homology_params,
    random_binary_form,
    random_cyclo,
    random_squarefree_binary,
)

EXIT_OK, EXIT_USAGE, EXIT_FAILED, EXIT_INCONCLUSIVE = 0, 1, 2, 3

FAMILIES = (
    "C1",
    "C2",
    "C1-prime",
    "C1-prime-0",
    "C2-sub",
    "huggins",
    "example101",
    "klein-four-even",
    "quartic-abc",
    "fermat",
    "klein",
)

CHECKS = (
    "smooth",
    "diagonal-automorphisms",
    "classify-group",
    "signature",
    "cocycle",
    "certify-pseudoreal",
    "find-descent-witness",
    "normalizes",
)


class UsageError(Exception):
    pass


@dataclass
class RunReport:
    command: str
    inputs: dict
    outcome: dict
    timing_ms: int
    seed: int

    def to_json(self) -> dict:
        return {
            "command": self.command,
            "inputs": self.inputs,
            "outcome": self.outcome,
            "timing_ms": self.timing_ms,
            "seed": self.seed,
        }


# ----------------------------------------------------------------------
# value parsing

_GAUSS = re.compile(r"^\s*([+-]?\d+(?:/\d+)?)?\s*(?:([+-])\s*(\d+(?:/\d+)?)?\s*\*?\s*i)?\s*$")
_IMAG = re.compile(r"^([+-]?\d+(?:/\d+)?)\s*\*?\s*i$")


def parse_number(text: str) -> CycloNum:
    """Rationals and Gaussian rationals ("3", "-1/2", "2+i", "1/3-2i", "3i") or CycloNum JSON."""
    text = text.strip()
    if text.startswith("{"):
        return CycloNum.from_json(json.loads(text))
    if text in ("i", "+i"):
        return zeta(4)
    if text == "-i":
        return -zeta(4)
    pure = _IMAG.match(text)
    if pure:
        return zeta(4) * CycloNum.from_rational(Fraction(pure.group(1)))
    m = _GAUSS.match(text)
    if not m or not text:
        raise UsageError(f"cannot parse number {text!r}")
    re_part, sign, im_part = m.groups()
    if re_part is not None and sign is None and "i" in text:
        raise UsageError(f"cannot parse number {text!r}")
    value = CycloNum.from_rational(Fraction(re_part)) if re_part else CycloNum.from_rational(0)
    if sign:
        im = Fraction(im_part) if im_part else Fraction(1)
        value = value + zeta(4) * CycloNum.from_rational(im if sign == "+" else -im)
    return value


def parse_list(text: str | None) -> list[CycloNum] | None:
    if text is None:
        return None
    return [parse_number(part) for part in text.split(",") if part.strip()]


# ----------------------------------------------------------------------
# construct


def _require(value, name):
    if value is None:
        raise UsageError(f"--{name} is required for this family")
    return value


def _construct(args, seed: int) -> CurveFamilyInstance:
    fam = args.family
    rng = random.Random(seed)
    if fam == "fermat":
        return build_fermat(_require(args.d, "d"))
    if fam == "klein":
        return build_klein(_require(args.d, "d"))
    if fam in ("C1", "C2", "C1-prime"):
        d, n = _require(args.d, "d"), _require(args.n, "n")
        u = 2 if fam == "C2" else 1
        L = generic_homology_params(u, d, n, seed)
        builder = {"C1": build_C1, "C2": build_C2, "C1-prime": build_C1_prime}[fam]
        return builder(d, n, L, seed=seed)
    if fam == "C1-prime-0":
        d = _require(args.d, "d")
        return build_C1_prime_0(d, random_squarefree_binary(rng, d), seed=seed)
    if fam == "C2-sub":
        s, d, n = _require(args.s, "s"), _require(args.d, "d"), _require(args.n, "n")
        from .strata import _subfamily_tail, index_set

        _, free = _subfamily_tail(s, d)
        params = {
            "a": {j: random_cyclo(rng) for j in free},
            "L": {j: random_binary_form(rng, j) for j in sorted(index_set(2, n, d))},
        }
        return build_C2_subfamily(s, d, n, params, seed=seed)
    if fam == "huggins":
        m, r = _require(args.m, "m"), _require(args.r, "r")
        a_list = parse_list(args.a)
        if a_list is None:
            i = zeta(4)
            a_list = [CycloNum.from_rational(k + 1) + i * rng.randint(1, 3) for k in range(r)]
        inst, _ = build_huggins(m, r, a_list, literal_display=args.literal_display, seed=seed)
        return inst
    if fam == "example101":
        p, m = _require(args.p, "p"), _require(args.m, "m")
        a_list, b_list = parse_list(args.a), parse_list(args.b)
        if a_list is None or b_list is None:
            da, db = default_example101_params(p, m, seed)
            a_list, b_list = a_list or da, b_list or db
        return build_example101(p, m, a_list, b_list, seed=seed)
    if fam == "klein-four-even":
        d = _require(args.d, "d")
        h = d // 2
        triples = [(s, t, h - s - t) for s in range(h) for t in range(h) if 0 <= h - s - t < h]
        return build_klein_four_even(d, {tr: random_cyclo(rng) for tr in triples}, seed=seed)
    if fam == "quartic-abc":
        vals = [parse_number(v) if v is not None else random_cyclo(rng) for v in (args.a, args.b, args.c)]
        return build_quartic_abc(*vals, seed=seed)
    raise UsageError(f"unknown family {fam}")


def cmd_construct(args, seed: int) -> tuple[int, dict]:
    inst = _construct(args, seed)
    data = inst.to_json()
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            json.dump(data, fh, indent=2)
    return EXIT_OK, {"instance": data}


# ----------------------------------------------------------------------
# check


def load_instance(path: str) -> CurveFamilyInstance:
    try:
        with open(path, encoding="utf-8") as fh:
            obj = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise UsageError(f"cannot read instance: {exc}") from exc
    # accept a bare instance or the report printed by construct
    if "outcome" in obj:
        obj = obj["outcome"]
    if "instance" in obj:
        obj = obj["instance"]
    return CurveFamilyInstance.from_json(obj)


def _transform_arg(text: str | None, fallback: ProjTransform | None, name: str) -> ProjTransform:
    if text:
        return ProjTransform.from_json(json.loads(text))
    if fallback is None:
        raise UsageError(f"--{name} is required (the instance carries no isomorphism from its conjugate)")
    return fallback


def cmd_check(args, seed: int) -> tuple[int, dict]:
    inst = load_instance(args.instance)
    f = inst.form
    name = args.check
    if name == "smooth":
        rep = smoothness_check(f, prime_budget=args.prime_budget)
        code = {"smooth": EXIT_OK, "singular": EXIT_FAILED}.get(rep.verdict, EXIT_INCONCLUSIVE)
        return code, rep.to_json()
    if name == "diagonal-automorphisms":
        try:
            g = diagonal_automorphisms(f, exponent_cap=args.cap)
        except CapExceeded as exc:
            return EXIT_INCONCLUSIVE, {"verdict": "cap_exceeded", "message": str(exc)}
        return EXIT_OK, {"order": g.order, "group": g.to_json()}
    if name == "classify-group":
        g = closure(inst.aut_generators, cap=args.cap)
        return EXIT_OK, {"order": g.order, "class": classify_group(g).to_json()}
    if name == "signature":
        sig = signature_cyclic_homology(inst, args.n)
        return EXIT_OK, {"signature": sig.to_json(), "text": str(sig), "odd": is_odd_signature(sig)}
    if name == "cocycle":
        phi = _transform_arg(args.phi, inst.base_iso, "phi")
        try:
            ok = weil_cocycle_real(phi, f)
        except NotAnIsomorphism as exc:
            return EXIT_FAILED, {"verdict": "not_an_isomorphism", "message": str(exc)}
        out = {"verdict": ok, "phi": phi.to_json(), "composite": cocycle_composite(phi).to_json()}
        return (EXIT_OK if ok else EXIT_FAILED), out
    if name == "certify-pseudoreal":
        base = _transform_arg(args.phi, inst.base_iso, "phi")
        cert = certify_pseudoreal(inst, closure(inst.aut_generators, cap=args.cap), base)
        return EXIT_OK, {"certificate": cert.to_json(), "kind": cert.kind, "coset_failures": len(cert.coset_failures)}
    if name == "find-descent-witness":
        cert = find_descent_witness_klein_four(inst)
        if cert is None:
            return EXIT_FAILED, {"verdict": "absent"}
        return EXIT_OK, {"verdict": "found", "certificate": cert.to_json()}
    if name == "normalizes":
        t = _transform_arg(args.phi, inst.base_iso, "phi")
        ok = normalizes(t, closure(inst.aut_generators, cap=args.cap))
        return (EXIT_OK if ok else EXIT_FAILED), {"verdict": ok}
    raise UsageError(f"unknown check {name}")


def cmd_selftest(args, seed: int) -> tuple[int, dict]:
    results = run_selftest(args.level, seed)
    for r in results:
        print(r.line(), file=sys.stderr)
    ok = all(r.passed for r in results)
    return (EXIT_OK if ok else EXIT_FAILED), {"passed": ok, "criteria": [r.to_json() for r in results]}


# ----------------------------------------------------------------------
# entry point


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        sys.exit(EXIT_USAGE)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="moduli", description="Plane curves, automorphisms and descent to the reals.")
    parser.add_argument("--seed", type=int, default=0, help="seed for generic parameters (MODULI_SEED overrides)")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    con = sub.add_parser("construct", help="build a family instance")
    con.add_argument("--family", required=True, choices=FAMILIES)
    for flag in ("d", "n", "p", "m", "r", "s"):
        con.add_argument(f"--{flag}", type=int)
    con.add_argument("--a", help="number, or comma list for huggins/example101")
    con.add_argument("--b", help="number, or comma list for example101")
    con.add_argument("--c", help="number")
    con.add_argument("--literal-display", action="store_true", help="huggins: use the alternative G")
    con.add_argument("--out", help="also write the instance JSON here")
    con.add_argument("--seed", type=int, default=None, dest="sub_seed")

    chk = sub.add_parser("check", help="run a check on an instance file")
    chk.add_argument("check", choices=CHECKS)
    chk.add_argument("--in", dest="instance", required=True)
    chk.add_argument("--phi", help="transform JSON {\"rows\": ...}; defaults to the instance's base isomorphism")
    chk.add_argument("--n", type=int)
    chk.add_argument("--cap", type=int, default=10000)
    chk.add_argument("--prime-budget", type=int, default=8)
    chk.add_argument("--seed", type=int, default=None, dest="sub_seed")

    st = sub.add_parser("selftest", help="run the acceptance checks")
    st.add_argument("level", nargs="?", default="quick", choices=("quick", "full"))
    st.add_argument("--seed", type=int, default=None, dest="sub_seed")
    return parser


def _seed(args) -> int:
    env = os.environ.get("MODULI_SEED")
    if env is not None:
        try:
            return int(env)
        except ValueError as exc:
            raise UsageError(f"MODULI_SEED must be an integer, got {env!r}") from exc
    return args.sub_seed if args.sub_seed is not None else args.seed


def _inputs(args) -> dict[str, Any]:
    return {k: v for k, v in sorted(vars(args).items()) if k not in ("command", "sub_seed", "seed") and v is not None}


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    start = time.perf_counter()
    handlers = {"construct": cmd_construct, "check": cmd_check, "selftest": cmd_selftest}
    try:
        seed = _seed(args)
        code, outcome = handlers[args.command](args, seed)
    except UsageError as exc:
        print(f"moduli: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ConditionFailed as exc:
        code, outcome = EXIT_FAILED, {"error": type(exc).__name__, "condition": exc.which, "message": str(exc)}
    except ModuliError as exc:
        code, outcome = EXIT_FAILED, {"error": type(exc).__name__, "message": str(exc)}
    except (ValueError, ZeroDivisionError) as exc:
        code, outcome = EXIT_FAILED, {"error": type(exc).__name__, "message": str(exc)}
    report = RunReport(args.command, _inputs(args), outcome, round((time.perf_counter() - start) * 1000), seed)
    json.dump(report.to_json(), sys.stdout, indent=2)
    sys.stdout.write("\n")
    status = {EXIT_OK: "ok", EXIT_FAILED: "failed", EXIT_INCONCLUSIVE: "inconclusive"}[code]
    print(f"moduli {args.command}: {status}", file=sys.stderr)
    return code


if __name__ == "__main__":
    sys.exit(main())
