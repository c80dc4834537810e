"""Acceptance checks, runnable from the CLI and from pytest.

Each check returns a :class:`CriterionResult`; ``detail`` never contains
timings, so two runs with the same seed produce identical results.
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

from .cyclofield import ONE, ZERO, CycloNum, conjugate, zeta
from .descent import (
    certify_pseudoreal,
    cocycle_composite,
    diagonal_automorphisms,
    find_descent_witness_klein_four,
    is_odd_signature,
    signature_cyclic_homology,
)
from .errors import ConditionFailed, PreconditionViolated
from .groupkit import (
    classify_homology_diagonal,
    closure,
    common_fixed_triangle,
    diagonal_subgroups,
    hessian,
    is_homology_exponent,
    subgroup_transforms,
)
from .planecurve import (
    BinaryForm,
    TernaryForm,
    act,
    monomials,
    proportional,
    smoothness_check,
    squarefree_binary,
)
from .projgeom import ProjTransform, compose, diag, monomial
from .strata import (
    build_C1,
    build_C2,
    build_example101,
    build_fermat,
    build_huggins,
    build_klein,
    build_quartic_abc,
    default_example101_params,
    howe_action,
    random_cyclo,
    random_squarefree_binary,
)

__all__ = ["CriterionResult", "CRITERIA", "run_criterion", "run_selftest", "random_ternary_form", "planted_singular_form"]


@dataclass(frozen=True)
class CriterionResult:
    number: int
    title: str
    passed: bool
    detail: str
    budget_s: float
    elapsed_s: float = 0.0

    def line(self) -> str:
        verdict = "PASS" if self.passed else "FAIL"
        timing = f"{self.elapsed_s:.1f}s of {self.budget_s:g}s"
        return f"[{verdict}] criterion {self.number}: {self.title} -- {self.detail} ({timing})"

    def to_json(self) -> dict:
        return {"criterion": self.number, "title": self.title, "passed": self.passed, "detail": self.detail}


def _random_transform(rng: random.Random) -> ProjTransform:
    return ProjTransform([[random_cyclo(rng, 4, 2, False) for _ in range(3)] for _ in range(3)])


def random_ternary_form(rng: random.Random, d: int, conductor: int = 4, height: int = 3) -> TernaryForm:
    return TernaryForm(d, {e: random_cyclo(rng, conductor, height, nonzero=False) for e in monomials(d)})


def planted_singular_form(rng: random.Random, d: int) -> tuple[TernaryForm, tuple[Fraction, ...]]:
    """A1^2 B1 + A1 A2 B2 + A2^2 B3 with A1, A2 independent linear forms through a random rational point."""
    while True:
        p = (Fraction(rng.randint(-3, 3)), Fraction(rng.randint(-3, 3)), Fraction(1))
        # two independent linear forms vanishing at p
        A1 = TernaryForm(1, {(1, 0, 0): 1, (0, 0, 1): -p[0]})
        A2 = TernaryForm(1, {(0, 1, 0): 1, (0, 0, 1): -p[1]})
        F = A1 * A1 * random_ternary_form(rng, d - 2, height=2)
        F = F + A1 * A2 * random_ternary_form(rng, d - 2, height=2)
        F = F + A2 * A2 * random_ternary_form(rng, d - 2, height=2)
        if F:
            return F, p


# ----------------------------------------------------------------------
# individual criteria


def _c1(level: str, seed: int) -> tuple[bool, str]:
    h18, h36 = hessian(18), hessian(36)
    t18, t36 = common_fixed_triangle(h18), common_fixed_triangle(h36)
    ok = h18.order == 18 and h36.order == 36 and t18 is None and t36 is None
    shown = ["absent" if t is None else "present" for t in (t18, t36)]
    return ok, f"orders {h18.order}, {h36.order}; common fixed triangle {shown[0]}, {shown[1]}"


def _c2(level: str, seed: int) -> tuple[bool, str]:
    total = homology_only = exceptions = 0
    # unordered generator pairs swept by the enumeration
    pairs = sum(e * e * (e * e + 1) // 2 for e in range(1, 9))
    tags: dict[str, int] = {}
    for e in range(1, 9):
        for sub in diagonal_subgroups(e):
            total += 1
            nontrivial = [x for x in sub if x != (0, 0)]
            if not all(is_homology_exponent(e, a, b) for a, b in nontrivial):
                continue
            homology_only += 1
            g = subgroup_transforms(e, sub)
            try:
                cls = classify_homology_diagonal(g)
            except Exception:  # any failure is an exception to the claim
                exceptions += 1
                continue
            if cls.tag not in ("trivial", "cyclic", "klein_four_rho0_conjugate"):
                exceptions += 1
            tags[cls.tag] = tags.get(cls.tag, 0) + 1
    tag_text = ", ".join(f"{k}={v}" for k, v in sorted(tags.items()))
    return exceptions == 0, f"{pairs} generator pairs, {total} distinct subgroups, {homology_only} homology-only ({tag_text}), {exceptions} exceptions"


def _c3(level: str, seed: int) -> tuple[bool, str]:
    fermat = build_fermat(4)
    dg = diagonal_automorphisms(fermat.form)
    full = closure(list(dg.generators) + [monomial((1, 2, 0)), monomial((0, 2, 1))], cap=200)
    fermat_ok = all(proportional(act(t, fermat.form), fermat.form) is not None for t in full.generators)
    klein = build_klein(5)
    kgens = [diag(zeta(13), zeta(13, 4), 1), monomial((1, 2, 0))]
    kg = closure(kgens, cap=200)
    klein_ok = all(proportional(act(t, klein.form), klein.form) is not None for t in kgens)
    ok = dg.order == 16 and full.order == 96 == 6 * 4**2 and kg.order == 39 == 3 * (25 - 15 + 3)
    return ok and fermat_ok and klein_ok, (
        f"Fermat quartic diagonal {dg.order}, full {full.order}; Klein quintic {kg.order}"
    )


def _c4(level: str, seed: int) -> tuple[bool, str]:
    rng = random.Random(seed)
    L5 = random_squarefree_binary(rng, 5)
    c1 = build_C1(5, 5, {5: L5}, seed=seed)
    s1 = signature_cyclic_homology(c1)
    rh1 = 2 * c1.genus - 2 == 5 * (-2 + 5 * Fraction(4, 5)) == 10
    c2 = build_C2(5, 4, {5: L5}, seed=seed)
    s2 = signature_cyclic_homology(c2)
    ok = (
        rh1
        and s1.check(c1.genus, 5)
        and s2.check(c2.genus, 4)
        and s1.g0 == 0
        and s1.periods == (5,) * 5
        and is_odd_signature(s1)
        and s2.g0 == 0
        and len(s2.periods) == 6
    )
    return ok, f"C1 d=n=5 2g-2=10=5(-2+5*4/5)={rh1}, {s1} odd={is_odd_signature(s1)}; C2 d=5 n=4 {s2}"


def _c5(level: str, seed: int) -> tuple[bool, str]:
    i = zeta(4)
    hug, _ = build_huggins(1, 3, [1 + i, 2 + i, 3 + i])
    hcert = certify_pseudoreal(hug, closure(hug.aut_generators), hug.base_iso)
    hug_ok = hcert.kind == "pseudoreal" and hcert.verify()
    minus = diag(1, 1, -1)
    parts = [f"Huggins d=6 {hcert.kind}"]
    ok = hug_ok
    cases = [(2, 3, True)] + ([(2, 5, False)] if level == "full" else [])
    for p, m, smooth in cases:
        a, b = default_example101_params(p, m, seed=0)
        ex = build_example101(p, m, a, b)
        cert = certify_pseudoreal(ex, closure(ex.aut_generators), ex.base_iso)
        all_minus = all(comp == minus for _, comp in cert.coset_failures)
        case_ok = cert.kind == "pseudoreal" and cert.verify() and all_minus and len(cert.coset_failures) == ex.d // p
        text = f"Example d={ex.d}: {cert.kind}, {len(cert.coset_failures)} composites all diag(1,1,-1)={all_minus}"
        if smooth:
            verdict = smoothness_check(ex.form).verdict
            case_ok = case_ok and verdict == "smooth"
            text += f", {verdict}"
        ok = ok and case_ok
        parts.append(text)
    return ok, "; ".join(parts)


def _c6(level: str, seed: int) -> tuple[bool, str]:
    rng = random.Random(seed)
    i = zeta(4)
    witnesses = 0
    trials = 5 if level == "quick" else 10
    while witnesses < trials:
        a, b, c = i * rng.randint(-6, 6), i * rng.randint(-6, 6), CycloNum.from_rational(rng.randint(-6, 6))
        try:
            q = build_quartic_abc(a, b, c)
        except ConditionFailed:
            continue
        cert = find_descent_witness_klein_four(q)
        if cert is None or not cocycle_composite(cert.witness).is_identity():
            return False, f"no cocycle-passing witness for {(str(a), str(b), str(c))}"
        witnesses += 1
    howe_checked = 0
    for _ in range(20):
        while True:
            triple = tuple(random_cyclo(rng, 4, 4) for _ in range(3))
            try:
                q = build_quartic_abc(*triple)
                break
            except ConditionFailed:
                continue
        for g in ("g1", "g2", "g3", "g4"):
            image, t = howe_action(g, triple)
            in_qi = all(x.conductor in (1, 4) for row in t.matrix for x in row)
            target = TernaryForm(4, {(4, 0, 0): 1, (0, 4, 0): 1, (0, 0, 4): 1, (2, 2, 0): image[0], (2, 0, 2): image[1], (0, 2, 2): image[2]})
            if not in_qi or proportional(act(t, q.form), target) is None:
                return False, f"{g} fails on {tuple(map(str, triple))}"
            howe_checked += 1
    return True, f"{witnesses} imaginary-(a,b) witnesses pass the cocycle; {howe_checked} Howe actions realized over Q(i)"


def _character_projection(f: TernaryForm, py: int, pz: int) -> TernaryForm:
    return TernaryForm(f.degree, {e: c for e, c in f.coeffs.items() if e[1] % 2 == py and e[2] % 2 == pz})


def _c7(level: str, seed: int) -> tuple[bool, str]:
    rng = random.Random(seed)
    count = 10 if level == "quick" else 50
    rho = [diag(1, -1, 1), diag(1, 1, -1)]
    smooth_forms = contained = 0
    projections = bad_projection = false_smooth = 0
    while smooth_forms < count:
        d = rng.choice((5, 7))
        f = random_ternary_form(rng, d)
        if smoothness_check(f).verdict != "smooth":
            continue
        smooth_forms += 1
        if all(proportional(act(t, f), f) is not None for t in rho):
            contained += 1
        for py in (0, 1):
            for pz in (0, 1):
                g = _character_projection(f, py, pz)
                if not g:
                    continue
                projections += 1
                # invariance under both involutions forces X, Y or Z to divide
                must = [0] if (py, pz) == (0, 0) else [1] if (py, pz) == (1, 0) else [2] if (py, pz) == (0, 1) else [0, 1, 2]
                if any(g.min_exponent(v) == 0 for v in must):
                    bad_projection += 1
                if smoothness_check(g).verdict == "smooth":
                    false_smooth += 1
    ok = contained == 0 and bad_projection == 0 and false_smooth == 0
    return ok, (
        f"{smooth_forms} smooth odd-degree forms, {contained} with Klein-four diagonal symmetry; "
        f"{projections} invariant projections, {bad_projection} without the forced factor, {false_smooth} reported smooth"
    )


def _c8(level: str, seed: int) -> tuple[bool, str]:
    rng = random.Random(seed)
    n = 100
    failures: dict[str, int] = {}

    def fail(name):
        failures[name] = failures.get(name, 0) + 1

    for _ in range(n):
        N = rng.choice((3, 4, 5, 8, 12, 15))
        a, b, c = (random_cyclo(rng, N, 4, nonzero=False) for _ in range(3))
        if (a + b) * c != a * c + b * c or (a * b) * c != a * (b * c) or a + b != b + a:
            fail("field")
        if a and (a * a.inverse() != 1 or (b / a) * a != b):
            fail("field")
        if conjugate(conjugate(a)) != a or conjugate(a * b) != conjugate(a) * conjugate(b):
            fail("conjugation")
    for _ in range(n):
        d = rng.randint(2, 4)
        f = random_ternary_form(rng, d, height=2)
        try:
            t1, t2 = (_random_transform(rng) for _ in range(2))
        except PreconditionViolated:
            continue
        if proportional(act(compose(t1, t2), f), act(t2, act(t1, f))) is None:
            fail("functoriality")
    for _ in range(n):
        k = rng.randint(2, 5)
        roots = [(random_cyclo(rng, 4, 3, False), random_cyclo(rng, 4, 3, False)) for _ in range(k)]
        repeat = rng.random() < 0.5
        if repeat:
            roots.append(roots[rng.randrange(k)])
        b = BinaryForm(0, {(0, 0): 1})
        for p, q in roots:
            b = b * BinaryForm(1, {(1, 0): q, (0, 1): -p})
        # oracle: distinct projective points among the planted roots
        points = set()
        degenerate = False
        for p, q in roots:
            if not p and not q:
                degenerate = True
            points.add((ONE, q / p) if p else (ZERO, ONE))
        if degenerate:
            continue
        if squarefree_binary(b) != (len(points) == len(roots)):
            fail("squarefree")
    for _ in range(n):
        d = rng.randint(3, 5)
        F, _ = planted_singular_form(rng, d)
        if smoothness_check(F).verdict == "smooth":
            fail("planted_singular")
    detail = "5 suites x 100 cases, failures: " + (", ".join(f"{k}={v}" for k, v in sorted(failures.items())) or "none")
    return not failures, detail


CRITERIA: dict[int, tuple[str, float, Callable[[str, int], tuple[bool, str]]]] = {
    1: ("Hessian groups", 5.0, _c1),
    2: ("homology-only diagonal subgroups are cyclic or rho0-conjugate", 120.0, _c2),
    3: ("Fermat and Klein automorphism counts", 30.0, _c3),
    4: ("Riemann-Hurwitz anchors", 5.0, _c4),
    5: ("pseudoreality certificates", 300.0, _c5),
    6: ("Klein-four descent and Howe actions", 30.0, _c6),
    7: ("odd-degree Klein-four impossibility", 120.0, _c7),
    8: ("property suites", 600.0, _c8),
}


def run_criterion(number: int, level: str = "full", seed: int = 0) -> CriterionResult:
    """Run one criterion; it passes only if its check holds within its time budget."""
    title, budget, fn = CRITERIA[number]
    start = time.perf_counter()
    try:
        ok, detail = fn(level, seed)
    except Exception as exc:  # a crash is a failure, reported rather than raised
        ok, detail = False, f"raised {type(exc).__name__}: {exc}"
    elapsed = time.perf_counter() - start
    if elapsed > budget:
        ok, detail = False, f"{detail}; exceeded the {budget:g} s budget"
    return CriterionResult(number, title, ok, detail, budget, elapsed)


def run_selftest(level: str = "quick", seed: int = 0) -> list[CriterionResult]:
    if level not in ("quick", "full"):
        raise ValueError("level must be quick or full")
    return [run_criterion(k, level, seed) for k in sorted(CRITERIA)]
