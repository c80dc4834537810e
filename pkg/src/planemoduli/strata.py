"""Constructors for the curve families, with their side conditions enforced.

Every constructor returns a :class:`CurveFamilyInstance` whose claimed
automorphisms (and, where the family has one, its isomorphism from the
conjugate curve) have been checked by substitution before returning.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from typing import Any, Mapping, Sequence

from .cyclofield import ONE, ZERO, CycloNum, as_root_of_unity, radical, sqrt_rational, zeta
from .errors import (
    BadDegree,
    ConditionFailed,
    DegreeMismatch,
    InternalInvariant,
    OddDegree,
    PreconditionViolated,
    ReducibleForm,
    RepeatedFactor,
    UnknownSubfamily,
    WrongDivisibility,
    WrongShape,
)
from .planecurve import (
    BinaryForm,
    TernaryForm,
    X,
    Y,
    Z,
    act,
    galois_form,
    is_automorphism,
    proportional,
    squarefree_binary,
)
from .projgeom import ProjTransform, diag, monomial

__all__ = [
    "CurveFamilyInstance",
    "HugginsConditionsReport",
    "index_set",
    "build_C1",
    "build_C2",
    "build_C1_prime",
    "build_C1_prime_0",
    "build_C2_subfamily",
    "subfamily_pattern",
    "normalize_C2",
    "build_huggins",
    "build_example101",
    "build_klein_four_even",
    "build_quartic_abc",
    "howe_action",
    "build_fermat",
    "build_klein",
    "random_cyclo",
    "random_binary_form",
    "random_squarefree_binary",
    "generic_homology_params",
    "default_example101_params",
    "huggins_G",
    "huggins_conditions",
    "klein_four_group_gens",
]

_BX = BinaryForm.var(0)
_BY = BinaryForm.var(1)


def _c(x) -> CycloNum:
    return x if isinstance(x, CycloNum) else CycloNum.from_rational(x)


# ----------------------------------------------------------------------
# instance container


def _encode(v: Any):
    if isinstance(v, CycloNum):
        return v.to_json()
    if isinstance(v, BinaryForm):
        return {"binary": v.to_json()}
    if isinstance(v, TernaryForm):
        return {"ternary": v.to_json()}
    if isinstance(v, ProjTransform):
        return {"transform": v.to_json()}
    if isinstance(v, Mapping):
        return {"map": [[_encode(k), _encode(x)] for k, x in v.items()]}
    if isinstance(v, (list, tuple)):
        return [_encode(x) for x in v]
    return v


def _decode(v: Any):
    if isinstance(v, dict):
        if "conductor" in v:
            return CycloNum.from_json(v)
        if "binary" in v:
            return BinaryForm.from_json(v["binary"])
        if "ternary" in v:
            return TernaryForm.from_json(v["ternary"])
        if "transform" in v:
            return ProjTransform.from_json(v["transform"])
        if "map" in v:
            return {_hashable(_decode(k)): _decode(x) for k, x in v["map"]}
    if isinstance(v, list):
        return [_decode(x) for x in v]
    return v


def _hashable(v):
    return tuple(v) if isinstance(v, list) else v


@dataclass
class CurveFamilyInstance:
    """A plane curve F = 0 together with the family data it was built from.

    ``aut_generators`` lists the automorphisms the family claims (verified
    at construction); ``base_iso`` is an isomorphism from the conjugate curve
    when the family comes with one.
    """

    form: TernaryForm
    family: str
    d: int
    n: int
    params: dict = field(default_factory=dict)
    seed: int | None = None
    aut_generators: tuple[ProjTransform, ...] = ()
    base_iso: ProjTransform | None = None

    @property
    def genus(self) -> int:
        return (self.d - 1) * (self.d - 2) // 2

    def to_json(self) -> dict:
        out = {
            "family": self.family,
            "d": self.d,
            "n": self.n,
            "genus": self.genus,
            "params": {k: _encode(v) for k, v in self.params.items()},
            "seed": self.seed,
            "form": self.form.to_json(),
            "aut_generators": [g.to_json() for g in self.aut_generators],
        }
        if self.base_iso is not None:
            out["base_iso"] = self.base_iso.to_json()
        return out

    @classmethod
    def from_json(cls, obj: dict) -> CurveFamilyInstance:
        form = TernaryForm.from_json(obj["form"])
        if form.degree != int(obj["d"]):
            raise PreconditionViolated("form degree does not match d")
        if "genus" in obj and int(obj["genus"]) != (form.degree - 1) * (form.degree - 2) // 2:
            raise PreconditionViolated("stored genus is inconsistent with d")
        base = obj.get("base_iso")
        return cls(
            form=form,
            family=obj["family"],
            d=int(obj["d"]),
            n=int(obj["n"]),
            params={k: _decode(v) for k, v in obj.get("params", {}).items()},
            seed=obj.get("seed"),
            aut_generators=tuple(ProjTransform.from_json(g) for g in obj.get("aut_generators", [])),
            base_iso=ProjTransform.from_json(base) if base else None,
        )


def _verify_automorphisms(form: TernaryForm, gens: Sequence[ProjTransform]) -> None:
    for g in gens:
        if not is_automorphism(g, form):
            raise InternalInvariant(f"claimed automorphism {g!r} does not preserve the form")


def _verify_conjugate_iso(form: TernaryForm, phi: ProjTransform) -> None:
    if proportional(act(phi, form), galois_form(form)) is None:
        raise InternalInvariant("claimed isomorphism from the conjugate curve fails")


def _check_not_reducible_by_variable(form: TernaryForm) -> None:
    for i, v in enumerate("XYZ"):
        if form.min_exponent(i) > 0:
            raise ReducibleForm(f"form is divisible by {v}")


# ----------------------------------------------------------------------
# homology strata


def index_set(u: int, n: int, d: int) -> set[int]:
    """{j : u <= j <= d-1 and n | d - j}."""
    if u not in (1, 2):
        raise PreconditionViolated("u must be 1 or 2")
    if n < 2:
        raise PreconditionViolated("n must be at least 2")
    return {j for j in range(u, d) if (d - j) % n == 0}


def _as_binary(j: int, v) -> BinaryForm:
    if isinstance(v, BinaryForm):
        b = v
    elif isinstance(v, TernaryForm):
        b = BinaryForm.from_ternary(v)
    else:
        coeffs = list(v)
        if len(coeffs) != j + 1:
            raise DegreeMismatch(f"L_{j} needs {j + 1} coefficients, got {len(coeffs)}")
        b = BinaryForm(j, {(j - i, i): c for i, c in enumerate(coeffs)})
    if b and b.degree != j:
        raise DegreeMismatch(f"L_{j} has degree {b.degree}")
    return b


def _assemble_homology(u: int, d: int, n: int, L: Mapping[int, Any]) -> tuple[TernaryForm, dict]:
    allowed = index_set(u, n, d)
    if d not in L:
        raise PreconditionViolated(f"L_{d} must be supplied")
    forms = {}
    for j, v in L.items():
        j = int(j)
        if j != d and j not in allowed:
            raise WrongDivisibility(f"j={j} is not in S({u})_{n} for d={d}")
        forms[j] = _as_binary(j, v)
    if not squarefree_binary(forms[d]):
        raise RepeatedFactor(f"L_{d} has a repeated linear factor")
    head = Z**d if u == 1 else Z ** (d - 1) * Y
    F = head + forms[d].to_ternary()
    for j in sorted(forms):
        if j != d and forms[j]:
            F = F + Z ** (d - j) * forms[j].to_ternary()
    return F, forms


def _homology_instance(family, u, d, n, L, seed=None, extra=None) -> CurveFamilyInstance:
    if d < 4:
        raise BadDegree("d must be at least 4")
    if n < 2:
        raise PreconditionViolated("n must be at least 2")
    if (u == 1 and d % n) or (u == 2 and (d - 1) % n):
        raise WrongDivisibility(f"n={n} does not divide {'d' if u == 1 else 'd-1'}")
    F, forms = _assemble_homology(u, d, n, L)
    _check_not_reducible_by_variable(F)
    gen = diag(1, 1, zeta(n))
    _verify_automorphisms(F, [gen])
    params = {f"L{j}": b for j, b in sorted(forms.items())}
    params.update(extra or {})
    return CurveFamilyInstance(F, family, d, n, params, seed, (gen,))


def build_C1(d: int, n: int, L_assignments: Mapping[int, Any], seed=None) -> CurveFamilyInstance:
    """Z^d + sum_{j in S(1)_n} Z^(d-j) L_j + L_d with n | d."""
    return _homology_instance("C1", 1, d, n, L_assignments, seed)


def build_C2(d: int, n: int, L_assignments: Mapping[int, Any], seed=None) -> CurveFamilyInstance:
    """Z^(d-1) Y + sum_{j in S(2)_n} Z^(d-j) L_j + L_d with n | d - 1."""
    return _homology_instance("C2", 2, d, n, L_assignments, seed)


def build_C1_prime(d: int, n: int, L_assignments: Mapping[int, Any], seed=None) -> CurveFamilyInstance:
    """C1 with at least one middle term L_{tn}, 1 <= t < d/n, nonzero."""
    if not any(int(j) != d and _as_binary(int(j), v) for j, v in L_assignments.items()):
        raise WrongShape("some L_{tn} with 1 <= t < d/n must be nonzero")
    return _homology_instance("C1_prime", 1, d, n, L_assignments, seed)


def build_C1_prime_0(d: int, L_d, seed=None) -> CurveFamilyInstance:
    """Z^d + L_d."""
    return _homology_instance("C1_prime_0", 1, d, d, {d: L_d}, seed)


# ----------------------------------------------------------------------
# C2 subfamilies


def _subfamily_tail(s: int, d: int) -> tuple[list[tuple[int, int]], range]:
    """Fixed monomials (as (i, j) for X^i Y^j) and the free range of j for a_j X^(d-j) Y^j."""
    if s == 1:
        return [(d, 0), (d - 2, 2)], range(3, d + 1)
    if s == 3:
        return [(d, 0), (0, d)], range(3, d)
    if s in (2, 4):
        return [(d, 0), (1, d - 1)], range(3, d - 1)
    if s == 5:
        return [(d - 1, 1)], range(3, d + 1)
    raise UnknownSubfamily(f"no subfamily numbered {s}")


def build_C2_subfamily(s: int, d: int, n: int, params: Mapping[str, Any], seed=None) -> CurveFamilyInstance:
    """A member of one C2 subfamily.

    ``params`` holds ``a`` (map j -> a_j for the free tail) and ``L`` (map
    j -> L_j for j in S(2)_n).  Patterns by s: 1 is X^d + X^(d-2)Y^2 + ...,
    3 is X^d + Y^d + ..., 4 (and its alias 2) is X^d + XY^(d-1) + ...,
    5 is X^(d-1)Y + ....
    """
    fixed, free = _subfamily_tail(s, d)
    coeffs: dict[tuple[int, int], CycloNum] = {e: ONE for e in fixed}
    for j, a in dict(params.get("a", {})).items():
        j = int(j)
        if j not in free:
            raise UnknownSubfamily(f"a_{j} is not a free coefficient of subfamily {s}")
        coeffs[(d - j, j)] = coeffs.get((d - j, j), ZERO) + _c(a)
    L_d = BinaryForm(d, coeffs)
    if (d - 1) % n:
        raise WrongDivisibility(f"n={n} does not divide d-1")
    allowed = index_set(2, n, d)
    L = {d: L_d}
    F = Z ** (d - 1) * Y + L_d.to_ternary()
    for j, v in dict(params.get("L", {})).items():
        j = int(j)
        if j not in allowed:
            raise WrongDivisibility(f"j={j} is not in S(2)_{n} for d={d}")
        L[j] = _as_binary(j, v)
        if L[j]:
            F = F + Z ** (d - j) * L[j].to_ternary()
    # reducibility is reported ahead of the squarefree condition
    if F.min_exponent(1) > 0:
        raise ReducibleForm("form factors as Y * G")
    return _homology_instance(f"C2_sub{s}", 2, d, n, L, seed, {"s": s})


def subfamily_pattern(form: TernaryForm) -> int | None:
    """Which subfamily support pattern the Z-free part of a C2 form matches (1, 3, 4 or 5)."""
    d = form.degree
    sup = {(e[0], e[1]) for e in form.support() if e[2] == 0}
    has = sup.__contains__
    if has((d, 0)) and not has((d - 1, 1)):
        if has((d - 2, 2)):
            return 1
        if has((0, d)):
            return 3
        if has((1, d - 1)):
            return 4
        return None
    if not has((d, 0)) and has((d - 1, 1)) and not has((d - 2, 2)):
        return 5
    return None


def normalize_C2(form: TernaryForm) -> tuple[int, ProjTransform, TernaryForm]:
    """Shear X -> X - cY to bring a C2 form into one subfamily pattern.

    Returns (s, transform, transformed form); the transform is re-verified
    by substitution.  Rescalings of Y and Z are not applied, so the fixed
    monomials of the pattern keep whatever nonzero coefficients they have.
    """
    d = form.degree
    a0 = form.coefficient((d, 0, 0))
    a1 = form.coefficient((d - 1, 1, 0))
    a2 = form.coefficient((d - 2, 2, 0))
    if a0:
        c = a1 / (a0 * d)
    elif a1:
        c = a2 / (a1 * (d - 1))
    else:
        raise RepeatedFactor("Y^2 divides L_d")
    t = ProjTransform([[1, -c, 0], [0, 1, 0], [0, 0, 1]])
    G = act(t, form)
    s = subfamily_pattern(G)
    if s is None:
        raise UnknownSubfamily("form matches no subfamily pattern after shearing")
    if proportional(act(t.inverse(), G), form) is None:
        raise InternalInvariant("shear does not invert")
    return s, t, G


# ----------------------------------------------------------------------
# Huggins family


@dataclass(frozen=True)
class HugginsConditionsReport:
    squarefree_ok: bool
    swap_noninvariant_ok: bool
    zeta_pair_ok: bool
    m3_map_ok: bool

    @property
    def ok(self) -> bool:
        return self.squarefree_ok and self.swap_noninvariant_ok and self.zeta_pair_ok and self.m3_map_ok

    def first_failure(self) -> str | None:
        for name, flag in (
            ("squarefree", self.squarefree_ok),
            ("swap", self.swap_noninvariant_ok),
            ("zeta_pair", self.zeta_pair_ok),
            ("m3_map", self.m3_map_ok),
        ):
            if not flag:
                return name
        return None

    def to_json(self) -> dict:
        return {
            "squarefree_ok": self.squarefree_ok,
            "swap_noninvariant_ok": self.swap_noninvariant_ok,
            "zeta_pair_ok": self.zeta_pair_ok,
            "m3_map_ok": self.m3_map_ok,
        }


def huggins_G(m: int, a_list: Sequence, literal_display: bool = False) -> BinaryForm:
    """prod (X^m - a Y^m)(X^m + Y^m / conj(a)).

    With ``literal_display`` the second factor is X^m + conj(a) Y^m instead,
    which yields curves that descend to the reals.
    """
    G = BinaryForm.constant(1)
    xm, ym = _BX**m, _BY**m
    for a in a_list:
        a = _c(a)
        second = a.conjugate() if literal_display else a.conjugate().inverse()
        G = G * (xm - ym.scale(a)) * (xm + ym.scale(second))
    return G


def _zeta_pair_ok(a_list: Sequence[CycloNum]) -> bool:
    # {a, -1/conj(a)} = {z a, -z/conj(a)} with z != 1 forces z = -a conj(a),
    # which is a root of unity only when |a| = 1
    for a in a_list:
        z = -(a * a.conjugate())
        if z != ONE and as_root_of_unity(z) is not None:
            left = {a, -(a.conjugate().inverse())}
            right = {z * a, -(z * a.conjugate().inverse())}
            if left == right:
                return False
    return True


def huggins_conditions(m: int, G: BinaryForm, a_list: Sequence[CycloNum]) -> HugginsConditionsReport:
    sq = squarefree_binary(G)
    swap_ok = proportional(G.swap(), G) is None
    zp = _zeta_pair_ok(a_list)
    m3 = True
    if m == 3:
        s3 = sqrt_rational(3)
        image = G.substitute([[-1, 1 + s3], [1 + s3, 1]])
        m3 = proportional(image, G) is None
    return HugginsConditionsReport(sq, swap_ok, zp, m3)


def build_huggins(m: int, r: int, a_list: Sequence, literal_display: bool = False, seed=None):
    """Z^(2mr) - G(X, Y); returns (instance, conditions report)."""
    if m < 1 or r < 1:
        raise PreconditionViolated("m and r must be positive")
    if 2 * m * r <= 5:
        raise PreconditionViolated(f"2mr = {2 * m * r} must exceed 5")
    if m % 2 == 1 and r % 2 == 0:
        raise ConditionFailed("parity", "r must be odd when m is odd")
    a_list = [_c(a) for a in a_list]
    if len(a_list) != r:
        raise PreconditionViolated(f"expected {r} values a_i")
    if any(not a for a in a_list):
        raise PreconditionViolated("a_i must be nonzero")
    G = huggins_G(m, a_list, literal_display)
    if G.is_real():
        raise ConditionFailed("nonreal", "G has real coefficients")
    report = huggins_conditions(m, G, a_list)
    if not report.ok:
        raise ConditionFailed(report.first_failure(), "Huggins side condition violated")
    d = 2 * m * r
    F = Z**d - G.to_ternary()
    gens = (diag(zeta(m), 1, 1), diag(1, zeta(m), 1), diag(1, 1, zeta(d)))
    gens = tuple(g for g in gens if not g.is_identity())
    _verify_automorphisms(F, gens)
    base = None
    if literal_display:
        base = diag(1, zeta(2 * m), 1)
    else:
        c = CycloNum.from_rational(1)
        for a in a_list:
            c = c * (-(a / a.conjugate()))
        omega = radical(c, d) if as_root_of_unity(c) is not None else None
        if omega is not None:
            base = monomial((1, 0, 2), (zeta(2 * m), 1, omega))
    if base is not None:
        _verify_conjugate_iso(F, base)
    params = {"m": m, "r": r, "a": a_list, "literal_display": literal_display}
    inst = CurveFamilyInstance(F, "huggins", d, d, params, seed, gens, base)
    return inst, report


# ----------------------------------------------------------------------
# degree 2pm example


def _is_prime(p: int) -> bool:
    return p >= 2 and all(p % q for q in range(2, int(p**0.5) + 1))


def _involution_through(pairs):
    """Trace-zero matrices [[al, be], [ga, -al]] with t -> x for the given (t, x) pairs."""
    rows = []
    for t, x in pairs:
        # (al t + be) = x (ga t - al)  ->  al (t + x) + be - ga x t = 0
        rows.append([t + x, ONE, -(x * t)])
    # kernel of a 2x3 matrix via the cross product of its rows
    r1, r2 = rows[0], rows[1]
    k = (
        r1[1] * r2[2] - r1[2] * r2[1],
        r1[2] * r2[0] - r1[0] * r2[2],
        r1[0] * r2[1] - r1[1] * r2[0],
    )
    if not any(k):
        return None
    al, be, ga = k
    m = [[al, be], [ga, -al]]
    if not (al * (-al) - be * ga):
        return None
    return m


def _preserved_by_some_involution(g_roots, f, g) -> ProjTransform | None:
    """Look for an involution of P^1 carrying the forms f and g to multiples of themselves."""
    if len(g_roots) < 2:
        return None
    t0, t1 = g_roots[0], g_roots[1]
    cands = []
    for x0 in g_roots:
        for x1 in g_roots:
            if x1 == x0:
                continue
            m = _involution_through([(t0, x0), (t1, x1)])
            if m is not None:
                cands.append(m)
            elif len(g_roots) > 2:
                # t0 and t1 are swapped; pin the involution down with a third root
                for x2 in g_roots:
                    m = _involution_through([(t0, x0), (g_roots[2], x2)])
                    if m is not None:
                        cands.append(m)
    for m in cands:
        if proportional(g.substitute(m), g) is not None and proportional(f.substitute(m), f) is not None:
            return m
    return None


def build_example101(
    p: int,
    m: int,
    a_list: Sequence,
    b_list: Sequence,
    require_real_product: bool = True,
    seed=None,
) -> CurveFamilyInstance:
    """Z^d + Z^(d/p) g(X, Y) - f(X, Y) with d = 2pm.

    g = prod (X - a Y)(X + Y/a) over (p-1)m real a's and
    f = prod (X - b Y)(X + Y/conj(b)) over pm complex b's.
    """
    if not _is_prime(p):
        raise PreconditionViolated("p must be prime")
    if m < 3 or m % 2 == 0:
        raise PreconditionViolated("m must be odd and at least 3")
    d = 2 * p * m
    a_list = [_c(a) for a in a_list]
    b_list = [_c(b) for b in b_list]
    if len(a_list) != (p - 1) * m or len(b_list) != p * m:
        raise WrongShape(f"need {(p - 1) * m} values a_i and {p * m} values b_i")
    if any(not a for a in a_list) or any(not b for b in b_list):
        raise WrongShape("a_i and b_i must be nonzero")
    if any(not a.is_real() for a in a_list):
        raise ConditionFailed("real_a", "the a_i must be real")
    g_roots = []
    g = BinaryForm.constant(1)
    for a in a_list:
        g = g * (_BX - _BY.scale(a)) * (_BX + _BY.scale(a.inverse()))
        g_roots += [a, -a.inverse()]
    f = BinaryForm.constant(1)
    for b in b_list:
        f = f * (_BX - _BY.scale(b)) * (_BX + _BY.scale(b.conjugate().inverse()))
    if not squarefree_binary(g) or not squarefree_binary(f):
        raise RepeatedFactor("f and g must have no repeated zeros")
    prod_b = ONE
    for b in b_list:
        prod_b = prod_b * b
    if require_real_product and not prod_b.is_real():
        raise ConditionFailed("product_real", "the product of the b_i must be real")
    inv = _preserved_by_some_involution(g_roots, f, g)
    if inv is not None:
        raise ConditionFailed("involution", "an involution of P^1 preserves both f and g")
    n = d // p
    F = Z**d + Z**n * g.to_ternary() - f.to_ternary()
    gen = diag(1, 1, zeta(n))
    _verify_automorphisms(F, [gen])
    base = monomial((1, 0, 2), (-1, 1, zeta(2 * d, p)))
    if prod_b.is_real():
        _verify_conjugate_iso(F, base)
    else:
        base = None
    params = {
        "p": p,
        "m": m,
        "a": a_list,
        "b": b_list,
        "product_real_enforced": require_real_product,
    }
    return CurveFamilyInstance(F, "example101", d, n, params, seed, (gen,), base)


def default_example101_params(p: int, m: int, seed: int = 0) -> tuple[list, list]:
    """a_i = 1, 2, ... and seeded Gaussian b_i with real product and no extra symmetry."""
    rng = random.Random(seed)
    i = zeta(4)
    for _ in range(200):
        a_list = [CycloNum.from_rational(k) for k in range(1, (p - 1) * m + 1)]
        b_list = []
        for _ in range(p * m - 1):
            b_list.append(CycloNum.from_rational(rng.randint(1, 4)) + i * rng.randint(1, 4))
        prod = ONE
        for b in b_list:
            prod = prod * b
        b_list.append(prod.conjugate())
        try:
            build_example101(p, m, a_list, b_list)
        except ConditionFailed:
            continue
        return a_list, b_list
    raise InternalInvariant("no admissible parameters found")


# ----------------------------------------------------------------------
# Klein-four families


def klein_four_group_gens() -> tuple[ProjTransform, ProjTransform]:
    return diag(1, -1, 1), diag(1, 1, -1)


def build_klein_four_even(d: int, alpha_assignments: Mapping, seed=None) -> CurveFamilyInstance:
    """X^d + Y^d + Z^d + sum alpha_{s,t,u} (X^s Y^t Z^u)^2."""
    if d % 2:
        raise OddDegree("d must be even")
    if d < 4:
        raise BadDegree("d must be at least 4")
    h = d // 2
    F = X**d + Y**d + Z**d
    alphas = {}
    for key, val in dict(alpha_assignments).items():
        s, t, u = (int(x) for x in key)
        if s + t + u != h or max(s, t, u) > h - 1 or min(s, t, u) < 0:
            raise WrongShape(f"exponent triple {(s, t, u)} is not allowed")
        alphas[(s, t, u)] = _c(val)
        F = F + TernaryForm(d, {(2 * s, 2 * t, 2 * u): val})
    gens = klein_four_group_gens()
    _verify_automorphisms(F, gens)
    return CurveFamilyInstance(F, "klein_four_even", d, 2, {"alpha": alphas}, seed, gens)


def build_quartic_abc(a, b, c, seed=None) -> CurveFamilyInstance:
    """X^4 + Y^4 + Z^4 + a X^2Y^2 + b X^2Z^2 + c Y^2Z^2 with the genericity conditions."""
    a, b, c = _c(a), _c(b), _c(c)
    sq = [a * a, b * b, c * c]
    if len(set(sq)) < 3:
        raise ConditionFailed("genericity", "a^2, b^2, c^2 must be pairwise distinct")
    if any(x == 4 for x in sq):
        raise ConditionFailed("genericity", "a^2, b^2, c^2 must differ from 4")
    if sq[0] + sq[1] + sq[2] - a * b * c == 4:
        raise ConditionFailed("genericity", "a^2 + b^2 + c^2 - abc must differ from 4")
    F = X**4 + Y**4 + Z**4 + (X**2 * Y**2).scale(a) + (X**2 * Z**2).scale(b) + (Y**2 * Z**2).scale(c)
    gens = klein_four_group_gens()
    _verify_automorphisms(F, gens)
    return CurveFamilyInstance(F, "quartic_abc", 4, 2, {"a": a, "b": b, "c": c}, seed, gens)


def _quartic_form(a, b, c) -> TernaryForm:
    return X**4 + Y**4 + Z**4 + (X**2 * Y**2).scale(a) + (X**2 * Z**2).scale(b) + (Y**2 * Z**2).scale(c)


def _howe_candidates() -> list[ProjTransform]:
    i = zeta(4)
    perms = [(0, 1, 2), (0, 2, 1), (1, 0, 2), (1, 2, 0), (2, 0, 1), (2, 1, 0)]
    out = []
    for perm in perms:
        for scal in itertools.product((1, i), repeat=3):
            out.append(monomial(perm, scal))
    return out


def howe_action(g: str, triple: Sequence) -> tuple[tuple[CycloNum, CycloNum, CycloNum], ProjTransform]:
    """Apply one of the generators g1..g4 and return a Q(i) transform realizing it.

    The transform t satisfies act(t, C_{a,b,c}) proportional to C_{g(a,b,c)}.
    """
    a, b, c = (_c(x) for x in triple)
    images = {
        "g1": (b, a, c),
        "g2": (b, c, a),
        "g3": (-a, -b, c),
        "g4": (a, -b, -c),
    }
    if g not in images:
        raise PreconditionViolated(f"unknown generator {g!r}")
    image = images[g]
    src = _quartic_form(a, b, c)
    dst = _quartic_form(*image)
    for t in _howe_candidates():
        if proportional(act(t, src), dst) is not None:
            return image, t
    raise InternalInvariant(f"no Q(i) transform realizes {g}")


# ----------------------------------------------------------------------
# Fermat and Klein curves


def build_fermat(d: int) -> CurveFamilyInstance:
    if d < 4:
        raise BadDegree("d must be at least 4")
    F = X**d + Y**d + Z**d
    gens = (diag(zeta(d), 1, 1), diag(1, zeta(d), 1), monomial((1, 2, 0)), monomial((0, 2, 1)))
    _verify_automorphisms(F, gens)
    return CurveFamilyInstance(F, "fermat", d, d, {}, None, gens)


def build_klein(d: int) -> CurveFamilyInstance:
    """X Y^(d-1) + Y Z^(d-1) + Z X^(d-1)."""
    if d < 4:
        raise BadDegree("d must be at least 4")
    F = X * Y ** (d - 1) + Y * Z ** (d - 1) + Z * X ** (d - 1)
    e = d * d - 3 * d + 3
    # diag(z^a, z^b, 1) with a + (d-1) b = b = (d-1) a  (mod e) gives b = (d-1) a
    gens = (diag(zeta(e), zeta(e, d - 1), 1), monomial((1, 2, 0)))
    _verify_automorphisms(F, gens)
    return CurveFamilyInstance(F, "klein", d, e, {}, None, gens)


# ----------------------------------------------------------------------
# seeded generic parameters


def random_cyclo(rng: random.Random, conductor: int = 4, height: int = 3, nonzero: bool = True) -> CycloNum:
    """Small-height element of Q(zeta_conductor) with integer power-basis coordinates."""
    from .cyclofield import euler_phi

    while True:
        coeffs = [rng.randint(-height, height) for _ in range(euler_phi(conductor))]
        v = CycloNum(conductor, coeffs)
        if v or not nonzero:
            return v


def random_binary_form(rng: random.Random, degree: int, conductor: int = 4, height: int = 3, density: float = 1.0) -> BinaryForm:
    coeffs = {}
    for i in range(degree + 1):
        if rng.random() <= density:
            coeffs[(degree - i, i)] = random_cyclo(rng, conductor, height, nonzero=False)
    return BinaryForm(degree, coeffs)


def random_squarefree_binary(rng: random.Random, degree: int, conductor: int = 4, height: int = 3) -> BinaryForm:
    while True:
        b = random_binary_form(rng, degree, conductor, height)
        if b.degree == degree and b and squarefree_binary(b):
            return b


def generic_homology_params(u: int, d: int, n: int, seed: int, conductor: int = 4) -> dict[int, BinaryForm]:
    rng = random.Random(seed)
    L = {j: random_binary_form(rng, j, conductor) for j in sorted(index_set(u, n, d))}
    L[d] = random_squarefree_binary(rng, d, conductor)
    return L
