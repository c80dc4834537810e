"""Automorphisms, signatures and descent to the reals.

For the extension C/R the Weil condition reduces to one identity: a curve
is definable over R when some isomorphism phi from its conjugate satisfies
phi o conj(phi) = 1.  Certificates produced here record every matrix needed
to re-check their verdict by hand.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from .cyclofield import CycloNum, zeta
from .errors import (
    CapExceeded,
    InternalInvariant,
    NotAnIsomorphism,
    NotCyclicHomologyCase,
    PreconditionViolated,
    RamificationInconsistent,
)
from .groupkit import FiniteSubgroup, closure
from .planecurve import (
    BinaryForm,
    TernaryForm,
    act,
    distinct_root_count,
    galois_form,
    is_automorphism,
    proportional,
)
from .projgeom import ProjTransform, compose, diag, galois_transform, identity, monomial
from .strata import CurveFamilyInstance

__all__ = [
    "Signature",
    "Certificate",
    "is_automorphism",
    "diagonal_automorphisms",
    "signature_cyclic_homology",
    "is_odd_signature",
    "riemann_hurwitz_g0",
    "weil_cocycle_real",
    "cocycle_composite",
    "certify_pseudoreal",
    "find_descent_witness_klein_four",
    "find_gl2z_shape_witness",
    "extend_by_eta",
]


# ----------------------------------------------------------------------
# diagonal automorphisms


def _lattice_basis(vectors: Iterable[tuple[int, int]]) -> list[tuple[int, int]]:
    """Echelon basis of the integer span of 2-vectors."""
    rows = [list(v) for v in vectors if any(v)]
    basis: list[list[int]] = []
    # first column: gcd-combine everything into one row
    pivot = None
    rest = []
    for r in rows:
        if pivot is None:
            if r[0]:
                pivot = r
            else:
                rest.append(r)
            continue
        a, b = pivot, r
        while b[0]:
            q = a[0] // b[0]
            a, b = b, [a[0] - q * b[0], a[1] - q * b[1]]
        pivot = a
        rest.append(b)
    if pivot is not None:
        if pivot[0] < 0:
            pivot = [-pivot[0], -pivot[1]]
        basis.append(pivot)
    g = 0
    for r in rest:
        g = math.gcd(g, r[1])
    if g:
        basis.append([0, g])
    return [tuple(b) for b in basis]


def diagonal_automorphisms(f: TernaryForm, exponent_cap: int = 10000) -> FiniteSubgroup:
    """All diag(x, y, 1) preserving F up to a scalar.

    With x = exp(2 pi i u), y = exp(2 pi i v), the condition is that
    (u, v) pairs integrally with every exponent difference, so the group is
    the dual of the difference lattice modulo Z^2.
    """
    support = sorted(f.support())
    if not support:
        raise PreconditionViolated("zero form")
    ref = support[0]
    diffs = [(e[0] - ref[0], e[1] - ref[1]) for e in support[1:]]
    basis = _lattice_basis(diffs)
    if len(basis) < 2:
        raise CapExceeded("the diagonal stabilizer is infinite")
    (a, b), (c, e) = basis
    det = a * e - b * c
    order = abs(det)
    if order > exponent_cap:
        raise CapExceeded(f"diagonal stabilizer order {order} exceeds cap")
    # columns of B^-1 = adj(B)/det give generators (u, v)
    gens = []
    for u_num, v_num in ((e, -c), (-b, a)):
        u = Fraction(u_num, det)
        v = Fraction(v_num, det)
        t = diag(zeta(u.denominator, u.numerator), zeta(v.denominator, v.numerator), 1)
        if not t.is_identity():
            gens.append(t)
    group = closure(gens, cap=order)
    if group.order != order:
        raise InternalInvariant("diagonal stabilizer has the wrong order")
    for t in group.generators:
        if not is_automorphism(t, f):
            raise InternalInvariant("diagonal stabilizer element fails the substitution check")
    return group


# ----------------------------------------------------------------------
# signatures


@dataclass(frozen=True)
class Signature:
    g0: int
    periods: tuple[int, ...]

    def check(self, g: int, order: int) -> bool:
        lhs = 2 * g - 2
        rhs = Fraction(order * (2 * self.g0 - 2)) + sum(Fraction(order) * (1 - Fraction(1, m)) for m in self.periods)
        return lhs == rhs and all(order % m == 0 for m in self.periods)

    def to_json(self) -> dict:
        return {"g0": self.g0, "periods": list(self.periods)}

    def __str__(self):
        return f"({self.g0}; {', '.join(str(m) for m in self.periods)})"


def riemann_hurwitz_g0(g: int, group_order: int, periods: Sequence[int]) -> int | None:
    """The quotient genus forced by Riemann-Hurwitz, or None if it is not a non-negative integer."""
    if g < 2 or group_order < 2:
        raise PreconditionViolated("need g >= 2 and group order >= 2")
    N = group_order
    ram = sum(Fraction(N) * (1 - Fraction(1, m)) for m in periods)
    two_g0 = Fraction(2 * g - 2 - ram, N) + 2
    if two_g0.denominator != 1 or two_g0.numerator % 2 or two_g0 < 0:
        return None
    return two_g0.numerator // 2


def signature_cyclic_homology(c: CurveFamilyInstance, n: int | None = None) -> Signature:
    """Signature of the quotient by <diag(1, 1, zeta_n)>.

    The fixed points of every non-trivial element are the curve points on
    the axis Z = 0 and the center (0:0:1) when it lies on the curve.
    """
    n = c.n if n is None else n
    f = c.form
    gen = diag(1, 1, zeta(n))
    if n < 2 or not is_automorphism(gen, f):
        raise NotCyclicHomologyCase(f"diag(1, 1, zeta_{n}) is not an automorphism")
    d = f.degree
    axis_part = BinaryForm._raw(d, {(i, j): v for (i, j, k), v in f.coeffs.items() if k == 0})
    if not axis_part:
        raise RamificationInconsistent("curve contains the axis")
    count = distinct_root_count(axis_part)
    if count != d:
        raise RamificationInconsistent(f"curve meets the axis in {count} points instead of {d}")
    if not f.coefficient((0, 0, d)):
        count += 1
    periods = (n,) * count
    g = (d - 1) * (d - 2) // 2
    g0 = riemann_hurwitz_g0(g, n, periods)
    if g0 is None:
        raise RamificationInconsistent("Riemann-Hurwitz has no integral solution")
    sig = Signature(g0, periods)
    if not sig.check(g, n):
        raise InternalInvariant("signature fails Riemann-Hurwitz")
    return sig


def is_odd_signature(s: Signature) -> bool:
    """Quotient genus zero and some period occurring an odd number of times."""
    if s.g0 != 0:
        return False
    return any(s.periods.count(m) % 2 for m in set(s.periods))


# ----------------------------------------------------------------------
# Weil cocycle over C/R


def cocycle_composite(phi: ProjTransform) -> ProjTransform:
    return compose(phi, galois_transform(phi))


def weil_cocycle_real(phi: ProjTransform, f: TernaryForm) -> bool:
    """phi o conj(phi) == 1, for phi an isomorphism from the conjugate curve."""
    if proportional(act(phi, f), galois_form(f)) is None:
        raise NotAnIsomorphism("phi does not map the conjugate curve onto the curve")
    return cocycle_composite(phi).is_identity()


@dataclass
class Certificate:
    """Outcome of a descent computation.

    ``kind`` is "pseudoreal", "descent_witness" or "moduli_not_real".
    For a pseudoreal verdict ``coset_failures`` pairs every phi' in
    base_iso o Aut with its non-identity composite phi' o conj(phi').
    """

    kind: str
    curve: CurveFamilyInstance
    aut: FiniteSubgroup | None = None
    base_iso: ProjTransform | None = None
    coset_failures: list[tuple[ProjTransform, ProjTransform]] = field(default_factory=list)
    witness: ProjTransform | None = None
    scalars: list[CycloNum] = field(default_factory=list)
    aut_completeness: str = "claimed"

    def verify(self) -> bool:
        """Re-derive every recorded fact from scratch."""
        f = self.curve.form
        if self.kind == "descent_witness":
            return self.witness is not None and weil_cocycle_real(self.witness, f)
        if self.kind == "pseudoreal":
            if self.aut is None or self.base_iso is None:
                return False
            expected = {compose(self.base_iso, a) for a in self.aut}
            if {p for p, _ in self.coset_failures} != expected:
                return False
            for p, comp in self.coset_failures:
                if cocycle_composite(p) != comp or comp.is_identity() or comp not in self.aut:
                    return False
                if proportional(act(p, f), galois_form(f)) is None:
                    return False
            return True
        return self.kind == "moduli_not_real"

    def to_json(self) -> dict:
        out: dict = {
            "kind": self.kind,
            "aut_completeness": self.aut_completeness,
            "curve": self.curve.to_json(),
        }
        if self.aut is not None:
            out["aut"] = self.aut.to_json()
        if self.base_iso is not None:
            out["base_iso"] = self.base_iso.to_json()
        if self.coset_failures:
            out["coset_failures"] = [
                {"phi": p.to_json(), "composite": c.to_json()} for p, c in self.coset_failures
            ]
        if self.witness is not None:
            out["witness"] = self.witness.to_json()
        if self.scalars:
            out["scalars"] = [s.to_json() for s in self.scalars]
        return out


def certify_pseudoreal(
    c: CurveFamilyInstance,
    aut: FiniteSubgroup,
    base_iso: ProjTransform,
    diagonal_check: bool = True,
) -> Certificate:
    """Run the cocycle test over the whole coset base_iso o Aut.

    The verdict is only as strong as the claim that ``aut`` is the full
    automorphism group; ``aut_completeness`` records whether the diagonal
    part of that claim was confirmed by search.
    """
    f = c.form
    for a in aut:
        if not is_automorphism(a, f):
            raise PreconditionViolated("aut: element is not an automorphism")
    if proportional(act(base_iso, f), galois_form(f)) is None:
        raise PreconditionViolated("base_iso: does not map the conjugate curve onto the curve")
    for a in aut:
        if galois_transform(a) not in aut:
            raise PreconditionViolated("aut: not stable under conjugation")
    completeness = "claimed"
    if diagonal_check:
        try:
            dg = diagonal_automorphisms(f)
        except CapExceeded:
            dg = None
        if dg is not None:
            if any(t not in aut for t in dg):
                raise PreconditionViolated("aut: a larger diagonal group preserves the form")
            completeness = "diagonal_search_verified"
    failures = []
    scalars = []
    for a in aut:
        phi = compose(base_iso, a)
        lam = proportional(act(phi, f), galois_form(f))
        if lam is None:
            raise InternalInvariant("coset element is not an isomorphism")
        comp = cocycle_composite(phi)
        if comp.is_identity():
            return Certificate(
                "descent_witness", c, aut, base_iso, witness=phi, scalars=[lam], aut_completeness=completeness
            )
        if comp not in aut:
            raise InternalInvariant("cocycle composite is not an automorphism in aut")
        failures.append((phi, comp))
        scalars.append(lam)
    return Certificate("pseudoreal", c, aut, base_iso, failures, scalars=scalars, aut_completeness=completeness)


# ----------------------------------------------------------------------
# structured isomorphism searches


def _klein_four_shapes(d: int):
    roots = [zeta(d, k) for k in range(d)]
    for lam in roots:
        for mu in roots:
            yield "diag", diag(1, lam, mu)
            yield "swap_yz", monomial((0, 2, 1), (1, lam, mu))
            yield "swap_xy", monomial((1, 0, 2), (lam, mu, 1))
            yield "swap_xz", monomial((2, 1, 0), (lam, 1, mu))


def find_descent_witness_klein_four(c: CurveFamilyInstance) -> Certificate | None:
    """Search the four monomial shapes for an isomorphism from the conjugate curve.

    Returns a descent_witness certificate, or None when no isomorphism of
    these shapes exists.  An isomorphism without a cocycle-passing variant
    contradicts the descent theorem for this family and raises.
    """
    if c.family not in ("klein_four_even", "quartic_abc"):
        raise PreconditionViolated("instance is not in a Klein-four family")
    f = c.form
    for g in (diag(1, -1, 1), diag(1, 1, -1)):
        if not is_automorphism(g, f):
            raise PreconditionViolated("Klein-four group does not act")
    conj = galois_form(f)
    found_iso = None
    for _, phi in _klein_four_shapes(f.degree):
        lam = proportional(act(phi, f), conj)
        if lam is None:
            continue
        found_iso = found_iso or phi
        if cocycle_composite(phi).is_identity():
            return Certificate("descent_witness", c, base_iso=found_iso, witness=phi, scalars=[lam])
    if found_iso is not None:
        raise InternalInvariant("isomorphisms exist but none satisfies the cocycle condition")
    return None


def find_gl2z_shape_witness(
    c: CurveFamilyInstance, root_order: int | None = None
) -> tuple[ProjTransform, CycloNum] | None:
    """Search [aX + bY : gY : Z] for an isomorphism from the conjugate of a C2 curve.

    a ranges over roots of unity of order dividing ``root_order``; g is
    forced by the X^d coefficient (or ranges freely when X^d is absent); b
    is solved from the coefficient that must vanish.  Returns the first
    isomorphism found together with its b.
    """
    f = c.form
    d = f.degree
    conj = galois_form(f)
    # covers the orders forced by each fixed-monomial pattern
    N = root_order or math.lcm(2 * (d - 1), d * (d - 1), (d - 1) ** 2)
    roots = [zeta(N, k) for k in range(N)]
    has_xd = bool(f.coefficient((d, 0, 0)))
    for a in roots:
        if has_xd:
            g_choices = [a**d]
        else:
            if a ** (d - 1) != 1:
                continue
            g_choices = roots
        for g in g_choices:
            t0 = diag(a, g, 1)
            base = act(t0, f)
            # the target coefficient of the image is affine in b with slope lead
            if has_xd:
                lead = f.coefficient((d, 0, 0)) * d * a ** (d - 1)
                target = (d - 1, 1, 0)
            else:
                lead = f.coefficient((d - 1, 1, 0)) * (d - 1) * a ** (d - 2) * g
                target = (d - 2, 2, 0)
            # conj = lam * image, so the target coefficient must equal conj_t / lam
            lam = conj.coefficient((0, 1, d - 1)) / base.coefficient((0, 1, d - 1))
            b = (conj.coefficient(target) / lam - base.coefficient(target)) / lead
            phi = ProjTransform([[a, b, 0], [0, g, 0], [0, 0, 1]])
            if proportional(act(phi, f), conj) is not None:
                return phi, b
    return None


def extend_by_eta(
    full: TernaryForm, phi0: ProjTransform, d: int
) -> tuple[ProjTransform, ProjTransform] | None:
    """Find eta = diag(e^-1, e^-1, 1), e^d = 1, making eta o phi0 an isomorphism for ``full``.

    Returns (eta, eta o phi0) or None.
    """
    conj = galois_form(full)
    for k in range(d):
        e_inv = zeta(d, -k % d)
        eta = diag(e_inv, e_inv, 1)
        phi = compose(eta, phi0)
        if proportional(act(phi, full), conj) is not None:
            return eta, phi
    return None
