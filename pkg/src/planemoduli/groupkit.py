"""Finite subgroups of PGL_3 given by explicit element lists."""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Iterable, Sequence

from .cyclofield import zeta
from .errors import CapExceeded, InternalInvariant, PreconditionViolated
from .projgeom import (
    ProjLine,
    ProjPoint,
    ProjTransform,
    _det,
    classify_element,
    compose,
    diag,
    identity,
    intersection,
    monomial,
    transform_order,
)

__all__ = [
    "FiniteSubgroup",
    "GroupClass",
    "closure",
    "all_homologies",
    "classify_homology_diagonal",
    "common_fixed_triangle",
    "normalizes",
    "hessian",
    "hessian_generators",
    "rho0",
    "classify_group",
    "diagonal_subgroups",
    "subgroup_transforms",
    "is_homology_exponent",
]


@dataclass(frozen=True)
class FiniteSubgroup:
    generators: tuple[ProjTransform, ...]
    elements: tuple[ProjTransform, ...]

    @property
    def order(self) -> int:
        return len(self.elements)

    def __contains__(self, t: ProjTransform) -> bool:
        return t in self._set

    @property
    def _set(self) -> frozenset:
        cache = self.__dict__.get("_cached_set")
        if cache is None:
            cache = frozenset(self.elements)
            object.__setattr__(self, "_cached_set", cache)
        return cache

    def __iter__(self):
        return iter(self.elements)

    def __len__(self):
        return len(self.elements)

    def to_json(self) -> dict:
        return {
            "generators": [g.to_json() for g in self.generators],
            "order": self.order,
            "elements": [e.to_json() for e in self.elements],
        }

    @classmethod
    def from_json(cls, obj: dict) -> FiniteSubgroup:
        gens = [ProjTransform.from_json(g) for g in obj["generators"]]
        g = closure(gens, cap=max(int(obj.get("order", 1)), 1))
        if g.order != int(obj["order"]):
            raise PreconditionViolated("stored order does not match closure")
        return g


@dataclass(frozen=True)
class GroupClass:
    """Structural tag for a finite group: "trivial", "cyclic", "klein_four_rho0_conjugate",
    "other_diagonal" or "non_diagonal".  ``n`` is set for the cyclic tag."""

    tag: str
    n: int | None = None
    witness: ProjTransform | None = None

    def to_json(self) -> dict:
        out: dict = {"tag": self.tag}
        if self.n is not None:
            out["n"] = self.n
        if self.witness is not None:
            out["witness"] = self.witness.to_json()
        return out


def closure(generators: Iterable[ProjTransform], cap: int = 1000) -> FiniteSubgroup:
    """Breadth-first closure of the generators under composition."""
    gens = tuple(generators)
    ident = identity()
    seen = {ident}
    order = [ident]
    frontier = [ident]
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = compose(x, g)
                if y not in seen:
                    seen.add(y)
                    nxt.append(y)
                    if len(seen) > cap:
                        raise CapExceeded(f"group order exceeds cap {cap}")
        nxt.sort(key=ProjTransform.sort_key)
        order.extend(nxt)
        frontier = nxt
    # finite sets closed under right multiplication by generators are groups
    return FiniteSubgroup(gens, tuple(order))


def all_homologies(g: FiniteSubgroup) -> bool:
    for t in g:
        if t.is_identity():
            continue
        if classify_element(t, cap=g.order).kind != "homology":
            return False
    return True


def rho0() -> FiniteSubgroup:
    return closure([diag(1, -1, 1), diag(1, 1, -1)])


def classify_homology_diagonal(g: FiniteSubgroup) -> GroupClass:
    """Classify a group all of whose non-identity elements are homologies.

    The classification result is a theorem-level claim: such a group is cyclic
    or conjugate to rho0.  A group violating this raises InternalInvariant.
    """
    if g.order == 1:
        return GroupClass("trivial", witness=identity())
    if not all_homologies(g):
        raise PreconditionViolated("group contains a non-homology")
    for t in g:
        if transform_order(t, g.order) == g.order:
            return GroupClass("cyclic", n=g.order, witness=t)
    if g.order == 4:
        tri = common_fixed_triangle(g)
        if tri is not None:
            c = _triangle_map(tri)
            cinv = c.inverse()
            conj = {compose(cinv, t, c) for t in g}
            if conj == set(rho0().elements):
                return GroupClass("klein_four_rho0_conjugate", witness=c)
    raise InternalInvariant(f"homology group of order {g.order} is neither cyclic nor rho0-conjugate")


def classify_group(g: FiniteSubgroup) -> GroupClass:
    """Coarse structural tag for any finite group."""
    if g.order == 1:
        return GroupClass("trivial", witness=identity())
    if all_homologies(g):
        return classify_homology_diagonal(g)
    for t in g:
        if transform_order(t, g.order) == g.order:
            return GroupClass("cyclic", n=g.order, witness=t)
    tri = common_fixed_triangle(g)
    if tri is not None:
        return GroupClass("other_diagonal", witness=_triangle_map(tri))
    return GroupClass("non_diagonal")


def _triangle_map(points: Sequence[ProjPoint]) -> ProjTransform:
    """Transform sending the reference points to the given triangle."""
    return ProjTransform([[points[j][i] for j in range(3)] for i in range(3)])


def common_fixed_triangle(g: FiniteSubgroup) -> tuple[ProjPoint, ProjPoint, ProjPoint] | None:
    """Three non-collinear points fixed by every element, if the candidate search finds them.

    Candidates are centers of homologies, pairwise intersections of their
    axes, eigen-directions of non-homologies and, when all homologies share
    one axis, the points where that axis meets the reference lines.
    """
    cands: list[ProjPoint] = []
    axes: list[ProjLine] = []
    for t in g:
        if t.is_identity():
            continue
        loc = classify_element(t, g.order)
        if loc.kind == "homology":
            cands.append(loc.center)
            if loc.axis not in axes:
                axes.append(loc.axis)
        else:
            cands.extend(loc.points)
    for a, b in itertools.combinations(axes, 2):
        cands.append(intersection(a, b))
    if len(axes) == 1:
        for ref in ((1, 0, 0), (0, 1, 0), (0, 0, 1)):
            line = ProjLine(ref)
            if line != axes[0]:
                cands.append(intersection(axes[0], line))
    if g.order == 1:
        cands = [ProjPoint((1, 0, 0)), ProjPoint((0, 1, 0)), ProjPoint((0, 0, 1))]
    fixed: list[ProjPoint] = []
    for p in cands:
        if p not in fixed and all(x(p) == p for x in g.generators):
            fixed.append(p)
    for tri in itertools.combinations(fixed, 3):
        if _det([[tri[j][i] for j in range(3)] for i in range(3)]):
            return tri
    return None


def normalizes(t: ProjTransform, g: FiniteSubgroup) -> bool:
    """True when t g t^-1 = g."""
    tinv = t.inverse()
    return all(compose(t, x, tinv) in g for x in g.generators)


# ----------------------------------------------------------------------
# named groups


def hessian_generators() -> dict[str, ProjTransform]:
    z3, z32 = zeta(3), zeta(3, 2)
    return {
        "S": diag(1, z3, z32),
        "T": monomial((1, 2, 0)),
        "R": monomial((0, 2, 1)),
        "V": ProjTransform([[1, 1, 1], [1, z3, z32], [1, z32, z3]]),
    }


def hessian(k: int) -> FiniteSubgroup:
    gens = hessian_generators()
    if k == 18:
        return closure([gens["S"], gens["T"], gens["R"]], cap=18)
    if k == 36:
        return closure([gens["S"], gens["T"], gens["R"], gens["V"]], cap=36)
    raise PreconditionViolated("k must be 18 or 36")


def diagonal_from_exponents(e: int, a: int, b: int) -> ProjTransform:
    """diag(zeta_e^a, zeta_e^b, 1)."""
    return diag(zeta(e, a), zeta(e, b), 1)


def diagonal_subgroups(e: int) -> list[tuple[tuple[int, int], ...]]:
    """All subgroups of (Z/e)^2, each as a sorted tuple of its elements.

    Every subgroup of a rank-two abelian group is generated by two elements,
    so enumerating generator pairs reaches them all.
    """
    elems = [(a, b) for a in range(e) for b in range(e)]
    found: set[tuple[tuple[int, int], ...]] = set()
    for g1 in elems:
        for g2 in elems:
            if g2 < g1:
                continue
            span = set()
            for i in range(e):
                for j in range(e):
                    span.add(((i * g1[0] + j * g2[0]) % e, (i * g1[1] + j * g2[1]) % e))
            found.add(tuple(sorted(span)))
    return sorted(found, key=lambda s: (len(s), s))


def is_homology_exponent(e: int, a: int, b: int) -> bool:
    """Whether diag(zeta_e^a, zeta_e^b, 1) is a homology (two equal entries, not all)."""
    a, b = a % e, b % e
    if a == 0 and b == 0:
        return False
    return a == b or a == 0 or b == 0


def subgroup_transforms(e: int, elems: Sequence[tuple[int, int]]) -> FiniteSubgroup:
    ts = tuple(sorted({diagonal_from_exponents(e, a, b) for a, b in elems}, key=ProjTransform.sort_key))
    gens = _minimal_generators(e, elems)
    return FiniteSubgroup(tuple(diagonal_from_exponents(e, a, b) for a, b in gens), ts)


def _minimal_generators(e: int, elems: Sequence[tuple[int, int]]) -> list[tuple[int, int]]:
    target = set(elems)
    gens: list[tuple[int, int]] = []
    span = {(0, 0)}
    for x in sorted(target, key=lambda v: (-_exp_order(e, v), v)):
        if x in span:
            continue
        gens.append(x)
        new = set(span)
        frontier = list(span)
        while frontier:
            nxt = []
            for s in frontier:
                for gg in gens:
                    y = ((s[0] + gg[0]) % e, (s[1] + gg[1]) % e)
                    if y not in new:
                        new.add(y)
                        nxt.append(y)
            frontier = nxt
        span = new
        if span == target:
            break
    return gens


def _exp_order(e: int, v: tuple[int, int]) -> int:
    return e // math.gcd(e, v[0], v[1])
