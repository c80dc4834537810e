"""Homogeneous forms over cyclotomic fields and plane-curve checks.

Forms are sparse maps from exponent tuples to nonzero :class:`CycloNum`
coefficients.  The action of a transformation on a ternary form is
substitution, ``act(t, F)(v) = F(M v)``, so that

    act(compose(t1, t2), F) == act(t2, act(t1, F)).

A transform ``phi`` is an isomorphism from the conjugate curve onto the curve
of ``F`` exactly when ``act(phi, F)`` is proportional to ``galois_form(F)``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable, Mapping, Sequence

import numpy as np

from .cyclofield import ONE, ZERO, CycloNum, _lcm, _prime_factors
from .errors import BadDegree, NoSuitablePrime, PreconditionViolated
from .projgeom import ProjPoint, ProjTransform, is_monomial

__all__ = [
    "TernaryForm",
    "BinaryForm",
    "SmoothnessReport",
    "act",
    "proportional",
    "galois_form",
    "squarefree_binary",
    "distinct_root_count",
    "smoothness_check",
    "is_automorphism",
    "is_isomorphism_from_conjugate",
    "monomials",
    "X",
    "Y",
    "Z",
]


def _c(x) -> CycloNum:
    return x if isinstance(x, CycloNum) else CycloNum.from_rational(x)


@lru_cache(maxsize=None)
def monomials(d: int, nvars: int = 3) -> tuple[tuple[int, ...], ...]:
    """Exponent tuples of degree d in graded-lex order with X > Y > Z."""
    if nvars == 1:
        return ((d,),)
    out = []
    for first in range(d, -1, -1):
        for rest in monomials(d - first, nvars - 1):
            out.append((first,) + rest)
    return tuple(out)


class _Form:
    NVARS = 3
    VARS = "XYZ"
    __slots__ = ("degree", "_coeffs")

    def __init__(self, degree: int, coeffs: Mapping[tuple[int, ...], object] | None = None):
        if degree < 0:
            raise BadDegree("degree must be non-negative")
        self.degree = degree
        clean = {}
        for exp, c in (coeffs or {}).items():
            exp = tuple(int(e) for e in exp)
            if len(exp) != self.NVARS or sum(exp) != degree or min(exp) < 0:
                raise PreconditionViolated(f"exponent {exp} does not match degree {degree}")
            c = _c(c)
            if c:
                clean[exp] = clean.get(exp, ZERO) + c
        self._coeffs = {e: c for e, c in clean.items() if c}

    @classmethod
    def _raw(cls, degree, coeffs):
        obj = object.__new__(cls)
        obj.degree = degree
        obj._coeffs = {e: c for e, c in coeffs.items() if c}
        return obj

    @classmethod
    def var(cls, i: int):
        exp = [0] * cls.NVARS
        exp[i] = 1
        return cls._raw(1, {tuple(exp): ONE})

    @classmethod
    def constant(cls, c, degree: int = 0):
        if degree:
            raise PreconditionViolated("constants have degree 0")
        return cls._raw(0, {(0,) * cls.NVARS: _c(c)})

    @property
    def coeffs(self) -> dict[tuple[int, ...], CycloNum]:
        return dict(self._coeffs)

    def coefficient(self, exp: Sequence[int]) -> CycloNum:
        return self._coeffs.get(tuple(exp), ZERO)

    def support(self) -> frozenset:
        return frozenset(self._coeffs)

    def terms(self) -> list[tuple[tuple[int, ...], CycloNum]]:
        return sorted(self._coeffs.items(), key=lambda kv: kv[0], reverse=True)

    def is_zero(self) -> bool:
        return not self._coeffs

    def __bool__(self):
        return bool(self._coeffs)

    def __eq__(self, other):
        if isinstance(other, (int, CycloNum)) and not isinstance(other, bool):
            other = type(self).constant(other) if other else type(self)._raw(self.degree, {})
        if type(other) is not type(self):
            return NotImplemented
        if not self._coeffs and not other._coeffs:
            return True
        return self.degree == other.degree and self._coeffs == other._coeffs

    def __hash__(self):
        return hash((self.degree, frozenset(self._coeffs.items())))

    # arithmetic ------------------------------------------------------

    def _lift_scalar(self, other):
        if isinstance(other, type(self)):
            return other
        if isinstance(other, (int, CycloNum)) or hasattr(other, "denominator"):
            return type(self).constant(other)
        return None

    def __add__(self, other):
        o = self._lift_scalar(other)
        if o is None:
            return NotImplemented
        if not o._coeffs:
            return self
        if not self._coeffs:
            return o
        if o.degree != self.degree:
            raise PreconditionViolated("cannot add forms of different degrees")
        out = dict(self._coeffs)
        for e, c in o._coeffs.items():
            out[e] = out.get(e, ZERO) + c
        return type(self)._raw(self.degree, out)

    __radd__ = __add__

    def __neg__(self):
        return type(self)._raw(self.degree, {e: -c for e, c in self._coeffs.items()})

    def __sub__(self, other):
        o = self._lift_scalar(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._lift_scalar(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def scale(self, c) -> _Form:
        c = _c(c)
        return type(self)._raw(self.degree, {e: x * c for e, x in self._coeffs.items()})

    def __mul__(self, other):
        if isinstance(other, type(self)):
            out: dict = {}
            for e1, c1 in self._coeffs.items():
                for e2, c2 in other._coeffs.items():
                    e = tuple(a + b for a, b in zip(e1, e2))
                    out[e] = out.get(e, ZERO) + c1 * c2
            return type(self)._raw(self.degree + other.degree, out)
        if isinstance(other, (int, CycloNum)) or hasattr(other, "denominator"):
            return self.scale(other)
        return NotImplemented

    __rmul__ = __mul__

    def __pow__(self, k: int):
        result = type(self).constant(1)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    # calculus and evaluation ----------------------------------------

    def partial(self, i: int):
        out = {}
        for e, c in self._coeffs.items():
            if e[i]:
                ne = list(e)
                ne[i] -= 1
                out[tuple(ne)] = c * e[i]
        return type(self)._raw(max(self.degree - 1, 0), out)

    def evaluate(self, point: Sequence) -> CycloNum:
        vals = [_c(v) for v in point]
        total = ZERO
        for e, c in self._coeffs.items():
            term = c
            for v, k in zip(vals, e):
                if k:
                    term = term * v**k
            total = total + term
        return total

    def galois(self, a: int = -1):
        return type(self)._raw(self.degree, {e: c.galois(a) for e, c in self._coeffs.items()})

    def min_exponent(self, i: int) -> int:
        return min((e[i] for e in self._coeffs), default=0)

    def divide_monomial(self, exp: Sequence[int]):
        """Exact division by the monomial with exponent ``exp``, or None."""
        exp = tuple(exp)
        out = {}
        for e, c in self._coeffs.items():
            ne = tuple(a - b for a, b in zip(e, exp))
            if min(ne) < 0:
                return None
            out[ne] = c
        return type(self)._raw(self.degree - sum(exp), out)

    def conductor(self) -> int:
        n = 1
        for c in self._coeffs.values():
            n = _lcm(n, c.minimal().conductor)
        return n

    def is_real(self) -> bool:
        return self.galois() == self

    def __repr__(self):
        return f"{type(self).__name__}({self})"

    def __str__(self):
        if not self._coeffs:
            return "0"
        parts = []
        for e, c in self.terms():
            mono = "*".join(
                (v if k == 1 else f"{v}^{k}") for v, k in zip(self.VARS, e) if k
            )
            cs = str(c)
            if not mono:
                parts.append(cs)
            elif c == ONE:
                parts.append(mono)
            elif c == -ONE:
                parts.append("-" + mono)
            else:
                parts.append(f"({cs})*{mono}")
        return " + ".join(parts)

    def to_json(self) -> dict:
        return {
            "degree": self.degree,
            "terms": [{"exp": list(e), "coeff": c.to_json()} for e, c in self.terms()],
        }

    @classmethod
    def from_json(cls, obj: dict):
        coeffs = {tuple(t["exp"]): CycloNum.from_json(t["coeff"]) for t in obj["terms"]}
        return cls(int(obj["degree"]), coeffs)


class TernaryForm(_Form):
    """Homogeneous polynomial in X, Y, Z."""

    NVARS = 3
    VARS = "XYZ"
    __slots__ = ()


class BinaryForm(_Form):
    """Homogeneous polynomial in X, Y."""

    NVARS = 2
    VARS = "XY"
    __slots__ = ()

    def to_ternary(self) -> TernaryForm:
        return TernaryForm._raw(self.degree, {(i, j, 0): c for (i, j), c in self._coeffs.items()})

    @classmethod
    def from_ternary(cls, f: TernaryForm) -> BinaryForm:
        if any(e[2] for e in f.support()):
            raise PreconditionViolated("form involves Z")
        return cls._raw(f.degree, {(i, j): c for (i, j, _), c in f.coeffs.items()})

    def substitute(self, m: Sequence[Sequence]) -> BinaryForm:
        """b(m00 X + m01 Y, m10 X + m11 Y)."""
        lx = BinaryForm._raw(1, {(1, 0): _c(m[0][0]), (0, 1): _c(m[0][1])})
        ly = BinaryForm._raw(1, {(1, 0): _c(m[1][0]), (0, 1): _c(m[1][1])})
        return _substitute(self, [lx, ly])

    def swap(self) -> BinaryForm:
        return BinaryForm._raw(self.degree, {(j, i): c for (i, j), c in self._coeffs.items()})

    def dehomogenize(self) -> list[CycloNum]:
        """Coefficients (low to high) of b(x, 1)."""
        deg = max((i for i, _ in self._coeffs), default=-1)
        out = [ZERO] * (deg + 1)
        for (i, _), c in self._coeffs.items():
            out[i] = c
        return out

    @classmethod
    def from_roots(cls, roots: Iterable, leading=1) -> BinaryForm:
        """prod (X - r Y) over the roots, times ``leading``."""
        out = cls.constant(leading)
        for r in roots:
            out = out * cls._raw(1, {(1, 0): ONE, (0, 1): -_c(r)})
        return out


X = TernaryForm.var(0)
Y = TernaryForm.var(1)
Z = TernaryForm.var(2)


def _substitute(f: _Form, images: Sequence[_Form]) -> _Form:
    cls = type(images[0])
    powers: list[dict[int, _Form]] = [{0: cls.constant(1), 1: img} for img in images]

    def pw(i: int, k: int):
        cache = powers[i]
        if k not in cache:
            half = pw(i, k // 2)
            cache[k] = half * half if k % 2 == 0 else half * half * images[i]
        return cache[k]

    deg = f.degree * images[0].degree
    acc: dict = {}
    for e, c in f.coeffs.items():
        term = cls.constant(c)
        for i, k in enumerate(e):
            if k:
                term = term * pw(i, k)
        for ee, cc in term.coeffs.items():
            acc[ee] = acc.get(ee, ZERO) + cc
    return cls._raw(deg, acc)


def act(t: ProjTransform, f: TernaryForm) -> TernaryForm:
    """The form F(M v) for the matrix M of t."""
    m = t.matrix
    if is_monomial(t):
        perm = [next(j for j in range(3) if m[i][j]) for i in range(3)]
        scal = [m[i][perm[i]] for i in range(3)]
        out = {}
        for e, c in f.coeffs.items():
            ne = [0, 0, 0]
            coef = c
            for i, k in enumerate(e):
                if k:
                    ne[perm[i]] += k
                    if scal[i] != ONE:
                        coef = coef * scal[i] ** k
            out[tuple(ne)] = coef
        return TernaryForm._raw(f.degree, out)
    images = [TernaryForm._raw(1, {(1, 0, 0): m[i][0], (0, 1, 0): m[i][1], (0, 0, 1): m[i][2]}) for i in range(3)]
    return _substitute(f, images)


def proportional(f: _Form, g: _Form) -> CycloNum | None:
    """The scalar c with f == c * g, if there is one (both forms nonzero)."""
    if not f or not g or f.support() != g.support():
        return None
    items = iter(f.coeffs.items())
    e0, c0 = next(items)
    ratio = c0 / g.coefficient(e0)
    for e, c in items:
        if c != ratio * g.coefficient(e):
            return None
    return ratio


def galois_form(f: _Form) -> _Form:
    """Coefficientwise complex conjugate."""
    return f.galois(-1)


def is_automorphism(t: ProjTransform, f: TernaryForm) -> bool:
    return proportional(act(t, f), f) is not None


def is_isomorphism_from_conjugate(phi: ProjTransform, f: TernaryForm) -> CycloNum | None:
    """The scalar lam with act(phi, F) == lam * conj(F), or None."""
    return proportional(act(phi, f), galois_form(f))


# ----------------------------------------------------------------------
# univariate polynomials over the cyclotomic field (lists, low to high)


def _utrim(p: list[CycloNum]) -> list[CycloNum]:
    while p and not p[-1]:
        p.pop()
    return p


def _umonic(p: list[CycloNum]) -> list[CycloNum]:
    inv = p[-1].inverse()
    return [c * inv for c in p]


def _umod(a: list[CycloNum], b: list[CycloNum]) -> list[CycloNum]:
    a = list(a)
    inv = b[-1].inverse()
    while len(a) >= len(b) and a:
        q = a[-1] * inv
        shift = len(a) - len(b)
        for i, c in enumerate(b):
            a[shift + i] = a[shift + i] - q * c
        _utrim(a)
    return a


def _ugcd(a: list[CycloNum], b: list[CycloNum]) -> list[CycloNum]:
    a, b = _utrim(list(a)), _utrim(list(b))
    while b:
        r = _umod(a, b)
        a, b = b, (_umonic(r) if r else [])
    return _umonic(a) if a else a


def _uderiv(p: list[CycloNum]) -> list[CycloNum]:
    return _utrim([c * i for i, c in enumerate(p)][1:])


def _infinity_multiplicity(b: BinaryForm) -> int:
    return b.min_exponent(1)


def squarefree_binary(b: BinaryForm) -> bool:
    """True when b has no repeated linear factor over C."""
    if not b:
        return False
    if _infinity_multiplicity(b) > 1:
        return False
    u = _utrim(b.dehomogenize())
    if len(u) <= 2:
        return True
    g = _ugcd(u, _uderiv(u))
    return len(g) == 1


def distinct_root_count(b: BinaryForm) -> int:
    """Number of distinct points of P^1 where b vanishes."""
    if not b:
        raise PreconditionViolated("zero form")
    u = _utrim(b.dehomogenize())
    at_inf = 1 if _infinity_multiplicity(b) else 0
    if len(u) <= 1:
        return at_inf
    g = _ugcd(u, _uderiv(u))
    return (len(u) - 1) - (len(g) - 1) + at_inf


# ----------------------------------------------------------------------
# smoothness


@dataclass(frozen=True)
class SmoothnessReport:
    """``verdict`` is "smooth", "singular" or "inconclusive"."""

    verdict: str
    method: str
    primes_used: tuple[int, ...] = ()
    witness: ProjPoint | None = None

    def to_json(self) -> dict:
        out: dict = {"verdict": self.verdict, "method": self.method, "primes_used": list(self.primes_used)}
        if self.witness is not None:
            out["witness"] = self.witness.to_json()
        return out


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    k = 3
    while k * k <= n:
        if n % k == 0:
            return False
        k += 2
    return True


def _element_of_order(L: int, p: int) -> int:
    qs = _prime_factors(L)
    for h in range(2, p):
        w = pow(h, (p - 1) // L, p)
        if all(pow(w, L // q, p) != 1 for q in qs):
            return w
    raise NoSuitablePrime(f"no element of order {L} modulo {p}")


def _reduce_coeff(c: CycloNum, L: int, w: int, p: int) -> int | None:
    m = c.minimal()
    den = m._den
    if den % p == 0:
        return None
    step = L // m.conductor
    val = 0
    for k, a in enumerate(m._num):
        if a:
            val += a * pow(w, k * step, p)
    return val * pow(den, -1, p) % p


def _rref_mod(a: np.ndarray, p: int) -> tuple[np.ndarray, list[int]]:
    a = a.copy() % p
    rows, cols = a.shape
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        if r >= rows:
            break
        nz = np.nonzero(a[r:, c])[0]
        if nz.size == 0:
            continue
        piv = r + int(nz[0])
        if piv != r:
            a[[r, piv]] = a[[piv, r]]
        inv = pow(int(a[r, c]), -1, p)
        a[r] = (a[r] * inv) % p
        col = a[:, c].copy()
        col[r] = 0
        mask = np.nonzero(col)[0]
        if mask.size:
            a[mask] = (a[mask] - np.outer(col[mask], a[r])) % p
        pivots.append(c)
        r += 1
    return a[: len(pivots)], pivots


def _macaulay_matrix(partials: Sequence[TernaryForm], d: int, L: int, w: int, p: int) -> np.ndarray | None:
    mult_deg = 2 * d - 4
    target = monomials(3 * d - 5)
    col = {e: i for i, e in enumerate(target)}
    mults = monomials(mult_deg)
    red = []
    for f in partials:
        terms = []
        for e, c in f.coeffs.items():
            v = _reduce_coeff(c, L, w, p)
            if v is None:
                return None
            if v:
                terms.append((e, v))
        red.append(terms)
    mat = np.zeros((3 * len(mults), len(target)), dtype=np.int64)
    r = 0
    for terms in red:
        for m in mults:
            for e, v in terms:
                mat[r, col[(e[0] + m[0], e[1] + m[1], e[2] + m[2])]] = v
            r += 1
    return mat


def _primes_for(L: int, f: TernaryForm, budget: int):
    k = 2
    found = 0
    while found < budget:
        p = k * L + 1
        k += 1
        if not _is_prime(p) or p <= 3 * f.degree:
            continue
        found += 1
        yield p


_REFERENCE_POINTS = (
    (1, 0, 0),
    (0, 1, 0),
    (0, 0, 1),
    (1, 1, 0),
    (1, 0, 1),
    (0, 1, 1),
    (1, 1, 1),
    (1, -1, 0),
    (1, 0, -1),
    (0, 1, -1),
)


def _is_singular_point(f: TernaryForm, grads: Sequence[TernaryForm], pt) -> bool:
    return not f.evaluate(pt) and all(not g.evaluate(pt) for g in grads)


def _rational_reconstruct(a: int, m: int):
    """Fraction r/s with r = a*s mod m and |r|, s <= sqrt(m/2), or None."""
    from fractions import Fraction

    bound = math.isqrt(m // 2)
    r0, r1 = m, a % m
    s0, s1 = 0, 1
    while r1 > bound:
        q = r0 // r1
        r0, r1 = r1, r0 - q * r1
        s0, s1 = s1, s0 - q * s1
    if s1 == 0 or abs(s1) > bound or math.gcd(r1, abs(s1)) != 1:
        return None
    return Fraction(r1, s1)


def _witness_from_kernels(f, grads, L, primes_data):
    """Recover a singular point from one-dimensional Macaulay kernels.

    For each prime and each embedding zeta_L -> w^a, the kernel vector is the
    evaluation of the degree-(3d-5) monomials at the reduction of a conjugate
    of the singular point.  Interpolating over the embeddings gives the
    power-basis coordinates modulo p; CRT and rational reconstruction lift them.
    """
    from .cyclofield import _powers, euler_phi

    phi = euler_phi(L)
    D = 3 * f.degree - 5
    mons = monomials(D)
    idx = {e: i for i, e in enumerate(mons)}
    units = [a for a in range(1, L + 1) if math.gcd(a, L) == 1] if L > 1 else [1]
    residues = []
    modulus = 1
    which_last = None
    for p, w in primes_data:
        per_embedding = []
        for a in units:
            wa = pow(w, a, p)
            mat = _macaulay_matrix(grads, f.degree, L, wa, p)
            if mat is None:
                return None
            rref, piv = _rref_mod(mat, p)
            ncols = mat.shape[1]
            if ncols - len(piv) != 1:
                return None
            free = next(c for c in range(ncols) if c not in set(piv))
            vec = np.zeros(ncols, dtype=np.int64)
            vec[free] = 1
            for i, c in enumerate(piv):
                vec[c] = (-rref[i, free]) % p
            # coordinates from the monomials X^D, X^(D-1)Y, ... relative to the last nonzero
            last = None
            for j in (2, 1, 0):
                e = [0, 0, 0]
                e[j] = D
                if vec[idx[tuple(e)]] % p:
                    last = j
                    break
            if last is None:
                return None
            if which_last is None:
                which_last = last
            elif which_last != last:
                return None
            coords = []
            base = [0, 0, 0]
            base[last] = D
            denom = int(vec[idx[tuple(base)]])
            dinv = pow(denom, -1, p)
            for j in range(3):
                e = [0, 0, 0]
                e[last] = D - 1
                e[j] += 1
                coords.append(int(vec[idx[tuple(e)]]) * dinv % p)
            per_embedding.append(coords)
        # solve V c = r for power-basis coefficients, V[a][k] = w^(a k)
        V = np.array([[pow(w, a * k, p) for k in range(phi)] for a in units], dtype=np.int64)
        sol = []
        for j in range(3):
            rhs = np.array([[pe[j]] for pe in per_embedding], dtype=np.int64)
            aug = np.concatenate([V, rhs], axis=1)
            rref, piv = _rref_mod(aug, p)
            if piv != list(range(phi)):
                return None
            sol.append([int(rref[k, phi]) for k in range(phi)])
        residues.append((p, sol))
        modulus *= p
        # attempt reconstruction after each new prime
        lifted = []
        ok = True
        for j in range(3):
            cs = []
            for k in range(phi):
                x, m = 0, 1
                for pp, s in residues:
                    # incremental CRT
                    t = ((s[j][k] - x) * pow(m, -1, pp)) % pp
                    x += m * t
                    m *= pp
                rr = _rational_reconstruct(x, m)
                if rr is None:
                    ok = False
                    break
                cs.append(rr)
            if not ok:
                break
            lifted.append(CycloNum(L, cs) if L > 1 else CycloNum.from_rational(cs[0]))
        if ok:
            pt = ProjPoint(lifted)
            if _is_singular_point(f, grads, tuple(pt)):
                return pt
    return None


def smoothness_check(f: TernaryForm, prime_budget: int = 8) -> SmoothnessReport:
    """Decide smoothness of the plane curve F = 0 without floating point.

    A smooth verdict is certified by a Macaulay matrix of the partial
    derivatives having full column rank modulo a prime p = 1 mod L, where
    zeta_L maps to an element of order L; full rank modulo p forces full
    rank in characteristic zero, hence no common zero of the partials.  A
    singular verdict always carries an exactly verified witness.
    """
    if f.degree < 2:
        raise BadDegree("smoothness needs degree >= 2")
    grads = [f.partial(i) for i in range(3)]
    for pt in _REFERENCE_POINTS:
        if _is_singular_point(f, grads, pt):
            return SmoothnessReport("singular", "partial_derivative_elimination", (), ProjPoint(pt))
    L = f.conductor()
    used: list[int] = []
    deficient: list[tuple[int, int]] = []
    for p in _primes_for(L, f, prime_budget):
        w = _element_of_order(L, p) if L > 1 else 1
        mat = _macaulay_matrix(grads, f.degree, L, w, p)
        if mat is None:
            continue
        used.append(p)
        _, piv = _rref_mod(mat, p)
        if len(piv) == mat.shape[1]:
            return SmoothnessReport("smooth", "modular_discriminant", tuple(used))
        deficient.append((p, w))
    if not used:
        raise NoSuitablePrime("every candidate prime divides a coefficient denominator")
    witness = _witness_from_kernels(f, grads, L, deficient)
    if witness is not None:
        return SmoothnessReport("singular", "partial_derivative_elimination", tuple(used), witness)
    return SmoothnessReport("inconclusive", "modular_discriminant", tuple(used))
