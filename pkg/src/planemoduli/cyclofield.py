"""Exact arithmetic in cyclotomic fields Q(zeta_N).

Elements are stored in the power basis 1, z, ..., z^(phi(N)-1) of
Q[x]/Phi_N(x), with z = exp(2*pi*i/N).  Internally a value is an integer
coefficient vector together with one positive common denominator, which keeps
all arithmetic in Python integers.

Conductors congruent to 2 mod 4 never appear in stored values, since
Q(zeta_2m) = Q(zeta_m) for odd m.  Mixed-conductor operations are carried out
in Q(zeta_lcm) and the result is pushed down to the smallest cyclotomic
subfield containing it.  Same-conductor operations only collapse to Q when the
result is rational; :meth:`CycloNum.minimal` gives the canonical form and is
what hashing and serialization use.
"""

from __future__ import annotations

import cmath
import math
from fractions import Fraction
from functools import lru_cache
from numbers import Rational

from .errors import DivisionByZero

__all__ = [
    "CycloNum",
    "cyclo_root_of_unity",
    "cyclo_arith",
    "conjugate",
    "as_root_of_unity",
    "cyclotomic_poly",
    "euler_phi",
    "sqrt_rational",
    "radical",
    "zeta",
    "ZERO",
    "ONE",
]


def _lcm(a: int, b: int) -> int:
    return a // math.gcd(a, b) * b


def canonical_conductor(n: int) -> int:
    return n // 2 if n % 4 == 2 else n


def _prime_factors(n: int) -> list[int]:
    out = []
    p = 2
    while p * p <= n:
        if n % p == 0:
            out.append(p)
            while n % p == 0:
                n //= p
        p += 1
    if n > 1:
        out.append(n)
    return out


def euler_phi(n: int) -> int:
    result = n
    for p in _prime_factors(n):
        result -= result // p
    return result


def _exact_divide(a: list[int], b: tuple[int, ...]) -> list[int]:
    """Divide integer polynomial ``a`` by monic ``b`` (coefficients low to high)."""
    a = list(a)
    db = len(b) - 1
    q = [0] * (len(a) - db)
    for k in range(len(a) - 1, db - 1, -1):
        c = a[k]
        if c:
            q[k - db] = c
            base = k - db
            for t in range(db + 1):
                a[base + t] -= c * b[t]
    if any(a[:db]):
        raise ArithmeticError("inexact polynomial division")
    return q


@lru_cache(maxsize=None)
def cyclotomic_poly(n: int) -> tuple[int, ...]:
    """Coefficients (low to high) of the n-th cyclotomic polynomial."""
    if n < 1:
        raise ValueError("n must be positive")
    num = [-1] + [0] * (n - 1) + [1]
    for d in range(1, n):
        if n % d == 0:
            num = _exact_divide(num, cyclotomic_poly(d))
    return tuple(num)


@lru_cache(maxsize=None)
def _powers(n: int) -> tuple[tuple[int, ...], ...]:
    """Row k is z^k reduced modulo Phi_n, for 0 <= k < n."""
    P = cyclotomic_poly(n)
    phi = len(P) - 1
    v = [1] + [0] * (phi - 1)
    table = []
    for _ in range(n):
        table.append(tuple(v))
        carry = v[-1]
        v = [0] + v[:-1]
        if carry:
            for t in range(phi):
                v[t] -= carry * P[t]
    return tuple(table)


@lru_cache(maxsize=None)
def _root_lookup(n: int) -> dict[tuple[int, ...], Fraction]:
    """Map the coefficient vector of each root of unity in Q(zeta_n) to its angle.

    The angle r in [0, 1) means the value exp(2*pi*i*r).
    """
    out: dict[tuple[int, ...], Fraction] = {}
    for k, row in enumerate(_powers(n)):
        out.setdefault(row, Fraction(k, n))
    for k, row in enumerate(_powers(n)):
        neg = tuple(-c for c in row)
        out.setdefault(neg, (Fraction(k, n) + Fraction(1, 2)) % 1)
    return out


def _reduce(a: list[int], n: int) -> list[int]:
    P = cyclotomic_poly(n)
    phi = len(P) - 1
    for k in range(len(a) - 1, phi - 1, -1):
        c = a[k]
        if c:
            base = k - phi
            for t in range(phi):
                a[base + t] -= c * P[t]
    if len(a) < phi:
        a = a + [0] * (phi - len(a))
    return a[:phi]


def _lift(n_from: int, nums: tuple[int, ...], n_to: int) -> list[int]:
    if n_from == n_to:
        return list(nums)
    step = n_to // n_from
    table = _powers(n_to)
    out = [0] * len(table[0])
    for j, c in enumerate(nums):
        if c:
            row = table[(j * step) % n_to]
            for t, r in enumerate(row):
                if r:
                    out[t] += c * r
    return out


def _frac_rank_rows(matrix: list[list[int]], want: int) -> list[int]:
    """Indices of ``want`` linearly independent rows of an integer matrix."""
    chosen: list[int] = []
    basis: list[tuple[int, list[Fraction]]] = []
    for i, row in enumerate(matrix):
        v = [Fraction(x) for x in row]
        for col, b in basis:
            if v[col]:
                f = v[col] / b[col]
                v = [x - f * y for x, y in zip(v, b)]
        piv = next((c for c, x in enumerate(v) if x), None)
        if piv is not None:
            basis.append((piv, v))
            chosen.append(i)
            if len(chosen) == want:
                break
    return chosen


def _frac_inverse(m: list[list[Fraction]]) -> list[list[Fraction]]:
    size = len(m)
    a = [list(row) + [Fraction(int(i == j)) for j in range(size)] for i, row in enumerate(m)]
    for col in range(size):
        piv = next(r for r in range(col, size) if a[r][col])
        a[col], a[piv] = a[piv], a[col]
        inv = 1 / a[col][col]
        a[col] = [x * inv for x in a[col]]
        for r in range(size):
            if r != col and a[r][col]:
                f = a[r][col]
                a[r] = [x - f * y for x, y in zip(a[r], a[col])]
    return [row[size:] for row in a]


@lru_cache(maxsize=None)
def _projector(n: int, m: int):
    """Data to test membership of Q(zeta_n) values in the subfield Q(zeta_m)."""
    step = n // m
    table = _powers(n)
    phi_m = euler_phi(m)
    E = [[table[(j * step) % n][t] for j in range(phi_m)] for t in range(len(table[0]))]
    rows = _frac_rank_rows(E, phi_m)
    inv = _frac_inverse([[Fraction(E[r][j]) for j in range(phi_m)] for r in rows])
    D = 1
    for row in inv:
        for x in row:
            D = _lcm(D, x.denominator)
    inv_int = tuple(tuple(int(x * D) for x in row) for row in inv)
    return tuple(rows), inv_int, D, tuple(tuple(r) for r in E)


def _normalize(nums: list[int], den: int) -> tuple[tuple[int, ...], int]:
    g = den
    for c in nums:
        if c:
            g = math.gcd(g, c)
            if g == 1:
                break
    if not any(nums):
        return tuple(0 for _ in nums), 1
    if den < 0:
        g = -g
    if g != 1:
        nums = [c // g for c in nums]
        den //= g
    return tuple(nums), den


def _fpoly_trim(p: list[Fraction]) -> list[Fraction]:
    while p and not p[-1]:
        p.pop()
    return p


def _fpoly_divmod(a: list[Fraction], b: list[Fraction]):
    a = list(a)
    q = [Fraction(0)] * max(len(a) - len(b) + 1, 1)
    lead = b[-1]
    while len(a) >= len(b) and a:
        c = a[-1] / lead
        shift = len(a) - len(b)
        q[shift] = c
        for t, y in enumerate(b):
            a[shift + t] -= c * y
        _fpoly_trim(a)
    return _fpoly_trim(q), a


def _fpoly_mul(a: list[Fraction], b: list[Fraction]) -> list[Fraction]:
    if not a or not b:
        return []
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return _fpoly_trim(out)


def _fpoly_sub(a: list[Fraction], b: list[Fraction]) -> list[Fraction]:
    out = [Fraction(0)] * max(len(a), len(b))
    for i, x in enumerate(a):
        out[i] += x
    for i, y in enumerate(b):
        out[i] -= y
    return _fpoly_trim(out)


class CycloNum:
    """An exact element of a cyclotomic field.

    ``CycloNum(N, coeffs)`` is the value sum(coeffs[k] * zeta_N**k); the
    coefficient list may be of any length and is reduced on construction.
    Plain ints and Fractions mix freely with CycloNum in arithmetic.
    """

    __slots__ = ("_n", "_num", "_den", "_min")

    def __init__(self, conductor: int, coeffs=(0,)):
        if conductor < 1:
            raise ValueError("conductor must be positive")
        fr = [Fraction(c) for c in coeffs]
        den = 1
        for c in fr:
            den = _lcm(den, c.denominator)
        ints = [int(c * den) for c in fr]
        n = canonical_conductor(conductor)
        if n == conductor:
            table = _powers(n)
            acc = [0] * len(table[0])
            for k, c in enumerate(ints):
                if c:
                    for t, r in enumerate(table[k % n]):
                        if r:
                            acc[t] += c * r
        else:
            # zeta_{2m} = -zeta_m^((m+1)/2) for odd m
            half = (n + 1) // 2
            table = _powers(n)
            acc = [0] * len(table[0])
            for k, c in enumerate(ints):
                if c:
                    sign = -1 if k % 2 else 1
                    for t, r in enumerate(table[(k * half) % n]):
                        if r:
                            acc[t] += sign * c * r
        nums, den = _normalize(acc, den)
        self._set(n, nums, den)
        self._min = None
        self._shrink()

    def _set(self, n, nums, den):
        if n > 1 and not any(nums[1:]):
            n, nums = 1, nums[:1]
        self._n = n
        self._num = nums
        self._den = den

    @classmethod
    def _make(cls, n: int, nums, den: int = 1) -> CycloNum:
        obj = object.__new__(cls)
        nums, den = _normalize(list(nums), den)
        obj._set(n, nums, den)
        obj._min = None
        return obj

    @classmethod
    def from_rational(cls, q) -> CycloNum:
        q = Fraction(q)
        return cls._make(1, (q.numerator,), q.denominator)

    @classmethod
    def root_of_unity(cls, n: int, k: int = 1) -> CycloNum:
        coeffs = [0] * ((k % n) + 1)
        coeffs[k % n] = 1
        return cls(n, coeffs)

    # ------------------------------------------------------------------
    # accessors

    @property
    def conductor(self) -> int:
        return self._n

    @property
    def coeffs(self) -> tuple[Fraction, ...]:
        return tuple(Fraction(c, self._den) for c in self._num)

    def is_zero(self) -> bool:
        return not any(self._num)

    def __bool__(self) -> bool:
        return any(self._num)

    def is_rational(self) -> bool:
        return self.minimal()._n == 1

    def to_fraction(self) -> Fraction:
        m = self.minimal()
        if m._n != 1:
            raise ValueError(f"{self!r} is not rational")
        return Fraction(m._num[0], m._den)

    def is_real(self) -> bool:
        return self.conjugate() == self

    def to_complex(self) -> complex:
        n = self._n
        z = 0j
        for k, c in enumerate(self._num):
            if c:
                z += c * cmath.exp(2j * math.pi * k / n)
        return z / self._den

    # ------------------------------------------------------------------
    # conductor handling

    def lift(self, n: int) -> CycloNum:
        """The same value, represented in Q(zeta_n); the conductor must divide n."""
        n = canonical_conductor(n)
        if n % self._n:
            raise ValueError(f"conductor {self._n} does not divide {n}")
        obj = object.__new__(CycloNum)
        obj._n = n
        obj._num = tuple(_lift(self._n, self._num, n))
        obj._den = self._den
        obj._min = None
        return obj

    def _shrink(self) -> None:
        n, nums, den = self._n, self._num, self._den
        changed = True
        while changed and n > 1:
            changed = False
            for q in _prime_factors(n):
                m = canonical_conductor(n // q)
                rows, inv, D, E = _projector(n, m)
                c = [sum(row[i] * nums[r] for i, r in enumerate(rows)) for row in inv]
                if all(sum(Et[j] * c[j] for j in range(len(c))) == D * nums[t] for t, Et in enumerate(E)):
                    nums, den = _normalize(c, D * den)
                    n = m
                    changed = True
                    break
        self._set(n, nums, den)

    def minimal(self) -> CycloNum:
        """Canonical representative in the smallest cyclotomic field containing the value."""
        if self._min is None:
            if self._n == 1:
                self._min = self
            else:
                obj = CycloNum._make(self._n, self._num, self._den)
                obj._shrink()
                obj._min = obj
                self._min = obj
        return self._min

    # ------------------------------------------------------------------
    # arithmetic

    @staticmethod
    def _coerce(x) -> CycloNum:
        if isinstance(x, CycloNum):
            return x
        if isinstance(x, (int, Rational)):
            return CycloNum.from_rational(x)
        return NotImplemented

    def _common(self, other: CycloNum):
        if self._n == other._n:
            return self._n, self._num, other._num, False
        n = _lcm(self._n, other._n)
        return n, _lift(self._n, self._num, n), _lift(other._n, other._num, n), True

    def _finish(self, n, nums, den, mixed) -> CycloNum:
        out = CycloNum._make(n, nums, den)
        if mixed:
            out._shrink()
        return out

    def __add__(self, other):
        other = CycloNum._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        n, a, b, mixed = self._common(other)
        da, db = self._den, other._den
        g = math.gcd(da, db)
        fa, fb = db // g, da // g
        nums = [x * fa + y * fb for x, y in zip(a, b)]
        return self._finish(n, nums, da * fa, mixed)

    __radd__ = __add__

    def __neg__(self):
        return CycloNum._make(self._n, [-c for c in self._num], self._den)

    def __sub__(self, other):
        other = CycloNum._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = CycloNum._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        other = CycloNum._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if other._n == 1:
            c = other._num[0]
            return CycloNum._make(self._n, [x * c for x in self._num], self._den * other._den)
        if self._n == 1:
            c = self._num[0]
            return CycloNum._make(other._n, [x * c for x in other._num], self._den * other._den)
        n, a, b, mixed = self._common(other)
        prod = [0] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    if y:
                        prod[i + j] += x * y
        return self._finish(n, _reduce(prod, n), self._den * other._den, mixed)

    __rmul__ = __mul__

    def inverse(self) -> CycloNum:
        if not self:
            raise DivisionByZero("division by zero in cyclotomic field")
        n = self._n
        nz = [k for k, c in enumerate(self._num) if c]
        if len(nz) == 1:
            k = nz[0]
            c = self._num[k]
            row = _powers(n)[(-k) % n]
            sign = -1 if c < 0 else 1
            return CycloNum._make(n, [sign * r * self._den for r in row], abs(c))
        P = [Fraction(c) for c in cyclotomic_poly(n)]
        a = _fpoly_trim([Fraction(c) for c in self._num])
        r0, r1 = P, a
        s0, s1 = [], [Fraction(1)]
        while len(r1) > 1:
            q, r = _fpoly_divmod(r0, r1)
            r0, r1 = r1, r
            s0, s1 = s1, _fpoly_sub(s0, _fpoly_mul(q, s1))
        c = r1[0]
        inv = [x / c * self._den for x in s1]
        return CycloNum(n, inv)

    def __truediv__(self, other):
        other = CycloNum._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if other._n == 1:
            c = other._num[0]
            if not c:
                raise DivisionByZero("division by zero in cyclotomic field")
            sign = -1 if c < 0 else 1
            return CycloNum._make(self._n, [sign * x * other._den for x in self._num], self._den * abs(c))
        return self * other.inverse()

    def __rtruediv__(self, other):
        other = CycloNum._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other * self.inverse()

    def __pow__(self, k: int):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return self.inverse() ** (-k)
        result = ONE
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    # ------------------------------------------------------------------
    # Galois action

    def galois(self, a: int) -> CycloNum:
        """Image under the automorphism zeta_N -> zeta_N**a (gcd(a, N) = 1)."""
        n = self._n
        if math.gcd(a, n) != 1:
            raise ValueError("exponent must be coprime to the conductor")
        table = _powers(n)
        out = [0] * len(table[0])
        for k, c in enumerate(self._num):
            if c:
                for t, r in enumerate(table[(a * k) % n]):
                    if r:
                        out[t] += c * r
        return CycloNum._make(n, out, self._den)

    def conjugate(self) -> CycloNum:
        return self.galois(-1)

    def as_root_of_unity(self) -> tuple[int, int] | None:
        m = self.minimal()
        if m._den != 1:
            return None
        r = _root_lookup(m._n).get(m._num)
        if r is None:
            return None
        return r.denominator, r.numerator

    # ------------------------------------------------------------------
    # comparison, hashing, display

    def __eq__(self, other):
        other = CycloNum._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if self._n == other._n:
            return self._num == other._num and self._den == other._den
        n = _lcm(self._n, other._n)
        a = _lift(self._n, self._num, n)
        b = _lift(other._n, other._num, n)
        return all(x * other._den == y * self._den for x, y in zip(a, b))

    def __hash__(self):
        m = self.minimal()
        if m._n == 1:
            return hash(Fraction(m._num[0], m._den))
        return hash((m._n, m._num, m._den))

    def sort_key(self) -> tuple:
        m = self.minimal()
        return (m._n, m._num, m._den)

    def __repr__(self):
        return f"CycloNum({self._n}, {[str(c) for c in self.coeffs]})"

    def __str__(self):
        if self._n == 1:
            return str(Fraction(self._num[0], self._den))
        parts = []
        for k, c in enumerate(self.coeffs):
            if not c:
                continue
            z = "" if k == 0 else (f"z{self._n}" if k == 1 else f"z{self._n}^{k}")
            if not z:
                parts.append(str(c))
            elif c == 1:
                parts.append(z)
            elif c == -1:
                parts.append("-" + z)
            else:
                parts.append(f"({c})*{z}")
        return " + ".join(parts).replace("+ -", "- ") or "0"

    def to_json(self) -> dict:
        m = self.minimal()
        return {
            "conductor": m._n,
            "coeffs": [[str(c.numerator), str(c.denominator)] for c in m.coeffs],
        }

    @classmethod
    def from_json(cls, obj: dict) -> CycloNum:
        coeffs = [Fraction(int(a), int(b)) for a, b in obj["coeffs"]]
        return cls(int(obj["conductor"]), coeffs)


ZERO = CycloNum._make(1, (0,), 1)
ONE = CycloNum._make(1, (1,), 1)


def cyclo_root_of_unity(n: int, k: int) -> CycloNum:
    if n < 1:
        raise ValueError("N must be positive")
    return CycloNum.root_of_unity(n, k)


def cyclo_arith(op: str, a, b) -> CycloNum:
    a, b = CycloNum._coerce(a), CycloNum._coerce(b)
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "div":
        return a / b
    raise ValueError(f"unknown operation {op!r}")


def conjugate(a) -> CycloNum:
    return CycloNum._coerce(a).conjugate()


def as_root_of_unity(a) -> tuple[int, int] | None:
    return CycloNum._coerce(a).as_root_of_unity()


def zeta(n: int, k: int = 1) -> CycloNum:
    return CycloNum.root_of_unity(n, k)


# ----------------------------------------------------------------------
# radicals that stay inside cyclotomic fields


def _iroot(a: int, n: int) -> int | None:
    """Exact integer n-th root of a >= 0, or None."""
    if a < 2:
        return a
    x = int(round(a ** (1.0 / n))) if a.bit_length() < 1000 else 1 << (a.bit_length() // n)
    # integer Newton iteration from an overestimate
    x = max(x, 1) + 1
    while True:
        y = ((n - 1) * x + a // x ** (n - 1)) // n
        if y >= x:
            break
        x = y
    for c in (x - 1, x, x + 1):
        if c >= 0 and c**n == a:
            return c
    return None


def _legendre(a: int, p: int) -> int:
    t = pow(a, (p - 1) // 2, p)
    return -1 if t == p - 1 else t


@lru_cache(maxsize=None)
def _sqrt_prime(p: int) -> CycloNum:
    if p == 2:
        return zeta(8) + zeta(8, 7)
    g = CycloNum(p, [0] + [_legendre(a, p) for a in range(1, p)])
    # quadratic Gauss sum: g = sqrt(p) if p = 1 mod 4, i*sqrt(p) if p = 3 mod 4
    return g if p % 4 == 1 else -zeta(4) * g


def sqrt_rational(q) -> CycloNum:
    """The principal square root of a rational number, as a cyclotomic number."""
    q = Fraction(q)
    if q < 0:
        return zeta(4) * sqrt_rational(-q)
    if q == 0:
        return ZERO
    m = q.numerator * q.denominator
    square, rest = 1, 1
    for p in _prime_factors(m):
        e = 0
        while m % p == 0:
            m //= p
            e += 1
        square *= p ** (e // 2)
        if e % 2:
            rest *= p
    result = CycloNum.from_rational(Fraction(square, q.denominator))
    for p in _prime_factors(rest):
        result = result * _sqrt_prime(p)
    return result


def radical(value: CycloNum, n: int) -> CycloNum | None:
    """Some s with s**n == value, when value is (rational) x (root of unity).

    Returns None when no such cyclotomic root can be produced this way.
    """
    value = CycloNum._coerce(value)
    if not value:
        return ZERO
    ratio = value / value.conjugate()
    ru = ratio.as_root_of_unity()
    if ru is None:
        return None
    order, k = ru
    unit = zeta(2 * order, k)  # unit**2 == ratio
    q = value / unit
    if not q.is_rational():
        return None
    qf = q.to_fraction()
    if qf < 0:
        qf = -qf
        unit = -unit
    a, b = qf.numerator, qf.denominator
    ra, rb = _iroot(a, n), _iroot(b, n)
    if ra is not None and rb is not None:
        mag = CycloNum.from_rational(Fraction(ra, rb))
    else:
        sa, sb = _iroot(a * a, n), _iroot(b * b, n)
        if sa is None or sb is None:
            return None
        mag = sqrt_rational(Fraction(sa, sb))
    ru_unit = unit.as_root_of_unity()
    uo, uk = ru_unit
    root_unit = zeta(uo * n, uk)
    s = mag * root_unit
    if s**n != value:
        return None
    return s
