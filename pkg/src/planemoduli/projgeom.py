"""Points, lines and transformations of the projective plane over cyclotomic fields.

A :class:`ProjTransform` is an element of PGL_3, stored as a 3x3 matrix
scaled so that its first nonzero entry (row-major) is 1.  The matrix acts on
column vectors: the transform written ``[Y:Z:X]`` sends (x:y:z) to (y:z:x)
and has rows (0,1,0), (0,0,1), (1,0,0).  ``compose(a, b)`` is "a after b",
i.e. the matrix product a*b.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .cyclofield import ONE, ZERO, CycloNum, radical, zeta
from .errors import PreconditionViolated, UnsupportedEigenstructure

__all__ = [
    "ProjPoint",
    "ProjLine",
    "ProjTransform",
    "FixedLocus",
    "compose",
    "transform_order",
    "classify_element",
    "galois_transform",
    "is_diagonal",
    "identity",
    "diag",
    "monomial",
    "line_through",
    "intersection",
]


def _c(x) -> CycloNum:
    if isinstance(x, CycloNum):
        return x
    return CycloNum.from_rational(x)


def _scale_last(values: Sequence[CycloNum]) -> tuple[CycloNum, ...]:
    for v in reversed(values):
        if v:
            return tuple(x / v for x in values)
    raise PreconditionViolated("all coordinates are zero")


def _cross(u: Sequence[CycloNum], v: Sequence[CycloNum]) -> tuple[CycloNum, ...]:
    return (
        u[1] * v[2] - u[2] * v[1],
        u[2] * v[0] - u[0] * v[2],
        u[0] * v[1] - u[1] * v[0],
    )


class _Coords:
    __slots__ = ("_v",)

    def __init__(self, coords: Iterable):
        vals = [_c(x) for x in coords]
        if len(vals) != 3:
            raise PreconditionViolated("expected three coordinates")
        self._v = _scale_last(vals)

    def __getitem__(self, i: int) -> CycloNum:
        return self._v[i]

    def __iter__(self):
        return iter(self._v)

    def __eq__(self, other):
        return type(self) is type(other) and self._v == other._v

    def __hash__(self):
        return hash((type(self).__name__, self._v))

    def to_json(self) -> list:
        return [c.to_json() for c in self._v]

    @classmethod
    def from_json(cls, obj):
        return cls(CycloNum.from_json(c) for c in obj)

    def __repr__(self):
        return f"{type(self).__name__}({' : '.join(str(c) for c in self._v)})"


class ProjPoint(_Coords):
    """A point (x:y:z), scaled so the last nonzero coordinate is 1."""

    @property
    def coords(self) -> tuple[CycloNum, ...]:
        return self._v


class ProjLine(_Coords):
    """The line aX + bY + cZ = 0, scaled so the last nonzero coefficient is 1."""

    @property
    def coeffs(self) -> tuple[CycloNum, ...]:
        return self._v

    def contains(self, p: ProjPoint) -> bool:
        return not (self._v[0] * p[0] + self._v[1] * p[1] + self._v[2] * p[2])


def line_through(p: ProjPoint, q: ProjPoint) -> ProjLine:
    return ProjLine(_cross(tuple(p), tuple(q)))


def intersection(a: ProjLine, b: ProjLine) -> ProjPoint:
    return ProjPoint(_cross(tuple(a), tuple(b)))


# ----------------------------------------------------------------------
# raw 3x3 matrices (tuples of tuples of CycloNum)


def _matmul(a, b):
    return tuple(
        tuple(a[i][0] * b[0][j] + a[i][1] * b[1][j] + a[i][2] * b[2][j] for j in range(3))
        for i in range(3)
    )


def _det(m) -> CycloNum:
    return (
        m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
        - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
        + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
    )


def _rank(m) -> int:
    if not any(x for row in m for x in row):
        return 0
    if _det(m):
        return 3
    for r1 in range(3):
        for r2 in range(r1 + 1, 3):
            if any(_cross(m[r1], m[r2])):
                return 2
    return 1


def _is_scalar_matrix(m) -> bool:
    return all(not m[i][j] for i in range(3) for j in range(3) if i != j) and m[0][0] == m[1][1] == m[2][2]


class ProjTransform:
    """An element of PGL_3 with cyclotomic entries."""

    __slots__ = ("_rows", "_hash")

    def __init__(self, matrix: Iterable[Iterable]):
        rows = [[_c(x) for x in row] for row in matrix]
        if len(rows) != 3 or any(len(r) != 3 for r in rows):
            raise PreconditionViolated("expected a 3x3 matrix")
        if not _det(rows):
            raise PreconditionViolated("singular matrix")
        self._rows = self._normalize(rows)
        self._hash = None

    @staticmethod
    def _normalize(rows):
        lead = next(x for row in rows for x in row if x)
        if lead == ONE:
            return tuple(tuple(row) for row in rows)
        inv = lead.inverse()
        return tuple(tuple(x * inv for x in row) for row in rows)

    @classmethod
    def _trusted(cls, rows) -> ProjTransform:
        obj = object.__new__(cls)
        obj._rows = cls._normalize(rows)
        obj._hash = None
        return obj

    @property
    def matrix(self) -> tuple[tuple[CycloNum, ...], ...]:
        return self._rows

    def __eq__(self, other):
        return isinstance(other, ProjTransform) and self._rows == other._rows

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(self._rows)
        return self._hash

    def sort_key(self) -> tuple:
        return tuple(x.sort_key() for row in self._rows for x in row)

    def __matmul__(self, other: ProjTransform) -> ProjTransform:
        return compose(self, other)

    def __call__(self, p: ProjPoint) -> ProjPoint:
        return ProjPoint(sum((self._rows[i][j] * p[j] for j in range(3)), ZERO) for i in range(3))

    def inverse(self) -> ProjTransform:
        m = self._rows
        adj = [[ZERO] * 3 for _ in range(3)]
        for i in range(3):
            for j in range(3):
                r = [k for k in range(3) if k != j]
                c = [k for k in range(3) if k != i]
                minor = m[r[0]][c[0]] * m[r[1]][c[1]] - m[r[0]][c[1]] * m[r[1]][c[0]]
                adj[i][j] = minor if (i + j) % 2 == 0 else -minor
        return ProjTransform._trusted(adj)

    def power(self, k: int) -> ProjTransform:
        if k < 0:
            return self.inverse().power(-k)
        result = identity()
        base = self
        while k:
            if k & 1:
                result = compose(result, base)
            k >>= 1
            if k:
                base = compose(base, base)
        return result

    def is_identity(self) -> bool:
        return _is_scalar_matrix(self._rows)

    def __repr__(self):
        return "ProjTransform(" + "; ".join(", ".join(str(x) for x in row) for row in self._rows) + ")"

    def to_json(self) -> dict:
        return {"rows": [[x.to_json() for x in row] for row in self._rows]}

    @classmethod
    def from_json(cls, obj: dict) -> ProjTransform:
        return cls([[CycloNum.from_json(x) for x in row] for row in obj["rows"]])


def identity() -> ProjTransform:
    return ProjTransform._trusted(((ONE, ZERO, ZERO), (ZERO, ONE, ZERO), (ZERO, ZERO, ONE)))


def diag(a, b, c) -> ProjTransform:
    a, b, c = _c(a), _c(b), _c(c)
    return ProjTransform(((a, ZERO, ZERO), (ZERO, b, ZERO), (ZERO, ZERO, c)))


def monomial(perm: Sequence[int], scalars: Sequence = (1, 1, 1)) -> ProjTransform:
    """The map (v0:v1:v2) -> (s0*v[perm0] : s1*v[perm1] : s2*v[perm2]).

    ``monomial((1, 2, 0))`` is [Y:Z:X]; ``monomial((1, 0, 2), (-1, 1, 1))``
    is [-Y:X:Z].
    """
    if sorted(perm) != [0, 1, 2]:
        raise PreconditionViolated("perm must be a permutation of 0, 1, 2")
    rows = [[ZERO] * 3 for _ in range(3)]
    for i, (j, s) in enumerate(zip(perm, scalars)):
        rows[i][j] = _c(s)
    return ProjTransform(rows)


def compose(*ts: ProjTransform) -> ProjTransform:
    """Product of transforms; compose(a, b) applies b first, then a."""
    if not ts:
        return identity()
    rows = ts[0].matrix
    for t in ts[1:]:
        rows = _matmul(rows, t.matrix)
    return ProjTransform._trusted(rows)


def galois_transform(t: ProjTransform) -> ProjTransform:
    """Entrywise complex conjugation."""
    return ProjTransform._trusted(tuple(tuple(x.conjugate() for x in row) for row in t.matrix))


def is_diagonal(t: ProjTransform) -> bool:
    m = t.matrix
    return all(not m[i][j] for i in range(3) for j in range(3) if i != j)


def is_monomial(t: ProjTransform) -> bool:
    m = t.matrix
    return all(sum(1 for x in row if x) == 1 for row in m)


def transform_order(t: ProjTransform, cap: int = 1000) -> int | None:
    """Order of t in PGL_3, or None when it exceeds ``cap``."""
    if is_diagonal(t):
        m = t.matrix
        a, b, c = m[0][0], m[1][1], m[2][2]
        ra, rb = (a / c).as_root_of_unity(), (b / c).as_root_of_unity()
        if ra and rb:
            n = _lcm(ra[0], rb[0])
            return n if n <= cap else None
    p = t
    for k in range(1, cap + 1):
        if p.is_identity():
            return k
        p = compose(p, t)
    return None


def _lcm(a, b):
    from math import gcd

    return a // gcd(a, b) * b


# ----------------------------------------------------------------------
# fixed loci


@dataclass(frozen=True)
class FixedLocus:
    """Fixed-point data of a finite-order transformation.

    ``kind`` is "identity", "homology" (with ``axis`` and ``center``) or
    "non_homology" (with up to three ``points``).
    """

    kind: str
    axis: ProjLine | None = None
    center: ProjPoint | None = None
    points: tuple[ProjPoint, ...] = field(default_factory=tuple)
    order: int = 1

    def to_json(self) -> dict:
        out: dict = {"kind": self.kind, "order": self.order}
        if self.kind == "homology":
            out["axis"] = self.axis.to_json()
            out["center"] = self.center.to_json()
        elif self.kind == "non_homology":
            out["points"] = [p.to_json() for p in self.points]
        return out


def _kernel_rank2(m) -> tuple[CycloNum, ...]:
    for r1 in range(3):
        for r2 in range(r1 + 1, 3):
            v = _cross(m[r1], m[r2])
            if any(v):
                return v
    raise AssertionError("matrix does not have rank 2")


def _classify_diagonal(t: ProjTransform, n: int) -> FixedLocus:
    d = [t.matrix[i][i] for i in range(3)]
    basis = [ProjPoint((1, 0, 0)), ProjPoint((0, 1, 0)), ProjPoint((0, 0, 1))]
    for i in range(3):
        j, k = [x for x in range(3) if x != i]
        if d[j] == d[k]:
            axis = [0, 0, 0]
            axis[i] = 1
            return FixedLocus("homology", axis=ProjLine(axis), center=basis[i], order=n)
    return FixedLocus("non_homology", points=tuple(basis), order=n)


def classify_element(t: ProjTransform, cap: int = 1000) -> FixedLocus:
    """Decide whether t is the identity, a homology or a non-homology.

    A homology is recognised by a double eigenvalue solved from a linear
    minor.  Otherwise the three eigenvalues are matched against the patterns
    c, c z^a, c z^b and the fixed points are their eigenvectors.
    """
    n = transform_order(t, cap)
    if n is None:
        raise UnsupportedEigenstructure(f"order exceeds cap {cap}")
    if n == 1:
        return FixedLocus("identity")
    if is_diagonal(t):
        return _classify_diagonal(t, n)
    m = t.matrix
    mu = _double_eigenvalue(m)
    if mu is not None:
        a = tuple(tuple(m[i][j] - (mu if i == j else ZERO) for j in range(3)) for i in range(3))
        row = next(r for r in a if any(r))
        col = next(c for c in zip(*a) if any(c))
        return FixedLocus("homology", axis=ProjLine(row), center=ProjPoint(col), order=n)
    eigen = _eigenvalues(m, n)
    if eigen is None:
        raise UnsupportedEigenstructure("eigenvalues do not lie in the coefficient field")
    points = []
    for mu in eigen:
        a = tuple(tuple(m[i][j] - (mu if i == j else ZERO) for j in range(3)) for i in range(3))
        points.append(ProjPoint(_kernel_rank2(a)))
    return FixedLocus("non_homology", points=tuple(points), order=n)


def _double_eigenvalue(m) -> CycloNum | None:
    """The scalar mu with rank(M - mu I) = 1, if any (M not scalar, not diagonal).

    With m[j][k] != 0 (j != k) and i the remaining index, the 2x2 minor of
    M - mu I on rows {i, j} and columns {i, k} is linear in mu.
    """
    for j in range(3):
        for k in range(3):
            if j != k and m[j][k]:
                i = 3 - j - k
                mu = m[i][i] - m[i][k] * m[j][i] / m[j][k]
                a = tuple(tuple(m[r][c] - (mu if r == c else ZERO) for c in range(3)) for r in range(3))
                return mu if _rank(a) == 1 else None
    return None


def nth_root(value: CycloNum, n: int, conductor: int = 1, budget: int = 5000) -> CycloNum | None:
    """Some c in Q(zeta_L), L = lcm(conductor of value, n, ``conductor``), with c^n == value, or None.

    Candidates come from choosing n-th roots in each complex embedding and
    solving for power-basis coordinates; a candidate is returned only after
    the exact check c^n == value.  None means no candidate survived, which
    also happens when the branch search exceeds ``budget``.
    """
    import itertools
    import math
    from fractions import Fraction

    import numpy as np

    c = radical(value, n)
    if c is not None:
        return c
    L = math.lcm(value.minimal().conductor, n, conductor)
    if L % 4 == 2:
        L //= 2
    units = [k for k in range(1, L) if math.gcd(k, L) == 1] if L > 2 else [1]
    half = [k for k in units if k <= L // 2] if L > 2 else units
    if n ** len(half) > budget:
        return None
    lifted = value.minimal().lift(L)
    images = {k: lifted.galois(k).to_complex() for k in units}
    dim = len(units)
    vander = np.array([[np.exp(2j * np.pi * k * j / L) for j in range(dim)] for k in units])
    base = {k: images[k] ** (1.0 / n) if images[k] != 0 else 0 for k in half}
    for choice in itertools.product(range(n), repeat=len(half)):
        rhs = {}
        for k, e in zip(half, choice):
            r = base[k] * np.exp(2j * np.pi * e / n)
            rhs[k] = r
            rhs[L - k] = np.conj(r)
        vec = np.array([rhs[k] for k in units])
        try:
            x = np.linalg.solve(vander, vec)
        except np.linalg.LinAlgError:
            return None
        coeffs = [Fraction(float(v.real)).limit_denominator(10**6) for v in x]
        cand = CycloNum(L, coeffs)
        if cand**n == value:
            return cand
    return None


def _eigenvalues(m, n: int) -> list[CycloNum] | None:
    """Three distinct eigenvalues of a finite-order lift, when they lie in the field.

    Eigenvalues are c, c z^a, c z^b with z = zeta_n; c is read off the trace
    for each pattern and confirmed against the other symmetric functions.
    """
    tr = m[0][0] + m[1][1] + m[2][2]
    e2 = sum(m[i][i] * m[j][j] - m[i][j] * m[j][i] for i, j in ((0, 1), (0, 2), (1, 2)))
    det = _det(m)
    roots = [zeta(n, k) for k in range(n)]
    entry_conductor = 1
    for row in m:
        for x in row:
            entry_conductor = _lcm(entry_conductor, x.conductor)
    for a in range(1, n):
        for b in range(a + 1, n):
            pat = (ONE, roots[a], roots[b])
            p1 = pat[0] + pat[1] + pat[2]
            if p1:
                c = tr / p1
            else:
                # only (1, w, w^2): c is a cube root of the determinant
                c = nth_root(det, 3, conductor=entry_conductor)
                if c is None:
                    continue
            if c * c * (pat[0] * pat[1] + pat[0] * pat[2] + pat[1] * pat[2]) != e2:
                continue
            if c * c * c * pat[1] * pat[2] != det:
                continue
            return [c * x for x in pat]
    return None


def fixes(t: ProjTransform, p: ProjPoint) -> bool:
    return t(p) == p
