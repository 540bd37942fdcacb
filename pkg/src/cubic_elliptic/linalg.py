"""Exact integer and rational linear algebra.

Everything here works on Python ints and ``fractions.Fraction``; there is no
floating point anywhere.  Matrices are small (at most a couple dozen columns),
so clarity wins over speed.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Iterable, Optional, Sequence

__all__ = [
    "IntMatrix",
    "SNFResult",
    "GroupInvariants",
    "snf",
    "abelian_quotient",
    "strict_positive_functional",
    "rank",
    "rref",
    "nullspace",
    "solve",
    "primitive",
    "content",
    "MAX_FM_VARIABLES",
]

MAX_FM_VARIABLES = 8


@dataclass(frozen=True)
class IntMatrix:
    """Immutable row-major integer matrix."""

    rows: tuple[tuple[int, ...], ...]
    ncols: int

    def __init__(self, rows: Iterable[Iterable[int]], ncols: Optional[int] = None):
        rows = tuple(tuple(int(x) for x in r) for r in rows)
        if ncols is None:
            if not rows:
                raise ValueError("cannot infer the column count of an empty matrix")
            ncols = len(rows[0])
        if any(len(r) != ncols for r in rows):
            raise ValueError("ragged matrix rows")
        object.__setattr__(self, "rows", rows)
        object.__setattr__(self, "ncols", ncols)

    @classmethod
    def identity(cls, n: int) -> "IntMatrix":
        return cls([[int(i == j) for j in range(n)] for i in range(n)], n)

    @classmethod
    def from_columns(cls, cols: Sequence[Sequence[int]], nrows: Optional[int] = None) -> "IntMatrix":
        if not cols:
            if nrows is None:
                raise ValueError("cannot infer the row count of an empty matrix")
            return cls([[] for _ in range(nrows)], 0)
        m = len(cols[0])
        return cls([[c[i] for c in cols] for i in range(m)], len(cols))

    @property
    def nrows(self) -> int:
        return len(self.rows)

    @property
    def shape(self) -> tuple[int, int]:
        return (self.nrows, self.ncols)

    def __getitem__(self, ij: tuple[int, int]) -> int:
        i, j = ij
        if not (0 <= i < self.nrows and 0 <= j < self.ncols):
            raise IndexError(f"entry {ij} outside a {self.nrows}x{self.ncols} matrix")
        return self.rows[i][j]

    def row(self, i: int) -> tuple[int, ...]:
        return self.rows[i]

    def col(self, j: int) -> tuple[int, ...]:
        return tuple(r[j] for r in self.rows)

    def columns(self) -> list[tuple[int, ...]]:
        return [self.col(j) for j in range(self.ncols)]

    def transpose(self) -> "IntMatrix":
        return IntMatrix(self.columns(), self.nrows)

    @property
    def T(self) -> "IntMatrix":
        return self.transpose()

    def __matmul__(self, other):
        if isinstance(other, IntMatrix):
            if self.ncols != other.nrows:
                raise ValueError(f"cannot multiply {self.shape} by {other.shape}")
            cols = other.columns()
            return IntMatrix(
                [[sum(a * b for a, b in zip(r, c)) for c in cols] for r in self.rows],
                other.ncols,
            )
        v = tuple(other)
        if len(v) != self.ncols:
            raise ValueError(f"cannot apply a {self.shape} matrix to a vector of length {len(v)}")
        return tuple(sum(a * b for a, b in zip(r, v)) for r in self.rows)

    def det(self) -> int:
        """Determinant by fraction-free Bareiss elimination."""
        n = self.nrows
        if n != self.ncols:
            raise ValueError("determinant of a non-square matrix")
        if n == 0:
            return 1
        a = [list(r) for r in self.rows]
        sign, prev = 1, 1
        for k in range(n - 1):
            if a[k][k] == 0:
                swap = next((i for i in range(k + 1, n) if a[i][k] != 0), None)
                if swap is None:
                    return 0
                a[k], a[swap] = a[swap], a[k]
                sign = -sign
            for i in range(k + 1, n):
                for j in range(k + 1, n):
                    a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
            prev = a[k][k]
        return sign * a[n - 1][n - 1]

    def is_diagonal(self) -> bool:
        return all(x == 0 for i, r in enumerate(self.rows) for j, x in enumerate(r) if i != j)

    def diagonal(self) -> list[int]:
        return [self.rows[i][i] for i in range(min(self.shape))]

    def __str__(self) -> str:
        width = max((len(str(x)) for r in self.rows for x in r), default=1)
        return "\n".join(" ".join(str(x).rjust(width) for x in r) for r in self.rows)


@dataclass(frozen=True)
class SNFResult:
    """``U @ A @ V == D`` with ``U`` and ``V`` unimodular."""

    U: IntMatrix
    D: IntMatrix
    V: IntMatrix

    @property
    def invariant_factors(self) -> list[int]:
        return [d for d in self.D.diagonal() if d != 0]


@dataclass(frozen=True)
class GroupInvariants:
    """A finitely generated abelian group Z^rank + sum Z/t."""

    rank: int
    torsion: tuple[int, ...] = ()

    def __post_init__(self):
        if self.rank < 0:
            raise ValueError("negative rank")
        if any(t < 2 for t in self.torsion):
            raise ValueError("torsion coefficients must be at least 2")
        if any(b % a for a, b in zip(self.torsion, self.torsion[1:])):
            raise ValueError("torsion coefficients must form a divisibility chain")

    @property
    def is_finite(self) -> bool:
        return self.rank == 0

    @property
    def order(self) -> Optional[int]:
        if self.rank:
            return None
        out = 1
        for t in self.torsion:
            out *= t
        return out

    def __str__(self) -> str:
        parts = [f"Z/{t}Z" for t in self.torsion]
        if self.rank == 1:
            parts.insert(0, "Z")
        elif self.rank > 1:
            parts.insert(0, " + ".join(["Z"] * self.rank))
        return " + ".join(parts) if parts else "0"


def snf(A: IntMatrix) -> SNFResult:
    """Smith normal form of a nonempty integer matrix.

    Pivots are chosen as the nonzero entry of least absolute value in the
    remaining block, ties broken by the lowest (row, col).
    """
    m, n = A.shape
    if m == 0 or n == 0:
        raise ValueError("snf needs a nonempty matrix")
    a = [list(r) for r in A.rows]
    U = [[int(i == j) for j in range(m)] for i in range(m)]
    V = [[int(i == j) for j in range(n)] for i in range(n)]

    def swap_rows(i, j):
        a[i], a[j] = a[j], a[i]
        U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for r in a:
            r[i], r[j] = r[j], r[i]
        for r in V:
            r[i], r[j] = r[j], r[i]

    def add_row(dst, src, q):  # row_dst += q * row_src
        a[dst] = [x + q * y for x, y in zip(a[dst], a[src])]
        U[dst] = [x + q * y for x, y in zip(U[dst], U[src])]

    def add_col(dst, src, q):  # col_dst += q * col_src
        for r in a:
            r[dst] += q * r[src]
        for r in V:
            r[dst] += q * r[src]

    for t in range(min(m, n)):
        while True:
            best = None
            for i in range(t, m):
                for j in range(t, n):
                    x = a[i][j]
                    if x and (best is None or abs(x) < best[0]):
                        best = (abs(x), i, j)
            if best is None:
                break
            _, i, j = best
            if i != t:
                swap_rows(i, t)
            if j != t:
                swap_cols(j, t)
            p = a[t][t]
            for i in range(t + 1, m):
                if a[i][t]:
                    add_row(i, t, -(a[i][t] // p))
            for j in range(t + 1, n):
                if a[t][j]:
                    add_col(j, t, -(a[t][j] // p))
            if any(a[i][t] for i in range(t + 1, m)) or any(a[t][j] for j in range(t + 1, n)):
                continue
            bad = next(
                (i for i in range(t + 1, m) for j in range(t + 1, n) if a[i][j] % p),
                None,
            )
            if bad is None:
                break
            add_row(t, bad, 1)
        if best is None:
            break
        if a[t][t] < 0:
            a[t] = [-x for x in a[t]]
            U[t] = [-x for x in U[t]]
    return SNFResult(IntMatrix(U, m), IntMatrix(a, n), IntMatrix(V, n))


def abelian_quotient(ambient_rank: int, relations: Sequence[Sequence[int]]) -> GroupInvariants:
    """Invariants of Z^ambient_rank modulo the span of ``relations``."""
    if ambient_rank < 1:
        raise ValueError("ambient rank must be positive")
    for r in relations:
        if len(r) != ambient_rank:
            raise ValueError(f"relation {tuple(r)} does not have length {ambient_rank}")
    if not relations:
        return GroupInvariants(ambient_rank)
    factors = snf(IntMatrix(relations, ambient_rank)).invariant_factors
    return GroupInvariants(ambient_rank - len(factors), tuple(d for d in factors if d > 1))


def content(v: Iterable[int]) -> int:
    g = 0
    for x in v:
        g = gcd(g, int(x))
    return g


def primitive(v: Sequence) -> tuple[int, ...]:
    """Scale a rational vector to the primitive integer vector on the same ray."""
    fr = [Fraction(x) for x in v]
    den = 1
    for x in fr:
        den = den * x.denominator // gcd(den, x.denominator)
    ints = [int(x * den) for x in fr]
    g = content(ints)
    if g == 0:
        return tuple(ints)
    return tuple(x // g for x in ints)


def rref(rows: Sequence[Sequence]) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form over Q; returns (nonzero rows, pivot columns)."""
    a = [[Fraction(x) for x in r] for r in rows]
    if not a:
        return [], []
    n = len(a[0])
    pivots: list[int] = []
    r = 0
    for c in range(n):
        p = next((i for i in range(r, len(a)) if a[i][c] != 0), None)
        if p is None:
            continue
        a[r], a[p] = a[p], a[r]
        inv = 1 / a[r][c]
        a[r] = [x * inv for x in a[r]]
        for i in range(len(a)):
            if i != r and a[i][c] != 0:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
        if r == len(a):
            break
    return a[:r], pivots


def rank(rows: Sequence[Sequence]) -> int:
    return len(rref(rows)[1])


def nullspace(rows: Sequence[Sequence], ncols: Optional[int] = None) -> list[tuple[int, ...]]:
    """Primitive integer basis of {x : rows @ x = 0}."""
    if ncols is None:
        if not rows:
            raise ValueError("ncols required for an empty system")
        ncols = len(rows[0])
    red, pivots = rref(rows) if rows else ([], [])
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        x = [Fraction(0)] * ncols
        x[f] = Fraction(1)
        for r, p in zip(red, pivots):
            x[p] = -r[f]
        basis.append(primitive(x))
    return basis


def solve(rows: Sequence[Sequence], rhs: Sequence) -> Optional[tuple[Fraction, ...]]:
    """The unique rational solution of ``rows @ x = rhs``.

    Returns None when the system is inconsistent; raises ValueError when the
    solution is not unique.
    """
    n = len(rows[0])
    aug = [list(r) + [b] for r, b in zip(rows, rhs)]
    red, pivots = rref(aug)
    if n in pivots:
        return None
    if len(pivots) < n:
        raise ValueError("solution is not unique")
    x = [Fraction(0)] * n
    for r, p in zip(red, pivots):
        x[p] = r[n]
    return tuple(x)


def _fm_eliminate(cons, k):
    """Eliminate variable k from constraints ``a . x >= b`` (Fourier-Motzkin)."""
    pos, neg, rest = [], [], []
    for a, b in cons:
        (pos if a[k] > 0 else neg if a[k] < 0 else rest).append((a, b))
    out = list(rest)
    for ap, bp in pos:
        for an, bn in neg:
            lp, ln = -an[k], ap[k]
            a = tuple(lp * x + ln * y for x, y in zip(ap, an))
            out.append((a, lp * bp + ln * bn))
    return _dedupe(out)


def _dedupe(cons):
    seen = {}
    for a, b in cons:
        scale = next((abs(x) for x in a if x != 0), None)
        if scale is None:
            key = (a, Fraction(0 if b <= 0 else 1))
        else:
            key = (tuple(x / scale for x in a), b / scale)
        seen.setdefault(key, key)
    return list(seen.values())


def strict_positive_functional(
    vectors: Sequence[Sequence[int]], dim: Optional[int] = None
) -> Optional[tuple[int, ...]]:
    """A primitive integer ``phi`` with ``phi . v > 0`` for every v, or None.

    Strict feasibility is equivalent to feasibility of ``phi . v >= 1``, which
    is decided by exact Fourier-Motzkin elimination.
    """
    if dim is None:
        if not vectors:
            raise ValueError("dim required when no vectors are given")
        dim = len(vectors[0])
    if any(len(v) != dim for v in vectors):
        raise ValueError("all vectors must have the same length")
    if dim > MAX_FM_VARIABLES:
        raise ValueError(f"Fourier-Motzkin is limited to {MAX_FM_VARIABLES} variables, got {dim}")
    if not vectors:
        return tuple([0] * dim)
    cons = _dedupe([(tuple(Fraction(x) for x in v), Fraction(1)) for v in vectors])
    stages = [cons]
    for k in range(dim - 1, -1, -1):
        cons = _fm_eliminate(cons, k)
        stages.append(cons)
    if any(b > 0 for a, b in cons):
        return None
    # back substitution: stages[dim - k] still mentions variables 0..k
    x = [Fraction(0)] * dim
    for k in range(dim):
        lo, hi = None, None
        for a, b in stages[dim - 1 - k]:
            if a[k] == 0:
                continue
            bound = (b - sum(a[j] * x[j] for j in range(k))) / a[k]
            if a[k] > 0:
                lo = bound if lo is None else max(lo, bound)
            else:
                hi = bound if hi is None else min(hi, bound)
        x[k] = _pick(lo, hi)
    return primitive(x)


def _pick(lo: Optional[Fraction], hi: Optional[Fraction]) -> Fraction:
    """A simple value in [lo, hi], preferring small integers."""
    if (lo is None or lo <= 0) and (hi is None or hi >= 0):
        return Fraction(0)
    if hi is None:
        return Fraction(-((-lo.numerator) // lo.denominator))  # ceil(lo)
    if lo is None:
        return Fraction(hi.numerator // hi.denominator)  # floor(hi)
    c = Fraction(-((-lo.numerator) // lo.denominator))
    return c if c <= hi else (lo + hi) / 2
