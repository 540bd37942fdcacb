"""Rational polyhedral cones with exact double description.

A :class:`Cone` is stored by generators.  Its facet description is the
generator set of the dual cone, computed lazily by the same double
description routine, so the two views are always regenerated from each other.
Coordinates are plain: any bilinear pairing other than the dot product is the
caller's business.
"""

from __future__ import annotations

from fractions import Fraction
from functools import cached_property
from itertools import combinations
from typing import Iterable, Literal, Optional, Sequence

from .linalg import IntMatrix, nullspace, primitive, rank, rref

__all__ = ["Cone", "extreme_rays", "dual", "intersect", "contains", "equals", "dim", "map_cone", "hull_union"]


def _dot(a, b):
    return sum(x * y for x, y in zip(a, b))


def _lineality_basis(vectors: Sequence[Sequence[int]], d: int) -> list[tuple[int, ...]]:
    """Canonical primitive basis of span(vectors): integer-scaled RREF rows."""
    if not vectors:
        return []
    red, _ = rref(vectors)
    return [primitive(r) for r in red]


def _project_away(v, basis):
    """Orthogonal projection of v onto the complement of span(basis)."""
    if not basis:
        return tuple(Fraction(x) for x in v)
    # Solve the normal equations G c = B v for the coefficients c.
    gram = [[Fraction(_dot(a, b)) for b in basis] for a in basis]
    rhs = [Fraction(_dot(a, v)) for a in basis]
    aug = [row + [r] for row, r in zip(gram, rhs)]
    red, piv = rref(aug)
    coeff = [Fraction(0)] * len(basis)
    for row, p in zip(red, piv):
        coeff[p] = row[-1]
    return tuple(Fraction(x) - sum(c * b[i] for c, b in zip(coeff, basis)) for i, x in enumerate(v))


def extreme_rays(
    inequalities: Sequence[Sequence[int]], d: int
) -> tuple[list[tuple[int, ...]], list[tuple[int, ...]]]:
    """Double description of ``{y : a . y >= 0 for all a}`` in Q^d.

    Returns ``(lineality, rays)``: a basis of the lineality space and the
    extreme rays of the pointed part.  Constraints are inserted one at a time;
    after each insertion candidate rays are filtered by the algebraic
    extremality test (rank of the tight constraints).
    """
    lin: list[tuple[Fraction, ...]] = [
        tuple(Fraction(int(i == j)) for j in range(d)) for i in range(d)
    ]
    rays: list[tuple[Fraction, ...]] = []
    seen: list[tuple[int, ...]] = []
    for a in inequalities:
        a = tuple(int(x) for x in a)
        if len(a) != d:
            raise ValueError(f"inequality of length {len(a)} in dimension {d}")
        if not any(a):
            continue
        seen.append(a)
        hit = next((k for k, l in enumerate(lin) if _dot(a, l) != 0), None)
        if hit is not None:
            l0 = lin.pop(hit)
            s = _dot(a, l0)
            if s < 0:
                l0, s = tuple(-x for x in l0), -s
            lin = [tuple(x - (_dot(a, l) / s) * y for x, y in zip(l, l0)) for l in lin]
            rays = [tuple(x - (_dot(a, r) / s) * y for x, y in zip(r, l0)) for r in rays]
            rays.append(l0)
            continue
        pos = [r for r in rays if _dot(a, r) > 0]
        neg = [r for r in rays if _dot(a, r) < 0]
        zero = [r for r in rays if _dot(a, r) == 0]
        cands = pos + zero
        for p in pos:
            ap = _dot(a, p)
            for q in neg:
                aq = _dot(a, q)
                cands.append(tuple(ap * y - aq * x for x, y in zip(p, q)))
        target = d - len(lin) - 1
        kept: dict[tuple[int, ...], tuple[Fraction, ...]] = {}
        for r in cands:
            key = primitive(r)
            if not any(key) or key in kept:
                continue
            tight = [c for c in seen if _dot(c, r) == 0]
            if rank(tight) == target:
                kept[key] = r
        rays = list(kept.values())
    lin_int = _lineality_basis([primitive(l) for l in lin], d)
    out = {primitive(_project_away(r, lin_int)) for r in rays}
    out.discard(tuple([0] * d))
    return lin_int, sorted(out)


class Cone:
    """A rational polyhedral cone in Q^ambient_dim given by generators.

    ``rays`` is the canonical minimal generator list: a +/- pair for every
    vector of the canonical lineality basis, followed by the primitive
    extreme rays of the pointed part (taken orthogonal to the lineality
    space), sorted lexicographically.
    """

    def __init__(self, generators: Iterable[Sequence[int]] = (), ambient_dim: Optional[int] = None):
        gens = [tuple(int(x) for x in g) for g in generators]
        if ambient_dim is None:
            if not gens:
                raise ValueError("ambient_dim is required for a cone without generators")
            ambient_dim = len(gens[0])
        if any(len(g) != ambient_dim for g in gens):
            raise ValueError("generator of the wrong length")
        self.ambient_dim = ambient_dim
        self._input = [g for g in gens if any(g)]

    # -- the two descriptions -------------------------------------------------

    @cached_property
    def _facets(self) -> tuple[list[tuple[int, ...]], list[tuple[int, ...]]]:
        # equations (as a basis) and facet normals: the dual cone's generators
        return extreme_rays(self._input, self.ambient_dim)

    @cached_property
    def _vrep(self) -> tuple[list[tuple[int, ...]], list[tuple[int, ...]]]:
        eqs, facets = self._facets
        ineqs = list(facets) + list(eqs) + [tuple(-x for x in e) for e in eqs]
        return extreme_rays(ineqs, self.ambient_dim)

    @property
    def lineality(self) -> list[tuple[int, ...]]:
        return list(self._vrep[0])

    @property
    def rays(self) -> list[tuple[int, ...]]:
        lin, pointed = self._vrep
        out = []
        for l in lin:
            out.append(l)
            out.append(tuple(-x for x in l))
        return out + list(pointed)

    @property
    def extremal_rays(self) -> list[tuple[int, ...]]:
        return list(self._vrep[1])

    @property
    def equations(self) -> list[tuple[int, ...]]:
        """Basis of linear forms vanishing on the cone."""
        return list(self._facets[0])

    @property
    def facet_normals(self) -> list[tuple[int, ...]]:
        """Inner normals of the facets (modulo the equations)."""
        return list(self._facets[1])

    @property
    def inequalities(self) -> list[tuple[int, ...]]:
        """All inequalities ``a . x >= 0`` cutting out the cone."""
        eqs = self.equations
        return self.facet_normals + eqs + [tuple(-x for x in e) for e in eqs]

    # -- queries ----------------------------------------------------------------

    @property
    def dim(self) -> int:
        return rank(self._input) if self._input else 0

    @property
    def is_pointed(self) -> bool:
        return not self.lineality

    def contains(self, v: Sequence, mode: Literal["boundary", "relative_interior"] = "boundary") -> bool:
        if len(v) != self.ambient_dim:
            raise ValueError(f"vector of length {len(v)} in a cone of ambient dimension {self.ambient_dim}")
        if any(_dot(e, v) != 0 for e in self.equations):
            return False
        if mode == "boundary":
            return all(_dot(a, v) >= 0 for a in self.facet_normals)
        if mode == "relative_interior":
            return all(_dot(a, v) > 0 for a in self.facet_normals)
        raise ValueError(f"unknown containment mode {mode!r}")

    def contains_cone(self, other: "Cone") -> bool:
        return all(self.contains(r) for r in other.rays)

    def dual(self) -> "Cone":
        eqs, facets = self._facets
        gens = list(facets) + list(eqs) + [tuple(-x for x in e) for e in eqs]
        return Cone(gens, self.ambient_dim)

    def intersect(self, other: "Cone") -> "Cone":
        if other.ambient_dim != self.ambient_dim:
            raise ValueError("ambient dimensions differ")
        lin, pointed = extreme_rays(self.inequalities + other.inequalities, self.ambient_dim)
        gens = list(pointed) + list(lin) + [tuple(-x for x in l) for l in lin]
        return Cone(gens, self.ambient_dim)

    def hull_union(self, other: "Cone") -> "Cone":
        if other.ambient_dim != self.ambient_dim:
            raise ValueError("ambient dimensions differ")
        return Cone(self.rays + other.rays, self.ambient_dim)

    def map(self, M: IntMatrix) -> "Cone":
        if M.ncols != self.ambient_dim:
            raise ValueError(f"cannot map a cone in dimension {self.ambient_dim} by a {M.shape} matrix")
        return Cone([M @ r for r in self.rays], M.nrows)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Cone):
            return NotImplemented
        return (
            self.ambient_dim == other.ambient_dim
            and self.contains_cone(other)
            and other.contains_cone(self)
        )

    def __hash__(self):
        return hash((self.ambient_dim, tuple(self.rays)))

    def __repr__(self) -> str:
        return f"Cone({self.rays}, ambient_dim={self.ambient_dim})"


def dual(c: Cone) -> Cone:
    return c.dual()


def intersect(a: Cone, b: Cone) -> Cone:
    return a.intersect(b)


def contains(c: Cone, v: Sequence, mode: str = "boundary") -> bool:
    return c.contains(v, mode)


def equals(a: Cone, b: Cone) -> bool:
    return a == b


def dim(c: Cone) -> int:
    return c.dim


def map_cone(c: Cone, M: IntMatrix) -> Cone:
    return c.map(M)


def hull_union(a: Cone, b: Cone) -> Cone:
    return a.hull_union(b)


def intersect_all(cones: Sequence[Cone]) -> Cone:
    if not cones:
        raise ValueError("empty intersection")
    d = cones[0].ambient_dim
    ineqs = [a for c in cones for a in c.inequalities]
    lin, pointed = extreme_rays(ineqs, d)
    return Cone(list(pointed) + list(lin) + [tuple(-x for x in l) for l in lin], d)


def subset_cones(vectors: Sequence[Sequence[int]], size: int):
    """Yield ``(indices, cone)`` for every ``size``-subset of ``vectors``."""
    d = len(vectors[0])
    for idx in combinations(range(len(vectors)), size):
        yield idx, Cone([vectors[i] for i in idx], d)
