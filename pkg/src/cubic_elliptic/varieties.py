"""Catalog of the seven cubic elliptic variety types.

Divisor classes are integer 4-vectors in the basis (H, E1, E2, E3), curve
classes in the basis (h, e1, e2, e3); the pairing between them is
``a*b - a1*b1 - a2*b2 - a3*b3``.  Cones of divisors are computed in plain
coordinates after twisting curve vectors by diag(1, -1, -1, -1).
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Sequence

from .cones import Cone
from .linalg import GroupInvariants, IntMatrix, abelian_quotient

__all__ = [
    "VarietyType",
    "VarietySpec",
    "EXTREMAL_TYPES",
    "MismatchWithPrinted",
    "UnsupportedType",
    "FlopAction",
    "pairing",
    "twist",
    "F",
    "W",
    "mori_generators",
    "printed_nef_generators",
    "nef_cone",
    "canonical_class",
    "vertical_lattice",
    "mordell_weil",
    "printed_mordell_weil",
    "flop_action",
    "flop_dual_generators",
    "moving_cone",
    "check_w_ample",
    "WAmpleReport",
    "ChamberUnion",
    "chamber_union",
]


class VarietyType(str, Enum):
    X3 = "X3"
    XS = "XS"
    XS2 = "XS2"
    XSSS = "XSSS"
    X12 = "X12"
    XS11 = "XS11"
    X111 = "X111"

    @property
    def symbol(self) -> str:
        return "X_" + self.value[1:]

    @property
    def is_extremal(self) -> bool:
        return self in EXTREMAL_TYPES

    @classmethod
    def parse(cls, text: str) -> "VarietyType":
        key = text.replace("_", "").replace("{", "").replace("}", "").upper()
        try:
            return cls(key)
        except ValueError:
            raise ValueError(f"unknown variety type {text!r}; expected one of {[t.value for t in cls]}") from None

    def __str__(self) -> str:
        return self.value


EXTREMAL_TYPES = (VarietyType.X3, VarietyType.XS, VarietyType.XS2, VarietyType.XSSS)


@dataclass(frozen=True)
class VarietySpec:
    type: VarietyType
    n: int

    def __post_init__(self):
        object.__setattr__(self, "type", VarietyType(self.type))
        if self.n < 3:
            raise ValueError(f"dimension must be at least 3, got {self.n}")


class MismatchWithPrinted(AssertionError):
    def __init__(self, what: str, computed, printed):
        super().__init__(f"{what}: computed {computed}, printed {printed}")
        self.computed = computed
        self.printed = printed


class UnsupportedType(ValueError):
    pass


F = (1, -1, -1, -1)
W = (4, -3, -2, -1)

_H, _E1, _E2, _E3 = (1, 0, 0, 0), (0, 1, 0, 0), (0, 0, 1, 0), (0, 0, 0, 1)


def _lin(*terms):
    out = [0, 0, 0, 0]
    for c, v in terms:
        for i in range(4):
            out[i] += c * v[i]
    return tuple(out)


def pairing(D: Sequence[int], C: Sequence[int]) -> int:
    a, a1, a2, a3 = D
    b, b1, b2, b3 = C
    return a * b - a1 * b1 - a2 * b2 - a3 * b3


def twist(C: Sequence[int]) -> tuple[int, ...]:
    """Curve coordinates to the plain coordinates used by the cones module."""
    return (C[0], -C[1], -C[2], -C[3])


h, e1, e2, e3 = _H, _E1, _E2, _E3

_MORI = {
    "one_point": [_lin((1, e1), (-1, e2)), _lin((1, e2), (-1, e3)), _lin((1, h), (-1, e1)), e3],
    "two_points": [_lin((1, e1), (-1, e2)), e2, e3, _lin((1, h), (-1, e1)), _lin((1, h), (-1, e3))],
    "three_points": [e1, e2, e3, _lin((1, h), (-1, e1)), _lin((1, h), (-1, e2)), _lin((1, h), (-1, e3))],
}

_NEF_PRINTED = {
    "one_point": [
        [1, 1, 1, 1],
        [-1, -1, -1, 0],
        [-1, -1, 0, 0],
        [-1, 0, 0, 0],
    ],
    "two_points": [
        [1, 1, 1, 1, 1, 1],
        [-1, -1, -1, 0, -1, 0],
        [-1, -1, 0, 0, 0, 0],
        [-1, 0, 0, 0, -1, -1],
    ],
    "three_points": [
        [1, 1, 1, 1, 1, 1, 1, 1],
        [-1, -1, -1, 0, -1, 0, 0, 0],
        [-1, -1, 0, 0, 0, 0, -1, -1],
        [-1, 0, 0, 0, -1, -1, -1, 0],
    ],
}

_FAMILY = {
    VarietyType.X3: "one_point",
    VarietyType.XS: "one_point",
    VarietyType.X12: "two_points",
    VarietyType.XS2: "two_points",
    VarietyType.X111: "three_points",
    VarietyType.XS11: "three_points",
    VarietyType.XSSS: "three_points",
}

_L = [F, e3]
_VERTICAL_EXTRA = {
    VarietyType.X111: [],
    VarietyType.XS11: [_lin((1, _H), (-3, _E1))],
    VarietyType.XSSS: [_lin((1, _H), (-3, _E1)), _lin((1, _H), (-3, _E2))],
    VarietyType.X12: [_lin((1, _E1), (-1, _E2))],
    VarietyType.X3: [_lin((1, _E1), (-1, _E2)), _lin((1, _E2), (-1, _E3))],
    VarietyType.XS: [_lin((1, _E1), (-1, _E2)), _lin((1, _E2), (-1, _E3))],
    VarietyType.XS2: [_lin((1, _H), (-3, _E1)), _lin((1, _E2), (-1, _E3))],
}

_MW_PRINTED = {
    VarietyType.X3: GroupInvariants(0),
    VarietyType.XS: GroupInvariants(0),
    VarietyType.XS2: GroupInvariants(0, (2,)),
    VarietyType.XSSS: GroupInvariants(0, (3,)),
    VarietyType.X12: GroupInvariants(1),
    VarietyType.XS11: GroupInvariants(1),
    VarietyType.X111: GroupInvariants(2),
}


def family(vtype) -> str:
    return _FAMILY[VarietyType(vtype)]


def mori_generators(vtype) -> list[tuple[int, ...]]:
    return list(_MORI[family(vtype)])


def printed_nef_generators(vtype) -> list[tuple[int, ...]]:
    return IntMatrix(_NEF_PRINTED[family(vtype)]).columns()


def nef_cone(vtype, check: bool = True) -> Cone:
    """Nef cone as the dual of the Mori cone under the intersection pairing."""
    nef = Cone([twist(c) for c in mori_generators(vtype)]).dual()
    if check:
        printed = Cone(printed_nef_generators(vtype))
        if nef != printed:
            raise MismatchWithPrinted(f"nef cone of {VarietyType(vtype).symbol}", nef.rays, printed.rays)
    return nef


def canonical_class(n: int) -> tuple[int, ...]:
    if n < 3:
        raise ValueError(f"dimension must be at least 3, got {n}")
    return tuple((1 - n) * x for x in F)


def vertical_lattice(vtype) -> list[tuple[int, ...]]:
    """Generators of the subgroup spanned by vertical divisors and the zero section."""
    return list(_L) + list(_VERTICAL_EXTRA[VarietyType(vtype)])


def mordell_weil(vtype) -> GroupInvariants:
    return abelian_quotient(4, vertical_lattice(vtype))


def printed_mordell_weil(vtype) -> GroupInvariants:
    return _MW_PRINTED[VarietyType(vtype)]


@dataclass(frozen=True)
class FlopAction:
    M: IntMatrix
    rank2_core: IntMatrix = IntMatrix([[2, 1], [-3, -2]])

    def apply(self, D: Sequence[int]) -> tuple[int, ...]:
        return self.M @ D

    def is_involution(self) -> bool:
        return self.M @ self.M == IntMatrix.identity(4)


_FLOPS = {
    VarietyType.X3: IntMatrix([[2, 1, 0, 0], [-3, -2, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]]),
    VarietyType.XS2: IntMatrix([[2, 1, 0, 0], [-3, -2, 0, 0], [0, 0, 0, 1], [0, 0, 1, 0]]),
}

# curve cones whose duals are the flopped nef chambers
_FLOP_DUALS = {
    VarietyType.X3: [
        _lin((1, e2), (-1, e3)),
        e3,
        _lin((3, h), (-2, e1), (-1, e2)),
        _lin((1, e1), (-1, h)),
    ],
    VarietyType.XS2: [
        e2,
        e3,
        _lin((2, h), (-1, e1), (-1, e2)),
        _lin((3, h), (-2, e1), (-1, e3)),
        _lin((1, e1), (-1, h)),
    ],
}


def flop_action(vtype) -> FlopAction:
    vtype = VarietyType(vtype)
    if vtype not in _FLOPS:
        raise UnsupportedType(f"no flop is recorded for {vtype.symbol}")
    return FlopAction(_FLOPS[vtype])


def flop_dual_generators(vtype) -> list[tuple[int, ...]]:
    vtype = VarietyType(vtype)
    if vtype not in _FLOP_DUALS:
        raise UnsupportedType(f"no flop is recorded for {vtype.symbol}")
    return list(_FLOP_DUALS[vtype])


def moving_cone(vtype) -> list[Cone]:
    """Nef chambers making up the moving cone (extremal types only)."""
    vtype = VarietyType(vtype)
    nef = nef_cone(vtype)
    if vtype in (VarietyType.XS, VarietyType.XSSS):
        return [nef]
    if vtype not in _FLOPS:
        raise UnsupportedType(f"moving cone of {vtype.symbol} is not polyhedral")
    flopped = nef.map(flop_action(vtype).M)
    expected = Cone([twist(c) for c in flop_dual_generators(vtype)]).dual()
    if flopped != expected:
        raise MismatchWithPrinted(f"flopped nef chamber of {vtype.symbol}", flopped.rays, expected.rays)
    return [nef, flopped]


@dataclass(frozen=True)
class WAmpleReport:
    vtype: VarietyType
    pairings: tuple[int, ...]
    decomposition: tuple[tuple[int, ...], ...]
    in_nef_interior: bool
    decomposition_holds: bool
    summands_nef: bool

    @property
    def ok(self) -> bool:
        return self.in_nef_interior and self.decomposition_holds and self.summands_nef


_W_SUMMANDS = ((1, -1, -1, -1), (1, -1, -1, 0), (1, -1, 0, 0), (1, 0, 0, 0))


def check_w_ample(vtype, strict: bool = True) -> WAmpleReport:
    """Check that W = 4H - 3E1 - 2E2 - E3 is interior to the nef cone.

    With ``strict`` an AssertionError names the first Mori generator that
    does not pair positively with W.
    """
    vtype = VarietyType(vtype)
    gens = mori_generators(vtype)
    values = tuple(pairing(W, c) for c in gens)
    if strict:
        for c, v in zip(gens, values):
            if v <= 0:
                raise AssertionError(f"W pairs to {v} with the Mori generator {c}")
    total = tuple(sum(s[i] for s in _W_SUMMANDS) for i in range(4))
    nef = nef_cone(vtype, check=False)
    return WAmpleReport(
        vtype=vtype,
        pairings=values,
        decomposition=_W_SUMMANDS,
        in_nef_interior=all(v > 0 for v in values),
        decomposition_holds=total == W,
        summands_nef=all(nef.contains(s) for s in _W_SUMMANDS),
    )


@dataclass(frozen=True)
class ChamberUnion:
    wall_dim: int
    wall_normal: tuple[int, ...]
    convex: bool
    hull_rays: tuple[tuple[int, ...], ...]


def chamber_union(first: Cone, second: Cone) -> ChamberUnion:
    """Wall between two full-dimensional chambers and convexity of their union.

    With a wall normal u (u >= 0 on the first chamber, <= 0 on the second) the
    union is convex iff the hull cut by u >= 0 and u <= 0 gives back the chambers.
    """
    wall = first.intersect(second)
    d = first.ambient_dim
    if wall.dim != d - 1:
        return ChamberUnion(wall.dim, (), False, tuple(first.hull_union(second).rays))
    u = wall.equations[0]
    if not all(sum(a * b for a, b in zip(u, r)) >= 0 for r in first.rays):
        u = tuple(-x for x in u)
    hull = first.hull_union(second)
    up = hull.intersect(Cone([u], d).dual())
    down = hull.intersect(Cone([tuple(-x for x in u)], d).dual())
    return ChamberUnion(wall.dim, u, up == first and down == second, tuple(hull.rays))
