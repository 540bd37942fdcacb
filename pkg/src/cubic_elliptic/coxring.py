"""Cox ring presentations of the four extremal types.

For each extremal type the ring is ``Q[T, S] / I`` where the generators of
``I`` come from the defining relations of the cubic by the substitution
``T_k -> T_k * (S-monomial)`` followed by division by the largest S-monomial
dividing every term.  The S-exponents are re-derived from the grading matrix
(:func:`solve_beta_exponents`); where that disagrees with the printed table
the solved exponents win and the disagreement is kept in ``repair_notes``.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from math import comb
from typing import Optional, Sequence

from .cones import Cone, intersect_all
from .linalg import IntMatrix, rank, rref, strict_positive_functional
from .polynom import (
    BetaMap,
    CoefficientForms,
    MultiPoly,
    VariableContext,
    homogeneous_degree,
    random_admissible,
    restrict,
    s_gcd_divide,
    substitute_beta,
    InhomogeneousGenerator,
)
from .varieties import EXTREMAL_TYPES, W, VarietySpec, VarietyType

__all__ = [
    "NonPointedGrading",
    "NoCompatibleExponents",
    "DegenerateCoefficients",
    "StructuralMismatch",
    "UncertifiedCone",
    "CoxPresentation",
    "GitChamberReport",
    "ChamberFinding",
    "t_count",
    "ring_context",
    "grading_matrix",
    "beta_table",
    "solve_beta_exponents",
    "genericity_violations",
    "draw_admissible",
    "build_from_coefficients",
    "build_presentation",
    "hilbert_dim",
    "koszul_quotient_dim",
    "euler_characteristic_w",
    "moving_cone_of_degrees",
    "git_chamber_report",
    "restrict_to_hyperplane",
    "PRINTED_CHAMBERS",
]

log = logging.getLogger(__name__)


class NonPointedGrading(ValueError):
    pass


class NoCompatibleExponents(ValueError):
    def __init__(self, variable: str, residual):
        super().__init__(f"no nonnegative integer S-exponents for {variable}: residual {residual}")
        self.variable = variable
        self.residual = residual


class DegenerateCoefficients(ValueError):
    pass


class StructuralMismatch(AssertionError):
    pass


class UncertifiedCone(AssertionError):
    pass


def _require_extremal(vtype) -> VarietyType:
    vtype = VarietyType(vtype)
    if vtype not in EXTREMAL_TYPES:
        raise ValueError(f"{vtype.symbol} has no finitely generated Cox ring presentation")
    return vtype


def t_count(vtype, n: int) -> int:
    return n + 2 if VarietyType(vtype) is VarietyType.XS else n + 3


def ring_context(vtype, n: int) -> VariableContext:
    return VariableContext.standard(t_count(vtype, n), 3)


# Columns after the (1,-1,-1,-1) block, ending with S1, S2, S3.
_TAIL = {
    VarietyType.X3: [(1, -1, 0, 0), (1, -2, -1, 0), (1, 0, 0, 0), (2, -3, 0, 0),
                     (0, 1, -1, 0), (0, 0, 1, -1), (0, 0, 0, 1)],
    VarietyType.XS: [(1, -1, 0, 0), (1, -3, 0, 0), (1, 0, 0, 0),
                     (0, 1, -1, 0), (0, 0, 1, -1), (0, 0, 0, 1)],
    VarietyType.XS2: [(1, -2, 0, -1), (1, 0, 0, -3), (1, -1, 0, 0), (2, -3, -3, 0),
                      (0, 1, -1, 0), (0, 0, 1, 0), (0, 0, 0, 1)],
    VarietyType.XSSS: [(1, -1, -1, -1), (1, -3, 0, 0), (1, 0, -3, 0), (1, 0, 0, -3),
                       (0, 1, 0, 0), (0, 0, 1, 0), (0, 0, 0, 1)],
}

# S-exponents of T_k (k < n), T_n, T_{n+1}, T_{n+2}[, T_{n+3}] as printed.
_BETA_PRINTED = {
    VarietyType.X3: [(1, 2, 3), (1, 1, 1), (2, 3, 3), (0, 0, 0), (3, 3, 3)],
    VarietyType.XS: [(1, 2, 3), (1, 1, 1), (3, 3, 3), (0, 0, 0)],
    VarietyType.XS2: [(1, 2, 3), (2, 2, 1), (0, 0, 3), (1, 1, 0), (3, 6, 0)],
    VarietyType.XSSS: [(1, 2, 3), (1, 2, 3), (3, 0, 0), (0, 3, 0), (0, 0, 3)],
}

# S-exponents of the printed denominators, one per ideal generator.
_DENOMINATORS = {
    VarietyType.X3: [(2, 3, 3), (3, 3, 3)],
    VarietyType.XS: [(3, 3, 3)],
    VarietyType.XS2: [(2, 2, 0), (3, 6, 3)],
    VarietyType.XSSS: [(0, 0, 0), (3, 3, 3)],
}


def grading_matrix(vtype, n: int) -> IntMatrix:
    vtype = _require_extremal(vtype)
    if n < 3:
        raise ValueError("n must be at least 3")
    cols = [(1, -1, -1, -1)] * (n - 1) + _TAIL[vtype]
    return IntMatrix.from_columns(cols)


def _expand(vtype, n, per_kind):
    # per_kind lists T_k, T_n, T_{n+1}, ...; T_k repeats for k = 1..n-1
    return [per_kind[0]] * (n - 1) + list(per_kind[1:])


def beta_table(vtype, n: int) -> BetaMap:
    """The S-exponents exactly as printed."""
    vtype = _require_extremal(vtype)
    m = t_count(vtype, n)
    exps = _expand(vtype, n, _BETA_PRINTED[vtype])
    assert len(exps) == m
    return BetaMap(VariableContext.standard(m), ring_context(vtype, n), tuple(exps))


def solve_beta_exponents(Q: IntMatrix, n_s: int = 3, names: Optional[Sequence[str]] = None) -> tuple[tuple[int, ...], ...]:
    """S-exponents making every ``T * S^e`` of degree ``(d, 0, 0, 0)``.

    ``d`` is the first-row entry of the T column.  The last ``n_s`` columns of
    ``Q`` are the S columns and must be linearly independent.
    """
    cols = Q.columns()
    s_cols = cols[-n_s:]
    if rank(s_cols) != n_s:
        raise ValueError("the S columns of the grading matrix are dependent")
    rows = [[c[i] for c in s_cols] for i in range(Q.nrows)]
    out = []
    for k, c in enumerate(cols[:-n_s]):
        target = [(c[0] if i == 0 else 0) - c[i] for i in range(Q.nrows)]
        aug = [r + [t] for r, t in zip(rows, target)]
        red, piv = rref(aug)
        name = names[k] if names else f"T{k + 1}"
        if n_s in piv:
            raise NoCompatibleExponents(name, tuple(target))
        sol = [Fraction(0)] * n_s
        for r, p in zip(red, piv):
            sol[p] = r[n_s]
        if any(x.denominator != 1 or x < 0 for x in sol):
            raise NoCompatibleExponents(name, tuple(sol))
        out.append(tuple(int(x) for x in sol))
    return tuple(out)


def genericity_violations(coeffs: CoefficientForms) -> list[str]:
    """Open conditions on the coefficient forms that a usable draw must meet."""
    n, ctx, f = coeffs.n, coeffs.ctx, coeffs.forms

    def c(form, **exps):
        e = [0] * ctx.arity
        for name, x in exps.items():
            e[ctx.index(name)] = x
        return f[form].coefficient(e)

    Tn, Tn1, Tn2 = f"T{n}", f"T{n + 1}", f"T{n + 2}"
    bad = []
    t = coeffs.vtype
    if t == "X3":
        if not c("a1", **{Tn2: 1}):
            bad.append(f"coefficient of {Tn2} in a1 is zero")
        if f["b'"].is_zero():
            bad.append("b' is zero")
    elif t == "XS":
        if not c("a2", **{Tn2: 2}):
            bad.append(f"coefficient of {Tn2}^2 in a2 is zero")
    elif t == "XS2":
        if not c("a3", **{Tn: 1, Tn1: 1}):
            bad.append(f"coefficient of {Tn}*{Tn1} in a3 is zero")
        if not c("a3", **{Tn2: 2}):
            bad.append(f"coefficient of {Tn2}^2 in a3 is zero")
    elif t == "XSSS":
        for v in (Tn1, Tn2):
            if not c("a4", **{v: 1}):
                bad.append(f"coefficient of {v} in a4 is zero")
    elif t == "X12":
        if not c("b5", **{Tn: 2}):
            bad.append(f"coefficient of {Tn}^2 in b5 is zero")
        if not c("a5", **{Tn2: 2}):
            bad.append(f"coefficient of {Tn2}^2 in a5 is zero")
    elif t == "X111":
        if f["b7"].is_zero():
            bad.append("b7 is zero")
    return bad


def draw_admissible(vtype, n: int, seed: int, max_attempts: int = 100, extra_check=None):
    """First draw for ``seed`` that meets the genericity conditions.

    Returns ``(coeffs, notes)``; every rejected attempt leaves a note.
    ``extra_check(coeffs)`` may return further reasons to reject.
    """
    notes = []
    for attempt in range(max_attempts):
        coeffs = random_admissible(vtype, n, seed, attempt)
        bad = genericity_violations(coeffs)
        if not bad and extra_check is not None:
            bad = list(extra_check(coeffs))
        if not bad:
            coeffs.notes.extend(notes)
            return coeffs, notes
        msg = f"seed {seed} attempt {attempt} rejected: {'; '.join(bad)}"
        log.info(msg)
        notes.append(msg)
    raise DegenerateCoefficients(f"no generic draw for {vtype} n={n} seed={seed} in {max_attempts} attempts")


def _t_relations(vtype: VarietyType, n: int, coeffs: CoefficientForms) -> list[MultiPoly]:
    """Relations in Q[T_1..T_m] before the S substitution."""
    m = t_count(vtype, n)
    ctx = VariableContext.standard(m)
    drop = range(m, coeffs.ctx.arity)

    def form(name):
        return coeffs[name].drop_variables(ctx, drop)

    T = lambda k: MultiPoly.var(ctx, k - 1)
    if vtype is VarietyType.X3:
        return [
            T(n + 3) - T(n + 1) * form("a1") - form("b'"),
            T(n + 2) * T(n + 3) + T(n + 1) * form("a'") + form("b1"),
        ]
    if vtype is VarietyType.XS:
        return [T(n + 1) * form("a2") + form("b2")]
    if vtype is VarietyType.XS2:
        return [T(n + 3) - form("a3"), T(n + 1) * T(n + 3) + form("b3")]
    return [T(n + 3) - form("a4"), T(n + 1) * T(n + 2) * T(n + 3) + form("b4")]


@dataclass
class CoxPresentation:
    spec: VarietySpec
    seed: Optional[int]
    ctx: VariableContext
    Q: IntMatrix
    beta: BetaMap
    printed_beta: BetaMap
    generators: list[MultiPoly]
    generator_degrees: list[tuple[int, ...]]
    extracted_denominators: list[tuple[int, ...]]
    printed_denominators: list[tuple[int, ...]]
    coefficients: CoefficientForms
    repair_notes: list[str] = field(default_factory=list)

    @property
    def vtype(self) -> VarietyType:
        return self.spec.type

    @property
    def n(self) -> int:
        return self.spec.n

    @property
    def degrees(self) -> list[tuple[int, ...]]:
        """Degrees of the ring generators (columns of Q)."""
        return self.Q.columns()

    def index_label(self, i: int) -> str:
        """Index of variable i relative to n; S_j follows the last T, block variables show as ``i``."""
        k = i + 1
        if k <= self.block_size:
            return "i"
        off = k - self.n
        return "n" if off == 0 else f"n+{off}" if off > 0 else f"n{off}"

    @property
    def block_size(self) -> int:
        return self.n if self.vtype is VarietyType.XSSS else self.n - 1

    def variable_label(self, i: int) -> str:
        name = self.ctx.names[i]
        if name.startswith("S"):
            return f"S_{name[1:]}"
        k = i + 1
        if k <= self.block_size:
            return "T_i"
        off = k - self.n
        return "T_n" if off == 0 else f"T_{{n+{off}}}"

    def monomial_label(self, m: Sequence[int]) -> str:
        parts = []
        for i, e in enumerate(m):
            if e:
                v = self.variable_label(i)
                parts.append(v if e == 1 else f"{v}^{e}")
        return "".join(parts) or "1"


def _s_monomial(ctx: VariableContext, s_exps: Sequence[int]) -> tuple[int, ...]:
    out = [0] * ctx.arity
    for j, i in enumerate(ctx.indices("S")):
        out[i] = s_exps[j]
    return tuple(out)


def build_from_coefficients(vtype, n: int, coeffs: CoefficientForms, seed: Optional[int] = None,
                            check_generic: bool = True) -> CoxPresentation:
    vtype = _require_extremal(vtype)
    if check_generic:
        bad = genericity_violations(coeffs)
        if bad:
            raise DegenerateCoefficients("; ".join(bad))
    spec = VarietySpec(vtype, n)
    ctx = ring_context(vtype, n)
    Q = grading_matrix(vtype, n)
    printed = beta_table(vtype, n)
    solved = solve_beta_exponents(Q, names=printed.source.names)
    beta = BetaMap(printed.source, ctx, solved)
    notes = []
    for k, (a, b) in enumerate(zip(printed.exponents, solved)):
        if a != b:
            notes.append(
                f"S-exponents of T{k + 1} repaired from {a} to {b} for homogeneity"
            )
    gens, degs, extracted = [], [], []
    printed_dens = [_s_monomial(ctx, d) for d in _DENOMINATORS[vtype]]
    for j, rel in enumerate(_t_relations(vtype, n, coeffs)):
        image = substitute_beta(rel, beta)
        g, mono = s_gcd_divide(image)
        deg = homogeneous_degree(g, Q)
        if mono != printed_dens[j]:
            notes.append(
                f"generator {j + 1}: extracted S-monomial {_s_part(ctx, mono)} differs from printed {_s_part(ctx, printed_dens[j])}"
            )
        try:
            homogeneous_degree(substitute_beta(rel, printed), Q)
        except InhomogeneousGenerator as exc:
            notes.append(f"generator {j + 1}: printed S-exponents give an inhomogeneous image ({exc})")
        gens.append(g)
        degs.append(deg)
        extracted.append(mono)
    return CoxPresentation(
        spec=spec, seed=seed, ctx=ctx, Q=Q, beta=beta, printed_beta=printed,
        generators=gens, generator_degrees=degs, extracted_denominators=extracted,
        printed_denominators=printed_dens, coefficients=coeffs,
        repair_notes=list(coeffs.notes) + notes,
    )


def _s_part(ctx, mono) -> str:
    parts = []
    for i in ctx.indices("S"):
        if mono[i]:
            parts.append(ctx.names[i] + (f"^{mono[i]}" if mono[i] > 1 else ""))
    return "*".join(parts) or "1"


def build_presentation(vtype, n: int, seed: int = 0) -> CoxPresentation:
    vtype = _require_extremal(vtype)
    coeffs, _ = draw_admissible(vtype, n, seed)
    return build_from_coefficients(vtype, n, coeffs, seed=seed)


# -- multigraded Hilbert function ------------------------------------------------------


class _Counter:
    """Counts ``x >= 0`` with ``Q x = w`` for one fixed grading."""

    def __init__(self, Q: IntMatrix):
        cols = Q.columns()
        phi = strict_positive_functional(cols, dim=Q.nrows)
        if phi is None:
            raise NonPointedGrading("no linear form is positive on every degree; counts are infinite")
        self.phi = phi
        self.nrows = Q.nrows
        # basis columns chosen greedily from the end, the rest are enumerated
        basis: list[int] = []
        for j in reversed(range(len(cols))):
            if rank([cols[b] for b in basis + [j]]) > len(basis):
                basis.append(j)
        basis.sort()
        self.basis = basis
        self.free = [j for j in range(len(cols)) if j not in basis]
        self.cols = cols
        self.weights = [sum(a * b for a, b in zip(phi, c)) for c in cols]
        r = len(basis)
        brows = [[cols[b][i] for b in basis] for i in range(Q.nrows)]
        self.rows = [i for i in _independent_rows(brows)]
        sq = [brows[i] for i in self.rows]
        self.det, self.adj = _adjugate(sq)
        self.brows = brows
        assert len(self.rows) == r

    def count(self, w: Sequence[int]) -> int:
        w = tuple(w)
        budget = sum(a * b for a, b in zip(self.phi, w))
        if budget < 0:
            return 0
        free = sorted(self.free, key=lambda j: -self.weights[j])
        cols, weights = self.cols, self.weights
        total = 0
        res = list(w)

        def leaf():
            rhs = [res[i] for i in self.rows]
            y = []
            for arow in self.adj:
                v = sum(a * b for a, b in zip(arow, rhs))
                if v % self.det:
                    return 0
                v //= self.det
                if v < 0:
                    return 0
                y.append(v)
            for i in range(self.nrows):
                if sum(a * b for a, b in zip(self.brows[i], y)) != res[i]:
                    return 0
            return 1

        def rec(k, left):
            nonlocal total
            if k == len(free):
                total += leaf()
                return
            j = free[k]
            c, wt = cols[j], weights[j]
            x = 0
            while True:
                rec(k + 1, left)
                left -= wt
                if left < 0:
                    break
                x += 1
                for i in range(self.nrows):
                    res[i] -= c[i]
            for i in range(self.nrows):
                res[i] += x * c[i]

        rec(0, budget)
        return total


def _independent_rows(rows):
    chosen = []
    for i in range(len(rows)):
        if rank([rows[k] for k in chosen + [i]]) > len(chosen):
            chosen.append(i)
    return chosen


def _adjugate(sq):
    """(det, adjugate) of a square integer matrix, so that adj @ A = det * I."""
    n = len(sq)
    M = IntMatrix(sq, n)
    det = M.det()
    if n == 1:
        return det, [[1]]
    adj = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            minor = [[sq[r][c] for c in range(n) if c != j] for r in range(n) if r != i]
            adj[j][i] = (-1) ** (i + j) * IntMatrix(minor, n - 1).det()
    if det < 0:
        det, adj = -det, [[-x for x in r] for r in adj]
    return det, adj


_COUNTERS: dict[IntMatrix, _Counter] = {}


def hilbert_dim(Q: IntMatrix, w: Sequence[int]) -> int:
    """Number of monomials of Q-degree w in the polynomial ring graded by Q."""
    if len(w) != Q.nrows:
        raise ValueError(f"degree of length {len(w)} for a grading with {Q.nrows} rows")
    counter = _COUNTERS.get(Q)
    if counter is None:
        counter = _COUNTERS[Q] = _Counter(Q)
    return counter.count(w)


def _sub(a, b):
    return tuple(x - y for x, y in zip(a, b))


def koszul_quotient_dim(p: CoxPresentation, w: Sequence[int] = W) -> int:
    """Dimension of the degree-w part of the quotient by a regular sequence."""
    w = tuple(w)
    degs = p.generator_degrees
    total = 0
    for k in range(len(degs) + 1):
        for sub in combinations(degs, k):
            shift = w
            for d in sub:
                shift = _sub(shift, d)
            total += (-1) ** k * hilbert_dim(p.Q, shift)
    return total


def euler_characteristic_w(n: int) -> int:
    """chi(W) for W = 4H - 3E1 - 2E2 - E3 on a blown-up cubic n-fold.

    Quartic sections of the cubic minus the conditions imposed by points of
    multiplicity 3, 2 and 1.
    """
    quartics = comb(n + 5, 4) - (n + 2)
    return quartics - sum(comb(m - 1 + n, n) for m in (3, 2, 1))


# -- moving cone and GIT chamber -----------------------------------------------------------


def moving_cone_of_degrees(degrees: Sequence[Sequence[int]]) -> Cone:
    """Intersection of the cones spanned by all but one of the degrees.

    Degrees are a list: a degree occurring twice survives every omission.
    """
    degrees = [tuple(d) for d in degrees]
    if len(degrees) < 2:
        raise ValueError("need at least two degrees")
    d = len(degrees[0])
    cones = [Cone(degrees[:i] + degrees[i + 1:], d) for i in range(len(degrees))]
    return intersect_all(cones)


# index families and certificates as printed, keyed by index labels
PRINTED_CHAMBERS = {
    VarietyType.X3: {
        ("i", "n+1", "n+2"): (1, "T_{n+1}T_{n+2}^2"),
        ("i", "n", "n+4"): (2, "T_n^3"),
        ("n+3", "n+4", "n+5"): (1, "T_{n+3}S_1"),
    },
    VarietyType.XS: {("i", "n", "n+3"): (1, "T_n^3")},
    VarietyType.XS2: {
        ("i", "n+2", "n+4"): (1, "T_{n+2}^2"),
        ("n", "n+2", "n+4"): (1, "T_{n+2}^2"),
    },
    VarietyType.XSSS: {},
}


@dataclass
class ChamberFinding:
    indices: tuple[int, ...]
    family: tuple[str, ...]
    certificates: list[tuple[int, str]]

    @property
    def certified(self) -> bool:
        return bool(self.certificates)


@dataclass
class GitChamberReport:
    vtype: VarietyType
    n: int
    w: tuple[int, ...]
    two_cones_containing_w: list[tuple[int, ...]]
    findings: list[ChamberFinding]
    families_found: dict[tuple[str, ...], list[tuple[int, str]]]
    families_printed: dict[tuple[str, ...], tuple[int, str]]
    certificate_mismatches: list[str]

    @property
    def uncertified(self) -> list[ChamberFinding]:
        return [f for f in self.findings if not f.certified]

    @property
    def families_match(self) -> bool:
        return set(self.families_found) == set(self.families_printed)

    @property
    def full_dimensional(self) -> bool:
        return not self.two_cones_containing_w and not self.uncertified

    @property
    def ok(self) -> bool:
        return self.full_dimensional and self.families_match


def git_chamber_report(p: CoxPresentation, w: Sequence[int] = W, strict: bool = False) -> GitChamberReport:
    """Check that w avoids 2-cones and every 3-cone around w is certified.

    A 3-subset I whose cone holds w in its relative interior is certified
    when some generator, with the variables outside I set to 0, is a single
    monomial.  With ``strict`` an uncertified cone raises UncertifiedCone.
    """
    w = tuple(w)
    degs = p.degrees
    two = []
    for idx in combinations(range(len(degs)), 2):
        if Cone([degs[i] for i in idx], len(w)).contains(w):
            two.append(tuple(i + 1 for i in idx))
    findings = []
    cone_cache: dict[frozenset, bool] = {}
    for idx in combinations(range(len(degs)), 3):
        key = frozenset(degs[i] for i in idx)
        if len(key) < 3:
            continue  # parallel or repeated degrees span at most a 2-cone
        if key not in cone_cache:
            cone_cache[key] = Cone([degs[i] for i in idx], len(w)).contains(w, "relative_interior")
        if not cone_cache[key]:
            continue
        certs = []
        for j, g in enumerate(p.generators):
            r = restrict(g, idx)
            if len(r) == 1:
                (mono, _), = r.terms.items()
                certs.append((j + 1, p.monomial_label(mono)))
        family = tuple(p.index_label(i) for i in idx)
        findings.append(ChamberFinding(tuple(i + 1 for i in idx), family, certs))
    fams: dict[tuple[str, ...], list[tuple[int, str]]] = {}
    for f in findings:
        fams.setdefault(f.family, [])
        for c in f.certificates:
            if c not in fams[f.family]:
                fams[f.family].append(c)
    printed = PRINTED_CHAMBERS[p.vtype]
    mismatches = []
    for fam, (gen, text) in printed.items():
        found = fams.get(fam)
        if found is None:
            continue
        if (gen, text) not in found:
            mismatches.append(
                f"family {{{', '.join(fam)}}}: printed f_{gen}^I = {text}, found "
                + ", ".join(f"f_{g}^I = {t}" for g, t in found)
            )
    report = GitChamberReport(p.vtype, p.n, w, two, findings, fams, dict(printed), mismatches)
    if strict and report.uncertified:
        bad = report.uncertified[0]
        raise UncertifiedCone(f"cone on indices {bad.indices} contains w but no restricted generator is a monomial")
    return report


# -- restriction to T_1 = 0 ----------------------------------------------------------------


def restrict_to_hyperplane(p: CoxPresentation) -> CoxPresentation:
    """The presentation for n-1 obtained by setting T_1 = 0.

    The result is cross-checked against a fresh build from the specialised
    coefficient forms; any disagreement raises StructuralMismatch.
    """
    n = p.n
    if n <= 3:
        raise ValueError("restriction needs n > 3")
    vt = p.vtype
    ctx = ring_context(vt, n - 1)
    gens = [g.drop_variables(ctx, [0]) for g in p.generators]
    Q = IntMatrix.from_columns(p.Q.columns()[1:])
    if Q != grading_matrix(vt, n - 1):
        raise StructuralMismatch("grading matrix without its first column is not the one for n-1")
    if any(g.is_zero() for g in gens):
        raise StructuralMismatch("a generator vanishes on T_1 = 0")
    degs = [homogeneous_degree(g, Q) for g in gens]
    if degs != p.generator_degrees:
        raise StructuralMismatch(f"generator degrees changed from {p.generator_degrees} to {degs}")
    c = p.coefficients
    small = VariableContext.standard(c.ctx.arity - 1)
    forms = {k: v.drop_variables(small, [0]) for k, v in c.forms.items()}
    coeffs = CoefficientForms(c.vtype, n - 1, small, forms, list(c.notes) + ["specialised at T1 = 0"])
    fresh = build_from_coefficients(vt, n - 1, coeffs, seed=p.seed, check_generic=False)
    if fresh.generators != gens:
        raise StructuralMismatch("generators with T_1 = 0 differ from the presentation built for n-1")
    fresh.repair_notes.append(f"restricted from n={n} by T1 = 0")
    return fresh
