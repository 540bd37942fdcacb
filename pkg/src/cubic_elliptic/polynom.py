"""Sparse multivariate polynomials over Q.

A :class:`MultiPoly` maps exponent tuples to nonzero ``Fraction``
coefficients.  The variable names live in a :class:`VariableContext`; two
polynomials can only be combined when their contexts agree.

The grammar accepted by :func:`parse_poly`::

    poly   := ['+'|'-'] term (('+'|'-') term)*
    term   := factor ('*' factor)*
    factor := INT ['/' INT] | NAME ['^' INT]

Whitespace is ignored everywhere.
"""

from __future__ import annotations

import random
import re
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations_with_replacement
from typing import Iterable, Mapping, Optional, Sequence

from .linalg import IntMatrix

__all__ = [
    "VariableContext",
    "Monomial",
    "MultiPoly",
    "PolySyntaxError",
    "UnknownVariable",
    "InhomogeneousGenerator",
    "BetaMap",
    "parse_poly",
    "monomial_degree",
    "homogeneous_degree",
    "substitute_beta",
    "s_gcd_divide",
    "restrict",
    "monomials_of_degree",
    "random_admissible",
    "CoefficientForms",
    "SMALL_RATIONALS",
]

Monomial = tuple[int, ...]


class PolySyntaxError(ValueError):
    def __init__(self, message: str, position: int, text: str):
        super().__init__(f"{message} at position {position}: {text!r}")
        self.position = position
        self.text = text


class UnknownVariable(PolySyntaxError):
    pass


class InhomogeneousGenerator(ValueError):
    """Two terms of a polynomial have different multidegrees."""

    def __init__(self, witnesses):
        (m1, d1), (m2, d2) = witnesses
        super().__init__(f"monomial {m1} has degree {d1} but {m2} has degree {d2}")
        self.witnesses = witnesses


@dataclass(frozen=True)
class VariableContext:
    names: tuple[str, ...]

    def __init__(self, names: Iterable[str]):
        names = tuple(names)
        if len(set(names)) != len(names):
            raise ValueError("duplicate variable names")
        object.__setattr__(self, "names", names)

    @classmethod
    def standard(cls, n_t: int, n_s: int = 0, t_name: str = "T", s_name: str = "S") -> "VariableContext":
        return cls([f"{t_name}{i}" for i in range(1, n_t + 1)] + [f"{s_name}{i}" for i in range(1, n_s + 1)])

    @property
    def arity(self) -> int:
        return len(self.names)

    def index(self, name: str) -> int:
        return self.names.index(name)

    def indices(self, prefix: str) -> list[int]:
        pat = re.compile(re.escape(prefix) + r"\d+$")
        return [i for i, nm in enumerate(self.names) if pat.match(nm)]

    def __len__(self):
        return len(self.names)


def _fmt_coeff(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


class MultiPoly:
    """Immutable sparse polynomial with rational coefficients."""

    __slots__ = ("ctx", "terms", "_hash")

    def __init__(self, ctx: VariableContext, terms: Mapping[Monomial, object] = ()):
        clean: dict[Monomial, Fraction] = {}
        items = terms.items() if isinstance(terms, Mapping) else terms
        for m, c in items:
            m = tuple(m)
            if len(m) != ctx.arity:
                raise ValueError(f"monomial {m} does not match arity {ctx.arity}")
            if any(e < 0 for e in m):
                raise ValueError(f"negative exponent in {m}")
            c = Fraction(c)
            if c:
                clean[m] = clean.get(m, Fraction(0)) + c
                if not clean[m]:
                    del clean[m]
        self.ctx = ctx
        self.terms = clean
        self._hash = None

    @classmethod
    def _raw(cls, ctx, terms):
        p = cls.__new__(cls)
        p.ctx, p.terms, p._hash = ctx, terms, None
        return p

    # -- constructors -----------------------------------------------------------

    @classmethod
    def zero(cls, ctx):
        return cls._raw(ctx, {})

    @classmethod
    def constant(cls, ctx, c):
        return cls(ctx, {(0,) * ctx.arity: c})

    @classmethod
    def monomial(cls, ctx, exps: Sequence[int], c=1):
        return cls(ctx, {tuple(exps): c})

    @classmethod
    def var(cls, ctx, i: int):
        e = [0] * ctx.arity
        e[i] = 1
        return cls._raw(ctx, {tuple(e): Fraction(1)})

    # -- arithmetic -------------------------------------------------------------

    def _check(self, other):
        if isinstance(other, MultiPoly):
            if other.ctx != self.ctx:
                raise ValueError("polynomials live in different rings")
            return other
        return MultiPoly.constant(self.ctx, other)

    def __add__(self, other):
        other = self._check(other)
        out = dict(self.terms)
        for m, c in other.terms.items():
            v = out.get(m, 0) + c
            if v:
                out[m] = v
            else:
                out.pop(m, None)
        return MultiPoly._raw(self.ctx, out)

    __radd__ = __add__

    def __neg__(self):
        return MultiPoly._raw(self.ctx, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._check(other))

    def __rsub__(self, other):
        return self._check(other) - self

    def __mul__(self, other):
        if not isinstance(other, MultiPoly):
            c = Fraction(other)
            if not c:
                return MultiPoly.zero(self.ctx)
            return MultiPoly._raw(self.ctx, {m: c * v for m, v in self.terms.items()})
        other = self._check(other)
        out: dict[Monomial, Fraction] = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = tuple(a + b for a, b in zip(m1, m2))
                v = out.get(m, 0) + c1 * c2
                if v:
                    out[m] = v
                else:
                    out.pop(m, None)
        return MultiPoly._raw(self.ctx, out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative power")
        out = MultiPoly.constant(self.ctx, 1)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __eq__(self, other):
        if isinstance(other, MultiPoly):
            return self.ctx == other.ctx and self.terms == other.terms
        if not self.terms:
            return Fraction(other) == 0
        return self.terms == {(0,) * self.ctx.arity: Fraction(other)}

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.ctx, frozenset(self.terms.items())))
        return self._hash

    def __bool__(self):
        return bool(self.terms)

    def __len__(self):
        return len(self.terms)

    # -- inspection -------------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def coefficient(self, exps: Sequence[int]) -> Fraction:
        return self.terms.get(tuple(exps), Fraction(0))

    def total_degrees(self) -> set[int]:
        return {sum(m) for m in self.terms}

    def is_homogeneous(self) -> bool:
        return len(self.total_degrees()) <= 1

    def variables(self) -> set[int]:
        return {i for m in self.terms for i, e in enumerate(m) if e}

    def sorted_terms(self) -> list[tuple[Monomial, Fraction]]:
        """Terms by decreasing total degree, then lexicographically decreasing."""
        return sorted(self.terms.items(), key=lambda t: (-sum(t[0]), tuple(-e for e in t[0])))

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        out = []
        for k, (m, c) in enumerate(self.sorted_terms()):
            factors = [
                nm if e == 1 else f"{nm}^{e}" for nm, e in zip(self.ctx.names, m) if e
            ]
            sign = "-" if c < 0 else "+"
            a = abs(c)
            if not factors:
                body = _fmt_coeff(a)
            elif a == 1:
                body = "*".join(factors)
            else:
                body = _fmt_coeff(a) + "*" + "*".join(factors)
            if k == 0:
                out.append(("-" if sign == "-" else "") + body)
            else:
                out.append(f" {sign} {body}")
        return "".join(out)

    def __repr__(self) -> str:
        return f"MultiPoly({str(self)!r})"

    # -- substitutions ----------------------------------------------------------

    def evaluate(self, point: Sequence) -> Fraction:
        pt = [Fraction(x) for x in point]
        total = Fraction(0)
        for m, c in self.terms.items():
            v = c
            for x, e in zip(pt, m):
                if e:
                    v *= x**e
            total += v
        return total

    def derivative(self, i: int) -> "MultiPoly":
        out = {}
        for m, c in self.terms.items():
            if m[i]:
                mm = list(m)
                mm[i] -= 1
                out[tuple(mm)] = c * m[i]
        return MultiPoly._raw(self.ctx, out)

    def gradient(self) -> list["MultiPoly"]:
        return [self.derivative(i) for i in range(self.ctx.arity)]

    def compose(self, images: Sequence["MultiPoly"]) -> "MultiPoly":
        """Substitute variable i by ``images[i]`` (all in one target ring)."""
        if len(images) != self.ctx.arity:
            raise ValueError("need one image per variable")
        if not images:
            return self
        tgt = images[0].ctx
        powers: dict[tuple[int, int], MultiPoly] = {}

        def pw(i, e):
            key = (i, e)
            if key not in powers:
                powers[key] = images[i] if e == 1 else pw(i, e - 1) * images[i]
            return powers[key]

        out = MultiPoly.zero(tgt)
        for m, c in self.terms.items():
            t = MultiPoly.constant(tgt, c)
            for i, e in enumerate(m):
                if e:
                    t = t * pw(i, e)
            out = out + t
        return out

    def with_context(self, ctx: VariableContext) -> "MultiPoly":
        """Same exponents, renamed variables (arity must agree)."""
        if ctx.arity != self.ctx.arity:
            raise ValueError("arity mismatch")
        return MultiPoly._raw(ctx, dict(self.terms))

    def embed(self, ctx: VariableContext, positions: Sequence[int]) -> "MultiPoly":
        """Move variable i to position ``positions[i]`` of a larger ring."""
        out = {}
        for m, c in self.terms.items():
            e = [0] * ctx.arity
            for i, x in enumerate(m):
                e[positions[i]] += x
            out[tuple(e)] = c
        return MultiPoly._raw(ctx, out)

    def drop_variables(self, ctx: VariableContext, drop: Iterable[int]) -> "MultiPoly":
        """Set the ``drop`` variables to 0 and delete them from the ring."""
        drop = set(drop)
        keep = [i for i in range(self.ctx.arity) if i not in drop]
        if len(keep) != ctx.arity:
            raise ValueError("target ring has the wrong arity")
        out = {}
        for m, c in self.terms.items():
            if any(m[i] for i in drop):
                continue
            out[tuple(m[i] for i in keep)] = c
        return MultiPoly._raw(ctx, out)


# -- parsing ---------------------------------------------------------------------

_TOKEN = re.compile(r"\s*(?:(?P<num>\d+)|(?P<name>[A-Za-z_][A-Za-z_0-9]*)|(?P<op>[-+*/^]))")


def _tokenize(text: str):
    pos = 0
    toks = []
    while True:
        while pos < len(text) and text[pos].isspace():
            pos += 1
        if pos == len(text):
            return toks
        m = _TOKEN.match(text, pos)
        if not m:
            raise PolySyntaxError("unexpected character", pos, text)
        kind = m.lastgroup
        toks.append((kind, m.group(kind), m.start(kind)))
        pos = m.end()


def parse_poly(text: str, ctx: VariableContext) -> MultiPoly:
    toks = _tokenize(text)
    if not toks:
        raise PolySyntaxError("empty polynomial", 0, text)
    i = 0

    def peek():
        return toks[i] if i < len(toks) else (None, None, len(text))

    def expect_int():
        nonlocal i
        kind, val, pos = peek()
        if kind != "num":
            raise PolySyntaxError("expected an integer", pos, text)
        i += 1
        return int(val)

    def factor():
        nonlocal i
        kind, val, pos = peek()
        if kind == "num":
            i += 1
            num = int(val)
            if peek()[1] == "/":
                i += 1
                den = expect_int()
                if den == 0:
                    raise PolySyntaxError("zero denominator", pos, text)
                return Fraction(num, den), None
            return Fraction(num), None
        if kind == "name":
            i += 1
            if val not in ctx.names:
                raise UnknownVariable(f"unknown variable {val!r}", pos, text)
            e = 1
            if peek()[1] == "^":
                i += 1
                e = expect_int()
            return Fraction(1), (ctx.index(val), e)
        raise PolySyntaxError("expected a number or a variable", pos, text)

    def term():
        nonlocal i
        coeff = Fraction(1)
        exps = [0] * ctx.arity
        while True:
            c, v = factor()
            coeff *= c
            if v is not None:
                exps[v[0]] += v[1]
            if peek()[1] == "*":
                i += 1
                continue
            return coeff, tuple(exps)

    out: dict[Monomial, Fraction] = {}
    sign = 1
    if peek()[0] == "op" and peek()[1] in "+-":
        sign = -1 if peek()[1] == "-" else 1
        i += 1
    while True:
        c, m = term()
        out[m] = out.get(m, Fraction(0)) + sign * c
        kind, val, pos = peek()
        if kind is None:
            break
        if kind == "op" and val in "+-":
            sign = -1 if val == "-" else 1
            i += 1
            continue
        raise PolySyntaxError(f"unexpected {val!r}", pos, text)
    return MultiPoly(ctx, out)


# -- gradings and substitutions -----------------------------------------------------


def monomial_degree(m: Sequence[int], Q: IntMatrix) -> tuple[int, ...]:
    if len(m) != Q.ncols:
        raise ValueError(f"monomial of length {len(m)} against a grading with {Q.ncols} columns")
    return Q @ m


def homogeneous_degree(p: MultiPoly, Q: IntMatrix) -> tuple[int, ...]:
    """The common Q-degree of all terms of p."""
    if p.is_zero():
        raise ValueError("the zero polynomial has no degree")
    first = None
    for m, _ in p.sorted_terms():
        d = monomial_degree(m, Q)
        if first is None:
            first = (m, d)
        elif d != first[1]:
            raise InhomogeneousGenerator((first, (m, d)))
    return first[1]


@dataclass(frozen=True)
class BetaMap:
    """``T_k -> T_k * S1^e1 * S2^e2 * S3^e3`` for every source variable.

    ``source`` holds the T variables only; ``target`` is ``source`` followed
    by the S variables.
    """

    source: VariableContext
    target: VariableContext
    exponents: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        if len(self.exponents) != self.source.arity:
            raise ValueError("one exponent vector per source variable")
        n_s = self.target.arity - self.source.arity
        for e in self.exponents:
            if len(e) != n_s or any(x < 0 for x in e):
                raise ValueError(f"bad S-exponent vector {e}")

    def image_exponents(self, k: int) -> Monomial:
        e = [0] * self.target.arity
        e[k] = 1
        for j, x in enumerate(self.exponents[k]):
            e[self.source.arity + j] = x
        return tuple(e)


def substitute_beta(p: MultiPoly, beta: BetaMap) -> MultiPoly:
    if p.ctx != beta.source:
        raise ValueError("polynomial is not in the source ring of the substitution")
    ns = beta.source.arity
    out = {}
    for m, c in p.terms.items():
        e = list(m) + [0] * (beta.target.arity - ns)
        for k, x in enumerate(m):
            if x:
                for j, s in enumerate(beta.exponents[k]):
                    e[ns + j] += x * s
        out[tuple(e)] = c
    return MultiPoly._raw(beta.target, out)


def s_gcd_divide(p: MultiPoly, s_prefix: str = "S") -> tuple[MultiPoly, Monomial]:
    """Divide p by the largest monomial in the S variables dividing every term."""
    if p.is_zero():
        raise ValueError("cannot extract a gcd from the zero polynomial")
    s_idx = p.ctx.indices(s_prefix)
    g = [0] * p.ctx.arity
    for i in s_idx:
        g[i] = min(m[i] for m in p.terms)
    out = {tuple(a - b for a, b in zip(m, g)): c for m, c in p.terms.items()}
    return MultiPoly._raw(p.ctx, out), tuple(g)


def restrict(p: MultiPoly, keep: Iterable[int]) -> MultiPoly:
    """Set every variable outside ``keep`` (0-based indices) to zero."""
    keep = set(keep)
    out = {m: c for m, c in p.terms.items() if all(e == 0 or i in keep for i, e in enumerate(m))}
    return MultiPoly._raw(p.ctx, out)


def monomials_of_degree(variables: Sequence[int], arity: int, degree: int) -> list[Monomial]:
    """All monomials of total ``degree`` in the given variables (0-based)."""
    out = []
    for combo in combinations_with_replacement(variables, degree):
        e = [0] * arity
        for v in combo:
            e[v] += 1
        out.append(tuple(e))
    return out


# -- seeded coefficient forms ----------------------------------------------------------

SMALL_RATIONALS = tuple(
    sorted({Fraction(p, q) for p in range(-3, 4) for q in (1, 2)})
)
_NONZERO = tuple(x for x in SMALL_RATIONALS if x)


@dataclass
class CoefficientForms:
    """Named coefficient forms of a normal-form cubic, all in the T ring."""

    vtype: str
    n: int
    ctx: VariableContext
    forms: dict[str, MultiPoly]
    notes: list[str] = field(default_factory=list)

    def __getitem__(self, name: str) -> MultiPoly:
        return self.forms[name]


def _rng(*key) -> random.Random:
    return random.Random(":".join(str(k) for k in key))


def _form(rng, ctx, variables, degree, zero=(), nonzero=()):
    zero, nonzero = set(zero), set(nonzero)
    out = {}
    for m in monomials_of_degree(variables, ctx.arity, degree):
        if m in zero:
            continue
        out[m] = rng.choice(_NONZERO if m in nonzero else SMALL_RATIONALS)
    return MultiPoly(ctx, out)


def _mono(ctx, **exps) -> Monomial:
    e = [0] * ctx.arity
    for name, x in exps.items():
        e[ctx.index(name)] += x
    return tuple(e)


def _split_quadratic(rng, ctx, u: str, v: str) -> dict[Monomial, Fraction]:
    """Coefficients of ``g*(v - r1*u)*(v - r2*u)`` with distinct nonzero r1, r2."""
    r1, r2 = rng.sample(_NONZERO, 2)
    g = rng.choice(_NONZERO)
    return {
        _mono(ctx, **{v: 2}): g,
        _mono(ctx, **{u: 1, v: 1}): -g * (r1 + r2),
        _mono(ctx, **{u: 2}): g * r1 * r2,
    }


def random_admissible(vtype: str, n: int, seed: int, attempt: int = 0) -> CoefficientForms:
    """Seeded coefficient forms for the normal form of a variety type.

    Required zero coefficients are left out, required nonzero ones come from
    the nonzero small rationals, everything else from ``SMALL_RATIONALS``.
    ``attempt`` selects an independent redraw for the same seed.
    """
    if n < 3:
        raise ValueError("n must be at least 3")
    vtype = str(getattr(vtype, "value", vtype))
    rng = _rng(vtype, n, seed, attempt)
    ctx = VariableContext.standard(n + 3)
    T = list(range(n + 3))  # 0-based: T[k-1] is T_k
    upto = lambda k: T[:k]
    Tn, Tn1, Tn2 = f"T{n}", f"T{n + 1}", f"T{n + 2}"
    forms: dict[str, MultiPoly] = {}
    notes: list[str] = []
    if vtype == "X3":
        forms["a'"] = _form(rng, ctx, upto(n + 1), 2)
        forms["a1"] = _form(rng, ctx, upto(n + 2), 1)
        forms["b'"] = _form(rng, ctx, upto(n), 2, zero={_mono(ctx, **{Tn: 2})})
        forms["b1"] = _form(rng, ctx, upto(n), 3, nonzero={_mono(ctx, **{Tn: 3})})
    elif vtype == "XS":
        forms["a2"] = _form(rng, ctx, upto(n + 2), 2)
        forms["b2"] = _form(rng, ctx, upto(n), 3, nonzero={_mono(ctx, **{Tn: 3})})
    elif vtype == "XS2":
        # the tangent hyperplane at the double point is normalised to T_n = 0
        cross = {_mono(ctx, **{f"T{k}": 1, Tn1: 1}) for k in range(1, n)}
        zero = {_mono(ctx, **{Tn1: 2}), _mono(ctx, **{Tn1: 1, Tn2: 1})} | cross
        forms["a3"] = _form(rng, ctx, upto(n + 2), 2, zero=zero)
        forms["b3"] = _form(rng, ctx, upto(n), 3)
    elif vtype == "XSSS":
        forms["a4"] = _form(rng, ctx, upto(n + 2), 1)
        forms["b4"] = _form(rng, ctx, upto(n), 3)
    elif vtype == "X12":
        forms["a5"] = _form(rng, ctx, upto(n + 2), 2)
        forms["b5"] = _form(rng, ctx, upto(n), 2)
        forms["c5"] = _form(rng, ctx, upto(n), 3)
    elif vtype in ("XS11", "X111"):
        # restricted to the line the quadric must split over Q
        a = _form(rng, ctx, upto(n + 2), 2)
        terms = {m: c for m, c in a.terms.items() if any(m[i] for i in range(n))}
        terms.update(_split_quadratic(rng, ctx, Tn1, Tn2))
        if vtype == "XS11":
            forms["a6"] = MultiPoly(ctx, terms)
            forms["b6"] = _form(rng, ctx, upto(n), 3)
        else:
            forms["a7"] = MultiPoly(ctx, terms)
            forms["b7"] = _form(rng, ctx, upto(n), 2)
            forms["c7"] = _form(rng, ctx, upto(n), 3)
        notes.append("quadric restricted to the line drawn as a product of rational linear forms")
    else:
        raise ValueError(f"unknown variety type {vtype!r}")
    return CoefficientForms(vtype, n, ctx, forms, notes)
