"""The umbral expression AST and the evaluation functional E.

Correlation semantics
---------------------
Within one expression, atoms with the same name and prime count denote the
SAME umbra; distinct labels denote similar-but-uncorrelated umbrae.  E is
linear and multiplicative across distinct labels:

    E[a^i g^j] = a_i g_j   (distinct labels),
    E[a^i a^j] = a_{i+j}   (equal labels).

Every application of Dot, DotPower, InverseDot, CompInv, Adjoint, Deriv,
DisjointSum, DisjointDiff, Bar or Fresh produces an auxiliary umbra that is a
fresh symbol, uncorrelated with everything else (including other occurrences
built from the same operands).  Bind such a value to a name in the
environment if you need two correlated occurrences of it.

``evaluate(e, order)`` returns the umbra denoted by ``e``: its n-th moment is
E[e^n], computed by expanding e^n into monomials over the labelled atoms and
applying the product rule above.  Moments may be polynomials in x, y.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Mapping, Union

from .errors import OrderMismatchError, UnknownUmbraError
from .poly import Poly, Value, collapse
from .umbra import (
    BUILTIN_UMBRAE,
    Umbra,
    adjoint,
    comp_inverse,
    derivative_umbra,
    disjoint_diff,
    disjoint_sum,
    dot,
    dot_power,
    inverse_dot,
    overbar_umbra,
)

Span = Union[tuple[int, int], None]


@dataclass(frozen=True)
class Expr:
    """Base class; span is source info only and never affects equality."""


@dataclass(frozen=True)
class Atom(Expr):
    name: str
    primes: int = 0
    span: Span = field(default=None, compare=False)


@dataclass(frozen=True)
class Indet(Expr):
    var: str
    power: int = 1
    span: Span = field(default=None, compare=False)


@dataclass(frozen=True)
class Const(Expr):
    value: Fraction
    span: Span = field(default=None, compare=False)


@dataclass(frozen=True)
class Sum(Expr):
    left: Expr
    right: Expr
    span: Span = field(default=None, compare=False)


@dataclass(frozen=True)
class Product(Expr):
    left: Expr
    right: Expr
    span: Span = field(default=None, compare=False)


@dataclass(frozen=True)
class ScalarMul(Expr):
    scalar: Fraction
    expr: Expr
    span: Span = field(default=None, compare=False)


@dataclass(frozen=True)
class Dot(Expr):
    left: Expr
    right: Expr
    span: Span = field(default=None, compare=False)


@dataclass(frozen=True)
class DotPower(Expr):
    expr: Expr
    power: int
    span: Span = field(default=None, compare=False)


@dataclass(frozen=True)
class Power(Expr):
    expr: Expr
    power: int
    span: Span = field(default=None, compare=False)


@dataclass(frozen=True)
class InverseDot(Expr):
    expr: Expr
    span: Span = field(default=None, compare=False)


@dataclass(frozen=True)
class CompInv(Expr):
    expr: Expr
    span: Span = field(default=None, compare=False)


@dataclass(frozen=True)
class Adjoint(Expr):
    expr: Expr
    span: Span = field(default=None, compare=False)


@dataclass(frozen=True)
class Deriv(Expr):
    expr: Expr
    span: Span = field(default=None, compare=False)


@dataclass(frozen=True)
class Bar(Expr):
    expr: Expr
    span: Span = field(default=None, compare=False)


@dataclass(frozen=True)
class Fresh(Expr):
    """An uncorrelated copy of a composite expression (a prime on a non-atom)."""

    expr: Expr
    span: Span = field(default=None, compare=False)


@dataclass(frozen=True)
class DisjointSum(Expr):
    left: Expr
    right: Expr
    span: Span = field(default=None, compare=False)


@dataclass(frozen=True)
class DisjointDiff(Expr):
    left: Expr
    right: Expr
    span: Span = field(default=None, compare=False)


MomentSource = Union[Umbra, Callable[[int], Umbra]]
Environment = Mapping[str, MomentSource]


def default_environment() -> dict[str, MomentSource]:
    return dict(BUILTIN_UMBRAE)


# ---------------------------------------------------------------------------
# Evaluation

# A monomial over labelled atoms: (sorted ((label, exp), ...), x-exp, y-exp).
_Monomial = tuple[tuple[tuple, ...], int, int]
_UNIT: _Monomial = ((), 0, 0)


def _madd(p: dict, key: _Monomial, c: Fraction) -> None:
    s = p.get(key, Fraction(0)) + c
    if s:
        p[key] = s
    else:
        p.pop(key, None)


def _umul(p: dict, q: dict) -> dict:
    out: dict[_Monomial, Fraction] = {}
    for (atoms1, x1, y1), c1 in p.items():
        for (atoms2, x2, y2), c2 in q.items():
            merged = dict(atoms1)
            for label, e in atoms2:
                merged[label] = merged.get(label, 0) + e
            key = (tuple(sorted(merged.items())), x1 + x2, y1 + y2)
            _madd(out, key, c1 * c2)
    return out


class _Evaluator:
    def __init__(self, order: int, env: Environment):
        self.order = order
        self.env = env
        self._fresh = 0
        self._sources: dict[tuple, Callable[[int], Umbra]] = {}
        self._cache: dict[tuple, list[Value]] = {}

    # -- atom bookkeeping ----------------------------------------------

    def _named(self, name: str, primes: int) -> tuple:
        label = ("atom", name, primes)
        if label not in self._sources:
            if name not in self.env:
                raise UnknownUmbraError(f"unknown umbra {name!r}")
            src = self.env[name]
            if isinstance(src, Umbra):
                fixed = src

                def fn(k: int, fixed=fixed, name=name) -> Umbra:
                    if k > fixed.order:
                        raise OrderMismatchError(
                            f"umbra {name!r} defines moments only to order {fixed.order}"
                        )
                    return fixed.truncated(k)

                self._sources[label] = fn
            else:
                self._sources[label] = src
        return label

    def _opaque(self, fn: Callable[[int], Umbra]) -> tuple:
        self._fresh += 1
        label = ("aux", self._fresh)
        self._sources[label] = fn
        return label

    def _atom_moment(self, label: tuple, e: int) -> Value:
        have = self._cache.get(label)
        if have is None or len(have) <= e:
            u = self._sources[label](max(e, self.order))
            have = list(u.moments)
            self._cache[label] = have
        return have[e]

    # -- normalization to a polynomial over atoms ------------------------

    def upoly(self, expr: Expr) -> dict:
        if isinstance(expr, Atom):
            label = self._named(expr.name, expr.primes)
            return {(((label, 1),), 0, 0): Fraction(1)}
        if isinstance(expr, Indet):
            if expr.var not in ("x", "y"):
                raise UnknownUmbraError(f"unknown indeterminate {expr.var!r}")
            dx = expr.power if expr.var == "x" else 0
            dy = expr.power if expr.var == "y" else 0
            return {((), dx, dy): Fraction(1)}
        if isinstance(expr, Const):
            return {_UNIT: Fraction(expr.value)} if expr.value else {}
        if isinstance(expr, Sum):
            out = self.upoly(expr.left)
            for key, c in self.upoly(expr.right).items():
                _madd(out, key, c)
            return out
        if isinstance(expr, Product):
            return _umul(self.upoly(expr.left), self.upoly(expr.right))
        if isinstance(expr, ScalarMul):
            c = Fraction(expr.scalar)
            return {key: c * v for key, v in self.upoly(expr.expr).items()} if c else {}
        if isinstance(expr, Power):
            if expr.power < 0:
                raise ValueError("powers must be nonnegative")
            out = {_UNIT: Fraction(1)}
            base = self.upoly(expr.expr)
            for _ in range(expr.power):
                out = _umul(out, base)
            return out
        return {(((self._opaque(self._opaque_fn(expr)), 1),), 0, 0): Fraction(1)}

    def _opaque_fn(self, expr: Expr) -> Callable[[int], Umbra]:
        env = self.env
        if isinstance(expr, Dot):
            left, right = expr.left, expr.right
            if isinstance(left, Const):
                return lambda k: dot(left.value, evaluate(right, k, env))
            return lambda k: dot(evaluate(left, k, env), evaluate(right, k, env))
        if isinstance(expr, DotPower):
            return lambda k: dot_power(evaluate(expr.expr, k, env), expr.power)
        if isinstance(expr, InverseDot):
            return lambda k: inverse_dot(evaluate(expr.expr, k, env))
        if isinstance(expr, CompInv):
            return lambda k: comp_inverse(evaluate(expr.expr, k, env))
        if isinstance(expr, Adjoint):
            return lambda k: adjoint(evaluate(expr.expr, k, env))
        if isinstance(expr, Deriv):
            return lambda k: derivative_umbra(evaluate(expr.expr, k, env))
        if isinstance(expr, Bar):
            return lambda k: overbar_umbra(evaluate(expr.expr, k + 1, env))
        if isinstance(expr, Fresh):
            return lambda k: evaluate(expr.expr, k, env)
        if isinstance(expr, DisjointSum):
            return lambda k: disjoint_sum(evaluate(expr.left, k, env), evaluate(expr.right, k, env))
        if isinstance(expr, DisjointDiff):
            return lambda k: disjoint_diff(evaluate(expr.left, k, env), evaluate(expr.right, k, env))
        raise TypeError(f"not an umbral expression: {expr!r}")

    # -- the functional E -------------------------------------------------

    def apply_E(self, upoly: dict) -> Value:
        total: Value = Fraction(0)
        for (atoms, dx, dy), c in upoly.items():
            term: Value = c
            for label, e in atoms:
                term = term * self._atom_moment(label, e)
            if dx:
                term = term * Poly.variable("x") ** dx
            if dy:
                term = term * Poly.variable("y") ** dy
            total = total + term
        return collapse(total)


def evaluate(expr: Expr, order: int, env: Environment | None = None) -> Umbra:
    """The umbra denoted by ``expr``: moments E[expr^n] for n = 0..order."""
    if order < 0:
        raise ValueError("order must be >= 0")
    ev = _Evaluator(order, default_environment() if env is None else env)
    base = ev.upoly(expr)
    moments: list[Value] = [Fraction(1)]
    power = {_UNIT: Fraction(1)}
    for _ in range(order):
        power = _umul(power, base)
        moments.append(ev.apply_E(power))
    return Umbra(moments)


def expectation(expr: Expr, env: Environment | None = None) -> Value:
    """E[expr] for an umbral polynomial (the first moment of its umbra)."""
    ev = _Evaluator(1, default_environment() if env is None else env)
    return ev.apply_E(ev.upoly(expr))
