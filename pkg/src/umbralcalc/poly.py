"""Exact polynomials in the indeterminates x and y.

Coefficients are ``fractions.Fraction``; storage is a map from the
multi-degree ``(deg_x, deg_y)`` to the coefficient, with zero coefficients
never stored.  A constant polynomial compares equal (and hashes equal) to the
corresponding scalar, so values of type ``Fraction | Poly`` mix freely.

Two indeterminates are all the calculus ever needs: x carries polynomial
moments, y shows up only in two-variable identity checks.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterator, Mapping, Union

from .rationals import format_rational, parse_rational

Value = Union[Fraction, "Poly"]

_VARS = ("x", "y")


def _as_fraction(c) -> Fraction:
    if isinstance(c, Fraction):
        return c
    if isinstance(c, int):
        return Fraction(c)
    raise TypeError(f"not an exact scalar: {c!r}")


class Poly:
    """Polynomial in x, y with Fraction coefficients."""

    __slots__ = ("_coeffs",)

    def __init__(self, coeffs: Mapping[tuple[int, int], Fraction | int] | Fraction | int = 0):
        if isinstance(coeffs, (Fraction, int)):
            c = _as_fraction(coeffs)
            self._coeffs = {(0, 0): c} if c else {}
            return
        clean: dict[tuple[int, int], Fraction] = {}
        for (dx, dy), c in coeffs.items():
            if dx < 0 or dy < 0:
                raise ValueError("negative exponent in polynomial key")
            c = _as_fraction(c)
            if c:
                clean[(dx, dy)] = c
        self._coeffs = clean

    @staticmethod
    def variable(name: str) -> "Poly":
        if name not in _VARS:
            raise ValueError(f"unknown indeterminate {name!r}")
        return Poly({(1, 0) if name == "x" else (0, 1): Fraction(1)})

    @staticmethod
    def constant(c) -> "Poly":
        return Poly(_as_fraction(c))

    # -- inspection ------------------------------------------------------

    def items(self) -> Iterator[tuple[tuple[int, int], Fraction]]:
        return iter(self._coeffs.items())

    def coefficient(self, dx: int, dy: int = 0) -> Fraction:
        return self._coeffs.get((dx, dy), Fraction(0))

    def is_zero(self) -> bool:
        return not self._coeffs

    def is_constant(self) -> bool:
        return not self._coeffs or set(self._coeffs) == {(0, 0)}

    def as_fraction(self) -> Fraction | None:
        """The scalar value if constant, else None."""
        if not self._coeffs:
            return Fraction(0)
        if set(self._coeffs) == {(0, 0)}:
            return self._coeffs[(0, 0)]
        return None

    def degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        if not self._coeffs:
            return -1
        return max(dx + dy for dx, dy in self._coeffs)

    def degree_in(self, var: str) -> int:
        i = _var_index(var)
        if not self._coeffs:
            return -1
        return max(key[i] for key in self._coeffs)

    def coeffs_in_x(self) -> list[Fraction]:
        """Coefficient list [c_0, ..., c_d] of a y-free polynomial."""
        if self.degree_in("y") > 0:
            raise ValueError("polynomial involves y")
        d = max(self.degree_in("x"), 0)
        return [self.coefficient(k) for k in range(d + 1)]

    # -- ring operations -------------------------------------------------

    def __add__(self, other):
        other = _coerce(other)
        if other is None:
            return NotImplemented
        out = dict(self._coeffs)
        for key, c in other._coeffs.items():
            s = out.get(key, Fraction(0)) + c
            if s:
                out[key] = s
            else:
                out.pop(key, None)
        return _wrap(out)

    __radd__ = __add__

    def __neg__(self):
        return _wrap({key: -c for key, c in self._coeffs.items()})

    def __sub__(self, other):
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        other = _coerce(other)
        if other is None:
            return NotImplemented
        out: dict[tuple[int, int], Fraction] = {}
        for (ax, ay), ac in self._coeffs.items():
            for (bx, by), bc in other._coeffs.items():
                key = (ax + bx, ay + by)
                s = out.get(key, Fraction(0)) + ac * bc
                if s:
                    out[key] = s
                else:
                    out.pop(key, None)
        return _wrap(out)

    __rmul__ = __mul__

    def __truediv__(self, scalar):
        c = _as_fraction(scalar)
        if not c:
            raise ZeroDivisionError("division of polynomial by zero")
        return _wrap({key: v / c for key, v in self._coeffs.items()})

    def __pow__(self, n: int):
        if not isinstance(n, int) or n < 0:
            raise ValueError("polynomial power must be a nonnegative integer")
        result = Poly(1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base if n > 1 else base
            n >>= 1
        return result

    # -- calculus --------------------------------------------------------

    def derivative(self, var: str = "x") -> "Poly":
        i = _var_index(var)
        out: dict[tuple[int, int], Fraction] = {}
        for key, c in self._coeffs.items():
            if key[i] == 0:
                continue
            new = list(key)
            new[i] -= 1
            out[tuple(new)] = c * key[i]
        return _wrap(out)

    def antiderivative(self, var: str = "x") -> "Poly":
        i = _var_index(var)
        out: dict[tuple[int, int], Fraction] = {}
        for key, c in self._coeffs.items():
            new = list(key)
            new[i] += 1
            out[tuple(new)] = c / new[i]
        return _wrap(out)

    def definite_integral(self, var: str, lo, hi) -> Value:
        anti = self.antiderivative(var)
        kw_hi = {var: _as_fraction(hi)}
        kw_lo = {var: _as_fraction(lo)}
        return collapse(anti.substitute(**kw_hi) - anti.substitute(**kw_lo))

    def substitute(self, x=None, y=None) -> "Poly":
        """Substitute values (scalars or Polys) for x and/or y."""
        subs = {}
        if x is not None:
            subs[0] = x if isinstance(x, Poly) else Poly(_as_fraction(x))
        if y is not None:
            subs[1] = y if isinstance(y, Poly) else Poly(_as_fraction(y))
        result = Poly(0)
        powers: dict[tuple[int, int], Poly] = {}
        for (dx, dy), c in sorted(self._coeffs.items()):
            term = Poly(c)
            for i, d in ((0, dx), (1, dy)):
                if d == 0:
                    continue
                if i in subs:
                    key = (i, d)
                    if key not in powers:
                        powers[key] = subs[i] ** d
                    term = term * powers[key]
                else:
                    term = term * Poly({(d, 0) if i == 0 else (0, d): Fraction(1)})
            result = result + term
        return result

    def __call__(self, x=None, y=None) -> Value:
        return collapse(self.substitute(x=x, y=y))

    # -- equality, hashing, display --------------------------------------

    def __eq__(self, other):
        if isinstance(other, Poly):
            return self._coeffs == other._coeffs
        if isinstance(other, (Fraction, int)):
            return self.as_fraction() == _as_fraction(other)
        return NotImplemented

    def __hash__(self):
        c = self.as_fraction()
        if c is not None:
            return hash(c)
        return hash(frozenset(self._coeffs.items()))

    def __bool__(self):
        return bool(self._coeffs)

    def __repr__(self):
        return f"Poly({self})"

    def __str__(self):
        if not self._coeffs:
            return "0"
        # Descending total degree, then descending x-degree: "x^2 - 3*x + 1".
        keys = sorted(self._coeffs, key=lambda k: (-(k[0] + k[1]), -k[0]))
        parts: list[str] = []
        for key in keys:
            c = self._coeffs[key]
            mono = _monomial_str(key)
            if mono == "1":
                body = format_rational(abs(c))
            elif abs(c) == 1:
                body = mono
            else:
                body = f"{format_rational(abs(c))}*{mono}"
            if not parts:
                parts.append(body if c > 0 else f"-{body}")
            else:
                parts.append(f"+ {body}" if c > 0 else f"- {body}")
        return " ".join(parts)

    # -- wire format ------------------------------------------------------

    def to_json_map(self) -> dict[str, str]:
        return {_monomial_str(key): format_rational(c) for key, c in sorted(self._coeffs.items())}

    @staticmethod
    def from_json_map(data: Mapping[str, str]) -> "Poly":
        out: dict[tuple[int, int], Fraction] = {}
        for key, text in data.items():
            out[_parse_monomial(key)] = parse_rational(text)
        return Poly(out)


X = Poly.variable("x")
Y = Poly.variable("y")


def _var_index(var: str) -> int:
    try:
        return _VARS.index(var)
    except ValueError:
        raise ValueError(f"unknown indeterminate {var!r}") from None


def _coerce(obj) -> Poly | None:
    if isinstance(obj, Poly):
        return obj
    if isinstance(obj, (Fraction, int)):
        return Poly(obj)
    return None


def _wrap(coeffs: dict[tuple[int, int], Fraction]) -> Poly:
    p = Poly.__new__(Poly)
    p._coeffs = coeffs
    return p


def _monomial_str(key: tuple[int, int]) -> str:
    dx, dy = key
    parts = []
    if dx:
        parts.append("x" if dx == 1 else f"x^{dx}")
    if dy:
        parts.append("y" if dy == 1 else f"y^{dy}")
    return "*".join(parts) if parts else "1"


def _parse_monomial(text: str) -> tuple[int, int]:
    if text == "1":
        return (0, 0)
    deg = [0, 0]
    for factor in text.split("*"):
        name, _, exp = factor.partition("^")
        i = _var_index(name)
        deg[i] += int(exp) if exp else 1
    return (deg[0], deg[1])


def collapse(value) -> Value:
    """Normalize a computed value: constant Poly -> Fraction, int -> Fraction."""
    if isinstance(value, Poly):
        c = value.as_fraction()
        return c if c is not None else value
    return _as_fraction(value)


def value_to_json(value: Value):
    """A moment entry for the CLI wire format: string for scalars, map for polys."""
    v = collapse(value)
    if isinstance(v, Fraction):
        return format_rational(v)
    return v.to_json_map()


def value_to_str(value: Value) -> str:
    v = collapse(value)
    if isinstance(v, Fraction):
        return format_rational(v)
    return str(v)


def poly_derivative(p: Value, var: str = "x") -> Value:
    """Exact formal derivative; scalars differentiate to 0."""
    if not isinstance(p, Poly):
        return Fraction(0)
    return collapse(p.derivative(var))


def poly_definite_integral(p: Value, var: str, lo, hi) -> Value:
    if not isinstance(p, Poly):
        return _as_fraction(p) * (_as_fraction(hi) - _as_fraction(lo))
    return p.definite_integral(var, lo, hi)
