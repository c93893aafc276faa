"""Sheffer, associated and Appell sequences, umbral composition, and the
connection-constants solver.

A Sheffer pair (a, g) with E[g] != 0 determines the polynomial umbra
(-1.a + x.u).g*, whose moments s_0(x), ..., s_N(x) are the Sheffer sequence
of the pair.  ``sheffer_moments`` computes them twice -- once through the
generating-function composition, once through the moment-level dot product --
and insists the two agree, so every returned sequence is self-checked.

Connection constants between two Sheffer sequences are likewise computed both
by the closed umbral formula and by an unconditional triangular linear solve.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .combinatorics import binomial
from .errors import NonInvertibleError
from .poly import Poly, Value, collapse
from .series import (
    TruncatedEGF,
    egf_compose,
    egf_exp,
    egf_mul,
    egf_reciprocal,
    egf_revert,
    egf_scale,
    moments_from_egf,
)
from .umbra import (
    Umbra,
    adjoint,
    bell_umbra,
    comp_inverse,
    dot,
    inverse_dot,
    substitute,
    umbral_sum,
    unity,
    with_x_shift,
)

X = Poly.variable("x")
Y = Poly.variable("y")


def _as_poly(v: Value) -> Poly:
    return v if isinstance(v, Poly) else Poly(v)


@dataclass(frozen=True)
class ShefferPair:
    """The data (a, g) of a Sheffer umbra; g must have nonzero first moment."""

    alpha: Umbra
    gamma: Umbra

    def __post_init__(self):
        if self.alpha.order != self.gamma.order:
            raise ValueError("pair members must share one truncation order")
        if self.gamma.order >= 1:
            g1 = collapse(self.gamma.moment(1))
            if not isinstance(g1, Fraction) or g1 == 0:
                raise NonInvertibleError("first moment is zero")

    @property
    def order(self) -> int:
        return self.alpha.order


@dataclass(frozen=True)
class PolySequence:
    """Polynomials s_0..s_N with deg s_n = n and s_0 = 1."""

    polys: tuple[Poly, ...]
    kind: str = ""

    def __post_init__(self):
        object.__setattr__(self, "polys", tuple(_as_poly(p) for p in self.polys))
        if not self.polys or self.polys[0] != 1:
            raise ValueError("a polynomial sequence starts with s_0 = 1")
        for n, p in enumerate(self.polys):
            if n > 0 and p.degree_in("x") != n:
                raise ValueError(f"entry {n} has degree {p.degree_in('x')}, expected {n}")

    @property
    def order(self) -> int:
        return len(self.polys) - 1

    def __len__(self):
        return len(self.polys)

    def __getitem__(self, n: int) -> Poly:
        return self.polys[n]

    def __iter__(self):
        return iter(self.polys)

    def coefficients(self, n: int) -> list[Fraction]:
        """Row n of the coefficient triangle: [c_0, ..., c_n] in x."""
        row = self.polys[n].coeffs_in_x()
        row += [Fraction(0)] * (n + 1 - len(row))
        return row

    def coefficient_table(self) -> list[list[Fraction]]:
        return [self.coefficients(n) for n in range(len(self.polys))]

    def to_json(self) -> list[dict[str, str]]:
        """Wire form: one monomial->rational-string map per polynomial."""
        return [p.to_json_map() for p in self.polys]

    def to_csv_rows(self) -> list[list[str]]:
        """Rows [n, c_0, ..., c_N] padded with zeros to a rectangle."""
        from .rationals import format_rational

        width = len(self.polys)
        out = []
        for n, _ in enumerate(self.polys):
            row = [format_rational(c) for c in self.coefficients(n)]
            out.append([str(n)] + row + ["0"] * (width - len(row)))
        return out


def _moments_to_sequence(moments: Sequence[Value], kind: str) -> PolySequence:
    return PolySequence(tuple(_as_poly(collapse(m)) for m in moments), kind=kind)


# ---------------------------------------------------------------------------
# The three sequence constructors


def sheffer_moments(pair: ShefferPair) -> PolySequence:
    """Moments of (-1.a + x.u).g*, computed by two independent routes."""
    n = pair.order
    if n == 0:
        return PolySequence((Poly(1),), kind="sheffer")
    # Series route: s_n(x) = n! [t^n] e^{x r(t)} / f(a, r(t)), r = revert(f(g) - 1).
    fg = pair.gamma.egf()
    r = egf_revert(TruncatedEGF((Fraction(0),) + fg.coeffs[1:]))
    fa_at_r = egf_compose(pair.alpha.egf(), r)
    series = egf_mul(egf_reciprocal(fa_at_r), egf_exp(egf_scale(X, r)))
    via_series = moments_from_egf(series)
    # Moment route: dot the Appell-style umbra into the adjoint.
    appell_part = with_x_shift(inverse_dot(pair.alpha))
    via_moments = dot(appell_part, adjoint(pair.gamma)).moments
    if list(via_series) != list(via_moments):
        raise AssertionError("sheffer dual-path mismatch; series kernel is inconsistent")
    return _moments_to_sequence(via_moments, kind=f"sheffer({pair.alpha.name}, {pair.gamma.name})")


def associated_moments(gamma: Umbra) -> PolySequence:
    """Moments of x.g*: the binomial-type sequence associated to g."""
    if gamma.order == 0:
        return PolySequence((Poly(1),), kind=f"associated({gamma.name})")
    seq = dot(Poly.variable("x"), adjoint(gamma))
    return _moments_to_sequence(seq.moments, kind=f"associated({gamma.name})")


def appell_moments(alpha: Umbra) -> PolySequence:
    """Moments of -1.a + x.u: p_n(x) = sum_k C(n,k) b_{n-k} x^k, b = -1.a."""
    b = inverse_dot(alpha)
    polys = []
    for n in range(alpha.order + 1):
        p: Value = Fraction(0)
        for k in range(n + 1):
            p = p + binomial(n, k) * b.moment(n - k) * X**k
        polys.append(_as_poly(collapse(p)))
    return PolySequence(tuple(polys), kind=f"appell({alpha.name})")


# ---------------------------------------------------------------------------
# Composition, inversion, connection constants


def umbral_compose(s: PolySequence, r: PolySequence) -> PolySequence:
    """s_n(r(x)) = sum_k s_{n,k} r_k(x)."""
    if s.order != r.order:
        raise ValueError("sequences must share one truncation order")
    out = []
    for n in range(len(s)):
        coeffs = s.coefficients(n)
        acc: Value = Fraction(0)
        for k, c in enumerate(coeffs):
            if c:
                acc = acc + c * r[k]
        out.append(_as_poly(collapse(acc)))
    return PolySequence(tuple(out), kind=f"compose[{s.kind}; {r.kind}]")


def inverse_pair(pair: ShefferPair) -> ShefferPair:
    """The pair whose Sheffer sequence is the umbral-composition inverse."""
    alpha2 = dot(inverse_dot(pair.alpha), adjoint(pair.gamma))
    gamma2 = comp_inverse(pair.gamma)
    return ShefferPair(alpha2, gamma2)


def inverse_sequence(pair: ShefferPair) -> PolySequence:
    """Sheffer sequence composing with the pair's own sequence to {x^n}."""
    return sheffer_moments(inverse_pair(pair))


@dataclass(frozen=True)
class ConnectionConstants:
    """Lower-triangular c_{n,k} with s_n(x) = sum_k c_{n,k} r_k(x)."""

    matrix: tuple[tuple[Fraction, ...], ...]
    verified: bool  # umbral formula agreed with the triangular solve

    def __getitem__(self, nk: tuple[int, int]) -> Fraction:
        n, k = nk
        return self.matrix[n][k]


def _triangular_expand(p: Poly, basis: PolySequence) -> list[Fraction]:
    """Coefficients of p in the triangular basis, by back-substitution."""
    residue = p
    deg = max(residue.degree_in("x"), 0)
    out = [Fraction(0)] * (deg + 1)
    for k in range(deg, -1, -1):
        lead = residue.coefficient(k)
        blead = basis[k].coefficient(k)
        c = lead / blead
        out[k] = c
        if c:
            residue = residue - c * basis[k]
    if not residue.is_zero():
        raise AssertionError("triangular expansion left a residue")
    return out


def connection_constants(frm: ShefferPair, to: ShefferPair) -> ConnectionConstants:
    """Expand the `frm` Sheffer sequence in the `to` Sheffer basis.

    The reference values come from a triangular linear solve over the two
    sequences; the umbral route evaluates the change-of-basis Sheffer umbra
    [(d - 1.a).z* + x.u].(g.bell.z^<-1>)* and must agree exactly.
    """
    if frm.order != to.order:
        raise ValueError("pairs must share one truncation order")
    n = frm.order
    if n == 0:
        # Both sequences are the constant 1; either route gives the 1x1 identity.
        return ConnectionConstants(((Fraction(1),),), verified=True)
    s = sheffer_moments(frm)
    r = sheffer_moments(to)
    solve = []
    for i in range(n + 1):
        row = _triangular_expand(s[i], r)
        row += [Fraction(0)] * (i + 1 - len(row))
        solve.append(tuple(row[: i + 1]))

    # Umbral route.
    d_part = dot(umbral_sum(to.alpha, inverse_dot(frm.alpha)), adjoint(to.gamma))
    g_comp = dot(frm.gamma, dot(bell_umbra(n), comp_inverse(to.gamma)))
    eta = dot(with_x_shift(d_part), adjoint(g_comp))
    umbral = []
    for i in range(n + 1):
        p = _as_poly(collapse(eta.moment(i)))
        row = p.coeffs_in_x()
        row += [Fraction(0)] * (i + 1 - len(row))
        umbral.append(tuple(row[: i + 1]))

    return ConnectionConstants(tuple(solve), verified=(solve == umbral))


# ---------------------------------------------------------------------------
# Identity checks (exact, coefficient-wise in R[x, y])


@dataclass(frozen=True)
class IdentityReport:
    name: str
    max_degree: int
    ok: bool
    first_failure: tuple | None = None  # (n, monomial key, lhs coeff, rhs coeff)

    def __bool__(self):
        return self.ok


def _first_violation(n: int, lhs, rhs) -> tuple:
    diff = _as_poly(lhs) - _as_poly(rhs)
    key = min(diff.to_json_map())
    return (n, key, _as_poly(lhs).to_json_map().get(key, "0"), _as_poly(rhs).to_json_map().get(key, "0"))


def _shift_to_xy(p: Poly) -> Poly:
    return p.substitute(x=X + Y)


def _x_to_y(p: Poly) -> Poly:
    return p.substitute(x=Y)


def check_binomial_identity(gamma: Umbra, max_degree: int | None = None) -> IdentityReport:
    """p_n(x+y) = sum_k C(n,k) p_k(x) p_{n-k}(y) for the associated sequence."""
    seq = associated_moments(gamma)
    n_max = seq.order if max_degree is None else max_degree
    for n in range(n_max + 1):
        lhs = _shift_to_xy(seq[n])
        rhs: Value = Fraction(0)
        for k in range(n + 1):
            rhs = rhs + binomial(n, k) * seq[k] * _x_to_y(seq[n - k])
        if lhs != collapse(rhs):
            return IdentityReport("binomial", n_max, False, _first_violation(n, lhs, collapse(rhs)))
    return IdentityReport("binomial", n_max, True)


def check_sheffer_identity(pair: ShefferPair, max_degree: int | None = None) -> IdentityReport:
    """s_n(x+y) = sum_k C(n,k) s_k(x) p_{n-k}(y), plus the derivative rule.

    The second clause is the substitution characterization: replacing x by
    g + x.u sends s_k to s_k + k s_{k-1}.
    """
    s = sheffer_moments(pair)
    p = associated_moments(pair.gamma)
    n_max = s.order if max_degree is None else max_degree
    for n in range(n_max + 1):
        lhs = _shift_to_xy(s[n])
        rhs: Value = Fraction(0)
        for k in range(n + 1):
            rhs = rhs + binomial(n, k) * s[k] * _x_to_y(p[n - k])
        if lhs != collapse(rhs):
            return IdentityReport("sheffer", n_max, False, _first_violation(n, lhs, collapse(rhs)))
    shifted = with_x_shift(pair.gamma)
    lhs_list = substitute(list(s), shifted)
    for k in range(n_max + 1):
        rhs_k = collapse(s[k] + (k * s[k - 1] if k else 0))
        if collapse(lhs_list[k]) != rhs_k:
            return IdentityReport(
                "sheffer-derivative", n_max, False, _first_violation(k, collapse(lhs_list[k]), rhs_k)
            )
    return IdentityReport("sheffer", n_max, True)


def check_appell_identity(alpha: Umbra, max_degree: int | None = None) -> IdentityReport:
    """p_n(x+y) = sum_k C(n,k) p_k(x) y^{n-k} for the Appell sequence of a."""
    seq = appell_moments(alpha)
    n_max = seq.order if max_degree is None else max_degree
    for n in range(n_max + 1):
        lhs = _shift_to_xy(seq[n])
        rhs: Value = Fraction(0)
        for k in range(n + 1):
            rhs = rhs + binomial(n, k) * seq[k] * Y ** (n - k)
        if lhs != collapse(rhs):
            return IdentityReport("appell", n_max, False, _first_violation(n, lhs, collapse(rhs)))
    return IdentityReport("appell", n_max, True)


def power_pair(order: int) -> ShefferPair:
    """The pair whose Sheffer sequence is {x^n}."""
    from .umbra import augmentation, singleton

    return ShefferPair(augmentation(order), singleton(order))


def poisson_charlier_pair(a, order: int) -> ShefferPair:
    """The pair (a.bell, chi.a.bell) behind the Poisson-Charlier sequence."""
    from .umbra import cumulant

    if a == 0:
        raise ValueError("parameter a must be nonzero")
    ab = dot(Fraction(a), bell_umbra(order))
    return ShefferPair(ab, cumulant(ab))


def bernoulli_appell_pair(order: int) -> ShefferPair:
    """The pair (-1.bern, chi) whose Sheffer sequence is the Bernoulli polynomials."""
    from .umbra import bernoulli_umbra, singleton

    return ShefferPair(inverse_dot(bernoulli_umbra(order)), singleton(order))


def factorial_pair(order: int) -> ShefferPair:
    """The pair (eps, u) whose Sheffer sequence is the falling factorials."""
    from .umbra import augmentation

    return ShefferPair(augmentation(order), unity(order))
