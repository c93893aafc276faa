"""Umbrae as truncated moment sequences, and the dot-operation algebra.

An :class:`Umbra` is the computational residue of a formal symbol a with
E[a^n] = a_n: a unital moment sequence (a_0 = 1, a_1, ..., a_N) whose entries
are exact rationals or polynomials in x, y.  All the classical operations are
moment-level maps:

* ``umbral_sum``      -- binomial convolution (product of generating functions)
* ``dot(g, a)``       -- E[(g.a)^i] = sum_j g_(j) B_{i,j}(a_1, ...), the
                         factorial-moment / partial-Bell-polynomial formula;
                         scalar left operands go through the series power path
* ``dot_power``       -- k-th moment is a_k^n
* ``inverse_dot``     -- reciprocal generating function
* ``comp_inverse``    -- reversion of f(t) - 1
* ``adjoint``         -- exp of that reversion (partition umbra of the inverse)
* ``derivative_umbra``-- moments n * a_{n-1}

Auxiliary umbrae produced by these operations carry no correlation with
their operands: each application denotes a fresh symbol, known only through
its moments.  That convention lives in the expression evaluator
(:mod:`umbralcalc.expressions`); this module is pure moment arithmetic.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Callable, Sequence

from .combinatorics import (
    bell_numbers,
    bell_partial,
    bernoulli_numbers,
    binomial,
    falling_factorial,
    partition_coefficient,
    partitions_of,
    stirling_first_classical,
)
from .errors import NonInvertibleError, OrderMismatchError
from .poly import Poly, Value, collapse
from .series import (
    TruncatedEGF,
    egf_compose,
    egf_exp,
    egf_from_moments,
    egf_log,
    egf_power,
    egf_reciprocal,
    egf_revert,
    moments_from_egf,
)


class Umbra:
    """A truncated unital moment sequence, optionally named for display."""

    __slots__ = ("_moments", "name")

    def __init__(self, moments: Sequence, name: str | None = None):
        ms = tuple(collapse(m) for m in moments)
        if not ms:
            raise ValueError("an umbra needs at least the 0th moment")
        if ms[0] != 1:
            raise ValueError("moment sequences must be unital (a_0 = 1)")
        self._moments = ms
        self.name = name

    @property
    def moments(self) -> tuple[Value, ...]:
        return self._moments

    @property
    def order(self) -> int:
        return len(self._moments) - 1

    def moment(self, n: int) -> Value:
        return self._moments[n]

    def egf(self) -> TruncatedEGF:
        return egf_from_moments(self._moments)

    @staticmethod
    def from_egf(f: TruncatedEGF, name: str | None = None) -> "Umbra":
        return Umbra(moments_from_egf(f), name=name)

    def truncated(self, order: int) -> "Umbra":
        if order > self.order:
            raise OrderMismatchError(f"umbra holds moments only to order {self.order}")
        return Umbra(self._moments[: order + 1], name=self.name)

    def is_scalar(self) -> bool:
        return all(isinstance(m, Fraction) for m in self._moments)

    def __eq__(self, other):
        if isinstance(other, Umbra):
            return self._moments == other._moments
        return NotImplemented

    def __hash__(self):
        return hash(self._moments)

    def __repr__(self):
        label = f" {self.name}" if self.name else ""
        return f"Umbra{label}{list(self._moments)!r}"


# ---------------------------------------------------------------------------
# Named umbrae


def augmentation(order: int) -> Umbra:
    """eps: E[eps^n] = [n == 0]; generating function 1."""
    return Umbra([Fraction(1)] + [Fraction(0)] * order, name="eps")


def unity(order: int) -> Umbra:
    """u: all moments 1; generating function e^t."""
    return Umbra([Fraction(1)] * (order + 1), name="u")


def singleton(order: int) -> Umbra:
    """chi: first moment 1, the rest 0; generating function 1 + t."""
    ms = [Fraction(1)] + [Fraction(0)] * order
    if order >= 1:
        ms[1] = Fraction(1)
    return Umbra(ms, name="chi")


def bell_umbra(order: int) -> Umbra:
    """bell: moments are the Bell numbers; exp(e^t - 1)."""
    return Umbra(bell_numbers(order), name="bell")


def bernoulli_umbra(order: int) -> Umbra:
    """bern: moments are the Bernoulli numbers (B_1 = -1/2); t/(e^t - 1)."""
    return Umbra(bernoulli_numbers(order), name="bern")


def ubar_umbra(order: int) -> Umbra:
    """ubar: moments n!; generating function 1/(1 - t)."""
    ms = [Fraction(1)]
    for n in range(1, order + 1):
        ms.append(ms[-1] * n)
    return Umbra(ms, name="ubar")


def uinv_umbra(order: int) -> Umbra:
    """uinv: the compositional inverse of u; 1 + log(1 + t)."""
    ms: list[Fraction] = [Fraction(1)]
    for n in range(1, order + 1):
        ms.append(Fraction((-1) ** (n - 1)) * _factorial(n - 1))
    return Umbra(ms, name="uinv")


def _factorial(n: int) -> Fraction:
    out = Fraction(1)
    for i in range(2, n + 1):
        out *= i
    return out


BUILTIN_UMBRAE: dict[str, Callable[[int], Umbra]] = {
    "eps": augmentation,
    "u": unity,
    "chi": singleton,
    "bell": bell_umbra,
    "bern": bernoulli_umbra,
    "ubar": ubar_umbra,
    "uinv": uinv_umbra,
}


def indeterminate_umbra(var: str, order: int) -> Umbra:
    """The deterministic umbra with moments var^n (var is x or y)."""
    v = Poly.variable(var)
    return Umbra([v**n for n in range(order + 1)], name=var)


def scalar_umbra(c, order: int) -> Umbra:
    """The deterministic umbra with moments c^n (the constant c under E)."""
    c = c if isinstance(c, (Fraction, Poly)) else Fraction(c)
    ms: list[Value] = [Fraction(1)]
    for _ in range(order):
        ms.append(collapse(ms[-1] * c))
    return Umbra(ms)


# ---------------------------------------------------------------------------
# Moment-level operations


def _check_same_order(a: Umbra, b: Umbra) -> int:
    if a.order != b.order:
        raise OrderMismatchError(f"umbra orders differ: {a.order} vs {b.order}")
    return a.order


def umbral_sum(a: Umbra, b: Umbra) -> Umbra:
    """Moments of a + b' for uncorrelated a, b: binomial convolution."""
    n = _check_same_order(a, b)
    out: list[Value] = []
    for i in range(n + 1):
        acc: Value = Fraction(0)
        for k in range(i + 1):
            acc = acc + binomial(i, k) * a.moment(k) * b.moment(i - k)
        out.append(acc)
    return Umbra(out)


def disjoint_sum(a: Umbra, b: Umbra) -> Umbra:
    n = _check_same_order(a, b)
    return Umbra([Fraction(1)] + [a.moment(i) + b.moment(i) for i in range(1, n + 1)])


def disjoint_diff(a: Umbra, b: Umbra) -> Umbra:
    n = _check_same_order(a, b)
    return Umbra([Fraction(1)] + [a.moment(i) - b.moment(i) for i in range(1, n + 1)])


def scale_moments(w, a: Umbra) -> Umbra:
    """Moment n >= 1 becomes w * a_n (the weighted disjoint-sum building block)."""
    return Umbra([Fraction(1)] + [collapse(w * a.moment(i)) for i in range(1, a.order + 1)])


def scalar_multiple(c, a: Umbra) -> Umbra:
    """The umbra c*a: moments c^n a_n."""
    out: list[Value] = [Fraction(1)]
    cn: Value = Fraction(1)
    for i in range(1, a.order + 1):
        cn = cn * c
        out.append(collapse(cn * a.moment(i)))
    return Umbra(out)


def factorial_moments(a: Umbra) -> list[Value]:
    """a_(n) = E[(a)_n] = sum_k s(n, k) a_k, via signed Stirling numbers."""
    out: list[Value] = []
    for n in range(a.order + 1):
        acc: Value = Fraction(0)
        for k in range(n + 1):
            acc = acc + stirling_first_classical(n, k) * a.moment(k)
        out.append(collapse(acc))
    return out


def factorial_umbra(a: Umbra) -> Umbra:
    """a.chi, whose moments are the factorial moments of a."""
    return Umbra(factorial_moments(a))


def _dot_weights(weights: Sequence[Value], a: Umbra) -> Umbra:
    """Moments i -> sum_{j=1..i} weights[j] * B_{i,j}(a_1, ...)."""
    tail = [a.moment(k) for k in range(1, a.order + 1)]
    out: list[Value] = [Fraction(1)]
    for i in range(1, a.order + 1):
        acc: Value = Fraction(0)
        for j in range(1, i + 1):
            w = weights[j]
            if w == 0:
                continue
            acc = acc + w * bell_partial(i, j, tail)
        out.append(acc)
    return Umbra(out)


def dot(left, a: Umbra) -> Umbra:
    """The dot-product left.a.

    * left an Umbra g: factorial moments of g weight the partial Bell
      polynomials of a's moments (requires equal orders);
    * left a Poly p (x, x + c, ...): weights are the falling factorials (p)_j,
      equivalently the series power f(a, t)^p;
    * left a rational c (any sign): the series power f(a, t)^c.
    """
    if isinstance(left, Umbra):
        _check_same_order(left, a)
        return _dot_weights(factorial_moments(left), a)
    if isinstance(left, Poly):
        c = left.as_fraction()
        if c is None:
            weights = [falling_factorial(left, j) for j in range(a.order + 1)]
            return _dot_weights(weights, a)
        left = c
    if isinstance(left, int):
        left = Fraction(left)
    return Umbra.from_egf(egf_power(a.egf(), left))


def dot_via_egf(left, a: Umbra) -> Umbra:
    """Series-side computation of dot(), used as an independent cross-check.

    f(g.a, t) = f(g, log f(a, t)) for umbra g; f(a, t)^p for scalar or
    polynomial p.
    """
    if isinstance(left, Umbra):
        _check_same_order(left, a)
        return Umbra.from_egf(egf_compose(left.egf(), egf_log(a.egf())))
    if isinstance(left, int):
        left = Fraction(left)
    return Umbra.from_egf(egf_power(a.egf(), left))


def dot_power(a: Umbra, n: int) -> Umbra:
    """a^{.n}: k-th moment is a_k^n; n = 0 gives the unity umbra."""
    if n < 0:
        raise ValueError("dot-power needs n >= 0")
    if n == 0:
        return unity(a.order)
    return Umbra([collapse(m**n) for m in a.moments])


def inverse_dot(a: Umbra) -> Umbra:
    """-1.a, the inverse umbra: reciprocal generating function."""
    return Umbra.from_egf(egf_reciprocal(a.egf()))


def _require_scalar_first_moment(a: Umbra) -> Fraction:
    if a.order < 1:
        raise NonInvertibleError("need at least one moment beyond order 0")
    m1 = collapse(a.moment(1))
    if not isinstance(m1, Fraction):
        raise NonInvertibleError("first moment must be a nonzero scalar")
    if m1 == 0:
        raise NonInvertibleError("first moment is zero")
    return m1


def comp_inverse(a: Umbra) -> Umbra:
    """a^<-1>: 1 + reversion of f(a, t) - 1; needs a_1 != 0."""
    _require_scalar_first_moment(a)
    f = a.egf()
    r = egf_revert(TruncatedEGF((Fraction(0),) + f.coeffs[1:]))
    return Umbra.from_egf(TruncatedEGF((Fraction(1),) + r.coeffs[1:]))


def adjoint(g: Umbra) -> Umbra:
    """g* : the partition umbra of g^<-1>; f(g*, t) = exp(f^<-1>(g, t) - 1)."""
    _require_scalar_first_moment(g)
    f = g.egf()
    r = egf_revert(TruncatedEGF((Fraction(0),) + f.coeffs[1:]))
    return Umbra.from_egf(egf_exp(r))


def derivative_umbra(a: Umbra) -> Umbra:
    """a_D: moments n * a_{n-1}; generating function 1 + t f(a, t)."""
    out: list[Value] = [Fraction(1)]
    for n in range(1, a.order + 1):
        out.append(collapse(Fraction(n) * a.moment(n - 1)))
    return Umbra(out)


def cumulant(a: Umbra) -> Umbra:
    """chi.a: moment n >= 1 is n! times the t^n coefficient of log f(a, t)."""
    return dot(singleton(a.order), a)


def overbar_umbra(g: Umbra) -> Umbra:
    """The moment-shift umbra: moments g_{n+1} / (g_1 (n+1)).

    Defined only for scalar g_1 != 0; the result has one order less than g.
    """
    g1 = _require_scalar_first_moment(g)
    out: list[Value] = []
    for n in range(g.order):
        out.append(collapse(g.moment(n + 1) / (g1 * (n + 1))))
    return Umbra(out)


def with_x_shift(a: Umbra) -> Umbra:
    """The polynomial umbra a + x.u: moments sum_k C(n,k) a_{n-k} x^k."""
    return umbral_sum(a, indeterminate_umbra("x", a.order))


# ---------------------------------------------------------------------------
# Partition expansions (independent oracles for the dot machinery)


def _partition_sum(weights: Sequence[Value], a: Umbra, i: int) -> Value:
    acc: Value = Fraction(0)
    for p in partitions_of(i):
        term = partition_coefficient(p)
        for part in p.parts:
            term = term * a.moment(part)
        acc = acc + weights[p.length] * term
    return collapse(acc)


def partition_expand(left, a: Umbra, i: int) -> Value:
    """Multinomial-expansion value of the i-th moment.

    For scalar or polynomial left n this is (n.a)^i with weights (n)_len;
    for an umbra g it is the composition umbra (g.bell.a)^i with weights
    g^len (raw moments).
    """
    if i < 0:
        raise ValueError("moment index must be >= 0")
    if i == 0:
        return Fraction(1)
    if isinstance(left, Umbra):
        if left.order < i:
            _raise_order(left, i)
        return _partition_sum([left.moment(j) for j in range(i + 1)], a, i)
    weights = [falling_factorial(left, j) for j in range(i + 1)]
    return _partition_sum(weights, a, i)


def _raise_order(u: Umbra, i: int):
    raise OrderMismatchError(f"umbra holds moments only to order {u.order}, need {i}")


def dot_via_partitions(left, a: Umbra, i: int) -> Value:
    """Partition-sum value of E[(left.a)^i]; the multinomial oracle for dot().

    Scalar/polynomial left uses falling-factorial weights; an umbra left uses
    its factorial moments.
    """
    if i < 0:
        raise ValueError("moment index must be >= 0")
    if i == 0:
        return Fraction(1)
    if isinstance(left, Umbra):
        if left.order < i:
            _raise_order(left, i)
        return _partition_sum(factorial_moments(left), a, i)
    weights = [falling_factorial(left, j) for j in range(i + 1)]
    return _partition_sum(weights, a, i)


# ---------------------------------------------------------------------------
# Substitution of an umbra into a polynomial sequence


def substitute(polys: Sequence, a: Umbra) -> list[Value]:
    """E[q_n(a)] for each polynomial: x^k evaluates to a_k (single label).

    ``polys`` holds Poly values (or scalars for degree 0); entries beyond the
    umbra's order raise, since their evaluation would need missing moments.
    """
    out: list[Value] = []
    for q in polys:
        if not isinstance(q, Poly):
            out.append(collapse(q))
            continue
        if q.degree_in("x") > a.order:
            raise OrderMismatchError(
                f"polynomial of degree {q.degree_in('x')} needs moments beyond order {a.order}"
            )
        acc: Value = Fraction(0)
        for (dx, dy), c in q.items():
            term: Value = c * a.moment(dx)
            if dy:
                term = term * Poly.variable("y") ** dy
            acc = acc + term
        out.append(collapse(acc))
    return out
