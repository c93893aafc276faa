"""Concrete sequences and theorems: Abel polynomials, Lagrange inversion,
umbral Stirling numbers, Poisson-Charlier polynomials, and three worked
difference-equation solutions.

Most operations here are deliberately redundant: a closed umbral formula is
evaluated next to an independent route (classical triangle recurrence, series
reversion, recursive initial-condition expansion) and the two must agree
exactly.  The redundancy is the point -- these are the consistency theorems
of the calculus, kept executable.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import factorial
from .combinatorics import binomial, falling_factorial
from .combinatorics import bernoulli_numbers as bernoulli_numbers  # re-exported here
from .combinatorics import stirling_first_classical, stirling_second_classical
from .errors import NonInvertibleError
from .poly import Poly, Value, collapse, poly_definite_integral
from .sheffer import (
    IdentityReport,
    _first_violation,
    PolySequence,
    poisson_charlier_pair,
    sheffer_moments,
)
from .umbra import (
    Umbra,
    bell_umbra,
    bernoulli_umbra,
    comp_inverse,
    derivative_umbra,
    dot,
    factorial_umbra,
    indeterminate_umbra,
    overbar_umbra,
    singleton,
    substitute,
    ubar_umbra,
    umbral_sum,
)

X = Poly.variable("x")
Y = Poly.variable("y")


def _as_poly(v) -> Poly:
    return v if isinstance(v, Poly) else Poly(v)


# ---------------------------------------------------------------------------
# Fibonacci-flavoured umbrae (coefficients of 1/(1 - t - t^2))


def fibonacci_numbers(n_max: int) -> list[Fraction]:
    """1, 1, 2, 3, 5, ...: Fib(n) with Fib(0) = Fib(1) = 1."""
    out = [Fraction(1)]
    if n_max >= 1:
        out.append(Fraction(1))
    for _ in range(n_max - 1):
        out.append(out[-1] + out[-2])
    return out[: n_max + 1]


def fibonacci_factorial_umbra(order: int) -> Umbra:
    """Moments n! Fib(n); generating function 1/(1 - t - t^2)."""
    fib = fibonacci_numbers(order)
    return Umbra([fib[n] * factorial(n) for n in range(order + 1)], name="fib_bar")


# ---------------------------------------------------------------------------
# Abel polynomials and Lagrange inversion


def abel_polynomials(gamma: Umbra, n_max: int) -> PolySequence:
    """p_n(x) = x (x - n.g)^{n-1}, with (-n).g read as the series power f^{-n}."""
    if gamma.order < max(n_max - 1, 0):
        raise ValueError(f"need gamma to order {n_max - 1}, have {gamma.order}")
    polys: list[Poly] = [Poly(1)]
    for n in range(1, n_max + 1):
        neg = dot(-n, gamma)
        p: Value = Fraction(0)
        for k in range(n):
            p = p + binomial(n - 1, k) * neg.moment(n - 1 - k) * X**k
        polys.append(_as_poly(collapse(X * p)))
    return PolySequence(tuple(polys), kind=f"abel({gamma.name})")


def lagrange_inversion(gamma: Umbra, n: int) -> Fraction:
    """E[(-n.g)^{n-1}], asserted equal to the n-th moment of (g_D)^<-1>."""
    if n < 1:
        raise ValueError("n must be >= 1")
    if gamma.order < n:
        raise ValueError(f"need gamma to order {n}, have {gamma.order}")
    value = collapse(dot(-n, gamma).moment(n - 1))
    via_reversion = collapse(comp_inverse(derivative_umbra(gamma)).moment(n))
    if value != via_reversion:
        raise AssertionError("Lagrange inversion mismatch against series reversion")
    return value


def lagrange_inversion_general(gamma: Umbra, n: int) -> Fraction:
    """E[(-n.g_bar)^{n-1}] for g_1 != 0; equals g_1^n times moment n of g^<-1>."""
    if n < 1:
        raise ValueError("n must be >= 1")
    if gamma.order < n:
        raise ValueError(f"need gamma to order {n}, have {gamma.order}")
    g1 = collapse(gamma.moment(1))
    if not isinstance(g1, Fraction) or g1 == 0:
        raise NonInvertibleError("first moment is zero")
    gbar = overbar_umbra(gamma)
    value = collapse(dot(-n, gbar).moment(n - 1))
    via_reversion = collapse(g1**n * comp_inverse(gamma).moment(n))
    if value != via_reversion:
        raise AssertionError("generalized Lagrange inversion mismatch")
    return value


def stirling_second_umbral(n: int, k: int) -> Fraction:
    """S(n,k) = C(n,k) E[(-k.bern)^{n-k}], checked against the triangle."""
    if not 0 <= k <= n:
        raise ValueError("need 0 <= k <= n")
    value = collapse(binomial(n, k) * dot(-k, bernoulli_umbra(max(n - k, 0))).moment(n - k))
    if value != stirling_second_classical(n, k):
        raise AssertionError(f"umbral S({n},{k}) disagrees with the triangle")
    return value


def stirling_first_umbral(n: int, k: int) -> Fraction:
    """s(n,k) = C(n,k) E[(k.(bern.chi))^{n-k}], checked against the triangle."""
    if not 0 <= k <= n:
        raise ValueError("need 0 <= k <= n")
    base = factorial_umbra(bernoulli_umbra(max(n - k, 0)))
    value = collapse(binomial(n, k) * dot(k, base).moment(n - k))
    if value != stirling_first_classical(n, k):
        raise AssertionError(f"umbral s({n},{k}) disagrees with the triangle")
    return value


def stirling_first_column(n: int) -> Fraction:
    """s(n,1) = E[(n.bern)^{n-1}] = (-1)^{n-1} (n-1)!."""
    if n < 1:
        raise ValueError("n must be >= 1")
    return collapse(dot(n, bernoulli_umbra(max(n - 1, 0))).moment(n - 1))


# ---------------------------------------------------------------------------
# Poisson-Charlier and exponential polynomials


def poisson_charlier(n: int, a) -> Poly:
    """c_n(x; a) = a^{-n} sum_k C(n,k) (-a)^{n-k} (x)_k, cross-checked."""
    a = Fraction(a)
    if a == 0:
        raise ValueError("parameter a must be nonzero")
    if n < 0:
        raise ValueError("n must be >= 0")
    acc: Value = Fraction(0)
    for k in range(n + 1):
        acc = acc + binomial(n, k) * (-a) ** (n - k) * falling_factorial(X, k)
    value = _as_poly(collapse(acc / a**n))
    via_sheffer = sheffer_moments(poisson_charlier_pair(a, n))[n]
    if value != via_sheffer:
        raise AssertionError("Poisson-Charlier formula disagrees with the Sheffer route")
    return value


def poisson_charlier_sequence(n_max: int, a) -> PolySequence:
    return PolySequence(
        tuple(poisson_charlier(n, a) for n in range(n_max + 1)), kind=f"poisson_charlier(a={a})"
    )


def exponential_polynomials(n_max: int) -> PolySequence:
    """Phi_n(x) = sum_i S(n,i) x^i; equals the moments of x.bell."""
    polys = []
    for n in range(n_max + 1):
        p: Value = Fraction(0)
        for i in range(n + 1):
            p = p + stirling_second_classical(n, i) * X**i
        polys.append(_as_poly(collapse(p)))
    seq = PolySequence(tuple(polys), kind="exponential")
    via_dot = dot(X, bell_umbra(n_max))
    if list(seq) != [_as_poly(m) for m in via_dot.moments]:
        raise AssertionError("exponential polynomials disagree with x.bell")
    return seq


# ---------------------------------------------------------------------------
# Abel identity and expansions


def abel_identity_check(gamma: Umbra, n_max: int) -> IdentityReport:
    """(x+y)^n = sum_k C(n,k) [y(y - k.g)^{k-1}] (x + k.g)^{n-k}, exactly.

    The two k.g factors in each term are distinct auxiliary umbrae, so the
    term is a product of two independently evaluated polynomials.
    """
    if gamma.order < n_max:
        raise ValueError(f"need gamma to order {n_max}, have {gamma.order}")
    for n in range(n_max + 1):
        lhs = _as_poly((X + Y) ** n)
        rhs: Value = Fraction(0)
        for k in range(n + 1):
            if k == 0:
                rhs = rhs + X**n  # p_0 = 1 times the pure power
                continue
            neg = dot(-k, gamma)
            abel_y: Value = Fraction(0)
            for j in range(k):
                abel_y = abel_y + binomial(k - 1, j) * neg.moment(k - 1 - j) * Y**j
            abel_y = Y * abel_y
            pos = dot(k, gamma)
            shift: Value = Fraction(0)
            for j in range(n - k + 1):
                shift = shift + binomial(n - k, j) * pos.moment(n - k - j) * X**j
            rhs = rhs + binomial(n, k) * abel_y * shift
        if lhs != collapse(rhs):
            return IdentityReport("abel", n_max, False, _first_violation(n, lhs, collapse(rhs)))
    return IdentityReport("abel", n_max, True)


def polynomial_expand_abel(p: Poly, gamma: Umbra) -> list[Fraction]:
    """Coefficients c_k with p(x) = sum_k c_k x(x - k.g)^{k-1}.

    c_k = E[p^(k) evaluated at the umbra k.g] / k!; the reconstruction is
    verified exactly before returning.
    """
    p = _as_poly(p)
    if p.degree_in("y") > 0:
        raise ValueError("expansion is for polynomials in x only")
    d = max(p.degree_in("x"), 0)
    if gamma.order < d:
        raise ValueError(f"need gamma to order {d}, have {gamma.order}")
    coeffs: list[Fraction] = []
    deriv = p
    for k in range(d + 1):
        if k == 0:
            value = collapse(deriv(x=Fraction(0)))  # 0.g is the augmentation
        else:
            value = collapse(substitute([deriv], dot(k, gamma))[0])
        coeffs.append(collapse(value / Fraction(factorial(k))))
        deriv = deriv.derivative("x")
    abel = abel_polynomials(gamma, d)
    recon: Value = Fraction(0)
    for k, c in enumerate(coeffs):
        recon = recon + c * abel[k]
    if collapse(recon) != p:
        raise AssertionError("Abel expansion failed to reconstruct the polynomial")
    return coeffs


def bell_expansion(gamma: Umbra, n: int) -> Poly:
    """(x.bell.g_D)^n computed two ways: dot chain vs sum_k C(n,k)(k.g)^{n-k} x^k."""
    if n < 0:
        raise ValueError("n must be >= 0")
    if gamma.order < n:
        raise ValueError(f"need gamma to order {n}, have {gamma.order}")
    chain = dot(X, dot(bell_umbra(gamma.order), derivative_umbra(gamma)))
    lhs = _as_poly(collapse(chain.moment(n)))
    rhs: Value = Fraction(0)
    for k in range(n + 1):
        rhs = rhs + binomial(n, k) * dot(k, gamma).moment(n - k) * X**k
    if lhs != collapse(rhs):
        raise AssertionError("Bell-expansion two-path mismatch")
    return lhs


def bell_expansion_general(gamma: Umbra, n: int) -> Poly:
    """(x.bell.g)^n for g_1 != 0: equals sum_k C(n,k) g_1^k (k.g_bar)^{n-k} x^k."""
    if n < 0:
        raise ValueError("n must be >= 0")
    if gamma.order <= n:
        raise ValueError(f"need gamma to order {n + 1}, have {gamma.order}")
    g1 = collapse(gamma.moment(1))
    if not isinstance(g1, Fraction) or g1 == 0:
        raise NonInvertibleError("first moment is zero")
    chain = dot(X, dot(bell_umbra(gamma.order), gamma))
    lhs = _as_poly(collapse(chain.moment(n)))
    gbar = overbar_umbra(gamma)
    rhs: Value = Fraction(0)
    for k in range(n + 1):
        rhs = rhs + binomial(n, k) * g1**k * dot(k, gbar).moment(n - k) * X**k
    if lhs != collapse(rhs):
        raise AssertionError("generalized Bell-expansion two-path mismatch")
    return lhs


# ---------------------------------------------------------------------------
# Worked difference equations


@dataclass(frozen=True)
class RecurrenceSolution:
    """A solved difference equation: the sequence plus its verified checks."""

    name: str
    sequence: PolySequence
    checks: tuple[tuple[str, bool], ...]
    notes: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return all(flag for _, flag in self.checks)


def recurrence_example_bernoulli(n_max: int) -> RecurrenceSolution:
    """Solve s_n(x+1) = s_n(x) + s_{n-1}(x) with unit integral over [0, 1].

    The solution is s_n(x) = E[((bern + ubar.bell + x.u).chi)^n] / n!: the
    integral condition says substituting the inverse Bernoulli umbra for x
    must produce the all-factorial umbra, whose singleton pre-image is
    ubar.bell.
    """
    order = n_max
    weight = dot(ubar_umbra(order), bell_umbra(order))
    carrier = umbral_sum(umbral_sum(bernoulli_umbra(order), weight), indeterminate_umbra("x", order))
    sheffer = dot(carrier, singleton(order))
    polys = [_as_poly(collapse(sheffer.moment(n) / Fraction(factorial(n)))) for n in range(n_max + 1)]
    seq = PolySequence(tuple(polys), kind="bernoulli-diff")
    rec_ok = all(
        collapse(polys[n].substitute(x=X + 1) - polys[n]) == polys[n - 1] for n in range(1, n_max + 1)
    )
    int_ok = all(poly_definite_integral(polys[n], "x", 0, 1) == 1 for n in range(n_max + 1))
    return RecurrenceSolution(
        "bernoulli-diff",
        seq,
        (("forward difference s_n(x+1) - s_n(x) = s_{n-1}(x)", rec_ok), ("unit integral over [0,1]", int_ok)),
    )


def recurrence_example_backward(n_max: int) -> RecurrenceSolution:
    """Solve s_n(x) = s_n(x-1) + s_{n-1}(x) under the diagonal initial condition.

    Two routes: the closed form [ubar.bell.(fib_bar)_D + (x+n-1).chi]^n / n!
    and the recursive expansion s_n(x) = sum_k s_k(1-k) C(x+n-1, n-k).
    """
    order = n_max
    fib_bar = fibonacci_factorial_umbra(order)
    core = dot(ubar_umbra(order), dot(bell_umbra(order), derivative_umbra(fib_bar)))
    closed: list[Poly] = []
    for n in range(n_max + 1):
        shifted = dot(X + (n - 1), singleton(order))
        total = umbral_sum(core, shifted)
        closed.append(_as_poly(collapse(total.moment(n) / Fraction(factorial(n)))))

    # Recursive route from the initial condition.
    recursive: list[Poly] = [Poly(1)]
    diag: list[Fraction] = [Fraction(1)]  # s_k(1-k)
    for n in range(1, n_max + 1):
        v_n = collapse(sum((recursive[i](x=Fraction(n - 2 * i)) for i in range(n)), Fraction(0)))
        diag.append(v_n)
        p: Value = Fraction(0)
        for k in range(n + 1):
            p = p + diag[k] * binomial(X + (n - 1), n - k)
        recursive.append(_as_poly(collapse(p)))

    seq = PolySequence(tuple(closed), kind="backward-diff")
    route_ok = closed == recursive
    rec_ok = all(
        collapse(closed[n] - closed[n].substitute(x=X - 1)) == closed[n - 1] for n in range(1, n_max + 1)
    )
    init_ok = all(
        collapse(closed[n](x=Fraction(1 - n)))
        == collapse(sum((closed[i](x=Fraction(n - 2 * i)) for i in range(n)), Fraction(0)))
        for n in range(1, n_max + 1)
    ) and closed[0](x=Fraction(-1)) == 1

    # Generating-function identities for the shifted-Fibonacci umbra.
    fib = fibonacci_numbers(order)
    gf_ok = all(
        fib[n] - (fib[n - 1] if n >= 1 else 0) - (fib[n - 2] if n >= 2 else 0) == (1 if n == 0 else 0)
        for n in range(order + 1)
    )
    boolean_chain = dot(ubar_umbra(order), dot(bell_umbra(order), derivative_umbra(singleton(order))))
    chain_ok = boolean_chain == fib_bar

    return RecurrenceSolution(
        "backward-diff",
        seq,
        (
            ("closed form equals initial-condition expansion", route_ok),
            ("backward difference s_n(x) - s_n(x-1) = s_{n-1}(x)", rec_ok),
            ("initial condition on the shifted diagonal", init_ok),
            ("f(fib_bar, t) (1 - t - t^2) = 1", gf_ok),
            ("ubar.bell.chi_D has the shifted-Fibonacci moments", chain_ok),
        ),
        notes={"diagonal values s_n(1-n)": diag},
    )


def recurrence_example_fibonacci(n_max: int) -> RecurrenceSolution:
    """Solve F_n(m) = F_n(m-1) + F_{n-1}(m-2) along the shifted variable.

    Returns G_n(x) = F_n(x+n) = sum_k C(x+k, n-k); the claim F_n(0) = 1 is
    reported (it fails for n >= 2) but never asserted.
    """
    order = n_max
    closed: list[Poly] = []
    for n in range(n_max + 1):
        p: Value = Fraction(0)
        for k in range(n + 1):
            p = p + binomial(X + k, n - k)
        closed.append(_as_poly(collapse(p)))
    seq = PolySequence(tuple(closed), kind="fibonacci")

    rec_ok = all(
        collapse(closed[n].substitute(x=X + 1)) == collapse(closed[n] + closed[n - 1])
        for n in range(1, n_max + 1)
    )
    fib = fibonacci_numbers(n_max)
    diag_ok = all(closed[n](x=Fraction(0)) == fib[n] for n in range(n_max + 1))

    # Same polynomials from the umbral closed form (fib_bar + x.chi)^n / n!.
    total = umbral_sum(fibonacci_factorial_umbra(order), dot(X, singleton(order)))
    umbral_ok = all(
        collapse(total.moment(n) / Fraction(factorial(n))) == closed[n] for n in range(n_max + 1)
    )

    f_at_zero = [collapse(closed[n](x=Fraction(-n))) for n in range(n_max + 1)]
    return RecurrenceSolution(
        "fibonacci",
        seq,
        (
            ("shifted recurrence G_n(x+1) = G_n(x) + G_{n-1}(x)", rec_ok),
            ("diagonal G_n(0) = Fib(n)", diag_ok),
            ("umbral closed form (fib_bar + x.chi)^n / n!", umbral_ok),
        ),
        notes={"F_n(0) by direct evaluation": f_at_zero},
    )
