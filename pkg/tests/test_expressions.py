from fractions import Fraction as F

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from umbralcalc.errors import OrderMismatchError, UnknownUmbraError
from umbralcalc.expressions import (
    Adjoint,
    Atom,
    Bar,
    CompInv,
    Const,
    Deriv,
    DisjointSum,
    Dot,
    DotPower,
    Fresh,
    Indet,
    InverseDot,
    Power,
    Product,
    ScalarMul,
    Sum,
    evaluate,
    expectation,
)
from umbralcalc.poly import X, Y
from umbralcalc.umbra import (
    Umbra,
    adjoint,
    augmentation,
    bell_umbra,
    comp_inverse,
    derivative_umbra,
    disjoint_sum,
    dot,
    dot_power,
    inverse_dot,
    overbar_umbra,
    singleton,
    ubar_umbra,
    unity,
)


def test_atom_lookup():
    assert evaluate(Atom("u"), 3).moments == (1, 1, 1, 1)
    assert evaluate(Atom("bell"), 4) == bell_umbra(4)
    with pytest.raises(UnknownUmbraError):
        evaluate(Atom("nope"), 2)


def test_correlated_monomial_expansion():
    # chi (chi - 3.u)^2 evaluates to 9: only the chi^1 term survives.
    e = Product(Atom("chi"), Power(Sum(Atom("chi"), InverseDot(Dot(Const(F(3)), Atom("u")))), 2))
    assert expectation(e) == 9


def test_distinct_labels_convolve():
    s = Sum(Atom("bell"), Atom("bell", primes=1))
    assert evaluate(s, 3).moment(2) == 6
    assert evaluate(s, 3) == dot(2, bell_umbra(3))
    # same-label sum doubles the umbra instead
    t = Sum(Atom("chi"), Atom("chi"))
    assert evaluate(t, 4).moments == (1, 2, 0, 0, 0)


def test_equal_label_powers_merge():
    # E[chi^2 * chi] = chi_3 = 0 but E[chi' * chi^1...] with primes differs
    same = Product(Power(Atom("chi"), 2), Atom("chi"))
    assert expectation(same) == 0
    split = Product(Power(Atom("chi", primes=1), 2), Atom("chi"))
    assert expectation(split) == 0  # chi'_2 * chi_1 = 0
    split2 = Product(Atom("chi", primes=1), Atom("chi"))
    assert expectation(split2) == 1  # chi'_1 * chi_1 = 1


def test_operator_nodes_match_engine_ops():
    order = 6
    bell = bell_umbra(order)
    cases = [
        (InverseDot(Atom("bell")), inverse_dot(bell)),
        (CompInv(Atom("bell")), comp_inverse(bell)),
        (Adjoint(Atom("bell")), adjoint(bell)),
        (Deriv(Atom("bell")), derivative_umbra(bell)),
        (DotPower(Atom("bell"), 3), dot_power(bell, 3)),
        (Dot(Const(F(2)), Atom("bell")), dot(2, bell)),
        (Dot(Atom("chi"), Atom("bell")), dot(singleton(order), bell)),
        (DisjointSum(Atom("u"), Atom("chi")), disjoint_sum(unity(order), singleton(order))),
        (Bar(Dot(Const(F(2)), Atom("u"))), overbar_umbra(dot(2, unity(order + 1)))),
    ]
    for expr, expected in cases:
        assert evaluate(expr, order) == expected, expr


def test_indeterminate_dot():
    got = evaluate(Dot(Indet("x"), Adjoint(Atom("u"))), 3)
    assert got.moments == (1, X, X**2 - X, X**3 - 3 * X**2 + 2 * X)
    # dot with x on the right is plain scalar multiplication by x
    got = evaluate(Dot(Atom("bell"), Indet("x")), 3)
    assert got.moments == (1, X, 2 * X**2, 5 * X**3)


def test_scalar_nodes():
    assert evaluate(Const(F(3)), 3).moments == (1, 3, 9, 27)
    assert evaluate(ScalarMul(F(-1), Atom("chi")), 3).moments == (1, -1, 0, 0)
    assert evaluate(Sum(Indet("x"), Const(F(1))), 2).moments == (1, X + 1, X**2 + 2 * X + 1)
    assert evaluate(Indet("y", 2), 2).moments == (1, Y**2, Y**4)


def test_aux_umbrae_are_uncorrelated():
    # a + inv(a) has augmentation moments because the two are independent
    for name in ("u", "bell", "bern"):
        e = Sum(Atom(name), InverseDot(Atom(name)))
        assert evaluate(e, 5) == augmentation(5)
    # two occurrences of the same opaque operation are independent copies
    twice = Sum(InverseDot(Atom("chi")), InverseDot(Atom("chi")))
    assert evaluate(twice, 3) == evaluate(Dot(Const(F(2)), InverseDot(Atom("chi"))), 3)


def test_fresh_copies():
    e = Sum(Fresh(Sum(Atom("u"), Atom("chi"))), Fresh(Sum(Atom("u"), Atom("chi"))))
    direct = Sum(Sum(Atom("u"), Atom("chi")), Sum(Atom("u", 1), Atom("chi", 1)))
    assert evaluate(e, 5) == evaluate(direct, 5)


def test_ubar_via_expression():
    # -1.(-chi) is the all-factorials umbra
    e = InverseDot(ScalarMul(F(-1), Atom("chi")))
    assert evaluate(e, 5) == ubar_umbra(5)


def test_environment_with_fixed_umbra():
    env = {"myu": Umbra([1, 1, 2, 5])}
    assert evaluate(Atom("myu"), 3, env).moments == (1, 1, 2, 5)
    with pytest.raises(OrderMismatchError):
        evaluate(Atom("myu"), 5, env)
    with pytest.raises(OrderMismatchError):
        evaluate(Power(Atom("myu"), 2), 2, env)  # needs moment 4


def test_linearity_and_product_rule_random_monomials():
    # E[c1 chi^i u^j + c2 chi^k] = c1 [i<=1] + c2 [k<=1] with chi moments
    for i, j, k, c1, c2 in [(1, 3, 2, F(2), F(5)), (0, 1, 1, F(-1, 2), F(3, 7)), (2, 2, 0, F(4), F(1))]:
        e = Sum(
            ScalarMul(c1, Product(Power(Atom("chi"), i), Power(Atom("u"), j))),
            ScalarMul(c2, Power(Atom("chi"), k)),
        )
        chi_m = lambda n: F(1) if n <= 1 else F(0)
        assert expectation(e) == c1 * chi_m(i) + c2 * chi_m(k)


@settings(max_examples=30)
@given(st.integers(min_value=0, max_value=4), st.integers(min_value=0, max_value=4))
def test_power_node_matches_moment_indexing(i, j):
    # E[(u + chi)^i * (u + chi)^j] computed as one product equals moment i+j
    base = Sum(Atom("u"), Atom("chi"))
    e = Product(Power(base, i), Power(base, j))
    assert expectation(e) == evaluate(base, i + j).moment(i + j)
