import random

import pytest

from plde.polyring import (ParseError, Poly, RationalFunction, divide_exact, eval_poly,
                           format_poly, gcd_poly, normalize_primitive, parse_poly,
                           parse_rational, shift_poly)
from support import VARS2, random_poly

N_CASES = 200


def P(text):
    return parse_poly(text, VARS2)


# ----------------------------------------------------------------------
# parsing


def test_parse_simple():
    p = P("k+n+1")
    assert p.terms == {(0, 1): 1, (1, 0): 1, (0, 0): 1}


def test_parse_zero():
    assert P("0").is_zero()


def test_parse_product_expansion():
    # hand expansion of (4k-2n+1)(k+n+1)
    p = P("(4*k-2*n+1)*(k+n+1)")
    assert p.terms == {(0, 2): 4, (1, 1): 2, (2, 0): -2, (0, 1): 5, (1, 0): -1, (0, 0): 1}


def test_parse_power_and_unary_minus():
    assert P("-n^2+3") == P("3") - P("n") * P("n")
    assert P("2^3") == Poly.const(VARS2, 8)


def test_parse_errors_carry_position():
    with pytest.raises(ParseError) as err:
        P("n+% k")
    assert err.value.position == 2
    with pytest.raises(ParseError):
        P("n+m")  # unknown variable
    with pytest.raises(ParseError):
        P("2 n")  # implicit multiplication
    with pytest.raises(ParseError):
        P("(n+1")
    with pytest.raises(ParseError):
        P("n^-2")


# ----------------------------------------------------------------------
# ring arithmetic


def test_add_zero_identity():
    p = P("n^2+2*k")
    assert p + Poly.zero(VARS2) == p


def test_mul_difference_of_squares():
    assert P("n+1") * P("n-1") == P("n^2-1")


def test_mul_example():
    assert P("k+n+1") * P("2*k+3*n+1") == P("2*k^2+5*k*n+3*n^2+3*k+4*n+1")


def test_mismatched_variables_rejected():
    with pytest.raises(ValueError):
        P("n") + parse_poly("n", ("n",))


def test_pow():
    assert P("n+1") ** 3 == P("n^3+3*n^2+3*n+1")
    assert P("n+1") ** 0 == Poly.one(VARS2)
    with pytest.raises(ValueError):
        P("n") ** -1


# ----------------------------------------------------------------------
# shifting


def test_shift_identity():
    p = P("n^2*k+3")
    assert shift_poly(p, (0, 0)) == p


def test_shift_univariate():
    assert shift_poly(P("n^2+n+1"), (1, 0)) == P("n^2+3*n+3")


def test_shift_fixes_periodic_direction():
    p = P("k+n+1")
    assert shift_poly(p, (1, -1)) == p


def test_shift_negative_entries():
    assert shift_poly(P("n+k"), (-2, 1)) == P("n+k-1")


# ----------------------------------------------------------------------
# gcd / divide


def test_gcd_with_zero():
    p = P("2*n+2")
    assert gcd_poly(p, Poly.zero(VARS2)) == P("n+1")
    assert gcd_poly(Poly.zero(VARS2), Poly.zero(VARS2)).is_zero()


def test_gcd_of_constructed_product():
    a, b = P("k+n+1"), P("2*k+3*n+1")
    assert gcd_poly(a * b, a) == a


def test_gcd_coprime_shift():
    assert gcd_poly(P("k+n+1"), P("k+n+2")) == Poly.one(VARS2)


def test_divide_exact_basic():
    assert divide_exact(P("n^2-1"), P("n-1")) == P("n+1")
    assert divide_exact(P("k+n+1"), P("k+n+2")) is None
    assert divide_exact(P("(n+k+1)*(n+k+2)"), P("n+k+2")) == P("n+k+1")
    with pytest.raises(ZeroDivisionError):
        divide_exact(P("n"), Poly.zero(VARS2))


# ----------------------------------------------------------------------
# normalization, evaluation


def test_normalize_primitive_examples():
    unit, prim = normalize_primitive(P("-2*n-2"))
    assert (unit, prim) == (-2, P("n+1"))
    unit, prim = normalize_primitive(P("k") * Poly.const(VARS2, "3/2"))
    assert str(unit) == "3/2" and prim == P("k")
    expanded = -(P("k+n+1") * P("2*k+3*n+1"))
    unit, prim = normalize_primitive(expanded)
    assert unit == -1 and prim == P("(k+n+1)*(2*k+3*n+1)")
    with pytest.raises(ValueError):
        normalize_primitive(Poly.zero(VARS2))


def test_eval():
    assert eval_poly(P("n+k+1"), (1, 1)) == 3
    assert eval_poly(Poly.zero(VARS2), (5, 7)) == 0
    assert eval_poly(P("(4*k-2*n+1)*(k+n+1)"), (2, 1)) == 4


# ----------------------------------------------------------------------
# randomized properties


def test_shift_is_a_ring_homomorphism():
    rng = random.Random(101)
    for _ in range(N_CASES):
        p = random_poly(rng)
        q = random_poly(rng)
        s = (rng.randint(-3, 3), rng.randint(-3, 3))
        t = (rng.randint(-3, 3), rng.randint(-3, 3))
        assert (p * q).shift(s) == p.shift(s) * q.shift(s)
        assert p.shift(s).shift(t) == p.shift(tuple(a + b for a, b in zip(s, t)))


def test_gcd_divides_both_and_is_greatest():
    rng = random.Random(102)
    done = 0
    while done < N_CASES:
        g = random_poly(rng, max_degree=2, max_terms=3, nonzero=True)
        a = random_poly(rng, max_degree=2, max_terms=3, nonzero=True)
        b = random_poly(rng, max_degree=2, max_terms=3, nonzero=True)
        if not gcd_poly(a, b).is_constant():
            continue  # need coprime cofactors for the greatest-divisor check
        d = gcd_poly(g * a, g * b)
        assert divide_exact(g * a, d) is not None
        assert divide_exact(g * b, d) is not None
        assert divide_exact(d, normalize_primitive(g)[1]) is not None
        done += 1


def test_parse_format_round_trip():
    rng = random.Random(103)
    for _ in range(N_CASES):
        p = random_poly(rng, max_degree=4, max_terms=6)
        assert parse_poly(format_poly(p), VARS2) == p


def test_normalize_primitive_idempotent():
    rng = random.Random(104)
    for _ in range(N_CASES):
        p = random_poly(rng, integer=False, nonzero=True)
        _, prim = normalize_primitive(p)
        unit2, prim2 = normalize_primitive(prim)
        assert unit2 == 1 and prim2 == prim


# ----------------------------------------------------------------------
# rational functions


def test_rational_function_reduces():
    y = RationalFunction(P("(n+1)*(n+k)"), P("(n+1)*(n+k+1)"))
    assert y.num == P("n+k") and y.den == P("n+k+1")


def test_rational_function_den_normalized():
    y = RationalFunction(P("n"), P("-2*k-2*n"))
    assert y.den == P("k+n")
    assert y == RationalFunction(P("-1") * P("n") * Poly.const(VARS2, "1/2"), P("k+n"))


def test_parse_rational():
    y = parse_rational("(n^2+2*k^2)/(k+n+1)", VARS2)
    assert y.num == P("n^2+2*k^2") and y.den == P("k+n+1")
    assert parse_rational("n+1", VARS2).den == Poly.one(VARS2)


def test_rational_arithmetic():
    a = parse_rational("1/(n+1)", VARS2)
    b = parse_rational("1/(n+2)", VARS2)
    s = a - b
    assert s == parse_rational("1/((n+1)*(n+2))", VARS2)
    assert (a - a).is_zero()
