"""Shared random generators for the property suites (fixed seeds throughout)."""

import random
from fractions import Fraction

from plde.lattice import UnimodularMatrix
from plde.polyring import Poly, RationalFunction, parse_poly

VARS2 = ("n", "k")

# factor pool: linear and quadratic shapes with assorted spread lattices
FACTOR_POOL = [
    "k+n+1", "2*k+3*n+1", "4*k-2*n+1", "n+1", "k+2", "n-k+2",
    "n^2+n+1", "n*k+1", "n^2+k^2+1", "2*n-3*k",
]


def random_poly(rng, vars=VARS2, max_degree=3, max_terms=5, coeff_range=6,
                integer=True, nonzero=False):
    r = len(vars)
    terms = {}
    for _ in range(rng.randint(0 if not nonzero else 1, max_terms)):
        e = tuple(rng.randint(0, max_degree) for _ in range(r))
        while sum(e) > max_degree:
            e = tuple(rng.randint(0, max_degree) for _ in range(r))
        c = rng.randint(-coeff_range, coeff_range)
        if not integer:
            c = Fraction(c, rng.randint(1, 4))
        if c:
            terms[e] = terms.get(e, 0) + c
    p = Poly(vars, {e: c for e, c in terms.items() if c})
    if nonzero and p.is_zero():
        return Poly.const(vars, rng.randint(1, coeff_range))
    return p


def random_factor(rng, vars=VARS2, shifted=True):
    p = parse_poly(rng.choice(FACTOR_POOL), vars)
    if shifted:
        s = tuple(rng.randint(-2, 2) for _ in vars)
        p = p.shift(s)
    return p


def random_shift(rng, r=2, radius=3):
    return tuple(rng.randint(-radius, radius) for _ in range(r))


def random_unimodular(rng, n=2, steps=6):
    """Product of random elementary row operations; determinant stays +-1."""
    rows = [[1 if i == j else 0 for j in range(n)] for i in range(n)]
    for _ in range(steps):
        op = rng.randrange(3)
        i = rng.randrange(n)
        j = rng.randrange(n)
        if op == 0 and i != j:
            q = rng.randint(-2, 2)
            rows[i] = [a + q * b for a, b in zip(rows[i], rows[j])]
        elif op == 1:
            rows[i], rows[j] = rows[j], rows[i]
        else:
            rows[i] = [-a for a in rows[i]]
    return UnimodularMatrix(rows)


def random_rational(rng, vars=VARS2):
    num = random_poly(rng, vars, max_degree=2, max_terms=3, nonzero=True)
    den = random_factor(rng, vars)
    return RationalFunction(num, den)
