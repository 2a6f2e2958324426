import itertools
import random

import pytest

from plde.factored import FactoredPoly
from plde.lattice import IntLattice, is_sublattice
from plde.polyring import Poly, parse_poly
from plde.spread import (INFINITY, NEG_INFINITY, disp_k, invariance_lattice, shift_equiv,
                         spread_box_oracle, spread_pair)
from support import VARS2, random_factor, random_shift

N_CASES = 200


def P(text):
    return parse_poly(text, VARS2)


def L(*rows):
    return IntLattice(2, rows)


# ----------------------------------------------------------------------
# invariance lattices


def test_invariance_examples():
    assert invariance_lattice(P("k+n+1")) == L((1, -1))
    assert invariance_lattice(P("n*k+1")).rank == 0
    assert invariance_lattice(P("2*n-3*k")) == L((3, 2))


def test_invariance_rejects_constants():
    with pytest.raises(ValueError):
        invariance_lattice(Poly.const(VARS2, 5))


def test_invariance_of_skew_linear_factor():
    # the printed polynomial 4k-2n+1 is fixed by (2,1), not (1,2); the box
    # oracle is the ground truth here
    p = P("4*k-2*n+1")
    lat = invariance_lattice(p)
    assert lat == L((2, 1))
    box = spread_box_oracle(p, p, 3)
    assert box == {(i, j) for (i, j) in box if lat.contains((i, j))}
    assert (2, 1) in box and (1, 2) not in box


def test_invariance_needs_nonlinear_layer():
    # n^2+k: the top form alone would allow (0,1) but the constant layer kills it
    assert invariance_lattice(P("n^2+k")).rank == 0
    assert invariance_lattice(P("n^2+n+1")) == L((0, 1))


# ----------------------------------------------------------------------
# pair spreads


def test_pair_coset_example():
    c = shift_equiv(P("k+n+1"), P("k+n+3"))
    assert not c.is_empty
    assert c.contains((-2, 0)) and c.lattice == L((1, -1))


def test_pair_quadratic():
    c = shift_equiv(P("n^2+3*n+3"), P("n^2+n+1"))
    assert c.contains((1, 0)) and c.lattice == L((0, 1))


def test_pair_empty_cases():
    assert shift_equiv(P("k+n+1"), P("n*k+1")).is_empty
    assert shift_equiv(P("k+n+1"), P("2*k+3*n+1")).is_empty


def test_pair_with_itself():
    p = P("k+n+1")
    c = spread_pair(p, p)
    assert c.contains((0, 0)) and c.lattice == invariance_lattice(p)


def test_pair_residual_linear_layer():
    # layer below the top form is needed to pin the shift
    c = shift_equiv(P("n^2+k+5"), P("n^2+k"))
    assert c.contains((0, 5)) and c.lattice.rank == 0


# ----------------------------------------------------------------------
# dispersion


def test_disp_infinite_along_moving_axis():
    fp = FactoredPoly.from_poly(P("k+n+1"))
    assert disp_k(fp, fp, 1) == INFINITY


def test_disp_aperiodic_self():
    fp = FactoredPoly.from_poly(P("n*k+1"))
    assert disp_k(fp, fp, 1) == 0


def test_disp_fixed_axis():
    a = FactoredPoly.from_poly(P("n+1"))
    b = FactoredPoly.from_poly(P("n+3"))
    assert disp_k(a, b, 1) == 2
    assert disp_k(a, b, 2) == INFINITY
    assert disp_k(a, FactoredPoly.from_poly(P("n*k+1")), 1) == NEG_INFINITY
    with pytest.raises(ValueError):
        disp_k(a, b, 3)


# ----------------------------------------------------------------------
# box oracle


def test_box_oracle_examples():
    p = P("k+n+1")
    assert spread_box_oracle(p, p, 3) == {(i, -i) for i in range(-3, 4)}
    q = P("n*k+1")
    assert spread_box_oracle(q, q, 2) == {(0, 0)}
    assert spread_box_oracle(p, P("2*k+3*n+1"), 3) == set()


# ----------------------------------------------------------------------
# property suites


def _box_of_coset(coset, radius):
    if coset.is_empty:
        return set()
    out = set()
    gens = coset.lattice.basis
    # small lattices: enumerate coefficient combinations generously
    bound = 4 * radius + 4
    ranges = [range(-bound, bound + 1)] * len(gens)
    for combo in itertools.product(*ranges):
        v = list(coset.base)
        for c, g in zip(combo, gens):
            v = [a + c * b for a, b in zip(v, g)]
        if all(abs(x) <= radius for x in v):
            out.add(tuple(v))
    return out


def test_spread_matches_box_oracle():
    rng = random.Random(401)
    radius = 3
    for _ in range(N_CASES):
        p = random_factor(rng)
        q = random_factor(rng)
        coset = spread_pair(p, q)
        assert coset.certain
        assert _box_of_coset(coset, radius) == spread_box_oracle(p, q, radius)


def test_coset_differences_lie_in_the_invariance_lattice():
    rng = random.Random(402)
    done = 0
    while done < N_CASES:
        q = random_factor(rng)
        p = q.shift(random_shift(rng))
        coset = shift_equiv(p, q)
        assert not coset.is_empty
        G = invariance_lattice(q)
        assert coset.lattice == G
        s = coset.base
        for g in G.basis:
            assert coset.contains([a + b for a, b in zip(s, g)])
        done += 1


def test_symmetry_of_pair_spreads():
    rng = random.Random(403)
    for _ in range(N_CASES):
        p = random_factor(rng)
        q = random_factor(rng)
        a = shift_equiv(p, q)
        b = shift_equiv(q, p)
        assert a.is_empty == b.is_empty
        if not a.is_empty:
            assert b.contains([-x for x in a.base])


def test_unique_leading_projection():
    # factors whose invariance lattice sits inside {0} x Z project to at
    # most one first coordinate in any pair coset
    rng = random.Random(404)
    pool = [P("n^2+n+1"), P("n*k+1"), P("n^2+k^2+1"), P("n+1")]
    vertical = IntLattice(2, [(0, 1)])
    done = 0
    while done < N_CASES:
        u = rng.choice(pool).shift(random_shift(rng))
        v = rng.choice(pool).shift(random_shift(rng))
        if not (is_sublattice(invariance_lattice(u), vertical)
                and is_sublattice(invariance_lattice(v), vertical)):
            continue
        coset = shift_equiv(u, v)
        if not coset.is_empty:
            firsts = {coset.base[0]}
            for g in coset.lattice.basis:
                assert g[0] == 0
            assert len(firsts) == 1
        done += 1
