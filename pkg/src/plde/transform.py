"""Unimodular changes of variables for equations and rational functions.

Conventions, fixed once and validated by tests rather than trusted:

* ``act_on_rational(A, y)`` is composition, (A.y)(n) = y(A n); it satisfies
  A.(N^s y) = N^{A^{-1} s}(A.y) for every unimodular integer A.
* ``transform_equation(eq, M)`` moves support points by s |-> M s and
  rewrites coefficients through the substitution matrix M^{-1}, so that y
  solves the input iff act(M^{-1}, y) solves the output.
* ``build_normalizing_frame`` produces the point transform M whose first
  row is a given witness covector u and which maps a module W onto the
  last coordinate axes; the first coordinate of M s is then exactly u . s.
"""

from __future__ import annotations

from dataclasses import dataclass, replace

from .equation import PLDE
from .factored import FactoredPoly
from .lattice import (IntLattice, UnimodularMatrix, orthogonal_complement_lattice,
                      solve_integer, unimodular_completion)
from .polyring import Poly, RationalFunction


def _subst_poly(p: Poly, A: UnimodularMatrix) -> Poly:
    gens = [Poly.variable(p.vars, v) for v in p.vars]
    images = []
    for row in A.rows:
        img = Poly.zero(p.vars)
        for c, g in zip(row, gens):
            if c:
                img = img + g * c
        images.append(img)
    return p.compose(images, p.vars)


def act_on_poly(A: UnimodularMatrix, p: Poly) -> Poly:
    return _subst_poly(p, A)


def act_on_rational(A: UnimodularMatrix, y: RationalFunction) -> RationalFunction:
    """(A.y)(n) = y(A n); multiplicative and additive in y."""
    return RationalFunction(_subst_poly(y.num, A), _subst_poly(y.den, A))


def transform_equation(eq: PLDE, M: UnimodularMatrix) -> PLDE:
    """Support points move by M; coefficients by the inverse substitution."""
    A = M.inverse()
    terms = {}
    for s, fp in eq.terms.items():
        terms[M.apply(s)] = fp.subst(A)
    return PLDE(eq.variables, terms, _subst_poly(eq.rhs, A))


@dataclass(frozen=True)
class NormalizedFrame:
    """Change of coordinates adapted to a module W and a witness covector."""

    M: UnimodularMatrix
    t: int                      # codimension of W
    k: int = 0                  # maximal first coordinate after shift normalization
    shift_offset: tuple = ()


def build_normalizing_frame(support, W: IntLattice, u) -> NormalizedFrame:
    """Point transform with first row u, first t rows spanning the complement of W.

    Requires W saturated and u primitive inside the complement lattice.
    The resulting M maps W onto {0}^t x Z^(r-t).
    """
    r = W.dim
    comp = orthogonal_complement_lattice(W)
    t = comp.rank
    if t == 0:
        raise ValueError("module has no nonzero orthogonal covector")
    basis = [list(row) for row in comp.basis]
    matrix = [[basis[j][i] for j in range(t)] for i in range(r)]
    sol = solve_integer(matrix, [int(x) for x in u], t)
    if sol is None:
        raise ValueError("witness covector is not orthogonal to the module")
    coords = sol[0]
    from math import gcd

    g = 0
    for c in coords:
        g = gcd(g, abs(c))
    if g != 1:
        raise ValueError("witness covector is imprimitive in the complement lattice")
    if t == 1:
        top_rows = [list(u)]
    else:
        T = unimodular_completion([list(coords)])
        top_rows = [[sum(z[j] * basis[j][i] for j in range(t)) for i in range(r)]
                    for z in T.rows]
    M = unimodular_completion(top_rows)
    norm = IntLattice(r, [[1 if j == i else 0 for j in range(r)] for i in range(t, r)])
    for w_row in W.basis:
        if not norm.contains(M.apply(w_row)):
            raise AssertionError("frame does not normalize the module")
    return NormalizedFrame(M=M, t=t, shift_offset=(0,) * r)


def normalize_first_shift(eq: PLDE):
    """Translate the support so its minimal first coordinate is 0.

    Returns (equation, k, offset) with k the maximal first coordinate; the
    solution set is untouched because both sides were shifted together.
    """
    r = len(eq.variables)
    low = min(s[0] for s in eq.terms)
    offset = tuple([-low] + [0] * (r - 1))
    moved = eq.shifted(offset) if low else eq
    k = max(s[0] for s in moved.terms)
    return moved, k, offset


def frame_for(eq: PLDE, W: IntLattice, u):
    """Full normalization: frame, transformed equation, and point images."""
    frame = build_normalizing_frame(eq.support, W, u)
    moved = transform_equation(eq, frame.M)
    moved, k, offset = normalize_first_shift(moved)
    frame = replace(frame, k=k, shift_offset=offset)
    return frame, moved


def map_point(frame: NormalizedFrame, s):
    img = frame.M.apply(s)
    return tuple(a + b for a, b in zip(img, frame.shift_offset))


def pull_back(frame: NormalizedFrame, fp: FactoredPoly) -> FactoredPoly:
    """Map a factored polynomial from frame coordinates back to the original ones."""
    return fp.subst(frame.M)
