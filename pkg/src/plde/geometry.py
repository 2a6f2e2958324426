"""Support-set geometry over Z^r.

Corner points, separating covectors and the pair certificates consumed by
the bounding pipeline are all decided by exact rational linear programming
(Fourier-Motzkin elimination); nothing here is approximate.

A module W is *useful* for a support S when some ordered pair of corner
points (p, p') admits an integer covector u orthogonal to W such that p is
the unique minimizer of s . u and no two maximizers differ by an element
of W.  Points congruent modulo W always tie under any admissible u, which
turns both face conditions into plain linear constraints; a single
feasibility problem therefore decides usefulness exactly.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from math import gcd as _int_gcd, lcm as _int_lcm

from .lattice import IntLattice, orthogonal_complement_lattice, saturation

CLASS_USEFUL = "U"
CLASS_OPPOSITE_ONLY = "O\\U"
CLASS_UNCOVERED = "uncovered"


# ----------------------------------------------------------------------
# exact linear feasibility


def lp_feasible(constraints, nvars: int):
    """One rational solution of a system of linear constraints, or None.

    Each constraint is (coefficients, relation, rhs) with relation ">=" or
    "==", meaning coefficients . v REL rhs.  Solved by Fourier-Motzkin
    elimination over exact rationals.
    """
    ineqs = []
    for coeffs, rel, rhs in constraints:
        row = [Fraction(c) for c in coeffs]
        if len(row) != nvars:
            raise ValueError("constraint arity %d, expected %d" % (len(row), nvars))
        b = Fraction(rhs)
        if rel == ">=":
            ineqs.append((row, b))
        elif rel == "==":
            ineqs.append((row, b))
            ineqs.append(([-c for c in row], -b))
        else:
            raise ValueError("unsupported relation %r" % rel)
    stack = []
    current = ineqs
    for j in reversed(range(nvars)):
        stack.append((j, current))
        pos = [c for c in current if c[0][j] > 0]
        neg = [c for c in current if c[0][j] < 0]
        zero = [c for c in current if c[0][j] == 0]
        new = list(zero)
        for (ap, bp) in pos:
            for (an, bn) in neg:
                # eliminate v_j between ap.v >= bp and an.v >= bn
                lam = -an[j]
                mu = ap[j]
                row = [lam * a + mu * b for a, b in zip(ap, an)]
                new.append((row, lam * bp + mu * bn))
        current = new
    for row, b in current:
        if b > 0:
            return None
    values = [Fraction(0)] * nvars
    for j, cons in reversed(stack):
        lo = None
        hi = None
        for row, b in cons:
            rest = b - sum(row[i] * values[i] for i in range(j))
            cj = row[j]
            if cj > 0:
                bound = rest / cj
                if lo is None or bound > lo:
                    lo = bound
            elif cj < 0:
                bound = rest / cj
                if hi is None or bound < hi:
                    hi = bound
        if lo is None and hi is None:
            values[j] = Fraction(0)
        elif lo is None:
            values[j] = min(hi, Fraction(0))
        elif hi is None:
            values[j] = max(lo, Fraction(0))
        else:
            values[j] = (lo + hi) / 2
    return values


def _primitive_int_vector(frac_vec):
    mult = _int_lcm(*(f.denominator for f in frac_vec)) if frac_vec else 1
    ints = [int(f * mult) for f in frac_vec]
    g = 0
    for x in ints:
        g = _int_gcd(g, abs(x))
    if g > 1:
        ints = [x // g for x in ints]
    return tuple(ints)


# ----------------------------------------------------------------------
# corner points


def corner_points(points) -> set:
    """Vertices of the convex hull: p with some v satisfying (s-p).v >= 1."""
    pts = [tuple(int(x) for x in p) for p in points]
    if not pts:
        raise ValueError("empty support")
    r = len(pts[0])
    corners = set()
    for p in pts:
        cons = [(tuple(a - b for a, b in zip(s, p)), ">=", 1) for s in pts if s != p]
        if lp_feasible(cons, r) is not None:
            corners.add(p)
    return corners


# ----------------------------------------------------------------------
# certificates


@dataclass(frozen=True)
class WitnessCertificate:
    """Covector certificate for an ordered pair of support corners."""

    p: tuple
    p_prime: tuple
    u: tuple
    min_face: frozenset
    max_face: frozenset

    def check(self, points, W: IntLattice):
        pts = [tuple(p) for p in points]
        if any(w_row and sum(a * b for a, b in zip(self.u, w_row)) for w_row in W.basis):
            raise ValueError("witness covector is not orthogonal to the module")
        values = {s: sum(a * b for a, b in zip(s, self.u)) for s in pts}
        vp = values[self.p]
        vq = values[self.p_prime]
        if any(v < vp or v > vq for v in values.values()):
            raise ValueError("opposite inequalities violated")
        if frozenset(s for s, v in values.items() if v == vp) != self.min_face:
            raise ValueError("recorded minimal face is wrong")
        if frozenset(s for s, v in values.items() if v == vq) != self.max_face:
            raise ValueError("recorded maximal face is wrong")
        if self.min_face != frozenset([self.p]):
            raise ValueError("minimal face is not the singleton {p}")
        for a, b in itertools.combinations(sorted(self.max_face), 2):
            if W.contains([x - y for x, y in zip(a, b)]):
                raise ValueError("two maximal-face points differ by a module element")

    def to_json(self):
        return {
            "pair": [list(self.p), list(self.p_prime)],
            "witness": list(self.u),
            "min_face": sorted(map(list, self.min_face)),
            "max_face": sorted(map(list, self.max_face)),
        }


@dataclass(frozen=True)
class WeakCertificate:
    """One-sided certificate: p minimizes u weakly, minimal face injective mod W."""

    p: tuple
    u: tuple
    min_face: frozenset

    def to_json(self):
        return {
            "p": list(self.p),
            "witness": list(self.u),
            "min_face": sorted(map(list, self.min_face)),
        }


@dataclass(frozen=True)
class ModuleClass:
    kind: str
    certificate: object = None


def _w_classes(points, W: IntLattice):
    """Partition of the support points into congruence classes modulo W."""
    classes = []
    for s in points:
        for cls in classes:
            if W.contains([a - b for a, b in zip(s, cls[0])]):
                cls.append(s)
                break
        else:
            classes.append([s])
    return classes


def witness_for_pair(points, p, p_prime, W: IntLattice):
    """Certificate for the ordered corner pair (p, p'), or None.

    Congruent-mod-W points are forced to tie, so requiring every class of
    size >= 2 strictly below the top value is exactly max-face injectivity,
    and the strict constraints at p make the minimal face a singleton.
    """
    pts = sorted(tuple(int(x) for x in s) for s in points)
    p = tuple(int(x) for x in p)
    p_prime = tuple(int(x) for x in p_prime)
    if p not in pts or p_prime not in pts:
        raise ValueError("pair points must belong to the support")
    comp = orthogonal_complement_lattice(saturation(W))
    t = comp.rank
    if t == 0:
        return None
    classes = _w_classes(pts, W)
    cls_of = {s: tuple(cls) for cls in classes for s in cls}
    if len(cls_of[p_prime]) > 1:
        return None  # the congruent mate would always share the maximal face
    basis = [list(row) for row in comp.basis]

    def covector_coeffs(vec):
        return tuple(sum(v * b[i] for i, v in enumerate(vec)) for b in basis)

    cons = []
    for s in pts:
        if s != p:
            cons.append((covector_coeffs([a - b for a, b in zip(s, p)]), ">=", 1))
        cons.append((covector_coeffs([a - b for a, b in zip(p_prime, s)]), ">=", 0))
        if len(cls_of[s]) > 1 and s not in cls_of[p_prime]:
            cons.append((covector_coeffs([a - b for a, b in zip(p_prime, s)]), ">=", 1))
    z = lp_feasible(cons, t)
    if z is None:
        return None
    z = _primitive_int_vector(z)
    u = tuple(sum(z[i] * basis[i][j] for i in range(t)) for j in range(len(p)))
    values = {s: sum(a * b for a, b in zip(s, u)) for s in pts}
    vmin = min(values.values())
    vmax = max(values.values())
    cert = WitnessCertificate(
        p, p_prime, u,
        frozenset(s for s, v in values.items() if v == vmin),
        frozenset(s for s, v in values.items() if v == vmax),
    )
    cert.check(pts, W)
    return cert


def _weak_certificate(points, p, W: IntLattice):
    pts = sorted(tuple(int(x) for x in s) for s in points)
    p = tuple(int(x) for x in p)
    comp = orthogonal_complement_lattice(saturation(W))
    t = comp.rank
    if t == 0:
        return None
    classes = _w_classes(pts, W)
    cls_of = {s: tuple(cls) for cls in classes for s in cls}
    if len(cls_of[p]) > 1:
        return None
    basis = [list(row) for row in comp.basis]

    def covector_coeffs(vec):
        return tuple(sum(v * b[i] for i, v in enumerate(vec)) for b in basis)

    base_cons = []
    for s in pts:
        if s == p:
            continue
        rhs = 1 if len(cls_of[s]) > 1 else 0
        base_cons.append((covector_coeffs([a - b for a, b in zip(s, p)]), ">=", rhs))
    # exclude u = 0 by forcing some complement coordinate away from zero
    for i in range(t):
        for sign in (1, -1):
            unit = [Fraction(0)] * t
            unit[i] = Fraction(sign)
            z = lp_feasible(base_cons + [(tuple(unit), ">=", 1)], t)
            if z is None:
                continue
            z = _primitive_int_vector(z)
            u = tuple(sum(z[j] * basis[j][c] for j in range(t)) for c in range(len(p)))
            values = {s: sum(a * b for a, b in zip(s, u)) for s in pts}
            vmin = min(values.values())
            if values[p] != vmin:
                continue
            min_face = frozenset(s for s, v in values.items() if v == vmin)
            ok = all(not W.contains([x - y for x, y in zip(a, b)])
                     for a, b in itertools.combinations(sorted(min_face), 2))
            if ok:
                return WeakCertificate(p, u, min_face)
    return None


def classify_module(points, W: IntLattice) -> ModuleClass:
    """Classify W as useful, opposite-only, or uncovered for the support."""
    pts = sorted(tuple(int(x) for x in s) for s in points)
    corners = sorted(corner_points(pts))
    if len(pts) == 1:
        comp = orthogonal_complement_lattice(saturation(W))
        if comp.rank == 0:
            return ModuleClass(CLASS_UNCOVERED)
        p = pts[0]
        u = comp.basis[0]
        cert = WitnessCertificate(p, p, tuple(u), frozenset([p]), frozenset([p]))
        return ModuleClass(CLASS_USEFUL, cert)
    for p, p2 in itertools.permutations(corners, 2):
        cert = witness_for_pair(pts, p, p2, W)
        if cert is not None:
            return ModuleClass(CLASS_USEFUL, cert)
    for p in corners:
        weak = _weak_certificate(pts, p, W)
        if weak is not None:
            return ModuleClass(CLASS_OPPOSITE_ONLY, weak)
    return ModuleClass(CLASS_UNCOVERED)


def all_useful_pairs(points, W: IntLattice):
    """Every ordered corner pair admitting a witness certificate for W."""
    pts = sorted(tuple(int(x) for x in s) for s in points)
    corners = sorted(corner_points(pts))
    certs = []
    for p, p2 in itertools.permutations(corners, 2):
        cert = witness_for_pair(pts, p, p2, W)
        if cert is not None:
            certs.append(cert)
    return certs


# ----------------------------------------------------------------------
# face-parallel candidate modules


def _primitive_direction(a, b):
    d = [x - y for x, y in zip(b, a)]
    g = 0
    for x in d:
        g = _int_gcd(g, abs(x))
    return tuple(x // g for x in d)


def _is_edge(pts, a, b):
    """Is the segment [a, b] (an affine-line face) exposed on the hull?"""
    r = len(a)
    d = _primitive_direction(a, b)
    online = [s for s in pts
              if all((s[i] - a[i]) * d[j] == (s[j] - a[j]) * d[i]
                     for i in range(r) for j in range(i + 1, r))]
    outside = [s for s in pts if s not in online]
    if not outside:
        return True  # fully collinear support: the segment is the hull
    cons = [(tuple(x - y for x, y in zip(b, a)), "==", 0)]
    for s in outside:
        cons.append((tuple(x - y for x, y in zip(s, a)), ">=", 1))
    return lp_feasible(cons, r) is not None


def face_parallel_modules(points):
    """Rank-1 modules along hull edges, plus rank-2 facet modules for r = 3.

    These are the only candidate spreads that leave no trace in any corner
    coefficient.  For r > 3 only the edge modules are enumerated.
    """
    pts = sorted(set(tuple(int(x) for x in p) for p in points))
    if not pts:
        raise ValueError("empty support")
    r = len(pts[0])
    modules = set()
    if r == 1 or len(pts) == 1:
        return []
    for a, b in itertools.combinations(pts, 2):
        if _is_edge(pts, a, b):
            modules.add(IntLattice(r, [_primitive_direction(a, b)]))
    if r == 3:
        modules.update(_facet_modules_3d(pts))
    diffs = [[x - y for x, y in zip(s, pts[0])] for s in pts[1:]]
    affine = saturation(IntLattice(r, diffs))
    if 0 < affine.rank < r:
        modules.add(affine)  # degenerate support: the whole affine direction space
    return sorted(modules, key=lambda L: L.key())


def _facet_modules_3d(pts):
    modules = set()
    for a, b, c in itertools.combinations(pts, 3):
        u = [b[i] - a[i] for i in range(3)]
        v = [c[i] - a[i] for i in range(3)]
        normal = (u[1] * v[2] - u[2] * v[1],
                  u[2] * v[0] - u[0] * v[2],
                  u[0] * v[1] - u[1] * v[0])
        if not any(normal):
            continue
        vals = [sum(n * (s[i] - a[i]) for i, n in enumerate(normal)) for s in pts]
        if all(x >= 0 for x in vals) or all(x <= 0 for x in vals):
            on_plane = [s for s, x in zip(pts, vals) if x == 0]
            diffs = [[x - y for x, y in zip(s, on_plane[0])] for s in on_plane[1:]]
            L = saturation(IntLattice(3, diffs))
            if L.rank == 2:
                modules.add(L)
    return modules
