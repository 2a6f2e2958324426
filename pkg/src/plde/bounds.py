"""Denominator bounds for rational solutions, relative to spread modules.

The pipeline for a single module W with a useful pair certificate:

1. change coordinates so that the witness covector becomes the first
   coordinate functional and W becomes the last coordinate axes;
2. bound the first-coordinate dispersion between the W-periodic parts of
   the extreme-face coefficients;
3. rewrite the equation by repeated substitution until every unknown term
   sits beyond that dispersion strip, collecting the exact reduced common
   denominator of the rewriting;
4. keep the W-periodic part of that denominator and map it back.

The combined driver runs this for every module that occurs as the spread
of a corner-coefficient factor, merges the results by lcm, collects the
factors of opposite-only modules into the residual set P, and reports the
face-parallel modules that no certificate can cover.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, replace
from .equation import PLDE
from .factored import FactoredPoly
from .geometry import (CLASS_OPPOSITE_ONLY, CLASS_UNCOVERED, CLASS_USEFUL,
                       WeakCertificate, WitnessCertificate, all_useful_pairs, classify_module,
                       corner_points, face_parallel_modules)
from .lattice import IntLattice, parse_module, saturation
from .polyring import Poly, divide_exact, format_poly, parse_poly
from .spread import INFINITY, NEG_INFINITY, disp_k, invariance_lattice
from .transform import frame_for, map_point, pull_back


class DegenerateFaceError(ValueError):
    """Two extreme-face support points share their leading coordinates."""

    def __init__(self, a, b, face: str):
        super().__init__("points %r and %r of the %s face agree in the leading "
                         "coordinates; the dispersion bound does not apply" % (a, b, face))
        self.points = (a, b)


class StripPreconditionError(ValueError):
    """The strip rewriting needs a unique support point on the base plane."""


@dataclass(frozen=True)
class BoundOptions:
    coarse: bool = False           # literal shifted-coefficient product instead of the
                                   # reduced common denominator
    refine: bool = True            # gcd over all useful pairs and both orientations
    drop_aperiodic: bool = True    # remove aperiodic factors from periodic-module parts
    box_radius: int = 8
    strip_observer: object = None  # test hook: called with every strip rewriting


@dataclass(frozen=True)
class StripResult:
    Rminus: tuple
    Rplus: tuple
    D_actual: FactoredPoly
    terms: dict          # point -> numerator over the common denominator
    b: Poly


@dataclass(frozen=True)
class ModuleEntry:
    kind: str
    certificate: object = None
    s_value: object = None
    d_W: FactoredPoly | None = None


@dataclass(frozen=True)
class BoundReport:
    variables: tuple
    d: FactoredPoly
    P: tuple
    per_module: dict
    uncovered: tuple
    warnings: tuple

    def to_json(self):
        modules = []
        for W in sorted(self.per_module, key=lambda L: L.key()):
            entry = self.per_module[W]
            rec = {"W": str(W), "class": entry.kind}
            cert = entry.certificate
            if isinstance(cert, WitnessCertificate):
                rec["pair"] = [list(cert.p), list(cert.p_prime)]
                rec["witness"] = list(cert.u)
            elif isinstance(cert, WeakCertificate):
                rec["p"] = list(cert.p)
                rec["witness"] = list(cert.u)
            if entry.s_value is not None:
                rec["s"] = "-inf" if entry.s_value == NEG_INFINITY else int(entry.s_value)
            if entry.d_W is not None:
                rec["d_W"] = entry.d_W.to_json()
            modules.append(rec)
        return {
            "variables": list(self.variables),
            "d": self.d.to_json(),
            "P": [format_poly(p) for p in self.P],
            "modules": modules,
            "uncovered": [str(W) for W in self.uncovered],
            "warnings": list(self.warnings),
        }

    @classmethod
    def from_json(cls, data) -> "BoundReport":
        variables = tuple(data["variables"])
        r = len(variables)
        per_module = {}
        for rec in data["modules"]:
            W = parse_module(rec["W"], r)
            s_value = rec.get("s")
            if s_value == "-inf":
                s_value = NEG_INFINITY
            d_W = FactoredPoly.from_json(rec["d_W"], variables) if "d_W" in rec else None
            cert = None
            if "pair" in rec:
                cert = WitnessCertificate(
                    tuple(rec["pair"][0]), tuple(rec["pair"][1]), tuple(rec["witness"]),
                    frozenset([tuple(rec["pair"][0])]), frozenset([tuple(rec["pair"][1])]))
            elif "p" in rec:
                cert = WeakCertificate(tuple(rec["p"]), tuple(rec["witness"]),
                                       frozenset([tuple(rec["p"])]))
            per_module[W] = ModuleEntry(rec["class"], cert, s_value, d_W)
        return cls(
            variables=variables,
            d=FactoredPoly.from_json(data["d"], variables),
            P=tuple(parse_poly(t, variables) for t in data["P"]),
            per_module=per_module,
            uncovered=tuple(parse_module(t, r) for t in data["uncovered"]),
            warnings=tuple(data.get("warnings", [])),
        )


# ----------------------------------------------------------------------
# exact fractions with a factored denominator


class _Frac:
    """Numerator polynomial over a factored denominator with unit 1, reduced."""

    __slots__ = ("num", "den")

    def __init__(self, num: Poly, den: FactoredPoly):
        if den.unit != 1:
            num = num * (1 / den.unit)
            den = den.drop_unit()
        if num.is_zero():
            den = FactoredPoly.one(den.vars)
        else:
            factors = []
            tags = []
            for (prim, mult), tag in zip(den.factors, den.tags):
                m = mult
                while m:
                    q = divide_exact(num, prim)
                    if q is None:
                        break
                    num = q
                    m -= 1
                if m:
                    factors.append((prim, m))
                    tags.append(tag)
            den = FactoredPoly(den.vars, 1, factors, tags)
        self.num = num
        self.den = den

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def add(self, other: "_Frac") -> "_Frac":
        common = self.den.lcm(other.den)
        a = self.num * common.div_exact(self.den).expand()
        b = other.num * common.div_exact(other.den).expand()
        return _Frac(a + b, common)


# ----------------------------------------------------------------------


def _norm_module(eq_vars_count: int, t: int) -> IntLattice:
    rows = [[1 if j == i else 0 for j in range(eq_vars_count)]
            for i in range(t, eq_vars_count)]
    return IntLattice(eq_vars_count, rows)


def dispersion_bound(eq_norm: PLDE, t: int, drop_aperiodic: bool = True,
                     box_radius: int = 8):
    """Maximal first-coordinate dispersion between base- and top-face W-parts.

    The equation must be in the normalized frame (minimal first coordinate
    0, the module mapped onto the last r - t axes).  Both extreme faces
    must be injective in the first t coordinates, otherwise the result
    would be meaningless and a DegenerateFaceError is raised.
    """
    r = len(eq_norm.variables)
    support = eq_norm.support
    low = min(s[0] for s in support)
    if low != 0:
        raise ValueError("equation is not shift-normalized")
    k = max(s[0] for s in support)
    A = [s for s in support if s[0] == 0]
    B = [s for s in support if s[0] == k]
    for face, name in ((A, "base"), (B, "top")):
        for a, b in itertools.combinations(face, 2):
            if a[:t] == b[:t]:
                raise DegenerateFaceError(a, b, name)
    W_norm = _norm_module(r, t)
    down = tuple([-k] + [0] * (r - 1))
    best = NEG_INFINITY
    for sa in A:
        a_part = eq_norm.terms[sa].w_part(W_norm, drop_aperiodic)
        if a_part.is_constant():
            continue
        for sb in B:
            b_part = eq_norm.terms[sb].w_part(W_norm, drop_aperiodic).shift(down)
            if b_part.is_constant():
                continue
            best = max(best, disp_k(a_part, b_part, 1, box_radius))
    assert best != INFINITY, "periodic parts cannot disperse along the witness axis"
    return best


def strip_rewrite(eq_norm: PLDE, p, s) -> StripResult:
    """Rewrite N^p y over a single denominator by cascading substitutions.

    Every term whose first-coordinate offset from p lies in [1, s] is
    replaced via the equation shifted by that offset; offsets strictly
    grow, so the process stops with all remaining terms beyond the strip.
    The reduced common denominator divides the product of the shifted
    copies of the corner coefficient collected along the way.
    """
    p = tuple(int(x) for x in p)
    if p not in eq_norm.terms:
        raise StripPreconditionError("%r is not a support point" % (p,))
    for q in eq_norm.terms:
        if q != p and q[0] <= p[0]:
            raise StripPreconditionError(
                "support point %r does not sit above the base plane of %r" % (q, p))
    a_p = eq_norm.terms[p]
    terms = {}
    for q, a_q in eq_norm.terms.items():
        if q != p:
            terms[q] = _Frac(-a_q.expand(), a_p)
    b = _Frac(eq_norm.rhs, a_p)
    substituted = []
    while True:
        ready = [i for i in terms if 1 <= i[0] - p[0] <= s]
        if not ready:
            break
        i = min(ready)
        coeff = terms.pop(i)
        if coeff.is_zero():
            continue
        d = tuple(a - b_ for a, b_ in zip(i, p))
        ap_d = a_p.shift(d)
        substituted.append(i)
        for q, a_q in eq_norm.terms.items():
            if q == p:
                continue
            target = tuple(a + b_ for a, b_ in zip(q, d))
            addend = _Frac(-(coeff.num * a_q.shift(d).expand()), coeff.den.mul(ap_d))
            terms[target] = terms[target].add(addend) if target in terms else addend
        if not eq_norm.rhs.is_zero():
            b = b.add(_Frac(coeff.num * eq_norm.rhs.shift(d), coeff.den.mul(ap_d)))
    rminus = tuple(sorted([p] + substituted))
    live = {i: fr for i, fr in terms.items() if not fr.is_zero()}
    assert all(i[0] - p[0] > s for i in live), "a reachable term survived inside the strip"
    D = FactoredPoly.one(eq_norm.variables)
    for fr in live.values():
        D = D.lcm(fr.den)
    D = D.lcm(b.den)
    pool = FactoredPoly.one(eq_norm.variables)
    for i in rminus:
        pool = pool.mul(a_p.shift(tuple(a - b_ for a, b_ in zip(i, p))).drop_unit())
    assert D.divides(pool), "common denominator escaped the substitution cascade"
    out_terms = {i: fr.num * D.div_exact(fr.den).expand() for i, fr in live.items()}
    out_b = b.num * D.div_exact(b.den).expand()
    return StripResult(rminus, tuple(sorted(live)), D, out_terms, out_b)


# ----------------------------------------------------------------------


def _primitive_entries(u):
    from math import gcd

    g = 0
    for x in u:
        g = gcd(g, abs(int(x)))
    if g in (0, 1):
        return tuple(int(x) for x in u)
    return tuple(int(x) // g for x in u)


def _bound_for_cert(eq: PLDE, W: IntLattice, cert: WitnessCertificate,
                    options: BoundOptions):
    u = _primitive_entries(cert.u)
    frame, eqn = frame_for(eq, W, u)
    p_img = map_point(frame, cert.p)
    assert p_img[0] == 0 and all(s[0] >= 1 for s in eqn.support if s != p_img)
    s_val = dispersion_bound(eqn, frame.t, options.drop_aperiodic, options.box_radius)
    if s_val == NEG_INFINITY:
        # no periodic factor of W can occur at the corner coefficient at all
        return FactoredPoly.one(eq.variables), s_val
    strip = strip_rewrite(eqn, p_img, s_val)
    if options.strip_observer is not None:
        options.strip_observer(eqn, p_img, s_val, strip)
    W_norm = _norm_module(len(eq.variables), frame.t)
    if options.coarse:
        a_prime = eqn.terms[p_img].w_part(W_norm, options.drop_aperiodic)
        d_norm = FactoredPoly.one(eq.variables)
        for i in strip.Rminus:
            d_norm = d_norm.mul(a_prime.shift(tuple(a - 2 * b for a, b in zip(i, p_img))))
    else:
        back = strip.D_actual.shift(tuple(-x for x in p_img))
        d_norm = back.w_part(W_norm, options.drop_aperiodic)
    return pull_back(frame, d_norm).drop_unit(), s_val


def bound_for_module(eq: PLDE, W: IntLattice, cert: WitnessCertificate | None = None,
                     options: BoundOptions = BoundOptions()) -> FactoredPoly:
    """Denominator bound of eq with respect to the module W.

    Needs a useful-pair certificate; with ``refine`` the results of every
    useful pair (both orientations included) are intersected by gcd.
    """
    W = saturation(W)
    support = eq.support
    if cert is None or options.refine:
        certs = all_useful_pairs(support, W)
        if cert is not None and cert not in certs:
            certs.insert(0, cert)
        if not certs:
            raise ValueError("no useful pair exists for this module")
        if not options.refine:
            certs = certs[:1]
    else:
        cert.check(support, W)
        certs = [cert]
    result = None
    for c in certs:
        d_c, _ = _bound_for_cert(eq, W, c, options)
        result = d_c if result is None else result.gcd(d_c)
    return result


def lcm_combine(bounds) -> FactoredPoly:
    """Fold factored lcm over per-module bounds ((module, bound) pairs or bounds)."""
    result = None
    for item in bounds:
        fp = item[1] if isinstance(item, tuple) else item
        result = fp.drop_unit() if result is None else result.lcm(fp)
    if result is None:
        raise ValueError("empty bound list")
    return result


def aperiodic_bound(eq: PLDE, options: BoundOptions = BoundOptions()) -> FactoredPoly:
    """Bound on the aperiodic denominator part: per corner, gcd across corners."""
    opts = replace(options, drop_aperiodic=False, refine=False, strip_observer=None)
    support = eq.support
    zero = IntLattice.zero(len(eq.variables))
    if len(support) == 1:
        p = support[0]
        down = tuple(-x for x in p)
        return eq.terms[p].shift(down).w_part(zero, False).drop_unit()
    corners = sorted(corner_points(support))
    result = None
    for p in corners:
        cert = None
        for p2 in corners:
            if p2 == p:
                continue
            from .geometry import witness_for_pair

            cert = witness_for_pair(support, p, p2, zero)
            if cert is not None:
                break
        if cert is None:
            continue
        d_p, _ = _bound_for_cert(eq, zero, cert, opts)
        result = d_p if result is None else result.gcd(d_p)
    return result if result is not None else FactoredPoly.one(eq.variables)


def partial_multiple(d: FactoredPoly, P, shifts, m: int) -> FactoredPoly:
    """d times the m-th powers of all given shifts of the residual factors."""
    result = d
    for p in P:
        for s in shifts:
            result = result.mul(FactoredPoly(d.vars, 1, [(p.shift(s), int(m))]))
    return result


def combined_bound(eq: PLDE, options: BoundOptions = BoundOptions()) -> BoundReport:
    """Bound driver over all corner-coefficient factor spreads.

    Aperiodic factors are handled by a preprocessing pass over all corners;
    each periodic module found in a corner coefficient is classified once
    and either bounded (useful), recorded in P (opposite-only), or noted in
    the warnings.  Face-parallel modules that no pair can serve are listed
    as uncovered candidates.
    """
    support = eq.support
    r = len(eq.variables)
    warnings = []
    for s in support:
        fp = eq.terms[s]
        for (prim, _), tag in zip(fp.factors, fp.tags):
            if tag != "verified_linear" and prim.total_degree() > 1:
                warnings.append("factor %s at %r trusted as irreducible (%s)"
                                % (format_poly(prim), tuple(s), tag))
    per_module = {}
    zero = IntLattice.zero(r)
    ap = aperiodic_bound(eq, options)
    per_module[zero] = ModuleEntry(CLASS_USEFUL, None, None, ap)
    d = ap.drop_unit()
    residual = []
    corners = sorted(corner_points(support))
    for q in corners:
        for prim, _mult in eq.terms[q].factors:
            Wu = invariance_lattice(prim)
            if Wu.is_zero():
                continue  # aperiodic factors are covered by the preprocessing pass
            if Wu not in per_module:
                cls = classify_module(support, Wu)
                if cls.kind == CLASS_USEFUL:
                    d_W, s_val = _first_bound(eq, Wu, cls.certificate, options)
                    per_module[Wu] = ModuleEntry(cls.kind, cls.certificate, s_val, d_W)
                    d = d.lcm(d_W)
                else:
                    per_module[Wu] = ModuleEntry(cls.kind, cls.certificate)
            entry = per_module[Wu]
            if entry.kind == CLASS_OPPOSITE_ONLY and prim not in residual:
                residual.append(prim)
            elif entry.kind == CLASS_UNCOVERED:
                warnings.append("factor %s has an uncovered spread %s"
                                % (format_poly(prim), Wu))
    uncovered = []
    for Wf in face_parallel_modules(support):
        if Wf not in per_module:
            cls = classify_module(support, Wf)
            per_module[Wf] = ModuleEntry(cls.kind, cls.certificate)
        if per_module[Wf].kind != CLASS_USEFUL:
            uncovered.append(Wf)
    if r > 3:
        warnings.append("face enumeration is restricted to hull edges for r > 3")
    return BoundReport(
        variables=eq.variables,
        d=d,
        P=tuple(sorted(residual, key=lambda p: p.sort_key())),
        per_module=per_module,
        uncovered=tuple(sorted(uncovered, key=lambda L: L.key())),
        warnings=tuple(warnings),
    )


def _first_bound(eq, W, cert, options):
    """Refined bound plus the dispersion value of the certificate's own frame."""
    _, s_val = _bound_for_cert(eq, W, cert, options)
    d_W = bound_for_module(eq, W, cert, options)
    return d_W, s_val
