"""Factored polynomials: a unit times a multiset of canonical prime-like factors.

Coefficients and denominator bounds are carried in this form so that gcd
and lcm reduce to multiplicity bookkeeping over canonical associate
representatives.  Irreducibility of the stored factors is tracked by a
per-factor tag: degree-1 factors are verified automatically, anything of
higher degree is trusted as declared by the caller.
"""

from __future__ import annotations

from fractions import Fraction

from .polyring import Poly, divide_exact, format_poly, normalize_primitive, parse_poly

VERIFIED_LINEAR = "verified_linear"
DECLARED_IRREDUCIBLE = "declared_irreducible"
UNVERIFIED = "unverified"

_TAG_RANK = {VERIFIED_LINEAR: 2, DECLARED_IRREDUCIBLE: 1, UNVERIFIED: 0}


def _auto_tag(prim: Poly, tag: str | None) -> str:
    if prim.total_degree() == 1:
        return VERIFIED_LINEAR
    return tag if tag in _TAG_RANK else UNVERIFIED


class SpreadComputationError(RuntimeError):
    """Spread of a stored factor could not be determined; names the factor."""

    def __init__(self, factor: Poly, reason: str):
        super().__init__("cannot determine spread of %s: %s" % (format_poly(factor), reason))
        self.factor = factor


class FactoredPoly:
    """unit * prod(prim_i ^ mult_i) with canonical, pairwise distinct prims."""

    __slots__ = ("vars", "unit", "factors", "tags")

    def __init__(self, vars, unit=1, factors=(), tags=None):
        self.vars = tuple(vars)
        unit = Fraction(unit)
        if unit == 0:
            raise ValueError("unit must be nonzero")
        merged: dict[Poly, int] = {}
        tag_of: dict[Poly, str] = {}
        factors = list(factors)
        tags = list(tags) if tags is not None else [None] * len(factors)
        if len(tags) != len(factors):
            raise ValueError("one tag per factor expected")
        for (p, mult), tag in zip(factors, tags):
            mult = int(mult)
            if mult < 1:
                raise ValueError("multiplicity must be positive")
            if p.vars != self.vars:
                raise ValueError("factor over wrong variables")
            if p.is_zero():
                raise ValueError("zero factor")
            u, prim = normalize_primitive(p)
            unit *= u ** mult
            if prim.is_constant():
                continue
            merged[prim] = merged.get(prim, 0) + mult
            t = _auto_tag(prim, tag)
            if prim not in tag_of or _TAG_RANK[t] > _TAG_RANK[tag_of[prim]]:
                tag_of[prim] = t
        order = sorted(merged, key=lambda p: p.sort_key())
        self.unit = unit
        self.factors = tuple((p, merged[p]) for p in order)
        self.tags = tuple(tag_of[p] for p in order)

    # ------------------------------------------------------------------

    @classmethod
    def one(cls, vars) -> "FactoredPoly":
        return cls(vars)

    @classmethod
    def from_poly(cls, p: Poly, tag: str | None = None) -> "FactoredPoly":
        """Wrap a single (assumed irreducible) polynomial."""
        if p.is_zero():
            raise ValueError("zero polynomial has no factored form")
        if p.is_constant():
            return cls(p.vars, p.constant_value())
        return cls(p.vars, 1, [(p, 1)], [tag])

    def is_one(self) -> bool:
        return self.unit == 1 and not self.factors

    def is_constant(self) -> bool:
        return not self.factors

    def expand(self) -> Poly:
        result = Poly.const(self.vars, self.unit)
        for p, m in self.factors:
            result = result * p ** m
        return result

    def total_degree(self) -> int:
        return sum(p.total_degree() * m for p, m in self.factors)

    def multiplicity(self, prim: Poly) -> int:
        for p, m in self.factors:
            if p == prim:
                return m
        return 0

    def __eq__(self, other):
        return (isinstance(other, FactoredPoly) and self.vars == other.vars
                and self.unit == other.unit and self.factors == other.factors)

    def __hash__(self):
        return hash((self.vars, self.unit, self.factors))

    def __str__(self):
        if not self.factors:
            num = self.unit.numerator
            return str(num) if self.unit.denominator == 1 else "%d/%d" % (num, self.unit.denominator)
        pieces = []
        if self.unit == -1:
            pieces.append("-1")
        elif self.unit != 1:
            pieces.append(str(self.unit))
        for p, m in self.factors:
            s = "(%s)" % format_poly(p)
            pieces.append(s if m == 1 else "%s^%d" % (s, m))
        return "*".join(pieces)

    def __repr__(self):
        return "FactoredPoly(%s)" % str(self)

    # ------------------------------------------------------------------
    # multiplicative structure

    def _tag_for(self, prim: Poly) -> str:
        for p, t in zip((p for p, _ in self.factors), self.tags):
            if p == prim:
                return t
        return UNVERIFIED

    def mul(self, other: "FactoredPoly") -> "FactoredPoly":
        if self.vars != other.vars:
            raise ValueError("mismatched variable lists")
        factors = list(self.factors) + list(other.factors)
        tags = list(self.tags) + list(other.tags)
        return FactoredPoly(self.vars, self.unit * other.unit, factors, tags)

    def pow(self, n: int) -> "FactoredPoly":
        n = int(n)
        if n < 0:
            raise ValueError("negative power of a factored polynomial")
        factors = [(p, m * n) for p, m in self.factors] if n else []
        return FactoredPoly(self.vars, self.unit ** n, factors, list(self.tags) if n else [])

    def gcd(self, other: "FactoredPoly") -> "FactoredPoly":
        if self.vars != other.vars:
            raise ValueError("mismatched variable lists")
        mine = dict(self.factors)
        factors = []
        tags = []
        for p, m in other.factors:
            if p in mine:
                factors.append((p, min(m, mine[p])))
                tags.append(self._tag_for(p))
        return FactoredPoly(self.vars, 1, factors, tags)

    def lcm(self, other: "FactoredPoly") -> "FactoredPoly":
        if self.vars != other.vars:
            raise ValueError("mismatched variable lists")
        mult = dict(self.factors)
        for p, m in other.factors:
            mult[p] = max(mult.get(p, 0), m)
        factors = list(mult.items())
        tags = [max(self._tag_for(p), other._tag_for(p), key=lambda t: _TAG_RANK[t])
                for p, _ in factors]
        return FactoredPoly(self.vars, 1, factors, tags)

    def divides(self, other: "FactoredPoly") -> bool:
        """Multiset containment of factors (units ignored)."""
        theirs = dict(other.factors)
        return all(theirs.get(p, 0) >= m for p, m in self.factors)

    def div_exact(self, other: "FactoredPoly") -> "FactoredPoly":
        """Quotient by a factored divisor (multiset subtraction)."""
        if not other.divides(self):
            raise ValueError("not a factored divisor")
        mult = dict(self.factors)
        for p, m in other.factors:
            mult[p] -= m
        factors = [(p, m) for p, m in mult.items() if m]
        tags = [self._tag_for(p) for p, _ in factors]
        return FactoredPoly(self.vars, self.unit / other.unit, factors, tags)

    def shift(self, s) -> "FactoredPoly":
        """Shift every factor; canonical form is preserved factor by factor."""
        factors = [(p.shift(s), m) for p, m in self.factors]
        return FactoredPoly(self.vars, self.unit, factors, list(self.tags))

    def subst(self, matrix) -> "FactoredPoly":
        """Apply the variable substitution n -> matrix . n to every factor."""
        gens = [Poly.variable(self.vars, v) for v in self.vars]
        images = []
        for row in matrix.rows:
            img = Poly.zero(self.vars)
            for c, g in zip(row, gens):
                if c:
                    img = img + g * c
            images.append(img)
        factors = [(p.compose(images, self.vars), m) for p, m in self.factors]
        return FactoredPoly(self.vars, self.unit, factors, list(self.tags))

    def drop_unit(self) -> "FactoredPoly":
        return FactoredPoly(self.vars, 1, list(self.factors), list(self.tags))

    # ------------------------------------------------------------------
    # spread filters

    def w_part(self, W, drop_aperiodic: bool = False) -> "FactoredPoly":
        """Factors whose spread lattice is contained in W; unit reset to 1.

        With ``drop_aperiodic`` the factors with trivial spread are removed
        as well (they are handled by the aperiodic preprocessing pass).
        """
        from .spread import invariance_lattice
        from .lattice import is_sublattice

        kept = []
        tags = []
        for (p, m), tag in zip(self.factors, self.tags):
            try:
                sp = invariance_lattice(p)
            except Exception as exc:  # pragma: no cover - defensive
                raise SpreadComputationError(p, str(exc)) from exc
            if not is_sublattice(sp, W):
                continue
            if drop_aperiodic and sp.is_zero():
                continue
            kept.append((p, m))
            tags.append(tag)
        return FactoredPoly(self.vars, 1, kept, tags)

    # ------------------------------------------------------------------
    # serialization

    def to_json(self):
        return {
            "unit": str(self.unit),
            "factors": [[format_poly(p), m] for p, m in self.factors],
        }

    @classmethod
    def from_json(cls, data, vars) -> "FactoredPoly":
        unit = Fraction(data.get("unit", "1"))
        factors = []
        for text, mult in data.get("factors", []):
            factors.append((parse_poly(text, vars), int(mult)))
        return cls(vars, unit, factors, [DECLARED_IRREDUCIBLE] * len(factors))


# ----------------------------------------------------------------------
# functional aliases


def expand(fp: FactoredPoly) -> Poly:
    return fp.expand()


def fp_mul(a: FactoredPoly, b: FactoredPoly) -> FactoredPoly:
    return a.mul(b)


def fp_gcd(a: FactoredPoly, b: FactoredPoly) -> FactoredPoly:
    return a.gcd(b)


def fp_lcm(a: FactoredPoly, b: FactoredPoly) -> FactoredPoly:
    return a.lcm(b)


def shift_fp(fp: FactoredPoly, s) -> FactoredPoly:
    return fp.shift(s)


def w_part(fp: FactoredPoly, W, drop_aperiodic: bool = False) -> FactoredPoly:
    return fp.w_part(W, drop_aperiodic)


def divides_poly(fp: FactoredPoly, p: Poly) -> bool:
    """Does the expanded form of fp divide p exactly?"""
    return divide_exact(p, fp.expand()) is not None
