"""Partial linear difference equations with factored polynomial coefficients.

An equation is a finite sum of shifted copies of one unknown rational
function: sum over s in the support of a_s * y(n + s) = f, with nonzero
polynomial coefficients a_s and polynomial right-hand side f.

The JSON file format used by the command line front-end:

    {
      "variables": ["n", "k"],
      "terms": [
        {"shift": [0, 0],
         "coefficient": {"unit": "-1", "factors": [["k+n+1", 1], ["2*k+3*n+1", 1]]}},
        ...
      ],
      "rhs": "0"
    }

Coefficients may also be given as plain polynomial strings; those are
auto-factored only as far as content extraction and univariate linear
splits go, anything harder must arrive factored.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction

from .factored import FactoredPoly
from .polyring import Poly, format_poly, normalize_primitive, parse_poly


class EquationFormatError(ValueError):
    """Malformed equation data."""


class UnsupportedCoefficientError(ValueError):
    """A plain-text coefficient that the convenience factorizer cannot split."""


@dataclass(frozen=True)
class PLDE:
    """Equation data: variables, support-indexed coefficients, right-hand side."""

    variables: tuple
    terms: dict
    rhs: Poly

    def __post_init__(self):
        if not self.terms:
            raise EquationFormatError("equation has no terms")
        r = len(self.variables)
        if len(set(self.variables)) != r:
            raise EquationFormatError("variable names must be distinct")
        for s, a in self.terms.items():
            if len(s) != r:
                raise EquationFormatError("shift %r has wrong length" % (s,))
            if a.vars != self.variables:
                raise EquationFormatError("coefficient at %r is over the wrong variables" % (s,))
        if self.rhs.vars != self.variables:
            raise EquationFormatError("right-hand side is over the wrong variables")

    @property
    def support(self):
        return sorted(self.terms)

    def coefficient(self, s) -> FactoredPoly:
        return self.terms[tuple(s)]

    def shifted(self, c) -> "PLDE":
        """Apply the shift operator N^c to both sides; the solution set is unchanged."""
        c = tuple(int(x) for x in c)
        terms = {tuple(a + b for a, b in zip(s, c)): fp.shift(c) for s, fp in self.terms.items()}
        return PLDE(self.variables, terms, self.rhs.shift(c))

    def to_json(self):
        return {
            "variables": list(self.variables),
            "terms": [
                {"shift": list(s), "coefficient": self.terms[s].to_json()}
                for s in self.support
            ],
            "rhs": format_poly(self.rhs),
        }

    @classmethod
    def from_json(cls, data) -> "PLDE":
        try:
            variables = tuple(data["variables"])
            raw_terms = data["terms"]
            rhs_text = data.get("rhs", "0")
        except (KeyError, TypeError) as exc:
            raise EquationFormatError("missing field: %s" % exc) from exc
        if not raw_terms:
            raise EquationFormatError("equation has no terms")
        terms = {}
        for entry in raw_terms:
            shift = tuple(int(x) for x in entry["shift"])
            coeff = entry["coefficient"]
            if isinstance(coeff, str):
                fp = auto_factor(parse_poly(coeff, variables))
            else:
                fp = FactoredPoly.from_json(coeff, variables)
            if fp.unit == 0 or (fp.is_constant() and fp.unit == 0):
                raise EquationFormatError("zero coefficient at %r" % (shift,))
            if shift in terms:
                raise EquationFormatError("duplicate shift %r" % (shift,))
            terms[shift] = fp
        return cls(variables, terms, parse_poly(rhs_text, variables))


def load_equation(path) -> PLDE:
    with open(path, "r", encoding="utf-8") as fh:
        try:
            data = json.load(fh)
        except json.JSONDecodeError as exc:
            raise EquationFormatError("not valid JSON: %s" % exc) from exc
    return PLDE.from_json(data)


def _univariate_linear_split(p: Poly, var_index: int):
    """Split off rational roots of a univariate polynomial, or None.

    Returns a factor list when p factors completely into linear pieces,
    which is the only split the convenience path promises.
    """
    coeffs = {}
    for e, c in p.terms.items():
        coeffs[e[var_index]] = c
    degree = max(coeffs)
    factors = []
    current = p
    vars = p.vars
    x = Poly.variable(vars, vars[var_index])
    for _ in range(degree):
        cur_coeffs = {e[var_index]: c for e, c in current.terms.items()}
        d = max(cur_coeffs)
        if d == 0:
            break
        lead = cur_coeffs[d]
        const = cur_coeffs.get(0, Fraction(0))
        root = None
        if const == 0:
            root = Fraction(0)
        else:
            for num in _divisors(const.numerator * lead.denominator):
                for den in _divisors(lead.numerator * const.denominator):
                    for sign in (1, -1):
                        cand = Fraction(sign * num, den)
                        if current.eval_at([cand if i == var_index else 0
                                            for i in range(len(vars))]) == 0:
                            root = cand
                            break
                    if root is not None:
                        break
                if root is not None:
                    break
        if root is None:
            return None
        lin = x * root.denominator - Poly.const(vars, root.numerator)
        from .polyring import divide_exact

        quo = divide_exact(current, lin)
        assert quo is not None
        factors.append(lin)
        current = quo
    if not current.is_constant():
        return None
    return factors


def _divisors(n: int):
    n = abs(int(n))
    if n == 0:
        return [1]
    out = [d for d in range(1, n + 1) if n % d == 0]
    return out


def auto_factor(p: Poly) -> FactoredPoly:
    """Convenience factorizer: content, linear forms, and univariate splits only.

    Anything beyond that raises UnsupportedCoefficientError; callers are
    expected to supply factored coefficients.
    """
    if p.is_zero():
        raise EquationFormatError("zero coefficient")
    if p.is_constant():
        return FactoredPoly(p.vars, p.constant_value())
    unit, prim = normalize_primitive(p)
    if prim.total_degree() == 1:
        return FactoredPoly(p.vars, unit, [(prim, 1)])
    present = [i for i in range(len(p.vars)) if prim.degree_in(i) > 0]
    if len(present) == 1:
        split = _univariate_linear_split(prim, present[0])
        if split is not None:
            return FactoredPoly(p.vars, unit, [(f, 1) for f in split])
    raise UnsupportedCoefficientError(
        "coefficient %s is nonlinear and not supplied in factored form" % format_poly(p))


