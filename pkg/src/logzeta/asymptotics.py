"""Leading-term calculus for Euler characteristics of generic sections.

For a locally closed set of dimension ``d`` whose closure has top-dimensional
degree ``g`` with respect to the chosen ample class, a generic member of the
k-th power of the class changes Euler characteristics as follows, to leading
order in ``k``:

* complement:  ``(-1)^d * g * k^d``  (exact when d = 0),
* section:     ``(-1)^(d-1) * g * k^d``  (d > 0 only),
* the section minus any fixed set, in an ambient of dimension n and degree g:
  ``(-1)^(n-1) * g * k^n``.

Lower-order terms are never fabricated; a term is ``exact`` only in the
zero-dimensional complement case.
"""

from __future__ import annotations

from dataclasses import dataclass

from .algebra import KPoly


@dataclass(frozen=True)
class LeadingTerm:
    """Signed leading monomial ``sign * coefficient * k^exponent``."""

    sign: int
    coefficient: int
    exponent: int
    exact: bool = False

    def __post_init__(self):
        if self.sign not in (1, -1):
            raise ValueError("sign must be +1 or -1")
        if self.coefficient <= 0:
            raise ValueError("coefficient must be positive")
        if self.exponent < 0:
            raise ValueError("exponent must be non-negative")

    def signed_coefficient(self) -> int:
        return self.sign * self.coefficient

    def as_kpoly(self) -> KPoly:
        coeffs = [0] * self.exponent + [self.sign * self.coefficient]
        return KPoly(coeffs)

    def __str__(self) -> str:
        body = "" if self.exponent == 0 else ("k" if self.exponent == 1 else f"k^{self.exponent}")
        coeff = str(self.coefficient) if (self.coefficient != 1 or not body) else ""
        sep = "*" if coeff and body else ""
        return ("" if self.sign > 0 else "-") + coeff + sep + body


def leading_chi_complement(dim: int, deg: int) -> LeadingTerm:
    """Leading term of the characteristic of the complement of a generic section."""
    if deg <= 0:
        raise ValueError("degree must be positive")
    if dim < 0:
        raise ValueError("dimension must be non-negative")
    return LeadingTerm(1 if dim % 2 == 0 else -1, deg, dim, exact=dim == 0)


def leading_chi_section(dim: int, deg: int) -> LeadingTerm:
    """Leading term of the characteristic of a generic section; needs dim > 0."""
    if dim <= 0:
        raise ValueError("the section formula needs positive dimension")
    if deg <= 0:
        raise ValueError("degree must be positive")
    return LeadingTerm(1 if (dim - 1) % 2 == 0 else -1, deg, dim)


def leading_chi_ambient(n: int, deg: int) -> LeadingTerm:
    """Leading term for the generic section minus a fixed set, ambient data (n, deg)."""
    if n <= 0:
        raise ValueError("ambient dimension must be positive")
    if deg <= 0:
        raise ValueError("degree must be positive")
    return LeadingTerm(1 if (n - 1) % 2 == 0 else -1, deg, n)


@dataclass(frozen=True)
class DominanceResult:
    vanishes: bool
    top: LeadingTerm | None


def dominance_check(terms: list[LeadingTerm]) -> DominanceResult:
    """Sum the signed coefficients at the maximal exponent.

    Reports whether that sum is zero.  Terms of equal dimension share one
    sign, so a list coming from strata of a single dimension can never
    cancel: the returned top coefficient is then the (positive) sum of the
    degrees.
    """
    if not terms:
        return DominanceResult(True, None)
    r = max(t.exponent for t in terms)
    total = sum(t.signed_coefficient() for t in terms if t.exponent == r)
    if total == 0:
        return DominanceResult(True, None)
    exact = all(t.exact and t.exponent == r for t in terms)
    return DominanceResult(
        False, LeadingTerm(1 if total > 0 else -1, abs(total), r, exact=exact)
    )
