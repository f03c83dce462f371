"""Exact arithmetic over rationals, multivariate polynomials and linear forms.

Everything in this module is immutable and exact; no floating point is used
anywhere.  The building blocks:

* ``Fraction`` (stdlib) for rational scalars,
* ``KPoly`` for univariate polynomials in the section-power parameter ``k``,
* ``MultiPoly`` for sparse multivariate polynomials over the rationals,
  stored as a map from exponent tuples to nonzero coefficients,
* ``LinearForm`` for integer affine-linear forms ``c1*s1 + ... + cq*sq + c0``,
* ``RationalFunctionNF`` for fully reduced fractions whose denominator is a
  product of pairwise non-proportional linear forms.

The canonical term order (equality, printing) is graded lexicographic.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Iterable, Mapping, Sequence, Union

Exponent = tuple[int, ...]
RationalLike = Union[int, Fraction]


def as_fraction(value: Union[RationalLike, "KPoly"]) -> Fraction:
    """Coerce ints, Fractions and constant KPoly values to Fraction."""
    if isinstance(value, KPoly):
        if value.degree() > 0:
            raise ValueError("cannot coerce a non-constant k-polynomial to a rational")
        return value.constant_value()
    return Fraction(value)


def format_rational(value: Fraction) -> str:
    """Lowest-terms string, '7' for integers and '7/3' otherwise."""
    return str(Fraction(value))


class KPoly:
    """Univariate polynomial in the auxiliary parameter ``k``, exact coefficients.

    Coefficients are stored low degree first with no trailing zeros; the zero
    polynomial has an empty coefficient tuple.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Sequence[RationalLike] = ()):
        cs = [Fraction(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(cs))

    @classmethod
    def constant(cls, value: RationalLike) -> "KPoly":
        return cls([Fraction(value)])

    @classmethod
    def linear(cls, constant: RationalLike, slope: RationalLike) -> "KPoly":
        """The polynomial ``constant + slope*k``."""
        return cls([Fraction(constant), Fraction(slope)])

    def degree(self) -> int:
        """Degree, with the convention that the zero polynomial has degree -1."""
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def constant_value(self) -> Fraction:
        if self.degree() > 0:
            raise ValueError("k-polynomial is not constant")
        return self.coeffs[0] if self.coeffs else Fraction(0)

    def leading_coefficient(self) -> Fraction:
        if not self.coeffs:
            raise ValueError("zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    def __call__(self, k: RationalLike) -> Fraction:
        k = Fraction(k)
        out = Fraction(0)
        for c in reversed(self.coeffs):
            out = out * k + c
        return out

    def _coerced(self, other) -> "KPoly":
        if isinstance(other, KPoly):
            return other
        return KPoly.constant(other)

    def __add__(self, other) -> "KPoly":
        other = self._coerced(other)
        n = max(len(self.coeffs), len(other.coeffs))
        return KPoly(
            [
                (self.coeffs[i] if i < len(self.coeffs) else 0)
                + (other.coeffs[i] if i < len(other.coeffs) else 0)
                for i in range(n)
            ]
        )

    __radd__ = __add__

    def __neg__(self) -> "KPoly":
        return KPoly([-c for c in self.coeffs])

    def __sub__(self, other) -> "KPoly":
        return self + (-self._coerced(other))

    def __rsub__(self, other) -> "KPoly":
        return self._coerced(other) - self

    def __mul__(self, other) -> "KPoly":
        other = self._coerced(other)
        if self.is_zero() or other.is_zero():
            return KPoly()
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return KPoly(out)

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = KPoly.constant(other)
        if not isinstance(other, KPoly):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash(("KPoly", self.coeffs))

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        parts = []
        for exp in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[exp]
            if c == 0:
                continue
            if exp == 0:
                mono = format_rational(abs(c))
            else:
                var = "k" if exp == 1 else f"k^{exp}"
                mono = var if abs(c) == 1 else f"{format_rational(abs(c))}*{var}"
            if not parts:
                parts.append(mono if c > 0 else f"-{mono}")
            else:
                parts.append(f"+{mono}" if c > 0 else f"-{mono}")
        return "".join(parts)

    def __repr__(self) -> str:
        return f"KPoly({list(self.coeffs)!r})"


def _grlex_key(exponent: Exponent) -> tuple:
    return (sum(exponent), exponent)


def default_var_names(nvars: int) -> list[str]:
    if nvars == 1:
        return ["s"]
    return [f"s{i + 1}" for i in range(nvars)]


class MultiPoly:
    """Sparse multivariate polynomial with exact rational coefficients."""

    __slots__ = ("nvars", "terms")

    def __init__(self, nvars: int, terms: Mapping[Exponent, RationalLike] = ()):
        if nvars < 0:
            raise ValueError("variable count must be non-negative")
        clean: dict[Exponent, Fraction] = {}
        items = terms.items() if isinstance(terms, Mapping) else terms
        for exponent, coeff in items:
            exponent = tuple(int(e) for e in exponent)
            if len(exponent) != nvars:
                raise ValueError(f"exponent {exponent} has wrong length for {nvars} variables")
            if any(e < 0 for e in exponent):
                raise ValueError("negative exponents are not allowed")
            coeff = Fraction(coeff)
            if coeff == 0:
                continue
            acc = clean.get(exponent, Fraction(0)) + coeff
            if acc == 0:
                clean.pop(exponent, None)
            else:
                clean[exponent] = acc
        object.__setattr__(self, "nvars", nvars)
        object.__setattr__(self, "terms", clean)

    @classmethod
    def zero(cls, nvars: int) -> "MultiPoly":
        return cls(nvars, {})

    @classmethod
    def constant(cls, nvars: int, value: RationalLike) -> "MultiPoly":
        return cls(nvars, {(0,) * nvars: Fraction(value)})

    @classmethod
    def variable(cls, nvars: int, index: int) -> "MultiPoly":
        exponent = [0] * nvars
        exponent[index] = 1
        return cls(nvars, {tuple(exponent): Fraction(1)})

    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return all(sum(e) == 0 for e in self.terms)

    def constant_value(self) -> Fraction:
        if not self.is_constant():
            raise ValueError("polynomial is not constant")
        return next(iter(self.terms.values()), Fraction(0))

    def total_degree(self) -> int:
        """Total degree; zero polynomial reports 0."""
        if not self.terms:
            return 0
        return max(sum(e) for e in self.terms)

    def degree_in(self, index: int) -> int:
        if not self.terms:
            return 0
        return max(e[index] for e in self.terms)

    def _check_compatible(self, other: "MultiPoly") -> None:
        if self.nvars != other.nvars:
            raise ValueError("variable-count mismatch")

    def __add__(self, other: "MultiPoly") -> "MultiPoly":
        self._check_compatible(other)
        out = dict(self.terms)
        for exponent, coeff in other.terms.items():
            out[exponent] = out.get(exponent, Fraction(0)) + coeff
        return MultiPoly(self.nvars, out)

    def __sub__(self, other: "MultiPoly") -> "MultiPoly":
        self._check_compatible(other)
        out = dict(self.terms)
        for exponent, coeff in other.terms.items():
            out[exponent] = out.get(exponent, Fraction(0)) - coeff
        return MultiPoly(self.nvars, out)

    def __neg__(self) -> "MultiPoly":
        return MultiPoly(self.nvars, {e: -c for e, c in self.terms.items()})

    def __mul__(self, other: "MultiPoly") -> "MultiPoly":
        self._check_compatible(other)
        out: dict[Exponent, Fraction] = {}
        for ea, ca in self.terms.items():
            for eb, cb in other.terms.items():
                exponent = tuple(x + y for x, y in zip(ea, eb))
                out[exponent] = out.get(exponent, Fraction(0)) + ca * cb
        return MultiPoly(self.nvars, out)

    def scale(self, value: RationalLike) -> "MultiPoly":
        value = Fraction(value)
        if value == 0:
            return MultiPoly.zero(self.nvars)
        return MultiPoly(self.nvars, {e: c * value for e, c in self.terms.items()})

    def power(self, exponent: int) -> "MultiPoly":
        if exponent < 0:
            raise ValueError("negative power")
        out = MultiPoly.constant(self.nvars, 1)
        for _ in range(exponent):
            out = out * self
        return out

    def __eq__(self, other) -> bool:
        if not isinstance(other, MultiPoly):
            return NotImplemented
        return self.nvars == other.nvars and self.terms == other.terms

    def __hash__(self) -> int:
        return hash((self.nvars, frozenset(self.terms.items())))

    def evaluate(self, point: Sequence[RationalLike]) -> Fraction:
        if len(point) != self.nvars:
            raise ValueError("point has wrong dimension")
        point = [Fraction(x) for x in point]
        out = Fraction(0)
        for exponent, coeff in self.terms.items():
            term = coeff
            for x, e in zip(point, exponent):
                if e:
                    term *= x**e
            out += term
        return out

    def substitute_affine(
        self, index: int, coeffs: Sequence[RationalLike], constant: RationalLike
    ) -> "MultiPoly":
        """Substitute ``s_index := constant + sum_i coeffs[i]*s_i``.

        ``coeffs[index]`` must be zero; the result no longer involves the
        substituted variable.
        """
        coeffs = [Fraction(c) for c in coeffs]
        if len(coeffs) != self.nvars:
            raise ValueError("coefficient vector has wrong length")
        if coeffs[index] != 0:
            raise ValueError("substitution must eliminate the variable")
        replacement = MultiPoly(
            self.nvars,
            {
                **{
                    tuple(1 if i == j else 0 for i in range(self.nvars)): c
                    for j, c in enumerate(coeffs)
                    if c != 0
                },
            },
        ) + MultiPoly.constant(self.nvars, constant)
        powers: dict[int, MultiPoly] = {0: MultiPoly.constant(self.nvars, 1)}

        def power_of(d: int) -> MultiPoly:
            if d not in powers:
                powers[d] = power_of(d - 1) * replacement
            return powers[d]

        out = MultiPoly.zero(self.nvars)
        for exponent, coeff in self.terms.items():
            rest = list(exponent)
            d = rest[index]
            rest[index] = 0
            mono = MultiPoly(self.nvars, {tuple(rest): coeff})
            out = out + mono * power_of(d)
        return out

    def diagonal(self) -> "MultiPoly":
        """Substitute all variables by a single one (the diagonal map)."""
        out: dict[Exponent, Fraction] = {}
        for exponent, coeff in self.terms.items():
            e = (sum(exponent),)
            out[e] = out.get(e, Fraction(0)) + coeff
        return MultiPoly(1, out)

    def sorted_terms(self) -> list[tuple[Exponent, Fraction]]:
        """Terms in descending graded-lexicographic order."""
        return sorted(self.terms.items(), key=lambda item: _grlex_key(item[0]), reverse=True)

    def format(self, var_names: Sequence[str] | None = None) -> str:
        if not self.terms:
            return "0"
        names = list(var_names) if var_names is not None else default_var_names(self.nvars)
        parts: list[str] = []
        for exponent, coeff in self.sorted_terms():
            factors = []
            for name, e in zip(names, exponent):
                if e == 1:
                    factors.append(name)
                elif e > 1:
                    factors.append(f"{name}^{e}")
            if factors:
                body = "*".join(factors)
                mono = body if abs(coeff) == 1 else f"{format_rational(abs(coeff))}*{body}"
            else:
                mono = format_rational(abs(coeff))
            if not parts:
                parts.append(mono if coeff > 0 else f"-{mono}")
            else:
                parts.append(f"+{mono}" if coeff > 0 else f"-{mono}")
        return "".join(parts)

    def __str__(self) -> str:
        return self.format()

    def __repr__(self) -> str:
        return f"MultiPoly({self.nvars}, {self.terms!r})"


@dataclass(frozen=True)
class LinearForm:
    """Integer affine-linear form ``coefficients . s + constant``.

    Candidate pole forms coming from resolution data always have non-negative
    coefficients and a positive constant, and keep their raw (non-primitive)
    data.  Forms with mixed signs or non-positive constants arise internally,
    from hyperplane restriction and from integer translates.
    """

    coefficients: tuple[int, ...]
    constant: int

    def __post_init__(self):
        coeffs = tuple(int(c) for c in self.coefficients)
        object.__setattr__(self, "coefficients", coeffs)
        object.__setattr__(self, "constant", int(self.constant))
        if not coeffs or all(c == 0 for c in coeffs):
            raise ValueError("linear form needs at least one nonzero coefficient")

    @property
    def nvars(self) -> int:
        return len(self.coefficients)

    def content(self) -> int:
        return gcd(*(abs(c) for c in self.coefficients), abs(self.constant))

    def primitive(self) -> "LinearForm":
        """Divide out the content and normalise the leading sign to positive."""
        g = self.content()
        coeffs = [c // g for c in self.coefficients]
        constant = self.constant // g
        lead = next(c for c in coeffs if c != 0)
        if lead < 0:
            coeffs = [-c for c in coeffs]
            constant = -constant
        return LinearForm(tuple(coeffs), constant)

    def class_key(self) -> tuple:
        """Hashable key identifying the proportionality class of the form."""
        p = self.primitive()
        return (p.coefficients, p.constant)

    def proportional_to(self, other: "LinearForm") -> bool:
        return self.class_key() == other.class_key()

    def ratio_to(self, other: "LinearForm") -> Fraction:
        """The scalar r with self == r * other; requires proportional forms."""
        if not self.proportional_to(other):
            raise ValueError("forms are not proportional")
        i = next(i for i, c in enumerate(other.coefficients) if c != 0)
        return Fraction(self.coefficients[i], other.coefficients[i])

    def as_poly(self) -> MultiPoly:
        terms: dict[Exponent, Fraction] = {}
        for i, c in enumerate(self.coefficients):
            if c:
                exponent = tuple(1 if j == i else 0 for j in range(self.nvars))
                terms[exponent] = Fraction(c)
        if self.constant:
            terms[(0,) * self.nvars] = Fraction(self.constant)
        return MultiPoly(self.nvars, terms)

    def evaluate(self, point: Sequence[RationalLike]) -> Fraction:
        if len(point) != self.nvars:
            raise ValueError("point has wrong dimension")
        out = Fraction(self.constant)
        for c, x in zip(self.coefficients, point):
            out += c * Fraction(x)
        return out

    def format(self, var_names: Sequence[str] | None = None) -> str:
        names = list(var_names) if var_names is not None else default_var_names(self.nvars)
        parts: list[str] = []
        for name, c in zip(names, self.coefficients):
            if c == 0:
                continue
            mono = name if abs(c) == 1 else f"{abs(c)}*{name}"
            if not parts:
                parts.append(mono if c > 0 else f"-{mono}")
            else:
                parts.append(f"+{mono}" if c > 0 else f"-{mono}")
        if self.constant:
            parts.append(f"+{self.constant}" if self.constant > 0 else f"-{-self.constant}")
        return "".join(parts)

    def __str__(self) -> str:
        return self.format()


def _divide_once(poly: MultiPoly, form: LinearForm, index: int) -> tuple[MultiPoly, MultiPoly]:
    """Long division of ``poly`` by ``form`` in variable ``index``.

    Returns (quotient, remainder) with ``poly == quotient*form + remainder``
    and the remainder free of the chosen variable.  The remainder equals the
    polynomial obtained by substituting the root of the form for the variable,
    up to the usual unit, so ``remainder == 0`` is the divisibility test.
    """
    lead = form.coefficients[index]
    quotient = MultiPoly.zero(poly.nvars)
    remainder = poly
    form_poly = form.as_poly()
    while remainder.degree_in(index) >= 1:
        top = remainder.degree_in(index)
        partial_terms = {}
        for exponent, coeff in remainder.terms.items():
            if exponent[index] == top:
                lowered = list(exponent)
                lowered[index] = top - 1
                partial_terms[tuple(lowered)] = coeff / lead
        partial = MultiPoly(poly.nvars, partial_terms)
        quotient = quotient + partial
        remainder = remainder - partial * form_poly
    return quotient, remainder


def divide_out(poly: MultiPoly, form: LinearForm) -> tuple[MultiPoly, int]:
    """Divide ``form`` out of ``poly`` as often as possible.

    Returns (quotient, multiplicity) with ``poly == quotient * form^multiplicity``
    and ``form`` not dividing the quotient.  The zero polynomial reports
    multiplicity 0 and stays zero.
    """
    if poly.nvars != form.nvars:
        raise ValueError("variable-count mismatch")
    if poly.is_zero():
        return poly, 0
    index = next(i for i, c in enumerate(form.coefficients) if c != 0)
    multiplicity = 0
    current = poly
    while True:
        quotient, remainder = _divide_once(current, form, index)
        if remainder.is_zero():
            multiplicity += 1
            current = quotient
            if current.is_zero():
                break
        else:
            break
    return current, multiplicity


@dataclass(frozen=True)
class RationalFunctionNF:
    """Normal form numerator / product of powers of linear forms.

    Invariants: denominator forms are pairwise non-proportional, exponents are
    positive, and no denominator form divides the numerator (the fraction is
    fully reduced along every form).  Denominator factors are sorted by their
    raw data for deterministic output.
    """

    numerator: MultiPoly
    denominator: tuple[tuple[LinearForm, int], ...] = ()

    @property
    def nvars(self) -> int:
        return self.numerator.nvars

    def is_zero(self) -> bool:
        return self.numerator.is_zero()

    @classmethod
    def from_constant(cls, nvars: int, value: RationalLike) -> "RationalFunctionNF":
        return cls(MultiPoly.constant(nvars, value))

    def denominator_poly(self) -> MultiPoly:
        out = MultiPoly.constant(self.nvars, 1)
        for form, exponent in self.denominator:
            out = out * form.as_poly().power(exponent)
        return out

    def class_exponent(self, form: LinearForm) -> int:
        key = form.class_key()
        for f, exponent in self.denominator:
            if f.class_key() == key:
                return exponent
        return 0

    def evaluate(self, point: Sequence[RationalLike]) -> Fraction:
        value = self.numerator.evaluate(point)
        for form, exponent in self.denominator:
            v = form.evaluate(point)
            if v == 0:
                raise ZeroDivisionError(f"denominator form {form} vanishes at the point")
            value /= v**exponent
        return value

    def constant_value(self) -> Fraction:
        if self.denominator:
            raise ValueError("rational function is not constant")
        return self.numerator.constant_value()

    def __eq__(self, other) -> bool:
        if not isinstance(other, RationalFunctionNF):
            return NotImplemented
        if self.nvars != other.nvars:
            return False
        if self.numerator == other.numerator and self.denominator == other.denominator:
            return True
        return self.numerator * other.denominator_poly() == other.numerator * self.denominator_poly()

    def __hash__(self) -> int:
        # Hash on the proportionality classes only; proportional rescalings
        # compare equal, so the stored raw forms cannot enter the hash.
        return hash((self.nvars, len(self.denominator)))

    def format(self, var_names: Sequence[str] | None = None) -> str:
        num = self.numerator.format(var_names)
        if not self.denominator:
            return num
        factors = []
        for form, exponent in self.denominator:
            body = f"({form.format(var_names)})"
            factors.append(body if exponent == 1 else f"{body}^{exponent}")
        den = "*".join(factors)
        if len(self.denominator) > 1 or self.denominator[0][1] > 1:
            den = f"({den})"
        if len(self.numerator.terms) > 1:
            num = f"({num})"
        return f"{num}/{den}"

    def __str__(self) -> str:
        return self.format()


def form_sort_key(form: LinearForm) -> tuple:
    """Deterministic display order: earliest variable first, then the data."""
    lead = next(i for i, c in enumerate(form.coefficients) if c != 0)
    return (lead, form.coefficients, form.constant)


def _class_representative(forms: Iterable[LinearForm]) -> LinearForm:
    """Smallest-content raw form of a proportionality class, ties broken on data."""
    return min(forms, key=lambda f: (f.content(), f.coefficients, f.constant))


def normalize_fraction(
    numerator: MultiPoly, forms: Iterable[tuple[LinearForm, int]]
) -> RationalFunctionNF:
    """Build the fully reduced normal form of ``numerator / prod(form^e)``."""
    groups: dict[tuple, list[LinearForm]] = {}
    exponents: dict[tuple, int] = {}
    scale = Fraction(1)
    for form, exponent in forms:
        if exponent < 0:
            raise ValueError("denominator exponents must be non-negative")
        if exponent == 0:
            continue
        key = form.class_key()
        groups.setdefault(key, []).append(form)
        exponents[key] = exponents.get(key, 0) + exponent
    reps = {key: _class_representative(members) for key, members in groups.items()}
    for form, exponent in forms:
        if exponent == 0:
            continue
        ratio = form.ratio_to(reps[form.class_key()])
        scale /= ratio**exponent
    num = numerator.scale(scale)
    if num.is_zero():
        return RationalFunctionNF(MultiPoly.zero(numerator.nvars))
    reduced: list[tuple[LinearForm, int]] = []
    for key in sorted(reps, key=lambda k: form_sort_key(reps[k])):
        rep = reps[key]
        exponent = exponents[key]
        quotient, multiplicity = divide_out(num, rep)
        cancel = min(multiplicity, exponent)
        if cancel:
            for _ in range(cancel):
                index = next(i for i, c in enumerate(rep.coefficients) if c != 0)
                num, _ = _divide_once(num, rep, index)
            exponent -= cancel
        if exponent:
            reduced.append((rep, exponent))
    return RationalFunctionNF(num, tuple(reduced))


def sum_of_simple_terms(
    terms: Iterable[tuple[Union[RationalLike, KPoly], Iterable[LinearForm]]],
    nvars: int,
) -> RationalFunctionNF:
    """Exact common-denominator sum of terms ``coefficient / prod(forms)``.

    Each term is a coefficient together with a non-empty multiset of linear
    forms (repetition encodes multiplicity).  Coefficients must be plain
    rationals: the normal form is not defined over the symbolic parameter
    ``k``, so non-constant ``KPoly`` coefficients are rejected and callers
    must specialise ``k`` first.
    """
    prepared: list[tuple[Fraction, list[LinearForm]]] = []
    for coefficient, form_multiset in terms:
        if isinstance(coefficient, KPoly) and coefficient.degree() > 0:
            raise ValueError(
                "symbolic-k coefficients are not supported by the normal form; "
                "specialise k to an integer first"
            )
        coefficient = as_fraction(coefficient)
        form_list = list(form_multiset)
        if not form_list:
            raise ValueError("each term needs a non-empty multiset of forms")
        for form in form_list:
            if form.nvars != nvars:
                raise ValueError("variable-count mismatch")
        prepared.append((coefficient, form_list))

    groups: dict[tuple, list[LinearForm]] = {}
    for _, form_list in prepared:
        for form in form_list:
            groups.setdefault(form.class_key(), []).append(form)
    reps = {key: _class_representative(members) for key, members in groups.items()}

    term_data: list[tuple[Fraction, dict[tuple, int]]] = []
    common: dict[tuple, int] = {}
    for coefficient, form_list in prepared:
        multiplicities: dict[tuple, int] = {}
        for form in form_list:
            key = form.class_key()
            multiplicities[key] = multiplicities.get(key, 0) + 1
            coefficient /= form.ratio_to(reps[key])
        for key, m in multiplicities.items():
            common[key] = max(common.get(key, 0), m)
        term_data.append((coefficient, multiplicities))

    rep_polys = {key: reps[key].as_poly() for key in reps}
    numerator = MultiPoly.zero(nvars)
    for coefficient, multiplicities in term_data:
        part = MultiPoly.constant(nvars, coefficient)
        for key, total in common.items():
            deficit = total - multiplicities.get(key, 0)
            if deficit:
                part = part * rep_polys[key].power(deficit)
        numerator = numerator + part
    return normalize_fraction(numerator, [(reps[key], common[key]) for key in common])
