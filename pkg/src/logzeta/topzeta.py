"""Topological zeta functions from resolution data.

The zeta function of a dataset is the sum, over the listed strata with
nonzero Euler characteristic, of ``chi / prod(forms of the stratum's
divisors)`` where each divisor contributes its raw linear form
``a_1*s_1 + ... + a_q*s_q + discrepancy``.  The result is kept in the fully
reduced normal form of :mod:`logzeta.algebra`, so candidate pole orders and
residues are exact.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence, Union

from .algebra import (
    LinearForm,
    MultiPoly,
    RationalFunctionNF,
    divide_out,
    form_sort_key,
    normalize_fraction,
    sum_of_simple_terms,
)
from .resolution import ResolutionDatum


@dataclass(frozen=True)
class CandidateHyperplane:
    """The candidate polar hyperplane contributed by one divisor."""

    divisor_id: str
    form: LinearForm


@dataclass(frozen=True)
class PoleClass:
    """One proportionality class of candidate forms and its exact pole order."""

    representative: LinearForm
    order: int
    divisor_ids: tuple[str, ...]


@dataclass(frozen=True)
class PoleReport:
    entries: tuple[tuple[CandidateHyperplane, int], ...]
    classes: tuple[PoleClass, ...]
    zeta: RationalFunctionNF


def candidate_hyperplanes(datum: ResolutionDatum) -> list[CandidateHyperplane]:
    return [CandidateHyperplane(d.id, datum.candidate_form(d.id)) for d in datum.divisors]


def build_topzeta(datum: ResolutionDatum) -> RationalFunctionNF:
    """The topological zeta function of the dataset, in normal form.

    Requires every listed stratum characteristic to be an exact number;
    symbolically augmented data must be specialised first.
    """
    nvars = datum.ncols
    terms = []
    for stratum in datum.strata:
        chi = stratum.chi
        if not chi.is_numeric():
            raise ValueError(
                f"stratum {stratum.divisors}: non-numeric Euler characteristic; "
                "specialise k before building the zeta function"
            )
        value = chi.as_int()
        if value == 0:
            continue
        forms = [datum.candidate_form(i) for i in stratum.divisors]
        terms.append((Fraction(value), forms))
    if not terms:
        return RationalFunctionNF(MultiPoly.zero(nvars))
    return sum_of_simple_terms(terms, nvars)


def pole_orders(
    zeta: RationalFunctionNF, candidates: Sequence[CandidateHyperplane]
) -> PoleReport:
    """Exact pole order of every candidate hyperplane.

    The order of a candidate is the exponent of its proportionality class in
    the denominator minus the multiplicity of the class representative in the
    numerator, floored at 0.  Candidates of order 0 are retained in the
    report.  Classes are reported once each, with the divisors proposing them.
    """
    entries = []
    class_info: dict[tuple, tuple[LinearForm, int, list[str]]] = {}
    for candidate in candidates:
        key = candidate.form.class_key()
        if key in class_info:
            rep, order, ids = class_info[key]
            ids.append(candidate.divisor_id)
        else:
            exponent = zeta.class_exponent(candidate.form)
            rep = candidate.form.primitive()
            if exponent:
                for form, e in zeta.denominator:
                    if form.class_key() == key:
                        rep = form
                        break
            _, num_mult = divide_out(zeta.numerator, rep)
            order = max(exponent - num_mult, 0)
            class_info[key] = (rep, order, [candidate.divisor_id])
        entries.append((candidate, class_info[key][1]))
    classes = tuple(
        PoleClass(rep, order, tuple(ids))
        for rep, order, ids in sorted(class_info.values(), key=lambda t: form_sort_key(t[0]))
    )
    return PoleReport(tuple(entries), classes, zeta)


def residue_first_order(
    zeta: RationalFunctionNF, candidate: CandidateHyperplane
) -> Union[Fraction, RationalFunctionNF]:
    """Residue-type value of an order-one candidate.

    The convention multiplies the zeta function by the raw candidate form
    (not its primitive representative).  In one variable the result is the
    exact value of ``form * zeta`` at the root of the form.  In several
    variables the result is the restriction of ``form * zeta`` to the
    hyperplane, with the lowest-index variable of nonzero coefficient
    eliminated.
    """
    form = candidate.form
    exponent = zeta.class_exponent(form)
    if exponent != 1:
        raise ValueError(
            f"candidate {candidate.divisor_id!r} has pole order {exponent}, expected 1"
        )
    key = form.class_key()
    rep = next(f for f, _ in zeta.denominator if f.class_key() == key)
    ratio = form.ratio_to(rep)
    remaining = [(f, e) for f, e in zeta.denominator if f.class_key() != key]
    numerator = zeta.numerator.scale(ratio)

    if zeta.nvars == 1:
        root = Fraction(-form.constant, form.coefficients[0])
        value = numerator.evaluate([root])
        for f, e in remaining:
            value /= f.evaluate([root]) ** e
        return value

    index = next(i for i, c in enumerate(form.coefficients) if c != 0)
    lead = form.coefficients[index]
    sub_coeffs = [
        Fraction(0) if i == index else Fraction(-c, lead)
        for i, c in enumerate(form.coefficients)
    ]
    sub_const = Fraction(-form.constant, lead)
    numerator = numerator.substitute_affine(index, sub_coeffs, sub_const)
    forms: list[tuple[LinearForm, int]] = []
    scale = Fraction(1)
    for f, e in remaining:
        coeffs = [
            f.coefficients[i] * lead - f.coefficients[index] * form.coefficients[i]
            if i != index
            else 0
            for i in range(zeta.nvars)
        ]
        constant = f.constant * lead - f.coefficients[index] * form.constant
        # each substituted factor was scaled by lead
        scale *= Fraction(lead) ** e
        if all(c == 0 for c in coeffs):
            if constant == 0:
                raise ValueError("restriction annihilated a non-proportional form")
            scale /= Fraction(constant) ** e
        else:
            forms.append((LinearForm(tuple(coeffs), constant), e))
    numerator = numerator.scale(scale)
    return normalize_fraction(numerator, forms)


def specialize_diagonal(zeta: RationalFunctionNF) -> RationalFunctionNF:
    """Substitute a single variable for all of them and renormalise."""
    numerator = zeta.numerator.diagonal()
    forms: list[tuple[LinearForm, int]] = []
    scale = Fraction(1)
    for form, exponent in zeta.denominator:
        total = sum(form.coefficients)
        if total == 0:
            if form.constant == 0:
                raise ArithmeticError(
                    "internal error: diagonal substitution annihilated a denominator form"
                )
            scale /= Fraction(form.constant) ** exponent
        else:
            forms.append((LinearForm((total,), form.constant), exponent))
    numerator = numerator.scale(scale)
    return normalize_fraction(numerator, forms)
