"""Local monodromy zeta functions, torus divisors and the inclusion check.

A local monodromy zeta function is the finite product
``prod (t^a - 1)^e`` over multiplicity vectors ``a`` of divisors passing over
a base point, with ``e`` the negated local Euler characteristic.  Its divisor
on the torus is supported on torsion-translated codimension-one subtori; the
global support is the union over the chosen base points.  Candidate pole
hyperplanes map to subtori through coordinatewise ``exp(2*pi*i*.)``, and the
inclusion of the actual polar locus in the support is the verdict reported by
:func:`check_monodromy_conjecture`.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Iterable, Mapping

from .resolution import ResolutionDatum
from .topzeta import (
    CandidateHyperplane,
    PoleReport,
    build_topzeta,
    candidate_hyperplanes,
    pole_orders,
)


@dataclass(frozen=True)
class Subtorus:
    """Torsion-translated codimension-one subtorus ``{t : t^primitive = zeta}``.

    ``primitive`` is a nonzero vector of non-negative integers with gcd 1 and
    ``phase`` in [0, 1) encodes the torsion point ``exp(2*pi*i*phase)``.
    """

    primitive: tuple[int, ...]
    phase: Fraction

    def __post_init__(self):
        primitive = tuple(int(c) for c in self.primitive)
        object.__setattr__(self, "primitive", primitive)
        object.__setattr__(self, "phase", Fraction(self.phase))
        if not primitive or all(c == 0 for c in primitive):
            raise ValueError("primitive vector must be nonzero")
        if any(c < 0 for c in primitive):
            raise ValueError("primitive vector must have non-negative entries")
        if gcd(*(abs(c) for c in primitive)) != 1:
            raise ValueError("exponent vector is not primitive")
        if not 0 <= self.phase < 1:
            raise ValueError("phase must be reduced into [0, 1)")

    def sort_key(self) -> tuple:
        return (self.primitive, self.phase)

    def __str__(self) -> str:
        return f"{{t^{self.primitive} = e(2*pi*i*{self.phase})}}"


@dataclass(frozen=True)
class MonodromyZetaFactors:
    """Finitely supported map from exponent vectors to nonzero integer powers."""

    q: int
    factors: Mapping[tuple[int, ...], int]

    def __post_init__(self):
        clean = {}
        for vector, exponent in self.factors.items():
            vector = tuple(int(v) for v in vector)
            if len(vector) != self.q:
                raise ValueError("exponent vector has wrong length")
            if all(v == 0 for v in vector):
                raise ValueError("exponent vectors must be nonzero")
            if exponent == 0:
                continue
            clean[vector] = clean.get(vector, 0) + int(exponent)
        object.__setattr__(self, "factors", {v: e for v, e in clean.items() if e})

    def __mul__(self, other: "MonodromyZetaFactors") -> "MonodromyZetaFactors":
        if self.q != other.q:
            raise ValueError("torus dimension mismatch")
        merged = dict(self.factors)
        for vector, exponent in other.factors.items():
            merged[vector] = merged.get(vector, 0) + exponent
        return MonodromyZetaFactors(self.q, merged)

    def is_trivial(self) -> bool:
        return not self.factors

    def format(self) -> str:
        if not self.factors:
            return "1"
        parts = []
        for vector, exponent in sorted(self.factors.items()):
            if self.q == 1:
                base = "t" if vector[0] == 1 else f"t^{vector[0]}"
            else:
                base = "*".join(
                    (f"t{i + 1}" if v == 1 else f"t{i + 1}^{v}")
                    for i, v in enumerate(vector)
                    if v
                )
            parts.append(f"({base}-1)^{exponent}" if exponent != 1 else f"({base}-1)")
        return "*".join(parts)

    def __str__(self) -> str:
        return self.format()


@dataclass(frozen=True)
class TorusDivisor:
    q: int
    components: Mapping[Subtorus, int]

    def __post_init__(self):
        clean = {}
        for subtorus, multiplicity in self.components.items():
            if len(subtorus.primitive) != self.q:
                raise ValueError("subtorus dimension mismatch")
            if multiplicity:
                clean[subtorus] = int(multiplicity)
        object.__setattr__(self, "components", clean)

    def support(self) -> set[Subtorus]:
        return set(self.components)

    def __add__(self, other: "TorusDivisor") -> "TorusDivisor":
        if self.q != other.q:
            raise ValueError("torus dimension mismatch")
        merged = dict(self.components)
        for subtorus, multiplicity in other.components.items():
            merged[subtorus] = merged.get(subtorus, 0) + multiplicity
        return TorusDivisor(self.q, merged)

    def sorted_components(self) -> list[tuple[Subtorus, int]]:
        return sorted(self.components.items(), key=lambda item: item[0].sort_key())


def _numeric_vector(datum: ResolutionDatum, divisor_id: str) -> tuple[int, ...]:
    d = datum.divisor(divisor_id)
    vector = []
    for entry in d.multiplicities:
        if not isinstance(entry, int):
            raise ValueError("multiplicity columns must be numeric; specialise k first")
        vector.append(entry)
    return tuple(vector)


def local_monodromy_zeta(datum: ResolutionDatum, point_id: str) -> MonodromyZetaFactors:
    """The product ``prod (t^a_W - 1)^(-local chi)`` at one base point."""
    point = datum.point(point_id)
    factors: dict[tuple[int, ...], int] = {}
    for divisor_id, local_chi in point.entries:
        if local_chi == 0:
            continue
        vector = _numeric_vector(datum, divisor_id)
        if all(v == 0 for v in vector):
            raise ValueError(
                f"divisor {divisor_id!r} has zero multiplicity vector but nonzero "
                "local Euler characteristic"
            )
        factors[vector] = factors.get(vector, 0) - local_chi
    return MonodromyZetaFactors(datum.ncols, factors)


def subtori_of_factor(vector: tuple[int, ...]) -> list[Subtorus]:
    """``t^(d*a0) - 1`` vanishes on exactly d subtori ``{t^a0 = e(2*pi*i*j/d)}``."""
    d = gcd(*(abs(v) for v in vector))
    primitive = tuple(v // d for v in vector)
    return [Subtorus(primitive, Fraction(j, d)) for j in range(d)]


def torus_divisor(zeta: MonodromyZetaFactors) -> TorusDivisor:
    """Zero/pole divisor of the factor map; exact cancellations are dropped."""
    components: dict[Subtorus, int] = {}
    for vector, exponent in zeta.factors.items():
        for subtorus in subtori_of_factor(vector):
            components[subtorus] = components.get(subtorus, 0) + exponent
    return TorusDivisor(zeta.q, components)


def monodromy_support(datum: ResolutionDatum) -> set[Subtorus]:
    """Union over all base points of the supports of their torus divisors."""
    if not datum.points:
        raise ValueError("dataset lists no base points")
    support: set[Subtorus] = set()
    for point in datum.points:
        support |= torus_divisor(local_monodromy_zeta(datum, point.point_id)).support()
    return support


def exp_hyperplane(candidate: CandidateHyperplane) -> Subtorus:
    """Image closure of a candidate hyperplane under coordinatewise exp(2*pi*i*.)."""
    form = candidate.form
    if any(c < 0 for c in form.coefficients):
        raise ValueError("candidate forms must have non-negative coefficients")
    d = gcd(*(abs(c) for c in form.coefficients))
    primitive = tuple(c // d for c in form.coefficients)
    phase = Fraction(-form.constant, d) % 1
    return Subtorus(primitive, phase)


@dataclass(frozen=True)
class MCEntry:
    candidate: CandidateHyperplane
    order: int
    subtorus: Subtorus
    included: bool


@dataclass(frozen=True)
class MCReport:
    verdict: bool
    entries: tuple[MCEntry, ...]
    support: tuple[Subtorus, ...]
    pole_report: PoleReport

    def witnesses(self) -> list[MCEntry]:
        return [e for e in self.entries if e.order >= 1 and not e.included]


def check_monodromy_conjecture(datum: ResolutionDatum) -> MCReport:
    """Check that every actual pole hyperplane maps into the monodromy support."""
    zeta = build_topzeta(datum)
    candidates = candidate_hyperplanes(datum)
    report = pole_orders(zeta, candidates)
    support = monodromy_support(datum)
    entries = []
    verdict = True
    for candidate, order in report.entries:
        subtorus = exp_hyperplane(candidate)
        included = subtorus in support
        if order >= 1 and not included:
            verdict = False
        entries.append(MCEntry(candidate, order, subtorus, included))
    return MCReport(
        verdict,
        tuple(entries),
        tuple(sorted(support, key=Subtorus.sort_key)),
        report,
    )


@dataclass(frozen=True)
class CancelledSubtorus:
    subtorus: Subtorus
    contributors: tuple[tuple[str, int], ...]  # (divisor id, local chi)


def cancellation_diagnostic(datum: ResolutionDatum, point_id: str) -> list[CancelledSubtorus]:
    """Subtori whose net multiplicity cancels to zero, with their contributors.

    For each subtorus receiving contributions from at least two divisors that
    sum to zero, the diagnostic lists the divisors and their local Euler
    characteristics, making the cancellation inspectable.
    """
    point = datum.point(point_id)
    per_subtorus: dict[Subtorus, tuple[int, list[tuple[str, int]]]] = {}
    for divisor_id, local_chi in point.entries:
        if local_chi == 0:
            continue
        vector = _numeric_vector(datum, divisor_id)
        for subtorus in subtori_of_factor(vector):
            net, contributors = per_subtorus.get(subtorus, (0, []))
            per_subtorus[subtorus] = (net - local_chi, contributors + [(divisor_id, local_chi)])
    out = []
    for subtorus in sorted(per_subtorus, key=Subtorus.sort_key):
        net, contributors = per_subtorus[subtorus]
        if net == 0:
            out.append(CancelledSubtorus(subtorus, tuple(contributors)))
    return out


def restrict_support_to_diagonal(support: Iterable[Subtorus]) -> set[Subtorus]:
    """Intersect a support with the diagonal torus ``t1 = ... = tq = t``.

    Each subtorus ``{t^a0 = e(2*pi*i*phase)}`` meets the diagonal in the
    points ``t^sum(a0) = e(2*pi*i*phase)``, reported as one-dimensional
    subtori.
    """
    out: set[Subtorus] = set()
    for subtorus in support:
        total = sum(subtorus.primitive)
        for j in range(total):
            out.add(Subtorus((1,), Fraction(subtorus.phase + j, total) % 1))
    return out
