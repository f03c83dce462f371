"""Non-resonance cone, generic-section augmentation and pole certificates.

An ample class on the modification is written in blow-up coordinates
``(d, {b_W})``.  The non-resonance condition asks, for every exceptional
divisor ``W`` and every exceptional neighbour ``W'``, that
``n_W * b_W' / b_W`` is not an integer; :func:`make_avg` produces such a
class from any ample class by a deterministic prime-denominator perturbation.

Augmenting a dataset adjoins the strict transform ``H`` of a generic member
of the k-th power of the class: one extra multiplicity column holding
``k*b_W`` on exceptional divisors, ``1`` on ``H`` and ``0`` elsewhere.  New
stratum characteristics are derived from degree data where the leading-term
calculus pins them exactly (curve and point strata); higher-dimensional
strata keep leading terms only, and operations that need exact values reject
them.

On augmented data the module certifies that every exceptional candidate pole
has order one (exact residue sums), computes the separation threshold in
``k``, and carries out the translate bookkeeping used to promote certified
poles to b-function style candidate roots.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .algebra import KPoly, LinearForm
from .asymptotics import leading_chi_ambient, leading_chi_complement, leading_chi_section
from .resolution import (
    AMBIENT_DEGREE_KEY,
    AmpleVector,
    ChiValue,
    Divisor,
    ResolutionDatum,
    Stratum,
    degree_key,
)

H_ID = "H"


class ResonanceError(ValueError):
    """Two candidate pole locations coincide for every k (non-resonance fails)."""


# -- the non-resonance subcone ------------------------------------------------


@dataclass(frozen=True)
class AvgCheck:
    divisor_id: str
    neighbour_id: str
    value: Fraction
    ok: bool  # ok means the ratio is NOT an integer


@dataclass(frozen=True)
class AvgReport:
    checks: tuple[AvgCheck, ...]

    @property
    def ok(self) -> bool:
        return all(c.ok for c in self.checks)

    @property
    def violations(self) -> tuple[AvgCheck, ...]:
        return tuple(c for c in self.checks if not c.ok)


def _require_ample(datum: ResolutionDatum, ample: AmpleVector | None) -> AmpleVector:
    ample = ample if ample is not None else datum.ample
    if ample is None:
        raise ValueError("dataset carries no ample coordinates")
    exceptional = {d.id for d in datum.divisors if d.exceptional}
    missing = exceptional - set(ample.b)
    if missing:
        raise ValueError(f"ample coordinates missing for {sorted(missing)}")
    return ample


def check_avg(datum: ResolutionDatum, ample: AmpleVector | None = None) -> AvgReport:
    """Test the non-resonance condition on every adjacent exceptional pair."""
    ample = _require_ample(datum, ample)
    adjacency = datum.adjacency()
    exceptional = [d for d in datum.divisors if d.exceptional]
    exceptional_ids = {d.id for d in exceptional}
    checks = []
    for d in exceptional:
        for neighbour in sorted(adjacency.get(d.id, ())):
            if neighbour not in exceptional_ids or neighbour == d.id:
                continue
            value = Fraction(d.discrepancy * ample.b[neighbour], ample.b[d.id])
            checks.append(AvgCheck(d.id, neighbour, value, value.denominator != 1))
    return AvgReport(tuple(checks))


def _primes_above(bound: int, count: int) -> list[int]:
    out: list[int] = []
    candidate = max(bound, 1) + 1
    while len(out) < count:
        if all(candidate % q for q in range(2, int(candidate**0.5) + 1)):
            out.append(candidate)
        candidate += 1
    return out


def make_avg(datum: ResolutionDatum, ample: AmpleVector | None = None) -> AmpleVector:
    """Perturb an ample class into the non-resonance subcone.

    Picks the smallest pairwise-distinct primes ``p_W``, each strictly larger
    than every exceptional discrepancy, and replaces ``(d, b_W)`` by
    ``(P*d, P*b_W + P/p_W)`` with ``P`` the product of the primes.  The output
    always passes :func:`check_avg`: the prime ``p_W'`` divides the new
    ``b_W`` exactly once and never the numerator of the tested ratio.
    """
    ample = _require_ample(datum, ample)
    exceptional = [d for d in datum.divisors if d.exceptional]
    if not exceptional:
        return AmpleVector(ample.d, {})
    bound = max(d.discrepancy for d in exceptional)
    primes = _primes_above(bound, len(exceptional))
    product = 1
    for q in primes:
        product *= q
    b = {
        d.id: product * ample.b[d.id] + product // q
        for d, q in zip(exceptional, primes)
    }
    return AmpleVector(product * ample.d, b)


# -- the generic-section augmentation ----------------------------------------


@dataclass(frozen=True)
class AugmentedDatum:
    """A dataset with the extra generic-section column attached.

    ``k`` is the section power, or None while symbolic.  ``datum`` is a full
    dataset with ``p + 1`` multiplicity columns and the extra divisor ``H``;
    it serialises through the ordinary dataset schema with an ``augmented``
    marker block.
    """

    base: ResolutionDatum
    k: int | None
    datum: ResolutionDatum

    def specialize(self, k: int) -> "AugmentedDatum":
        if self.k is not None:
            if k != self.k:
                raise ValueError(f"augmented datum is already specialised at k={self.k}")
            return self
        if k < 1:
            raise ValueError("the section power k must be a positive integer")
        divisors = []
        for d in self.datum.divisors:
            mults = tuple(
                int(entry(k)) if isinstance(entry, KPoly) else entry
                for entry in d.multiplicities
            )
            divisors.append(Divisor(d.id, d.exceptional, d.discrepancy, mults, d.ample_coeff))
        strata = [Stratum(s.divisors, s.chi.specialize(k), s.nonempty) for s in self.datum.strata]
        datum = ResolutionDatum(
            ambient_dim=self.datum.ambient_dim,
            p=self.datum.p,
            divisors=divisors,
            strata=strata,
            points=list(self.datum.points),
            ample=self.datum.ample,
            degrees=dict(self.datum.degrees),
            adjacent_pairs=list(self.datum.adjacent_pairs),
            augmented_k=k,
        )
        return AugmentedDatum(self.base, k, datum)


def _augmented_chi_pair(
    stratum: Stratum, dim: int, deg: int | None
) -> tuple[ChiValue, ChiValue | None]:
    """(chi of the stratum minus H, chi of the stratum cut by H)."""
    chi = stratum.chi
    if dim == 0:
        # a generic section misses any fixed finite set
        return chi, None
    if deg is None:
        return ChiValue.unknown(), ChiValue.unknown()
    if dim == 1:
        # the section meets a curve stratum in exactly deg*k reduced points,
        # all away from the finitely many boundary points
        cut = ChiValue.of_poly(KPoly([0, deg]))
        if chi.exact and chi.is_known():
            away = ChiValue.of_poly(chi.poly - KPoly([0, deg]))
        else:
            away = ChiValue.leading_only(KPoly([0, -deg]))
        return away, cut
    away = ChiValue.leading_only(leading_chi_complement(dim, deg).as_kpoly())
    cut = ChiValue.leading_only(leading_chi_section(dim, deg).as_kpoly())
    return away, cut


def augment(datum: ResolutionDatum, k: int | None = None) -> AugmentedDatum:
    """Adjoin the generic-section divisor ``H`` and the extra column.

    With ``k=None`` the column is symbolic (``k*b_W`` on exceptional
    divisors) and stratum characteristics become polynomials in ``k`` where
    degree data pins them; pass an integer to specialise immediately.
    """
    if datum.is_augmented:
        raise ValueError("dataset is already augmented")
    ample = _require_ample(datum, None)
    if any(d.id == H_ID for d in datum.divisors):
        raise ValueError(f"divisor id {H_ID!r} is reserved for the generic section")

    divisors: list[Divisor] = []
    for d in datum.divisors:
        if d.exceptional:
            extra: int | KPoly = KPoly([0, ample.b[d.id]])
        else:
            extra = 0
        divisors.append(
            Divisor(d.id, d.exceptional, d.discrepancy, d.multiplicities + (extra,), d.ample_coeff)
        )
    divisors.append(Divisor(H_ID, False, 1, (0,) * datum.p + (1,)))

    strata: list[Stratum] = []
    for stratum in datum.strata:
        key = degree_key(stratum.divisors)
        entry = datum.degrees.get(key)
        dim = entry.dim if entry is not None else datum.ambient_dim - len(stratum.divisors)
        deg = entry.deg if entry is not None else None
        away, cut = _augmented_chi_pair(stratum, dim, deg)
        strata.append(Stratum(stratum.divisors, away, stratum.nonempty))
        if cut is not None and stratum.nonempty:
            strata.append(Stratum(stratum.divisors + (H_ID,), cut, True))
    ambient = datum.degrees.get(AMBIENT_DEGREE_KEY)
    if ambient is not None:
        h_chi = ChiValue.leading_only(
            leading_chi_ambient(ambient.dim, ambient.deg).as_kpoly()
        )
    else:
        h_chi = ChiValue.unknown()
    strata.append(Stratum((H_ID,), h_chi, True))

    adjacent_pairs = list(datum.adjacent_pairs)
    if datum.ambient_dim >= 2:
        # a generic section meets every positive-dimensional closure
        adjacent_pairs.extend((d.id, H_ID) for d in datum.divisors)

    augmented = ResolutionDatum(
        ambient_dim=datum.ambient_dim,
        p=datum.p,
        divisors=divisors,
        strata=strata,
        points=[],  # local fiber data does not transfer; supply it explicitly
        ample=datum.ample,
        degrees=dict(datum.degrees),
        adjacent_pairs=adjacent_pairs,
        augmented_k="symbolic",
    )
    out = AugmentedDatum(datum, None, augmented)
    if k is not None:
        out = out.specialize(k)
    return out


def wrap_augmented(datum: ResolutionDatum, base: ResolutionDatum | None = None) -> AugmentedDatum:
    """View an already-augmented dataset (for example a user-written file)."""
    if not datum.is_augmented:
        raise ValueError("dataset carries no augmented marker")
    k = None if datum.augmented_k == "symbolic" else int(datum.augmented_k)
    return AugmentedDatum(base if base is not None else datum, k, datum)


# -- separation of pole locations ---------------------------------------------


@dataclass(frozen=True)
class CoincidenceWitness:
    divisor_id: str
    other_id: str
    k_value: Fraction  # the unique k where the two pole locations collide

    @property
    def constraining(self) -> bool:
        return self.k_value.denominator == 1 and self.k_value >= 1


@dataclass(frozen=True)
class ThresholdReport:
    k0: int
    witnesses: tuple[CoincidenceWitness, ...]


def _total_kpoly(datum: ResolutionDatum, divisor_id: str) -> KPoly:
    total = datum.total_multiplicity(divisor_id)
    return total if isinstance(total, KPoly) else KPoly.constant(total)


def pole_separation_threshold(aug: AugmentedDatum) -> ThresholdReport:
    """Smallest k0 with all pole locations pairwise distinct for every k >= k0.

    Every coincidence equation ``n_W * N_W'(k) == n_W' * N_W(k)`` is linear in
    k and solved exactly.  A pair whose equation holds identically violates
    the non-resonance limit identity and raises :class:`ResonanceError`.
    """
    if aug.k is not None:
        raise ValueError("threshold analysis needs the symbolic augmentation")
    datum = aug.datum
    witnesses: list[CoincidenceWitness] = []
    k0 = 1
    divisors = datum.divisors
    for i, d in enumerate(divisors):
        n_d = d.discrepancy
        nd_poly = _total_kpoly(datum, d.id)
        for other in divisors[i + 1 :]:
            n_o = other.discrepancy
            no_poly = _total_kpoly(datum, other.id)
            difference = nd_poly * n_o - no_poly * n_d
            if difference.is_zero():
                raise ResonanceError(
                    f"pole locations of {d.id!r} and {other.id!r} coincide for every k "
                    f"(limit identity n_W*b_W'/b_W = n_W' holds); the ample class is "
                    "not in the non-resonance subcone"
                )
            if difference.degree() == 0:
                continue
            k_star = -difference.coeffs[0] / difference.coeffs[1]
            witness = CoincidenceWitness(d.id, other.id, k_star)
            witnesses.append(witness)
            if witness.constraining:
                k0 = max(k0, int(k_star) + 1)
    return ThresholdReport(k0, tuple(sorted(witnesses, key=lambda w: (w.divisor_id, w.other_id))))


def pole_locations(datum: ResolutionDatum) -> dict[str, Fraction]:
    """Pole location -discrepancy/total multiplicity per divisor (numeric data)."""
    out = {}
    for d in datum.divisors:
        total = datum.total_multiplicity(d.id)
        if isinstance(total, KPoly):
            raise ValueError("pole locations need numeric data; specialise k first")
        if total == 0:
            continue  # the divisor proposes no pole
        out[d.id] = Fraction(-d.discrepancy, total)
    return out


# -- order-one certification ---------------------------------------------------


@dataclass(frozen=True)
class OrderOneEntry:
    divisor_id: str
    residue: Fraction | None  # None for the trivially certified section divisor
    order_one: bool
    note: str = ""


@dataclass(frozen=True)
class OrderOneReport:
    entries: tuple[OrderOneEntry, ...]

    @property
    def ok(self) -> bool:
        return all(e.order_one for e in self.entries)


def residue_sum(datum: ResolutionDatum, divisor_id: str) -> Fraction:
    """Exact residue-type sum of an order-at-most-one candidate.

    Sums ``chi(stratum) * prod N_W / (N_W*n_W' - N_W'*n_W)`` over the listed
    strata containing the divisor, the product running over the other
    divisors of the stratum.  Equals the evaluation of (raw form) * zeta at
    the candidate root whenever the candidate is separated from all others.
    """
    divisor = datum.divisor(divisor_id)
    n_w = divisor.discrepancy
    total_w = datum.total_multiplicity(divisor_id)
    if isinstance(total_w, KPoly):
        raise ValueError("residue sums need numeric data; specialise k first")
    out = Fraction(0)
    for stratum in datum.strata:
        if divisor_id not in stratum.divisors:
            continue
        chi = stratum.chi
        if not chi.is_numeric():
            if not stratum.nonempty or (chi.is_known() and chi.poly.is_zero()):
                continue
            raise ValueError(
                f"stratum {stratum.divisors}: Euler characteristic is not exact; "
                "supply exact data for the strata through the certified divisor"
            )
        value = Fraction(chi.as_int())
        if value == 0:
            continue
        for other_id in stratum.divisors:
            if other_id == divisor_id:
                continue
            other = datum.divisor(other_id)
            total_o = datum.total_multiplicity(other_id)
            denominator = total_w * other.discrepancy - total_o * n_w
            if denominator == 0:
                raise ArithmeticError(
                    f"pole locations of {divisor_id!r} and {other_id!r} coincide; "
                    "separation precondition violated"
                )
            value *= Fraction(total_w, denominator)
        out += value
    return out


def certify_order_one(aug: AugmentedDatum, k: int | None = None) -> OrderOneReport:
    """Certify order-one poles for every exceptional divisor of an augmentation.

    Verifies that each exceptional candidate is separated from every other
    candidate at the given k (which bounds its order by one) and that its
    residue sum is nonzero (which makes the order exactly one).  The section
    divisor is certified trivially.
    """
    if aug.k is None:
        if k is None:
            raise ValueError("pass k to certify a symbolic augmentation")
        aug = aug.specialize(k)
    elif k is not None and k != aug.k:
        raise ValueError(f"augmentation is specialised at k={aug.k}, not {k}")
    datum = aug.datum
    locations = pole_locations(datum)
    entries = []
    for d in datum.divisors:
        if d.id == H_ID:
            entries.append(
                OrderOneEntry(d.id, None, True, "section divisor; candidate pole -1 of order one")
            )
            continue
        if not d.exceptional:
            continue
        location = locations[d.id]
        clash = [
            other
            for other, loc in locations.items()
            if other != d.id and loc == location
        ]
        if clash:
            entries.append(
                OrderOneEntry(
                    d.id, None, False, f"pole location {location} shared with {clash}; not separated"
                )
            )
            continue
        residue = residue_sum(datum, d.id)
        entries.append(
            OrderOneEntry(
                d.id,
                residue,
                residue != 0,
                "" if residue != 0 else "residue sum vanishes; candidate has order 0",
            )
        )
    return OrderOneReport(tuple(entries))


# -- translate bookkeeping (generalized-ideal zero loci) -----------------------


@dataclass(frozen=True)
class FrakLVector:
    entries: tuple[int, ...]

    def __post_init__(self):
        entries = tuple(int(v) for v in self.entries)
        object.__setattr__(self, "entries", entries)
        if not entries or any(v < 1 for v in entries):
            raise ValueError("weight vectors must have positive integer entries")


def _weighted_multiplicity(datum: ResolutionDatum, divisor_id: str, l: FrakLVector) -> int:
    d = datum.divisor(divisor_id)
    if len(l.entries) != len(d.multiplicities):
        raise ValueError("weight vector length must match the number of columns")
    total = 0
    for weight, entry in zip(l.entries, d.multiplicities):
        if isinstance(entry, KPoly):
            raise ValueError("weighted multiplicities need numeric data; specialise k first")
        total += weight * entry
    return total


def frakl_membership(aug: AugmentedDatum, divisor_id: str, l: FrakLVector) -> bool:
    """Weighted non-resonance test for one exceptional divisor.

    True when, for every adjacent divisor W', the ratio
    ``n_W * (l . a_W') / (l . a_W)`` is not an integer.
    """
    datum = aug.datum
    divisor = datum.divisor(divisor_id)
    if not divisor.exceptional:
        raise ValueError("the weighted test applies to exceptional divisors")
    own = _weighted_multiplicity(datum, divisor_id, l)
    if own == 0:
        raise ZeroDivisionError("weighted multiplicity of the divisor vanishes")
    for neighbour in sorted(datum.adjacency().get(divisor_id, ())):
        value = Fraction(
            divisor.discrepancy * _weighted_multiplicity(datum, neighbour, l), own
        )
        if value.denominator == 1:
            return False
    return True


def q_point(aug: AugmentedDatum, divisor_id: str, l: FrakLVector) -> tuple[Fraction, ...]:
    """The weighted root point ``l * (-n_W / (l . a_W))`` on the candidate hyperplane."""
    datum = aug.datum
    divisor = datum.divisor(divisor_id)
    own = _weighted_multiplicity(datum, divisor_id, l)
    if own == 0:
        raise ZeroDivisionError("weighted multiplicity of the divisor vanishes")
    r = Fraction(-divisor.discrepancy, own)
    return tuple(weight * r for weight in l.entries)


def q_point_line(
    aug: AugmentedDatum, divisor_id: str, l_prefix: Sequence[int]
) -> tuple[tuple[Fraction, ...], tuple[Fraction, ...]]:
    """Base point and direction of the line carrying all q-points with a fixed
    prefix of weights (the last weight running)."""
    datum = aug.datum
    divisor = datum.divisor(divisor_id)
    vector = [
        entry for entry in divisor.multiplicities
    ]
    if any(isinstance(v, KPoly) for v in vector):
        raise ValueError("needs numeric data; specialise k first")
    last = vector[-1]
    if last == 0:
        raise ZeroDivisionError("the divisor has no section-column multiplicity")
    if len(l_prefix) != len(vector) - 1:
        raise ValueError("prefix must cover all but the last column")
    point = tuple([Fraction(0)] * (len(vector) - 1) + [Fraction(-divisor.discrepancy, last)])
    direction = tuple(
        [Fraction(w) for w in l_prefix]
        + [Fraction(-sum(a * w for a, w in zip(vector, l_prefix)), last)]
    )
    return point, direction


HyperplaneSet = frozenset  # of primitive LinearForm values


def make_hyperplane_set(forms: Iterable[LinearForm]) -> frozenset[LinearForm]:
    """Deduplicate hyperplanes up to proportionality of their defining forms."""
    return frozenset(form.primitive() for form in forms)


def bs_translates(base: Iterable[LinearForm], l: FrakLVector) -> frozenset[LinearForm]:
    """Integer translates of a hyperplane set along the slot-shift maps.

    For each slot i and each 0 <= j < l_i, the constant of a form drops by
    ``sum_{m>i} l_m*a_m + j*a_i``; the union over all slots is returned,
    deduplicated up to proportionality.
    """
    out: set[LinearForm] = set()
    for form in base:
        if form.nvars != len(l.entries):
            raise ValueError("hyperplanes and weight vector have mismatched dimensions")
        a = form.coefficients
        for i in range(len(l.entries)):
            tail = sum(l.entries[m] * a[m] for m in range(i + 1, len(l.entries)))
            for j in range(l.entries[i]):
                shift = tail + j * a[i]
                out.add(LinearForm(a, form.constant - shift).primitive())
    return frozenset(out)


# -- certificates ---------------------------------------------------------------


@dataclass(frozen=True)
class CertifiedComponent:
    divisor_id: str
    hyperplane: LinearForm  # the candidate polar hyperplane, raw augmented form
    root: Fraction  # -n_W / N_W at the chosen k
    location_numerator: int  # n_W
    location_denominator: KPoly  # N_W(k)
    residue: Fraction


@dataclass(frozen=True)
class StrongMCCertificate:
    """Certificate bundle for the strong inclusion, or the refusal witnesses.

    A certificate never claims more than the hypotheses support: it is
    explicitly contingent on the log very-genericity of the section, and the
    zero locus of the generalized ideal itself is never computed here.
    """

    ok: bool
    k: int
    threshold: ThresholdReport | None
    avg: AvgReport
    components: tuple[CertifiedComponent, ...]
    trivial_ids: tuple[str, ...]
    refusals: tuple[str, ...]
    contingency: str = "contingent on log very-genericity of the section"


def strong_mc_certificate(datum: ResolutionDatum, k: int) -> StrongMCCertificate:
    """Run the full hypothesis chain on a base dataset and emit certificates.

    Fails softly: when a hypothesis does not hold the result carries the
    witnesses and ``ok=False`` instead of raising.
    """
    avg = check_avg(datum)
    refusals = [
        f"non-resonance fails: {c.divisor_id!r} against {c.neighbour_id!r} gives the "
        f"integer ratio {c.value}"
        for c in avg.violations
    ]
    if refusals:
        return StrongMCCertificate(False, k, None, avg, (), (), tuple(refusals))

    symbolic = augment(datum, None)
    try:
        threshold = pole_separation_threshold(symbolic)
    except ResonanceError as exc:
        return StrongMCCertificate(False, k, None, avg, (), (), (str(exc),))
    if k < threshold.k0:
        refusals.append(
            f"k={k} is below the separation threshold k0={threshold.k0}"
        )
        return StrongMCCertificate(False, k, threshold, avg, (), (), tuple(refusals))

    numeric = symbolic.specialize(k)
    order_report = certify_order_one(numeric)
    for entry in order_report.entries:
        if not entry.order_one:
            refusals.append(f"order-one certification fails for {entry.divisor_id!r}: {entry.note}")
    if refusals:
        return StrongMCCertificate(False, k, threshold, avg, (), (), tuple(refusals))

    components = []
    trivial = []
    residues = {e.divisor_id: e.residue for e in order_report.entries}
    for d in numeric.datum.divisors:
        if d.exceptional:
            n_poly = _total_kpoly(symbolic.datum, d.id)
            total = numeric.datum.total_multiplicity(d.id)
            components.append(
                CertifiedComponent(
                    divisor_id=d.id,
                    hyperplane=numeric.datum.candidate_form(d.id),
                    root=Fraction(-d.discrepancy, total),
                    location_numerator=d.discrepancy,
                    location_denominator=n_poly,
                    residue=residues[d.id],
                )
            )
        else:
            trivial.append(d.id)
    return StrongMCCertificate(
        True, k, threshold, avg, tuple(components), tuple(trivial), ()
    )


# -- the two-blow-up worked example ---------------------------------------------


@dataclass(frozen=True)
class ConeReport:
    b1: int
    b2: int
    in_relative_ample: bool
    in_nonresonant: bool
    in_first_subcone: bool  # the certified root of the first divisor is a jumping number
    in_second_subcone: bool


def sixone_example_cones(b1: int, b2: int) -> ConeReport:
    """Membership flags for the chain of two point blow-ups of the plane.

    The relatively ample cone is ``0 < b1 < b2 < 2*b1``; the non-resonant part
    removes ``3*b1 = 2*b2``; the two subcones split it along ``2*b2 < 3*b1``.
    """
    if b1 < 1 or b2 < 1:
        raise ValueError("coordinates must be positive integers")
    in_rel = 0 < b1 < b2 < 2 * b1
    in_nonres = in_rel and (2 * b2) % b1 != 0 and (3 * b1) % b2 != 0
    in_first = in_nonres and 2 * b2 < 3 * b1
    in_second = in_nonres and 2 * b2 > 3 * b1
    assert in_first == (in_nonres and not in_second)
    return ConeReport(b1, b2, in_rel, in_nonres, in_first, in_second)
