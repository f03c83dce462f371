"""Data model for the combinatorial record of an embedded resolution.

A dataset describes the divisors of a simple-normal-crossings arrangement
upstairs (strict transforms of the input branches plus exceptional divisors),
their numerical data, Euler characteristics of the open strata of the
arrangement, local fiber data at chosen base points, and optional ample-class
coordinates and degree data used by the generic-section machinery.

Files are JSON, UTF-8.  Top-level keys::

    ambient_dim, p, divisors[], strata[], points[], ample?, degrees?,
    adjacent_pairs?, augmented?

Integers are arbitrary precision; JSON strings are accepted wherever an
integer is expected.  Stratum characteristics may be given as plain integers
(``chi``), as polynomials in the section power ``k`` (``chi_poly``, low degree
first), optionally flagged ``"chi_exact": false`` when only the leading term
is known, or as ``"chi_unknown": true``.  In a symbolically augmented file
(``augmented.k == "symbolic"``) the last multiplicity column may contain
two-element arrays ``[c0, c1]`` meaning ``c0 + c1*k``.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping, Sequence, Union

from .algebra import KPoly, LinearForm

MultiplicityEntry = Union[int, KPoly]


@dataclass(frozen=True)
class ChiValue:
    """An Euler characteristic: exact, leading-term-only, or unknown.

    ``poly`` is a polynomial in the section power ``k`` (constant for plain
    numeric data).  ``exact=False`` marks values whose lower-order terms in
    ``k`` are not determined; ``poly=None`` means nothing is known.
    """

    poly: KPoly | None
    exact: bool

    @classmethod
    def of(cls, value: int) -> "ChiValue":
        return cls(KPoly.constant(value), True)

    @classmethod
    def of_poly(cls, poly: KPoly) -> "ChiValue":
        return cls(poly, True)

    @classmethod
    def leading_only(cls, poly: KPoly) -> "ChiValue":
        return cls(poly, False)

    @classmethod
    def unknown(cls) -> "ChiValue":
        return cls(None, False)

    def is_known(self) -> bool:
        return self.poly is not None

    def is_numeric(self) -> bool:
        return self.exact and self.poly is not None and self.poly.degree() <= 0

    def as_int(self) -> int:
        if not self.is_numeric():
            raise ValueError("Euler characteristic is not an exact number")
        value = self.poly.constant_value()
        if value.denominator != 1:
            raise ValueError("Euler characteristic is not an integer")
        return int(value)

    def specialize(self, k: int) -> "ChiValue":
        """Evaluate at an integer k; inexact values stay unusable."""
        if self.poly is None or not self.exact:
            return ChiValue.unknown() if self.poly is None else ChiValue(None, False)
        return ChiValue(KPoly.constant(self.poly(k)), True)


@dataclass(frozen=True)
class Divisor:
    id: str
    exceptional: bool
    discrepancy: int
    multiplicities: tuple[MultiplicityEntry, ...]
    ample_coeff: int | None = None


@dataclass(frozen=True)
class Stratum:
    divisors: tuple[str, ...]
    chi: ChiValue
    nonempty: bool = True

    def __post_init__(self):
        object.__setattr__(self, "divisors", tuple(sorted(self.divisors)))

    @property
    def key(self) -> frozenset:
        return frozenset(self.divisors)


@dataclass(frozen=True)
class LocalFiberDatum:
    point_id: str
    entries: tuple[tuple[str, int], ...]

    def chi_of(self, divisor_id: str) -> int:
        for did, chi in self.entries:
            if did == divisor_id:
                return chi
        return 0


@dataclass(frozen=True)
class AmpleVector:
    d: int
    b: Mapping[str, int]

    def __post_init__(self):
        object.__setattr__(self, "b", dict(self.b))


@dataclass(frozen=True)
class DegreeDatum:
    dim: int
    deg: int


@dataclass(frozen=True)
class ValidationReport:
    violations: tuple[str, ...]
    warnings: tuple[str, ...]

    @property
    def ok(self) -> bool:
        return not self.violations


AMBIENT_DEGREE_KEY = "ambient"


def degree_key(divisor_ids: Iterable[str]) -> str:
    return ",".join(sorted(divisor_ids))


@dataclass
class ResolutionDatum:
    """Full combinatorial record; immutable by convention after validation."""

    ambient_dim: int
    p: int
    divisors: list[Divisor]
    strata: list[Stratum]
    points: list[LocalFiberDatum] = field(default_factory=list)
    ample: AmpleVector | None = None
    degrees: dict[str, DegreeDatum] = field(default_factory=dict)
    adjacent_pairs: list[tuple[str, str]] = field(default_factory=list)
    augmented_k: int | str | None = None  # None, an int, or "symbolic"

    # -- basic accessors -------------------------------------------------

    @property
    def is_augmented(self) -> bool:
        return self.augmented_k is not None

    @property
    def ncols(self) -> int:
        return self.p + 1 if self.is_augmented else self.p

    def divisor(self, divisor_id: str) -> Divisor:
        for d in self.divisors:
            if d.id == divisor_id:
                return d
        raise KeyError(f"unknown divisor id {divisor_id!r}")

    def divisor_ids(self) -> list[str]:
        return [d.id for d in self.divisors]

    def stratum_chi(self, divisor_ids: Iterable[str]) -> ChiValue:
        key = frozenset(divisor_ids)
        for stratum in self.strata:
            if stratum.key == key:
                return stratum.chi
        return ChiValue.of(0)

    def point(self, point_id: str) -> LocalFiberDatum:
        for pt in self.points:
            if pt.point_id == point_id:
                return pt
        raise KeyError(f"unknown point id {point_id!r}")

    # -- derived numerical data ------------------------------------------

    def product_multiplicity(self, divisor_id: str) -> int:
        """Sum of the first p multiplicity columns (order along the divisor
        of the product of the input branches)."""
        d = self.divisor(divisor_id)
        total = 0
        for entry in d.multiplicities[: self.p]:
            if isinstance(entry, KPoly):
                raise ValueError("base multiplicity columns must be numeric")
            total += entry
        return total

    def total_multiplicity(self, divisor_id: str) -> MultiplicityEntry:
        """Sum of all multiplicity columns, symbolic when augmented with
        symbolic k."""
        base = self.product_multiplicity(divisor_id)
        if not self.is_augmented:
            return base
        extra = self.divisor(divisor_id).multiplicities[self.p]
        if isinstance(extra, KPoly):
            return KPoly.constant(base) + extra
        return base + extra

    def candidate_form(self, divisor_id: str) -> LinearForm:
        """The raw linear form of the divisor across all columns."""
        d = self.divisor(divisor_id)
        coeffs = []
        for entry in d.multiplicities:
            if isinstance(entry, KPoly):
                raise ValueError(
                    "candidate forms need numeric multiplicities; specialise k first"
                )
            coeffs.append(entry)
        return LinearForm(tuple(coeffs), d.discrepancy)

    # -- adjacency ---------------------------------------------------------

    def adjacency(self) -> dict[str, set[str]]:
        """Symmetric, irreflexive adjacency from nonempty strata and the
        explicit pair list."""
        out: dict[str, set[str]] = {d.id: set() for d in self.divisors}
        for stratum in self.strata:
            if not stratum.nonempty:
                continue
            ids = stratum.divisors
            for i, a in enumerate(ids):
                for b in ids[i + 1 :]:
                    if a != b:
                        out.setdefault(a, set()).add(b)
                        out.setdefault(b, set()).add(a)
        for a, b in self.adjacent_pairs:
            if a != b:
                out.setdefault(a, set()).add(b)
                out.setdefault(b, set()).add(a)
        return out

    # -- validation --------------------------------------------------------

    def validate(self) -> ValidationReport:
        violations: list[str] = []
        warnings: list[str] = []
        ids = [d.id for d in self.divisors]
        known = set(ids)
        if len(known) != len(ids):
            seen = set()
            for i in ids:
                if i in seen:
                    violations.append(f"duplicate divisor id {i!r}")
                seen.add(i)
        if self.ambient_dim < 1:
            violations.append("ambient dimension must be positive")
        if self.p < 1:
            violations.append("tuple length p must be positive")

        ncols = self.ncols
        for d in self.divisors:
            if d.discrepancy < 1:
                violations.append(f"divisor {d.id!r}: discrepancy must be >= 1")
            if len(d.multiplicities) != ncols:
                violations.append(
                    f"divisor {d.id!r}: expected {ncols} multiplicity columns, "
                    f"got {len(d.multiplicities)}"
                )
            for j, entry in enumerate(d.multiplicities):
                if isinstance(entry, KPoly):
                    if self.augmented_k != "symbolic" or j != self.p:
                        violations.append(
                            f"divisor {d.id!r}: symbolic multiplicity outside the "
                            "symbolic augmented column"
                        )
                elif entry < 0:
                    violations.append(f"divisor {d.id!r}: negative multiplicity")
            if d.ample_coeff is not None and not d.exceptional:
                violations.append(f"divisor {d.id!r}: ample coefficient on a non-exceptional divisor")

        stratum_keys = set()
        for stratum in self.strata:
            for i in stratum.divisors:
                if i not in known:
                    violations.append(f"stratum {stratum.divisors}: unknown divisor id {i!r}")
            if stratum.key in stratum_keys:
                violations.append(f"stratum {stratum.divisors}: listed twice")
            stratum_keys.add(stratum.key)
            if len(stratum.divisors) > self.ambient_dim:
                violations.append(
                    f"stratum {stratum.divisors}: more divisors than the ambient dimension"
                )
            chi = stratum.chi
            if chi.is_known() and not chi.poly.is_zero() and not stratum.nonempty:
                violations.append(f"stratum {stratum.divisors}: nonzero chi on an empty stratum")
            if (
                len(stratum.divisors) == self.ambient_dim
                and stratum.nonempty
                and chi.is_numeric()
                and chi.as_int() < 1
            ):
                violations.append(
                    f"stratum {stratum.divisors}: a nonempty zero-dimensional stratum "
                    "is a finite set and needs chi >= 1"
                )

        nonempty_members: set[str] = set()
        for stratum in self.strata:
            if stratum.nonempty:
                nonempty_members.update(stratum.divisors)

        point_ids = set()
        for pt in self.points:
            if pt.point_id in point_ids:
                violations.append(f"point {pt.point_id!r}: listed twice")
            point_ids.add(pt.point_id)
            seen_divs = set()
            for did, chi in pt.entries:
                if did not in known:
                    violations.append(f"point {pt.point_id!r}: unknown divisor id {did!r}")
                    continue
                if did in seen_divs:
                    violations.append(f"point {pt.point_id!r}: divisor {did!r} listed twice")
                seen_divs.add(did)
                if chi != 0:
                    d = self.divisor(did)
                    if all(
                        (not isinstance(e, KPoly)) and e == 0 for e in d.multiplicities
                    ):
                        violations.append(
                            f"point {pt.point_id!r}: divisor {did!r} has zero multiplicity "
                            "vector but nonzero local chi"
                        )
                if did not in nonempty_members:
                    warnings.append(
                        f"point {pt.point_id!r}: divisor {did!r} appears in no nonempty stratum"
                    )

        if self.ample is not None:
            exceptional = {d.id for d in self.divisors if d.exceptional}
            if set(self.ample.b) != exceptional:
                violations.append(
                    "ample coordinates must be keyed by exactly the exceptional divisors"
                )
            if self.ample.d < 1 or any(v < 1 for v in self.ample.b.values()):
                violations.append("ample coordinates must be positive")
        else:
            warnings.append("no ample block: generic-section operations unavailable")
        if not self.points:
            warnings.append("no base points: monodromy support unavailable")
        for a, b in self.adjacent_pairs:
            if a not in known or b not in known:
                violations.append(f"adjacent pair ({a!r}, {b!r}): unknown divisor id")
            if a == b:
                violations.append(f"adjacent pair ({a!r}, {b!r}): a divisor is not adjacent to itself")
        for key, dd in self.degrees.items():
            if key != AMBIENT_DEGREE_KEY:
                for i in key.split(","):
                    if i not in known:
                        violations.append(f"degree entry {key!r}: unknown divisor id {i!r}")
            if dd.deg < 1:
                violations.append(f"degree entry {key!r}: degree must be positive")
            if dd.dim < 0:
                violations.append(f"degree entry {key!r}: negative dimension")
        return ValidationReport(tuple(violations), tuple(warnings))


def derived_quantities(datum: ResolutionDatum, divisor_id: str) -> tuple[int, MultiplicityEntry]:
    """(product multiplicity, total multiplicity) of a divisor; the total is a
    polynomial in k for symbolically augmented data."""
    return datum.product_multiplicity(divisor_id), datum.total_multiplicity(divisor_id)


def collapse_tuple(datum: ResolutionDatum) -> ResolutionDatum:
    """Replace the p multiplicity columns by their sum (the product view)."""
    divisors = []
    for d in datum.divisors:
        if datum.is_augmented:
            raise ValueError("collapse the base datum before augmenting")
        total = sum(d.multiplicities)  # all numeric in a base datum
        divisors.append(
            Divisor(d.id, d.exceptional, d.discrepancy, (total,), d.ample_coeff)
        )
    return ResolutionDatum(
        ambient_dim=datum.ambient_dim,
        p=1,
        divisors=divisors,
        strata=list(datum.strata),
        points=list(datum.points),
        ample=datum.ample,
        degrees=dict(datum.degrees),
        adjacent_pairs=list(datum.adjacent_pairs),
    )


# -- JSON (de)serialisation -------------------------------------------------


class SchemaError(ValueError):
    """Raised when a document does not match the dataset schema."""


def _as_int(value, where: str) -> int:
    if isinstance(value, bool):
        raise SchemaError(f"{where}: expected an integer, got a boolean")
    if isinstance(value, int):
        return value
    if isinstance(value, str):
        try:
            return int(value, 10)
        except ValueError as exc:
            raise SchemaError(f"{where}: not an integer: {value!r}") from exc
    raise SchemaError(f"{where}: expected an integer, got {type(value).__name__}")


def _multiplicity_entry(value, where: str, symbolic_column: bool) -> MultiplicityEntry:
    if isinstance(value, list):
        if not symbolic_column:
            raise SchemaError(f"{where}: array multiplicities only in the symbolic column")
        if len(value) != 2:
            raise SchemaError(f"{where}: symbolic multiplicity must be [c0, c1]")
        return KPoly([_as_int(value[0], where), _as_int(value[1], where)])
    return _as_int(value, where)


def parse_datum(doc: Mapping) -> ResolutionDatum:
    """Parse a JSON document (already decoded) into a ResolutionDatum."""
    if not isinstance(doc, Mapping):
        raise SchemaError("top level must be an object")
    for key in ("ambient_dim", "p", "divisors", "strata"):
        if key not in doc:
            raise SchemaError(f"missing required key {key!r}")
    ambient_dim = _as_int(doc["ambient_dim"], "ambient_dim")
    p = _as_int(doc["p"], "p")

    augmented_k: int | str | None = None
    if "augmented" in doc and doc["augmented"] is not None:
        aug = doc["augmented"]
        if not isinstance(aug, Mapping) or "k" not in aug:
            raise SchemaError("augmented block must be an object with a 'k' key")
        if "base_p" in aug and _as_int(aug["base_p"], "augmented.base_p") != p:
            raise SchemaError("augmented.base_p disagrees with p")
        augmented_k = "symbolic" if aug["k"] == "symbolic" else _as_int(aug["k"], "augmented.k")

    ncols = p + 1 if augmented_k is not None else p
    symbolic = augmented_k == "symbolic"

    divisors: list[Divisor] = []
    if not isinstance(doc["divisors"], list):
        raise SchemaError("divisors must be an array")
    for i, d in enumerate(doc["divisors"]):
        where = f"divisors[{i}]"
        if not isinstance(d, Mapping) or "id" not in d:
            raise SchemaError(f"{where}: expected an object with an 'id'")
        mult_raw = d.get("multiplicities")
        if not isinstance(mult_raw, list) or len(mult_raw) != ncols:
            raise SchemaError(f"{where}: multiplicities must be an array of length {ncols}")
        multiplicities = tuple(
            _multiplicity_entry(v, f"{where}.multiplicities[{j}]", symbolic and j == p)
            for j, v in enumerate(mult_raw)
        )
        ample_coeff = d.get("ample_coeff")
        divisors.append(
            Divisor(
                id=str(d["id"]),
                exceptional=bool(d.get("exceptional", False)),
                discrepancy=_as_int(d.get("discrepancy"), f"{where}.discrepancy"),
                multiplicities=multiplicities,
                ample_coeff=None if ample_coeff is None else _as_int(ample_coeff, where),
            )
        )

    strata: list[Stratum] = []
    if not isinstance(doc["strata"], list):
        raise SchemaError("strata must be an array")
    for i, s in enumerate(doc["strata"]):
        where = f"strata[{i}]"
        if not isinstance(s, Mapping) or "divisors" not in s:
            raise SchemaError(f"{where}: expected an object with 'divisors'")
        ids = tuple(str(x) for x in s["divisors"])
        if not ids:
            raise SchemaError(f"{where}: empty divisor list")
        if s.get("chi_unknown"):
            chi = ChiValue.unknown()
        elif "chi_poly" in s:
            poly = KPoly([_as_int(c, f"{where}.chi_poly") for c in s["chi_poly"]])
            chi = ChiValue.of_poly(poly) if s.get("chi_exact", True) else ChiValue.leading_only(poly)
        elif "chi" in s:
            chi = ChiValue.of(_as_int(s["chi"], f"{where}.chi"))
        else:
            raise SchemaError(f"{where}: one of chi, chi_poly, chi_unknown is required")
        default_nonempty = True
        strata.append(Stratum(ids, chi, bool(s.get("nonempty", default_nonempty))))

    points: list[LocalFiberDatum] = []
    for i, pt in enumerate(doc.get("points", []) or []):
        where = f"points[{i}]"
        if not isinstance(pt, Mapping) or "id" not in pt or "chi" not in pt:
            raise SchemaError(f"{where}: expected an object with 'id' and 'chi'")
        if not isinstance(pt["chi"], Mapping):
            raise SchemaError(f"{where}: chi must map divisor ids to integers")
        entries = tuple(
            (str(did), _as_int(chi, f"{where}.chi[{did}]"))
            for did, chi in sorted(pt["chi"].items())
        )
        points.append(LocalFiberDatum(str(pt["id"]), entries))

    ample = None
    if doc.get("ample") is not None:
        a = doc["ample"]
        if not isinstance(a, Mapping) or "d" not in a or "b" not in a:
            raise SchemaError("ample block needs 'd' and 'b'")
        ample = AmpleVector(
            _as_int(a["d"], "ample.d"),
            {str(k): _as_int(v, f"ample.b[{k}]") for k, v in a["b"].items()},
        )

    degrees: dict[str, DegreeDatum] = {}
    for key, dd in (doc.get("degrees") or {}).items():
        if not isinstance(dd, Mapping):
            raise SchemaError(f"degrees[{key}]: expected an object")
        degrees[str(key)] = DegreeDatum(
            _as_int(dd.get("dim"), f"degrees[{key}].dim"),
            _as_int(dd.get("deg"), f"degrees[{key}].deg"),
        )

    adjacent_pairs = []
    for i, pair in enumerate(doc.get("adjacent_pairs", []) or []):
        if not isinstance(pair, (list, tuple)) or len(pair) != 2:
            raise SchemaError(f"adjacent_pairs[{i}]: expected a two-element array")
        adjacent_pairs.append((str(pair[0]), str(pair[1])))

    return ResolutionDatum(
        ambient_dim=ambient_dim,
        p=p,
        divisors=divisors,
        strata=strata,
        points=points,
        ample=ample,
        degrees=degrees,
        adjacent_pairs=adjacent_pairs,
        augmented_k=augmented_k,
    )


def _chi_to_json(stratum: Stratum) -> dict:
    chi = stratum.chi
    if chi.poly is None:
        return {"chi_unknown": True}
    if chi.is_numeric():
        return {"chi": chi.as_int()}
    coeffs = [
        int(c) if c.denominator == 1 else str(c)  # chi polys are integral in practice
        for c in chi.poly.coeffs
    ]
    out: dict = {"chi_poly": coeffs}
    if not chi.exact:
        out["chi_exact"] = False
    return out


def datum_to_json(datum: ResolutionDatum) -> dict:
    doc: dict = {
        "ambient_dim": datum.ambient_dim,
        "p": datum.p,
        "divisors": [],
        "strata": [],
    }
    for d in datum.divisors:
        entry: dict = {
            "id": d.id,
            "exceptional": d.exceptional,
            "discrepancy": d.discrepancy,
            "multiplicities": [
                [int(m.coeffs[0]) if m.coeffs else 0, int(m.coeffs[1]) if len(m.coeffs) > 1 else 0]
                if isinstance(m, KPoly)
                else m
                for m in d.multiplicities
            ],
        }
        if d.ample_coeff is not None:
            entry["ample_coeff"] = d.ample_coeff
        doc["divisors"].append(entry)
    for s in datum.strata:
        entry = {"divisors": list(s.divisors)}
        entry.update(_chi_to_json(s))
        if not s.nonempty:
            entry["nonempty"] = False
        doc["strata"].append(entry)
    if datum.points:
        doc["points"] = [
            {"id": pt.point_id, "chi": {did: chi for did, chi in pt.entries}}
            for pt in datum.points
        ]
    if datum.ample is not None:
        doc["ample"] = {"d": datum.ample.d, "b": dict(sorted(datum.ample.b.items()))}
    if datum.degrees:
        doc["degrees"] = {
            key: {"dim": dd.dim, "deg": dd.deg} for key, dd in sorted(datum.degrees.items())
        }
    if datum.adjacent_pairs:
        doc["adjacent_pairs"] = [list(pair) for pair in datum.adjacent_pairs]
    if datum.augmented_k is not None:
        doc["augmented"] = {"base_p": datum.p, "k": datum.augmented_k}
    return doc


def dumps_datum(datum: ResolutionDatum) -> str:
    return json.dumps(datum_to_json(datum), indent=2, sort_keys=True) + "\n"


def loads_datum(text: str) -> ResolutionDatum:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SchemaError(f"malformed JSON: {exc}") from exc
    return parse_datum(doc)


def load_datum(path) -> ResolutionDatum:
    with open(path, "r", encoding="utf-8") as fh:
        return loads_datum(fh.read())
