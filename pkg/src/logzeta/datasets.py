"""Bundled example datasets.

Classical plane-curve resolutions (cusp, node, a smooth branch) serve as
independent oracles for the zeta and monodromy pipelines; the two-blow-up
chain carries the ample-cone, degree and non-resonance data exercised by the
generic-section machinery.
"""

from __future__ import annotations

from .resolution import (
    AMBIENT_DEGREE_KEY,
    AmpleVector,
    ChiValue,
    DegreeDatum,
    Divisor,
    LocalFiberDatum,
    ResolutionDatum,
    Stratum,
    degree_key,
)


def cusp() -> ResolutionDatum:
    """Minimal embedded resolution of the cuspidal cubic branch.

    Three point blow-ups; the strict transform meets only the last
    exceptional divisor, which also meets the two earlier ones.
    """
    return ResolutionDatum(
        ambient_dim=2,
        p=1,
        divisors=[
            Divisor("S", False, 1, (1,)),
            Divisor("E1", True, 2, (2,)),
            Divisor("E2", True, 3, (3,)),
            Divisor("E3", True, 5, (6,)),
        ],
        strata=[
            Stratum(("S",), ChiValue.of(0)),
            Stratum(("E1",), ChiValue.of(1)),
            Stratum(("E2",), ChiValue.of(1)),
            Stratum(("E3",), ChiValue.of(-1)),
            Stratum(("S", "E3"), ChiValue.of(1)),
            Stratum(("E1", "E3"), ChiValue.of(1)),
            Stratum(("E2", "E3"), ChiValue.of(1)),
        ],
        points=[
            LocalFiberDatum("origin", (("E1", 1), ("E2", 1), ("E3", -1), ("S", 0))),
            LocalFiberDatum("smooth", (("S", 1),)),
        ],
    )


def node() -> ResolutionDatum:
    """Two smooth branches meeting transversally; no blow-up is needed."""
    return ResolutionDatum(
        ambient_dim=2,
        p=2,
        divisors=[
            Divisor("B1", False, 1, (1, 0)),
            Divisor("B2", False, 1, (0, 1)),
        ],
        strata=[
            Stratum(("B1",), ChiValue.of(0)),
            Stratum(("B2",), ChiValue.of(0)),
            Stratum(("B1", "B2"), ChiValue.of(1)),
        ],
        points=[
            LocalFiberDatum("origin", (("B1", 0), ("B2", 0))),
            LocalFiberDatum("smooth-1", (("B1", 1),)),
            LocalFiberDatum("smooth-2", (("B2", 1),)),
        ],
    )


def smooth() -> ResolutionDatum:
    """A single smooth affine branch of multiplicity one."""
    return ResolutionDatum(
        ambient_dim=2,
        p=1,
        divisors=[Divisor("W", False, 1, (1,))],
        strata=[Stratum(("W",), ChiValue.of(1))],
        points=[LocalFiberDatum("smooth", (("W", 1),))],
    )


def sixone(b1: int = 3, b2: int = 4, d: int | None = None) -> ResolutionDatum:
    """Chain of two point blow-ups of the plane, empty branch locus.

    The first exceptional divisor (self-intersection -2 after the second
    blow-up) has discrepancy 2, the second (self-intersection -1) has 3.
    Ample classes ``d*h - b1*W1 - b2*W2`` require ``0 < b1 < b2 < 2*b1`` and
    ``d > b2``; degrees of the exceptional curves against the class are
    ``2*b1 - b2`` and ``b2 - b1``, the plane degree is
    ``d^2 - 2*b1^2 + 2*b1*b2 - b2^2``.
    """
    if not 0 < b1 < b2 < 2 * b1:
        raise ValueError(f"(b1, b2)=({b1}, {b2}) is outside the relatively ample cone")
    if d is None:
        d = b1 + b2
    if d <= b2:
        raise ValueError("the plane degree d must exceed b2")
    deg_w1 = 2 * b1 - b2
    deg_w2 = b2 - b1
    deg_plane = d * d - 2 * b1 * b1 + 2 * b1 * b2 - b2 * b2
    return ResolutionDatum(
        ambient_dim=2,
        p=1,
        divisors=[
            Divisor("W1", True, 2, (0,), ample_coeff=b1),
            Divisor("W2", True, 3, (0,), ample_coeff=b2),
        ],
        strata=[
            Stratum(("W1",), ChiValue.of(1)),
            Stratum(("W2",), ChiValue.of(1)),
            Stratum(("W1", "W2"), ChiValue.of(1)),
        ],
        points=[],
        ample=AmpleVector(d, {"W1": b1, "W2": b2}),
        degrees={
            degree_key(("W1",)): DegreeDatum(1, deg_w1),
            degree_key(("W2",)): DegreeDatum(1, deg_w2),
            AMBIENT_DEGREE_KEY: DegreeDatum(2, deg_plane),
        },
    )


BUILDERS = {
    "cusp": cusp,
    "node": node,
    "smooth": smooth,
    "sixone": sixone,
}


def build_example(name: str, **kwargs) -> ResolutionDatum:
    if name not in BUILDERS:
        raise KeyError(f"unknown example {name!r}; available: {sorted(BUILDERS)}")
    return BUILDERS[name](**kwargs)
