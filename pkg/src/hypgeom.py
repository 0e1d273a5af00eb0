"""Hyperbolic-geometry kernels: collars, pants seams, length bands, completeness."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import TYPE_CHECKING, NamedTuple

from .errors import NonPositiveCuffError, NonPositiveLengthError, UnboundedLengthsError

if TYPE_CHECKING:
    from .complex import GluingComplex


ASINH1 = math.asinh(1.0)
TWO_ASINH1 = 2.0 * ASINH1


def collar_width(length: float) -> float:
    """Half-width ``asinh(1 / sinh(l/2))`` of the standard collar of a geodesic.

    Raises:
        NonPositiveLengthError: If ``length <= 0``.
    """
    if not length > 0:
        raise NonPositiveLengthError(f"Geodesic length must be positive, got {length}")
    return math.asinh(1.0 / math.sinh(length / 2.0))


def collar_length_for_width(width: float) -> float:
    """Inverse of ``collar_width``: the length whose collar has this half-width."""
    if not width > 0:
        raise NonPositiveLengthError(f"Collar width must be positive, got {width}")
    return 2.0 * math.asinh(1.0 / math.sinh(width))


def short_geodesics_disjoint(l1: float, l2: float) -> bool:
    """True iff both lengths are below ``2 asinh 1``.

    Two distinct simple closed geodesics that short cannot intersect, so the
    check is a hypothesis guard, not an intersection computation.
    """
    if not (l1 > 0 and l2 > 0):
        raise NonPositiveLengthError(f"Geodesic lengths must be positive, got {l1}, {l2}")
    return l1 < TWO_ASINH1 and l2 < TWO_ASINH1


class PantsSeams(NamedTuple):
    d_ab: float
    d_bc: float
    d_ca: float


def _seam(x: float, y: float, opposite: float) -> float:
    hx, hy, ho = x / 2.0, y / 2.0, opposite / 2.0
    return math.acosh((math.cosh(ho) + math.cosh(hx) * math.cosh(hy)) / (math.sinh(hx) * math.sinh(hy)))


def pants_seam(a: float, b: float, c: float) -> PantsSeams:
    """Lengths of the common perpendiculars between the cuffs of a pair of pants.

    ``d_ab`` joins the cuffs of lengths ``a`` and ``b``, and so on cyclically.

    Raises:
        NonPositiveCuffError: If any cuff length is not positive.
    """
    if not (a > 0 and b > 0 and c > 0):
        raise NonPositiveCuffError(f"Cuff lengths must be positive, got {a}, {b}, {c}")
    return PantsSeams(_seam(a, b, c), _seam(b, c, a), _seam(c, a, b))


def hexagon_residual(a: float, b: float, c: float, seams: PantsSeams) -> float:
    """Largest relative error of the right-angled hexagon relation, read in reverse.

    Each half cuff is recomputed from the two adjacent half cuffs and the
    seam between them.
    """
    worst = 0.0
    for x, y, opposite, d in ((a, b, c, seams.d_ab), (b, c, a, seams.d_bc), (c, a, b, seams.d_ca)):
        hx, hy = x / 2.0, y / 2.0
        recovered = math.sinh(hx) * math.sinh(hy) * math.cosh(d) - math.cosh(hx) * math.cosh(hy)
        expected = math.cosh(opposite / 2.0)
        worst = max(worst, abs(recovered - expected) / expected)
    return worst


@dataclass(frozen=True)
class LengthBudget:
    """The length bands every builder-produced complex stays inside.

    Boundary ports lie in ``(0, asinh 1)``, vertex cuffs in
    ``(asinh 1, 2 asinh 1)``, edge-piece cuffs in ``[asinh 1, 2 asinh 1)``.
    """

    boundary_band: tuple[float, float] = (0.0, ASINH1)
    cuff_band: tuple[float, float] = (ASINH1, TWO_ASINH1)
    sup_bound: float = TWO_ASINH1

    def __post_init__(self) -> None:
        if self.sup_bound < TWO_ASINH1:
            raise ValueError(f"sup_bound must be at least 2 asinh 1, got {self.sup_bound}")

    def in_boundary_band(self, length: float) -> bool:
        low, high = self.boundary_band
        return low < length < high

    def in_cuff_band(self, length: float) -> bool:
        low, high = self.cuff_band
        return low < length < high

    def in_edge_cuff_band(self, length: float) -> bool:
        low, high = self.cuff_band
        return low <= length < high


DEFAULT_BUDGET = LengthBudget()


def band_violations(complex_: GluingComplex, budget: LengthBudget = DEFAULT_BUDGET) -> list[str]:
    """List every port or cuff length outside its band."""
    violations = []
    for piece in complex_.pieces:
        for port in piece.ports:
            if not budget.in_boundary_band(port.length):
                violations.append(f"{port.port_id} length {port.length!r} outside boundary band")
        in_band = budget.in_cuff_band if piece.is_vertex else budget.in_edge_cuff_band
        for i, cuff in enumerate(piece.cuff_lengths):
            if not in_band(cuff):
                violations.append(f"{piece.piece_id} cuff {i} length {cuff!r} outside cuff band")
    return violations


@dataclass(frozen=True)
class CompletenessCertificate:
    """Every pants curve is shorter than ``bound``, so the glued metric is complete."""

    holds: bool
    bound: float
    checked_lengths: int
    planar_ends: int = 0


def certify_complete(complex_: GluingComplex) -> CompletenessCertificate:
    """Certify completeness from a uniform upper bound on pants-curve lengths.

    Raises:
        UnboundedLengthsError: Listing every length not below the complex's
            sup bound.
    """
    lengths = list(complex_.lengths())
    offenders = [f"{label}={value!r}" for label, value in lengths if not value < complex_.sup_bound]
    if offenders:
        raise UnboundedLengthsError(offenders, complex_.sup_bound)
    return CompletenessCertificate(holds=True, bound=complex_.sup_bound, checked_lengths=len(lengths))
