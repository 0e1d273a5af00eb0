"""Re-verification of a gluing complex, typically one loaded from JSON."""

from __future__ import annotations

import logging
from dataclasses import dataclass

from .builders.cayley import vertex_id
from .complex import Construction, GluingComplex, complex_automorphisms, complex_end_space
from .config import HEXAGON_TOLERANCE
from .endspace import describe
from .errors import PreconditionError, UnboundedLengthsError, UnknownRecipeError
from .grouptable import isomorphic
from .hypgeom import CompletenessCertificate, band_violations, certify_complete, hexagon_residual, pants_seam
from .vcgroup import GroupBall

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Check:
    name: str
    passed: bool
    detail: str = ""


def _summarize(problems: list[str]) -> str:
    if not problems:
        return ""
    more = f" (+{len(problems) - 3} more)" if len(problems) > 3 else ""
    return "; ".join(problems[:3]) + more


def check_pairings(complex_: GluingComplex) -> Check:
    problems = complex_.gluing_violations()
    return Check("pairings", not problems, _summarize(problems))


def check_bands(complex_: GluingComplex) -> Check:
    problems = band_violations(complex_)
    return Check("length_bands", not problems, _summarize(problems))


def check_completeness(complex_: GluingComplex, declared: CompletenessCertificate | None = None) -> Check:
    try:
        certificate = certify_complete(complex_)
    except UnboundedLengthsError as exc:
        return Check("completeness", False, str(exc))
    if declared is not None and (declared.holds, declared.bound) != (certificate.holds, certificate.bound):
        return Check("completeness", False, f"declared certificate {declared} does not match {certificate}")
    return Check("completeness", True, f"{certificate.checked_lengths} lengths below {certificate.bound:.6g}")


def _partner(complex_: GluingComplex) -> dict[str, str]:
    partner = {}
    for pairing in complex_.pairings:
        partner[pairing.first] = pairing.second
        partner[pairing.second] = pairing.first
    return partner


def check_edge_convention(complex_: GluingComplex) -> Check:
    """Edge ``(g, h, m)`` meets ``V[g]`` at ``d(h,2m)`` and ``V[gh]`` at ``d(h,2m-1)``."""
    recipe = complex_.recipe
    if recipe is None or recipe.construction is Construction.X_GAMMA or recipe.deck_quotient:
        return Check("edge_convention", True, "not applicable")
    if recipe.group is not None:
        product = recipe.group.mul_names
    elif recipe.ball is not None:
        ball = recipe.ball

        def product(g: str, h: str) -> str | None:
            result = ball.product(GroupBall.word(g), GroupBall.word(h))
            return None if result is None else GroupBall.display(result)
    else:
        return Check("edge_convention", False, "recipe names no group")

    partner = _partner(complex_)
    problems = []
    for piece in complex_.edge_pieces:
        g, h, m = piece.owner[0], piece.owner[1], int(piece.owner[2])
        expected = {
            f"{piece.piece_id}:out": f"{vertex_id(g)}:d({h},{2 * m})",
            f"{piece.piece_id}:in": f"{vertex_id(product(g, h))}:d({h},{2 * m - 1})",
        }
        for port_id, target in expected.items():
            if partner.get(port_id) != target:
                problems.append(f"{port_id} glued to {partner.get(port_id)}, expected {target}")
    return Check("edge_convention", not problems, _summarize(problems))


def check_automorphisms(complex_: GluingComplex) -> Check:
    recipe = complex_.recipe
    if recipe is None or recipe.group is None or recipe.deck_quotient:
        return Check("automorphisms", True, "skipped: no finite declared group")
    automorphisms = complex_automorphisms(complex_)
    same = isomorphic(automorphisms, recipe.group)
    return Check("automorphisms", same, f"|Isom| = {automorphisms.order}, declared {recipe.group.name}")


def check_end_space(complex_: GluingComplex) -> Check:
    try:
        ends = complex_end_space(complex_, ideal=True)
    except (UnknownRecipeError, PreconditionError) as exc:
        return Check("end_space", False, str(exc))
    return Check("end_space", True, describe(ends))


def check_hexagons(complex_: GluingComplex) -> Check:
    """Pants seams of each vertex piece's first three cuffs satisfy the hexagon relation."""
    worst = 0.0
    for piece in complex_.vertex_pieces:
        if len(piece.cuff_lengths) < 3:
            continue
        a, b, c = piece.cuff_lengths[:3]
        worst = max(worst, hexagon_residual(a, b, c, pants_seam(a, b, c)))
    return Check("hexagons", worst < HEXAGON_TOLERANCE, f"worst residual {worst:.3g}")


def verify_complex(complex_: GluingComplex, declared: CompletenessCertificate | None = None) -> list[Check]:
    """Run every structural, numeric and group-level check on a complex."""
    checks = [
        check_pairings(complex_),
        check_bands(complex_),
        check_completeness(complex_, declared),
        check_edge_convention(complex_),
        check_end_space(complex_),
        check_hexagons(complex_),
    ]
    # group search only on structurally sound complexes
    if all(check.passed for check in checks[:2]):
        checks.append(check_automorphisms(complex_))
    for check in checks:
        logger.debug("verify %s: %s %s", check.name, check.passed, check.detail)
    return checks
