"""Complexes for radially symmetric end spaces."""

from __future__ import annotations

from dataclasses import replace

from ..complex import Construction, GluingComplex
from ..endspace import EndSpaceExpr, Singleton, is_self_similar, star_decomposition
from ..errors import NotSelfSimilarError
from .base import BuildRequest
from .cayley import XBuilder


class YBuilder(XBuilder):
    """Same pairing pattern as ``XBuilder``; vertex pieces carry one star part.

    Each vertex piece ends in ``E_1`` together with the star point, so the
    orbit of parts under the group accumulates at a single merged end.
    """

    construction = Construction.Y

    def vertex_summary(self, request: BuildRequest) -> EndSpaceExpr:
        return star_decomposition(request.end_space).part_closure

    def build(self, request: BuildRequest) -> GluingComplex:
        if not is_self_similar(request.end_space):
            raise NotSelfSimilarError(f"{request.end_space} is not self-similar")
        if isinstance(request.end_space, Singleton):
            complex_ = XBuilder().build(request)
            recipe = replace(complex_.recipe, flags=complex_.recipe.flags + ("one_ended_delegated_to_X",))
            return replace(complex_, recipe=recipe)
        return super().build(request)


def build_y(end_space: EndSpaceExpr, group, truncation: int = 2, seed: int = 0, radius: int = 3) -> GluingComplex:
    """Build the radially symmetric complex for ``end_space`` and ``group``."""
    return YBuilder().build(BuildRequest(end_space, group, truncation, radius, seed))
