"""Complexes modelled on the complete Cayley graph of a group."""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Callable

from ..complex import Construction, GluingComplex, Pairing, Piece, PieceKind, Port, Recipe
from ..endspace import EndSpaceExpr
from ..grouptable import FiniteGroup
from ..vcgroup import GroupBall
from .base import BaseBuilder, BuildRequest, boundary_length

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class ElementSet:
    """The vertices and labels a complete-Cayley complex is built over."""

    name: str
    elements: tuple[str, ...]
    labels: tuple[str, ...]
    product: Callable[[str, str], str | None]

    @classmethod
    def of_group(cls, group: FiniteGroup) -> ElementSet:
        return cls(
            group.name,
            group.names,
            tuple(group.names[h] for h in group.non_identity()),
            group.mul_names,
        )

    @classmethod
    def of_ball(cls, ball: GroupBall) -> ElementSet:
        def product(g: str, h: str) -> str | None:
            result = ball.product(GroupBall.word(g), GroupBall.word(h))
            return None if result is None else GroupBall.display(result)

        return cls(
            ball.name,
            tuple(GroupBall.display(w) for w in ball.elements),
            tuple(GroupBall.display(w) for w in ball.labels),
            product,
        )


def vertex_id(g: str) -> str:
    return f"V[{g}]"


def edge_id(g: str, h: str, m: int) -> str:
    return f"E[{g},{h},{m}]"


class XBuilder(BaseBuilder):
    """One vertex piece per element and one edge piece per ``(g, h != id, m <= M)``.

    The edge piece ``E[g,h,m]`` joins the port ``d(h,2m)`` of ``V[g]`` to the
    port ``d(h,2m-1)`` of ``V[gh]``. Over a group ball only edge pieces with
    both ends inside the ball are built; the remaining vertex ports stay on
    the frontier.
    """

    construction = Construction.X

    def vertex_summary(self, request: BuildRequest) -> EndSpaceExpr:
        return request.end_space

    def recipe(self, request: BuildRequest, ball: GroupBall | None) -> Recipe:
        return Recipe(
            construction=self.construction,
            end_space=request.end_space,
            group_name=request.group.name if ball is None else ball.descriptor.name,
            group=request.group if ball is None else None,
            ball=ball,
            truncation=request.truncation,
            radius=None if ball is None else ball.radius,
        )

    def build(self, request: BuildRequest) -> GluingComplex:
        self.check_truncation(request)
        ball = None if isinstance(request.group, FiniteGroup) else self.materialize(request)
        elements = ElementSet.of_group(request.group) if ball is None else ElementSet.of_ball(ball)
        M = request.truncation
        rng = self.rng(request.seed)

        index = {
            (h, k): p * 2 * M + k
            for p, h in enumerate(elements.labels)
            for k in range(1, 2 * M + 1)
        }
        twists = {key: self.twist(rng) for key in index}
        cuffs = self.vertex_cuffs(rng, len(index) + 1)
        summary = self.vertex_summary(request)

        pieces = []
        for g in elements.elements:
            ports = tuple(
                Port(f"{vertex_id(g)}:d({h},{k})", boundary_length(i), i)
                for (h, k), i in index.items()
            )
            pieces.append(Piece(vertex_id(g), PieceKind.VERTEX, (g,), ports, cuffs, summary))

        pairings = []
        for g in elements.elements:
            for h in elements.labels:
                gh = elements.product(g, h)
                if gh is None:
                    continue
                for m in range(1, M + 1):
                    piece_id = edge_id(g, h, m)
                    out_index, in_index = index[(h, 2 * m)], index[(h, 2 * m - 1)]
                    pieces.append(Piece(
                        piece_id,
                        PieceKind.EDGE,
                        (g, h, str(m)),
                        (
                            Port(f"{piece_id}:out", boundary_length(out_index), out_index),
                            Port(f"{piece_id}:in", boundary_length(in_index), in_index),
                        ),
                        self.edge_cuffs(),
                    ))
                    source = f"{vertex_id(g)}:d({h},{2 * m})"
                    target = f"{vertex_id(gh)}:d({h},{2 * m - 1})"
                    pairings.append(Pairing(source, f"{piece_id}:out", f"C({source})", twists[(h, 2 * m)]))
                    pairings.append(Pairing(target, f"{piece_id}:in", f"C({target})", twists[(h, 2 * m - 1)]))

        logger.debug(
            "%s over %s: %d pieces, %d pairings", self.construction.value, elements.name, len(pieces), len(pairings)
        )
        return GluingComplex(tuple(pieces), tuple(pairings), self.recipe(request, ball), request.seed)


def build_x(end_space: EndSpaceExpr, group, truncation: int = 2, seed: int = 0, radius: int = 3) -> GluingComplex:
    """Build the complete-Cayley complex for ``end_space`` and ``group``."""
    return XBuilder().build(BuildRequest(end_space, group, truncation, radius, seed))
