"""Complexes for doubly pointed end spaces over two-ended groups."""

from __future__ import annotations

import logging

from ..complex import Construction, GluingComplex, Pairing, Piece, PieceKind, Port, Recipe
from ..endspace import CharSystem, from_char_system, tower
from ..errors import AlphaNotSuccessorError, DegreeNotTwoError, NotTwoEndedCertifiedError, PreconditionError
from ..ordinal import is_limit, pred
from ..vcgroup import GroupBall
from .base import BaseBuilder, BuildRequest, boundary_length

logger = logging.getLogger(__name__)

CORNER_CASE_ALPHA_ZERO = "corner_case_alpha_zero"


def gamma_vertex_id(g: str) -> str:
    return f"V[{g}]"


def gamma_edge_id(g: str, s: str) -> str:
    return f"E[{g},{s}]"


class GammaBuilder(BaseBuilder):
    """Vertex pieces over a ball of the generating-set Cayley graph.

    ``V[g]`` has ports ``d(s,0)`` and ``d(s,1)`` for every generator ``s``.
    The edge piece ``E[g,s]`` joins ``d(s,0)`` of ``V[g]`` to ``d(s,1)`` of
    ``V[gs]``; when ``gs`` lies outside the ball its second port stays on the
    frontier. Vertex pieces end in ``w^(alpha-1) + 1``; the two ends of the
    group are the two extra ends of the surface.
    """

    construction = Construction.X_GAMMA

    def check(self, request: BuildRequest) -> CharSystem:
        system = request.char_system
        if system is None:
            raise PreconditionError("The two-ended construction needs a characteristic system")
        if system.degree != 2:
            raise DegreeNotTwoError(f"Characteristic system {system} does not have degree 2")
        if is_limit(system.alpha):
            raise AlphaNotSuccessorError(f"alpha = {system.alpha} is a limit ordinal")
        ball = request.group
        descriptor = ball.descriptor if isinstance(ball, GroupBall) else ball
        if not getattr(descriptor, "two_ended_certificate", False):
            raise NotTwoEndedCertifiedError(f"{getattr(descriptor, 'name', descriptor)} carries no two-ended certificate")
        return system

    def build(self, request: BuildRequest) -> GluingComplex:
        system = self.check(request)
        self.check_truncation(request)
        ball = self.materialize(request)
        rng = self.rng(request.seed)
        generators = ball.descriptor.generators

        flags: tuple[str, ...] = ()
        if system.alpha.is_zero:
            summary = None
            flags = (CORNER_CASE_ALPHA_ZERO,)
        else:
            summary = tower(pred(system.alpha))

        index = {(s, i): 2 * p + i + 1 for p, s in enumerate(generators) for i in (0, 1)}
        twists = {s: self.twist(rng) for s in generators}
        cuffs = self.vertex_cuffs(rng, len(index) + 1)

        names = [GroupBall.display(w) for w in ball.elements]
        pieces = [
            Piece(
                gamma_vertex_id(g),
                PieceKind.VERTEX,
                (g,),
                tuple(Port(f"{gamma_vertex_id(g)}:d({s},{i})", boundary_length(k), k) for (s, i), k in index.items()),
                cuffs,
                summary,
            )
            for g in names
        ]

        pairings = []
        for word in ball.elements:
            g = GroupBall.display(word)
            for s in generators:
                piece_id = gamma_edge_id(g, s)
                pieces.append(Piece(
                    piece_id,
                    PieceKind.EDGE,
                    (g, s),
                    (
                        Port(f"{piece_id}:0", boundary_length(index[(s, 0)]), index[(s, 0)]),
                        Port(f"{piece_id}:1", boundary_length(index[(s, 1)]), index[(s, 1)]),
                    ),
                    self.edge_cuffs(),
                ))
                source = f"{gamma_vertex_id(g)}:d({s},0)"
                pairings.append(Pairing(source, f"{piece_id}:0", f"C({source})", twists[s]))
                gs = ball.product(word, s)
                if gs is not None:
                    target = f"{gamma_vertex_id(GroupBall.display(gs))}:d({s},1)"
                    pairings.append(Pairing(target, f"{piece_id}:1", f"C({target})", twists[s]))

        recipe = Recipe(
            construction=self.construction,
            end_space=from_char_system(system),
            group_name=ball.descriptor.name,
            ball=ball,
            truncation=request.truncation,
            radius=ball.radius,
            char_system=system,
            flags=flags,
        )
        logger.debug("X_gamma over %s: %d pieces, %d pairings", ball.name, len(pieces), len(pairings))
        return GluingComplex(tuple(pieces), tuple(pairings), recipe, request.seed)


def interior_edge_pieces(complex_: GluingComplex) -> list[Piece]:
    """Edge pieces with both ports paired."""
    return [
        piece for piece in complex_.edge_pieces
        if all(port.port_id in complex_.paired_ports for port in piece.ports)
    ]


def build_x_gamma(group, char_system: CharSystem, radius: int = 3, seed: int = 0) -> GluingComplex:
    """Build the two-ended complex for a certified virtually cyclic group."""
    request = BuildRequest(from_char_system(char_system), group, 1, radius, seed, char_system)
    return GammaBuilder().build(request)
