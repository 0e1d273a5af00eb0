"""Gluing complexes: decorated piece-and-port graphs standing in for glued surfaces.

A complex is a finite set of pieces (vertex surfaces of infinite genus and
edge surfaces, tori with two boundary curves) whose boundary ports are
paired isometrically. The recipe records how a builder produced it, so
statements about the untruncated surface (its end space) are evaluated
symbolically while combinatorial statements (automorphisms, connectivity)
are evaluated on the pieces themselves.
"""

from __future__ import annotations

import logging
from collections import defaultdict
from dataclasses import dataclass, field, replace
from enum import Enum
from functools import cached_property
from typing import Iterator

import networkx as nx
from networkx.algorithms.isomorphism import (
    MultiDiGraphMatcher,
    categorical_multiedge_match,
    categorical_node_match,
)

from .endspace import (
    CharSystem,
    EndSpaceExpr,
    Singleton,
    canonical,
    from_char_system,
    union,
)
from .errors import (
    ActionNotDecorationPreservingError,
    ActionNotFreeError,
    PreconditionError,
    UnknownRecipeError,
)
from .grouptable import FiniteGroup, permutation_group
from .hypgeom import TWO_ASINH1
from .vcgroup import GroupBall, VCGroupDescriptor

logger = logging.getLogger(__name__)


class PieceKind(Enum):
    VERTEX = "vertex"
    EDGE   = "edge"


class Construction(Enum):
    """Constructions a recipe can name."""
    X       = "X"
    Y       = "Y"
    X_GAMMA = "X_gamma"


@dataclass(frozen=True)
class Port:
    """A boundary curve of a piece, with its geodesic length.

    ``index`` is the position of the curve in the global boundary
    enumeration; equal indices always carry equal lengths.
    """

    port_id: str
    length: float
    index: int

    @property
    def local(self) -> str:
        return self.port_id.split(":", 1)[1]


@dataclass(frozen=True)
class Piece:
    piece_id: str
    kind: PieceKind
    owner: tuple[str, ...]
    ports: tuple[Port, ...]
    cuff_lengths: tuple[float, ...]
    end_summary: EndSpaceExpr | None = None

    def __post_init__(self) -> None:
        if ":" in self.piece_id:
            raise ValueError(f"Piece id may not contain ':': {self.piece_id!r}")
        for port in self.ports:
            if not port.port_id.startswith(self.piece_id + ":"):
                raise ValueError(f"Port {port.port_id!r} does not belong to {self.piece_id!r}")
        if self.kind is PieceKind.EDGE and len(self.ports) != 2:
            raise ValueError(f"Edge piece {self.piece_id} must have exactly 2 ports")

    @property
    def is_vertex(self) -> bool:
        return self.kind is PieceKind.VERTEX

    @property
    def genus_marker(self) -> str:
        return "infinite" if self.is_vertex else "one"

    def port(self, local: str) -> Port:
        for port in self.ports:
            if port.local == local:
                return port
        raise KeyError(f"{self.piece_id} has no port {local!r}")


@dataclass(frozen=True)
class Pairing:
    """Isometric identification of two ports along a pants curve.

    A pairing with ``handle`` set stands for the edge piece of that id,
    contracted away: its ports are joined through a torus with two
    boundary curves, so their lengths may differ.
    """

    first: str
    second: str
    curve_id: str
    twist: float
    orientation_reversing: bool = True
    handle: str | None = None

    @property
    def is_handle(self) -> bool:
        return self.handle is not None


@dataclass(frozen=True)
class Recipe:
    """How a complex was built.

    Attributes:
        construction: Which construction produced the complex.
        end_space: The end space the construction realizes.
        group_name: Display name of the group.
        group: The finite group, or ``None`` for a materialised ball.
        ball: The group ball for infinite groups.
        truncation: Boundary depth ``M``.
        radius: Ball radius for infinite groups.
        char_system: Characteristic system for the two-ended construction.
        flags: Markers such as ``corner_case_alpha_zero``.
        deck_quotient: True for a quotient by the deck group.
    """

    construction: Construction
    end_space: EndSpaceExpr
    group_name: str
    group: FiniteGroup | None = None
    ball: GroupBall | None = None
    truncation: int = 1
    radius: int | None = None
    char_system: CharSystem | None = None
    flags: tuple[str, ...] = ()
    deck_quotient: bool = False

    @property
    def infinite(self) -> bool:
        return self.group is None

    @property
    def descriptor(self) -> VCGroupDescriptor | None:
        return self.ball.descriptor if self.ball is not None else None


@dataclass(frozen=True)
class GluingComplex:
    pieces: tuple[Piece, ...]
    pairings: tuple[Pairing, ...]
    recipe: Recipe | None = None
    seed: int = 0
    sup_bound: float = TWO_ASINH1

    @cached_property
    def _pieces_by_id(self) -> dict[str, Piece]:
        return {piece.piece_id: piece for piece in self.pieces}

    @cached_property
    def _port_owner(self) -> dict[str, Piece]:
        return {port.port_id: piece for piece in self.pieces for port in piece.ports}

    def piece(self, piece_id: str) -> Piece:
        return self._pieces_by_id[piece_id]

    def owner_of(self, port_id: str) -> Piece:
        return self._port_owner[port_id]

    def port(self, port_id: str) -> Port:
        return self.owner_of(port_id).port(port_id.split(":", 1)[1])

    @property
    def vertex_pieces(self) -> list[Piece]:
        return [piece for piece in self.pieces if piece.is_vertex]

    @property
    def edge_pieces(self) -> list[Piece]:
        return [piece for piece in self.pieces if not piece.is_vertex]

    @cached_property
    def paired_ports(self) -> frozenset[str]:
        return frozenset(p for pairing in self.pairings for p in (pairing.first, pairing.second))

    def frontier_ports(self) -> list[str]:
        """Ports left unpaired at the truncation frontier."""
        return [port.port_id for piece in self.pieces for port in piece.ports if port.port_id not in self.paired_ports]

    def lengths(self) -> Iterator[tuple[str, float]]:
        """Every assigned closed-geodesic length, labelled."""
        for piece in self.pieces:
            for port in piece.ports:
                yield port.port_id, port.length
            for i, cuff in enumerate(piece.cuff_lengths):
                yield f"{piece.piece_id}#cuff{i}", cuff

    def gluing_violations(self) -> list[str]:
        """Structural checks: isometric pairings (handles aside), no port paired twice, injective boundary lengths."""
        problems = []
        seen: set[str] = set()
        for pairing in self.pairings:
            for port_id in (pairing.first, pairing.second):
                if port_id not in self._port_owner:
                    problems.append(f"{pairing.curve_id}: unknown port {port_id}")
                elif port_id in seen:
                    problems.append(f"{port_id} paired twice")
                seen.add(port_id)
            isometric = not pairing.is_handle
            if isometric and pairing.first in self._port_owner and pairing.second in self._port_owner:
                if self.port(pairing.first).length != self.port(pairing.second).length:
                    problems.append(f"{pairing.curve_id}: lengths of {pairing.first} and {pairing.second} differ")
            if not pairing.orientation_reversing:
                problems.append(f"{pairing.curve_id}: gluing must reverse orientation")
        by_index: dict[int, set[float]] = defaultdict(set)
        for piece in self.pieces:
            for port in piece.ports:
                by_index[port.index].add(port.length)
        by_length: dict[float, set[int]] = defaultdict(set)
        for index, values in by_index.items():
            if len(values) > 1:
                problems.append(f"boundary index {index} carries several lengths")
            for value in values:
                by_length[value].add(index)
        for value, indices in by_length.items():
            if len(indices) > 1:
                problems.append(f"boundary length {value!r} shared by indices {sorted(indices)}")
        return problems


# ---------------------------------------------------------------------------
# End spaces
# ---------------------------------------------------------------------------

def complex_end_space(complex_: GluingComplex, ideal: bool = True) -> EndSpaceExpr:
    """End space of the surface a complex models.

    With ``ideal`` the untruncated surface named by the recipe is evaluated
    symbolically; otherwise the ends carried by the pieces present are
    collected into one union.

    Raises:
        UnknownRecipeError: If the complex has no recipe.
    """
    recipe = complex_.recipe
    if recipe is None:
        raise UnknownRecipeError("Complex carries no recipe; its end space is not determined")

    if not ideal:
        parts = [piece.end_summary for piece in complex_.vertex_pieces if piece.end_summary is not None]
        if recipe.construction is Construction.X_GAMMA and not recipe.deck_quotient:
            parts += [Singleton(), Singleton()]
        if not parts:
            raise PreconditionError("No piece of this complex carries ends")
        return union(parts)

    if recipe.deck_quotient:
        return canonical(recipe.end_space)
    if recipe.construction is Construction.X_GAMMA:
        return from_char_system(CharSystem(recipe.char_system.alpha, 2))
    if recipe.construction is Construction.X and recipe.infinite:
        return Singleton()
    return canonical(recipe.end_space)


# ---------------------------------------------------------------------------
# Deck actions and quotients
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class CoverDescriptor:
    """A regular cover ``total -> quotient`` with its deck group.

    ``deck_action`` maps ``(group element name, piece id)`` to a piece id.
    """

    total: GluingComplex
    group: FiniteGroup
    quotient: GluingComplex
    deck_action: dict[tuple[str, str], str] = field(compare=False)


def _translate(deck: FiniteGroup, x: str, piece: Piece, lookup: dict) -> Piece:
    try:
        owner = (deck.mul_names(x, piece.owner[0]),) + piece.owner[1:]
    except KeyError as exc:
        raise ActionNotDecorationPreservingError(f"{piece.piece_id}: owner is not an element of {deck.name}") from exc
    image = lookup.get((piece.kind, owner))
    if image is None:
        raise ActionNotDecorationPreservingError(f"{x} moves {piece.piece_id} outside the complex")
    return image


def _deck_action(complex_: GluingComplex, deck: FiniteGroup) -> dict[tuple[str, str], str]:
    lookup = {(piece.kind, piece.owner): piece for piece in complex_.pieces}
    action = {}
    for x in deck.names:
        for piece in complex_.pieces:
            action[(x, piece.piece_id)] = _translate(deck, x, piece, lookup).piece_id
    return action


def _check_action(complex_: GluingComplex, deck: FiniteGroup, action: dict[tuple[str, str], str]) -> None:
    identity = deck.names[deck.identity]
    for piece in complex_.pieces:
        if action[(identity, piece.piece_id)] != piece.piece_id:
            raise ActionNotDecorationPreservingError(f"identity moves {piece.piece_id}")
        for x, y in ((x, y) for x in deck.names for y in deck.names):
            composed = action[(x, action[(y, piece.piece_id)])]
            if composed != action[(deck.mul_names(x, y), piece.piece_id)]:
                raise ActionNotDecorationPreservingError(f"action of {x}*{y} on {piece.piece_id} is not composed")
        for x in deck.names:
            if x != identity and action[(x, piece.piece_id)] == piece.piece_id:
                raise ActionNotFreeError(f"{x} fixes {piece.piece_id}")

    pairings = {(p.first, p.second): p.twist for p in complex_.pairings}
    for x in deck.names:
        for piece in complex_.pieces:
            image = complex_.piece(action[(x, piece.piece_id)])
            same = (
                image.kind is piece.kind
                and image.cuff_lengths == piece.cuff_lengths
                and image.end_summary == piece.end_summary
                and sorted((p.local, p.length) for p in image.ports) == sorted((p.local, p.length) for p in piece.ports)
            )
            if not same:
                raise ActionNotDecorationPreservingError(f"{x} maps {piece.piece_id} to a different piece type")

        def move(port_id: str) -> str:
            owner = complex_.owner_of(port_id)
            return f"{action[(x, owner.piece_id)]}:{port_id.split(':', 1)[1]}"

        for (first, second), twist in pairings.items():
            moved = (move(first), move(second))
            if pairings.get(moved) != twist:
                raise ActionNotDecorationPreservingError(f"{x} breaks the pairing {first} ~ {second}")


def _contract_edges(
    pieces: list[Piece], pairings: list[Pairing]
) -> tuple[tuple[Piece, ...], tuple[Pairing, ...]]:
    """Replace each edge piece glued to vertex pieces at both ports by one handle pairing.

    The handle joins the vertex port met by the edge's first port to the one
    met by its second, and keeps the twist of the first gluing.
    """
    owner = {port.port_id: piece for piece in pieces for port in piece.ports}
    partner: dict[str, tuple[str, Pairing]] = {}
    for pairing in pairings:
        partner[pairing.first] = (pairing.second, pairing)
        partner[pairing.second] = (pairing.first, pairing)

    contracted: set[str] = set()
    handles = []
    for piece in pieces:
        if piece.is_vertex:
            continue
        ends = [partner.get(port.port_id) for port in piece.ports]
        if any(end is None or not owner[end[0]].is_vertex for end in ends):
            continue
        (first, gluing), (second, _) = ends
        contracted.add(piece.piece_id)
        handles.append(Pairing(
            first, second, piece.piece_id, gluing.twist, gluing.orientation_reversing, handle=piece.piece_id,
        ))

    kept = [
        pairing for pairing in pairings
        if owner[pairing.first].piece_id not in contracted and owner[pairing.second].piece_id not in contracted
    ]
    return tuple(piece for piece in pieces if piece.piece_id not in contracted), tuple(kept + handles)


def quotient(complex_: GluingComplex, deck: FiniteGroup) -> CoverDescriptor:
    """Quotient a complex by a deck group acting through piece owners.

    The deck group acts by left multiplication on the first owner
    coordinate. Each vertex orbit is represented by the piece owned by the
    identity, keeping its id. Each edge orbit becomes one handle pairing
    between ports of vertex representatives; for the complete Cayley
    construction that is the self-pairing ``d(h,2m) ~ d(h,2m-1)``.

    Raises:
        ActionNotFreeError: If a non-identity element fixes a piece.
        ActionNotDecorationPreservingError: If the action breaks kinds,
            lengths, twists or pairings.
    """
    action = _deck_action(complex_, deck)
    _check_action(complex_, deck, action)

    identity = deck.names[deck.identity]
    representatives = [piece for piece in complex_.pieces if piece.owner[0] == identity]

    def to_representative(port_id: str) -> str:
        owner = complex_.owner_of(port_id)
        shift = deck.names[deck.inv(deck.index(owner.owner[0]))]
        return f"{action[(shift, owner.piece_id)]}:{port_id.split(':', 1)[1]}"

    seen: set[tuple[str, str]] = set()
    pushed = []
    for pairing in complex_.pairings:
        key = (to_representative(pairing.first), to_representative(pairing.second))
        if key in seen:
            continue
        seen.add(key)
        pushed.append(replace(pairing, first=key[0], second=key[1]))
    pieces, pairings = _contract_edges(representatives, pushed)

    recipe = replace(complex_.recipe, deck_quotient=True) if complex_.recipe is not None else None
    quotient_complex = GluingComplex(
        pieces=pieces,
        pairings=pairings,
        recipe=recipe,
        seed=complex_.seed,
        sup_bound=complex_.sup_bound,
    )
    logger.debug("quotient by %s: %d -> %d pieces", deck.name, len(complex_.pieces), len(pieces))
    return CoverDescriptor(complex_, deck, quotient_complex, action)


# ---------------------------------------------------------------------------
# Automorphisms
# ---------------------------------------------------------------------------

def _piece_signature(complex_: GluingComplex, piece: Piece) -> tuple:
    ports = tuple(sorted((port.length, port.port_id in complex_.paired_ports) for port in piece.ports))
    summary = "" if piece.end_summary is None else str(canonical(piece.end_summary))
    return (piece.kind.value, summary, ports, piece.cuff_lengths)


def decoration_graph(complex_: GluingComplex) -> nx.MultiDiGraph:
    """Pieces as nodes, one directed edge per pairing carrying its decoration."""
    graph = nx.MultiDiGraph()
    for piece in complex_.pieces:
        graph.add_node(piece.piece_id, sig=_piece_signature(complex_, piece))
    for pairing in complex_.pairings:
        graph.add_edge(
            complex_.owner_of(pairing.first).piece_id,
            complex_.owner_of(pairing.second).piece_id,
            len_first=complex_.port(pairing.first).length,
            len_second=complex_.port(pairing.second).length,
            twist=pairing.twist,
        )
    return graph


def complex_automorphisms(complex_: GluingComplex) -> FiniteGroup:
    """Group of piece bijections preserving kinds, lengths, twists and pairings.

    Vertex pieces have no self-maps of their own and every port length
    within a piece is distinct, so a piece bijection determines the port
    map and the group is returned as a permutation group on pieces.
    """
    graph = decoration_graph(complex_)
    matcher = MultiDiGraphMatcher(
        graph,
        graph,
        node_match=categorical_node_match("sig", None),
        edge_match=categorical_multiedge_match(["len_first", "len_second", "twist"], [None, None, None]),
    )
    nodes = sorted(graph.nodes)
    position = {node: i for i, node in enumerate(nodes)}
    perms = [tuple(position[mapping[node]] for node in nodes) for mapping in matcher.isomorphisms_iter()]
    logger.debug("complex automorphisms: %d over %d pieces", len(perms), len(nodes))
    return permutation_group(perms, name="Isom")


# ---------------------------------------------------------------------------
# Connectivity shadow of one-endedness
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ConnectivityReport:
    """Whether the complex stays connected after removing a sub-ball of pieces.

    This is a combinatorial shadow of one-endedness: it says nothing about
    the geometry of the glued surface.
    """

    center: str
    radius: int
    removed: tuple[str, ...]
    remaining: int
    connected: bool
    kind: str = "combinatorial shadow"


def connectivity_shadow(complex_: GluingComplex, center: str, radius: int) -> ConnectivityReport:
    """Delete the vertex pieces within ``radius`` of ``center`` and their edge pieces.

    Raises:
        PreconditionError: If the complex was not built over a group ball.
    """
    recipe = complex_.recipe
    if recipe is None or recipe.ball is None:
        raise PreconditionError("Connectivity shadow needs a complex built over a group ball")
    ball = recipe.ball
    centre_word = GroupBall.word(center)
    removed_vertices = {
        piece.piece_id for piece in complex_.vertex_pieces
        if ball.distance(centre_word, GroupBall.word(piece.owner[0])) <= radius
    }
    adjacency = nx.Graph()
    for pairing in complex_.pairings:
        adjacency.add_edge(complex_.owner_of(pairing.first).piece_id, complex_.owner_of(pairing.second).piece_id)
    adjacency.add_nodes_from(piece.piece_id for piece in complex_.pieces)
    removed = set(removed_vertices)
    for vertex in removed_vertices:
        removed |= {n for n in adjacency.neighbors(vertex) if not complex_.piece(n).is_vertex}
    adjacency.remove_nodes_from(removed)
    connected = adjacency.number_of_nodes() > 0 and nx.is_connected(adjacency)
    return ConnectivityReport(center, radius, tuple(sorted(removed)), adjacency.number_of_nodes(), connected)


def one_endedness_shadow(complex_: GluingComplex, radius: int) -> list[ConnectivityReport]:
    """``connectivity_shadow`` around every vertex piece."""
    return [connectivity_shadow(complex_, piece.owner[0], radius) for piece in complex_.vertex_pieces]
