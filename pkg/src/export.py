"""JSON documents and DOT export for complexes, verdicts and self-test reports.

Every document carries ``schema_version`` and the seed of the run. Lengths
and twists are written as decimal strings with a fixed number of
significant digits so that output is byte-stable across runs.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass, field
from typing import Literal

from pydantic import BaseModel, ConfigDict, ValidationError

from .complex import Construction, GluingComplex, Pairing, Piece, PieceKind, Port, Recipe
from .config import LENGTH_DIGITS, SCHEMA_VERSION
from .endspace import CharSystem, from_json as end_space_from_json, to_json as end_space_to_json
from .errors import ParseError
from .grouptable import validate_table
from .hypgeom import CompletenessCertificate
from .ordinal import format_ordinal, parse_ordinal
from .vcgroup import GroupBall, VCGroupDescriptor


def format_length(value: float) -> str:
    return f"{value:.{LENGTH_DIGITS}g}"


def _parse_length(text: str, where: str) -> float:
    try:
        value = float(text)
    except ValueError as exc:
        raise ParseError(f"{where}: {text!r} is not a decimal length") from exc
    if not math.isfinite(value):
        raise ParseError(f"{where}: length {text!r} is not finite")
    return value


class _Document(BaseModel):
    model_config = ConfigDict(extra="forbid")


# ---------------------------------------------------------------------------
# Complex documents
# ---------------------------------------------------------------------------

class PortModel(_Document):
    id: str
    index: int
    length: str


class PieceModel(_Document):
    id: str
    kind: Literal["vertex", "edge"]
    owner: list[str]
    genus: Literal["infinite", "one"]
    ends: dict | None = None
    ports: list[PortModel]
    cuffs: list[str]


class PairingModel(_Document):
    first: str
    second: str
    curve: str
    twist: str
    orientation_reversing: bool = True
    handle: str | None = None


class GroupModel(_Document):
    name: str
    names: list[str] | None = None
    table: list[list[int]] | None = None
    descriptor: dict | None = None
    radius: int | None = None


class CharSystemModel(_Document):
    alpha: str
    degree: int


class RecipeModel(_Document):
    construction: Literal["X", "Y", "X_gamma"]
    end_space: dict
    group: GroupModel
    truncation: int
    char_system: CharSystemModel | None = None
    flags: list[str] = []
    deck_quotient: bool = False


class CompletenessModel(_Document):
    holds: bool
    bound: str
    checked_lengths: int
    planar_ends: int = 0


class ComplexDocument(_Document):
    schema_version: int = SCHEMA_VERSION
    kind: Literal["complex"] = "complex"
    # significant digits of every length and twist below
    length_digits: int = LENGTH_DIGITS
    seed: int
    sup_bound: str
    recipe: RecipeModel | None = None
    completeness: CompletenessModel | None = None
    frontier_ports: list[str] = []
    pieces: list[PieceModel]
    pairings: list[PairingModel]


def _group_model(recipe: Recipe) -> GroupModel:
    if recipe.group is not None:
        group = recipe.group
        return GroupModel(
            name=group.name,
            names=list(group.names),
            table=[list(row) for row in group.table],
        )
    if recipe.ball is not None:
        return GroupModel(
            name=recipe.group_name,
            descriptor=recipe.ball.descriptor.to_json(),
            radius=recipe.ball.radius,
        )
    return GroupModel(name=recipe.group_name)


def _recipe_model(recipe: Recipe) -> RecipeModel:
    system = recipe.char_system
    return RecipeModel(
        construction=recipe.construction.value,
        end_space=end_space_to_json(recipe.end_space),
        group=_group_model(recipe),
        truncation=recipe.truncation,
        char_system=None if system is None else CharSystemModel(alpha=format_ordinal(system.alpha), degree=system.degree),
        flags=list(recipe.flags),
        deck_quotient=recipe.deck_quotient,
    )


def complex_document(complex_: GluingComplex, certificate: CompletenessCertificate | None = None) -> ComplexDocument:
    """Describe a complex as a versioned document, pieces and pairings sorted."""
    pieces = [
        PieceModel(
            id=piece.piece_id,
            kind=piece.kind.value,
            owner=list(piece.owner),
            genus=piece.genus_marker,
            ends=None if piece.end_summary is None else end_space_to_json(piece.end_summary),
            ports=[PortModel(id=p.port_id, index=p.index, length=format_length(p.length)) for p in piece.ports],
            cuffs=[format_length(c) for c in piece.cuff_lengths],
        )
        for piece in sorted(complex_.pieces, key=lambda piece: piece.piece_id)
    ]
    pairings = [
        PairingModel(
            first=p.first,
            second=p.second,
            curve=p.curve_id,
            twist=format_length(p.twist),
            orientation_reversing=p.orientation_reversing,
            handle=p.handle,
        )
        for p in sorted(complex_.pairings, key=lambda p: (p.first, p.second))
    ]
    completeness = None
    if certificate is not None:
        completeness = CompletenessModel(
            holds=certificate.holds,
            bound=format_length(certificate.bound),
            checked_lengths=certificate.checked_lengths,
            planar_ends=certificate.planar_ends,
        )
    return ComplexDocument(
        seed=complex_.seed,
        sup_bound=format_length(complex_.sup_bound),
        recipe=None if complex_.recipe is None else _recipe_model(complex_.recipe),
        completeness=completeness,
        frontier_ports=sorted(complex_.frontier_ports()),
        pieces=pieces,
        pairings=pairings,
    )


def dump_complex(complex_: GluingComplex, certificate: CompletenessCertificate | None = None) -> str:
    return complex_document(complex_, certificate).model_dump_json(indent=2) + "\n"


def _recipe_from_model(model: RecipeModel) -> Recipe:
    group = ball = None
    if model.group.table is not None:
        group = validate_table(model.group.table, model.group.names, model.group.name)
    elif model.group.descriptor is not None:
        if model.group.radius is None:
            raise ParseError("Recipe group has a descriptor but no ball radius")
        ball = GroupBall(VCGroupDescriptor.from_json(model.group.descriptor), model.group.radius)
    system = None
    if model.char_system is not None:
        system = CharSystem(parse_ordinal(model.char_system.alpha), model.char_system.degree)
    return Recipe(
        construction=Construction(model.construction),
        end_space=end_space_from_json(model.end_space),
        group_name=model.group.name,
        group=group,
        ball=ball,
        truncation=model.truncation,
        radius=None if ball is None else ball.radius,
        char_system=system,
        flags=tuple(model.flags),
        deck_quotient=model.deck_quotient,
    )


def load_complex(text: str) -> tuple[GluingComplex, ComplexDocument]:
    """Rebuild a complex from its JSON document.

    Raises:
        ParseError: On malformed JSON, a schema mismatch or bad values.
    """
    try:
        document = ComplexDocument.model_validate_json(text)
    except ValidationError as exc:
        raise ParseError(f"Invalid complex document: {exc.error_count()} error(s): {exc.errors()[0]['msg']}") from exc
    if document.schema_version != SCHEMA_VERSION:
        raise ParseError(f"Unsupported schema_version {document.schema_version}, expected {SCHEMA_VERSION}")

    pieces = []
    try:
        for model in document.pieces:
            pieces.append(Piece(
                piece_id=model.id,
                kind=PieceKind(model.kind),
                owner=tuple(model.owner),
                ports=tuple(Port(p.id, _parse_length(p.length, p.id), p.index) for p in model.ports),
                cuff_lengths=tuple(_parse_length(c, model.id) for c in model.cuffs),
                end_summary=None if model.ends is None else end_space_from_json(model.ends),
            ))
    except ValueError as exc:
        if isinstance(exc, ParseError):
            raise
        raise ParseError(f"Invalid piece: {exc}") from exc
    pairings = tuple(
        Pairing(p.first, p.second, p.curve, _parse_length(p.twist, p.curve), p.orientation_reversing, p.handle)
        for p in document.pairings
    )
    recipe = None if document.recipe is None else _recipe_from_model(document.recipe)
    complex_ = GluingComplex(
        tuple(pieces), pairings, recipe, document.seed, _parse_length(document.sup_bound, "sup_bound")
    )
    return complex_, document


# ---------------------------------------------------------------------------
# Verdicts and reports
# ---------------------------------------------------------------------------

class VerdictDocument(_Document):
    schema_version: int = SCHEMA_VERSION
    kind: Literal["verdict"] = "verdict"
    seed: int
    ends: str
    genus: str
    planar_ends: str
    group: str
    answer: str
    allowed_class: str | None
    exactness: str
    citations: list[str]
    notes: list[str] = []
    flags: list[str] = []


class CheckModel(_Document):
    name: str
    passed: bool
    detail: str = ""


class ReportDocument(_Document):
    schema_version: int = SCHEMA_VERSION
    kind: Literal["verification", "selftest"]
    seed: int
    passed: bool
    checks: list[CheckModel]


def dump_document(document: BaseModel) -> str:
    return document.model_dump_json(indent=2) + "\n"


# ---------------------------------------------------------------------------
# DOT
# ---------------------------------------------------------------------------

def _quote(value: str) -> str:
    return '"' + value.replace("\\", "\\\\").replace('"', '\\"') + '"'


def complex_to_dot(complex_: GluingComplex) -> str:
    """Undirected DOT graph: pieces as nodes, pairings as labelled edges.

    Vertex pieces are boxes and edge pieces ellipses; the edge label is the
    length of the glued curve.
    """
    lines = ["graph complex {"]
    construction = complex_.recipe.construction.value if complex_.recipe is not None else "none"
    lines.append(f"\tgraph [construction={_quote(construction)}, seed={_quote(str(complex_.seed))}];")
    for piece in sorted(complex_.pieces, key=lambda piece: piece.piece_id):
        shape = "box" if piece.is_vertex else "ellipse"
        lines.append(f"\t{_quote(piece.piece_id)} [shape={shape}, label={_quote(piece.piece_id)}];")
    for pairing in sorted(complex_.pairings, key=lambda p: (p.first, p.second)):
        first = complex_.owner_of(pairing.first).piece_id
        second = complex_.owner_of(pairing.second).piece_id
        length = format_length(complex_.port(pairing.first).length)
        lines.append(f"\t{_quote(first)} -- {_quote(second)} [label={_quote(length)}, curve={_quote(pairing.curve_id)}];")
    lines.append("}")
    return "\n".join(lines) + "\n"


_ID = r'"(?:[^"\\]|\\.)*"|[A-Za-z_][A-Za-z0-9_]*|-?\d+(?:\.\d+)?'
_ATTRS = r'(?:\s*\[(?P<attrs>(?:"(?:[^"\\]|\\.)*"|[^\]"])*)\])?'
_HEADER = re.compile(rf"^(?:strict\s+)?(?P<kind>graph|digraph)\s*(?P<name>{_ID})?\s*\{{$")
_EDGE = re.compile(rf"^(?P<a>{_ID})\s*(?P<op>--|->)\s*(?P<b>{_ID}){_ATTRS}\s*;?$")
_NODE = re.compile(rf"^(?P<a>{_ID}){_ATTRS}\s*;?$")
_DEFAULTS = re.compile(rf"^(?:graph|node|edge){_ATTRS}\s*;?$")
_PAIR = re.compile(rf"\s*(?P<key>{_ID})\s*=\s*(?P<value>{_ID})\s*,?")


def _unquote(token: str) -> str:
    if token.startswith('"'):
        return re.sub(r"\\(.)", r"\1", token[1:-1])
    return token


def _attrs(text: str | None, line: str) -> dict[str, str]:
    if not text or not text.strip():
        return {}
    result = {}
    position = 0
    while position < len(text):
        match = _PAIR.match(text, position)
        if match is None:
            if text[position:].strip():
                raise ParseError(f"Bad DOT attribute list in: {line}")
            break
        result[_unquote(match["key"])] = _unquote(match["value"])
        position = match.end()
    return result


@dataclass
class DotGraph:
    name: str
    directed: bool
    nodes: dict[str, dict[str, str]] = field(default_factory=dict)
    edges: list[tuple[str, str, dict[str, str]]] = field(default_factory=list)


def parse_dot(text: str) -> DotGraph:
    """Parse the flat subset of DOT written by ``complex_to_dot``.

    One statement per line; subgraphs and multi-node edge chains are not
    accepted.

    Raises:
        ParseError: On anything outside that subset.
    """
    lines = [line.strip() for line in text.splitlines()]
    lines = [line for line in lines if line and not line.startswith("//")]
    if not lines:
        raise ParseError("Empty DOT input")
    header = _HEADER.match(lines[0])
    if header is None:
        raise ParseError(f"Bad DOT header: {lines[0]}")
    if lines[-1] != "}":
        raise ParseError("DOT graph is not closed")
    directed = header["kind"] == "digraph"
    graph = DotGraph(_unquote(header["name"] or ""), directed)
    for line in lines[1:-1]:
        if _DEFAULTS.match(line):
            continue
        edge = _EDGE.match(line)
        if edge is not None:
            if (edge["op"] == "->") != directed:
                raise ParseError(f"Edge operator {edge['op']} does not match graph kind: {line}")
            a, b = _unquote(edge["a"]), _unquote(edge["b"])
            graph.nodes.setdefault(a, {})
            graph.nodes.setdefault(b, {})
            graph.edges.append((a, b, _attrs(edge["attrs"], line)))
            continue
        node = _NODE.match(line)
        if node is not None:
            graph.nodes.setdefault(_unquote(node["a"]), {}).update(_attrs(node["attrs"], line))
            continue
        raise ParseError(f"Unrecognised DOT statement: {line}")
    return graph
