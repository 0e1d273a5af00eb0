"""Tests for JSON documents and DOT export."""

import json

import pytest

from src.builders import build_x, build_x_gamma
from src.complex import quotient
from src.endspace import CharSystem, tower
from src.errors import ParseError
from src.export import (
    ComplexDocument,
    VerdictDocument,
    complex_document,
    complex_to_dot,
    dump_complex,
    dump_document,
    format_length,
    load_complex,
    parse_dot,
)
from src.grouptable import cyclic
from src.hypgeom import ASINH1, TWO_ASINH1, certify_complete
from src.ordinal import ONE, Ordinal
from src.vcgroup import integers


class TestFormatLength:
    """Tests for the decimal length encoding."""

    def test_round_trips_a_double(self) -> None:
        for value in (ASINH1, TWO_ASINH1, 0.1, 1.0 / 3.0):
            assert float(format_length(value)) == value


class TestComplexDocument:
    """Tests for complex documents."""

    def setup_method(self) -> None:
        self.complex = build_x(tower(ONE), cyclic(2), truncation=2, seed=7)

    def test_pieces_and_pairings_sorted(self) -> None:
        document = complex_document(self.complex)
        ids = [piece.id for piece in document.pieces]
        assert ids == sorted(ids)
        keys = [(p.first, p.second) for p in document.pairings]
        assert keys == sorted(keys)

    def test_header(self) -> None:
        data = json.loads(dump_complex(self.complex))
        assert data["schema_version"] == 1
        assert data["kind"] == "complex"
        assert data["seed"] == 7
        assert data["length_digits"] == 17
        assert data["recipe"]["construction"] == "X"
        assert data["recipe"]["group"]["name"] == "Z2"

    def test_deterministic(self) -> None:
        again = build_x(tower(ONE), cyclic(2), truncation=2, seed=7)
        assert dump_complex(self.complex) == dump_complex(again)

    def test_reload_is_byte_stable(self) -> None:
        text = dump_complex(self.complex, certify_complete(self.complex))
        loaded, document = load_complex(text)
        assert dump_complex(loaded, certify_complete(loaded)) == text
        assert document.completeness.holds is True

    def test_reload_preserves_lengths(self) -> None:
        loaded, _ = load_complex(dump_complex(self.complex))
        original = dict(self.complex.lengths())
        assert dict(loaded.lengths()) == original

    def test_reload_ball_recipe(self) -> None:
        complex_ = build_x_gamma(integers(), CharSystem(Ordinal.nat(2), 2), radius=2)
        loaded, _ = load_complex(dump_complex(complex_))
        assert loaded.recipe.ball.radius == 2
        assert loaded.recipe.char_system == CharSystem(Ordinal.nat(2), 2)
        assert loaded.recipe.descriptor.name == "Z"

    def test_reload_keeps_handles(self) -> None:
        group = cyclic(2)
        base = quotient(self.complex, group).quotient
        loaded, document = load_complex(dump_complex(base))
        assert loaded.pairings == tuple(sorted(base.pairings, key=lambda p: (p.first, p.second)))
        assert {p.handle for p in document.pairings} == {"E[0,1,1]", "E[0,1,2]"}
        assert loaded.gluing_violations() == []

    def test_frontier_ports_listed(self) -> None:
        complex_ = build_x_gamma(integers(), CharSystem(ONE, 2), radius=1)
        document = complex_document(complex_)
        assert document.frontier_ports == sorted(complex_.frontier_ports())
        assert document.frontier_ports


class TestLoadErrors:
    """Malformed complex documents raise ParseError."""

    def setup_method(self) -> None:
        self.data = json.loads(dump_complex(build_x(tower(ONE), cyclic(2), truncation=1)))

    def load(self) -> None:
        load_complex(json.dumps(self.data))

    def test_not_json(self) -> None:
        with pytest.raises(ParseError, match="Invalid complex document"):
            load_complex("{")

    def test_schema_version(self) -> None:
        self.data["schema_version"] = 2
        with pytest.raises(ParseError, match="schema_version"):
            self.load()

    def test_unknown_field(self) -> None:
        self.data["colour"] = "blue"
        with pytest.raises(ParseError):
            self.load()

    def test_bad_length(self) -> None:
        self.data["pieces"][0]["ports"][0]["length"] = "short"
        with pytest.raises(ParseError, match="not a decimal length"):
            self.load()

    def test_infinite_length(self) -> None:
        self.data["pieces"][0]["cuffs"][0] = "inf"
        with pytest.raises(ParseError, match="not finite"):
            self.load()

    def test_bad_piece(self) -> None:
        edge = next(piece for piece in self.data["pieces"] if piece["kind"] == "edge")
        edge["ports"] = edge["ports"][:1]
        with pytest.raises(ParseError, match="Invalid piece"):
            self.load()

    def test_bad_group_table(self) -> None:
        self.data["recipe"]["group"]["table"] = [[0, 0], [1, 1]]
        with pytest.raises(ValueError):
            self.load()


class TestVerdictDocument:
    """Tests for verdict documents."""

    def test_dump(self) -> None:
        document = VerdictDocument(
            seed=0, ends="cantor", genus="inf", planar_ends="0", group="countable",
            answer="Realizable", allowed_class="Countable", exactness="exact", citations=["ThmA.1"],
        )
        data = json.loads(dump_document(document))
        assert data["kind"] == "verdict"
        assert data["citations"] == ["ThmA.1"]

    def test_rejects_unknown_fields(self) -> None:
        with pytest.raises(ValueError):
            ComplexDocument(seed=0, sup_bound="1", pieces=[], pairings=[], extra=1)


class TestDot:
    """Tests for DOT export and the DOT reader."""

    def setup_method(self) -> None:
        self.complex = build_x(tower(ONE), cyclic(2), truncation=1, seed=3)
        self.text = complex_to_dot(self.complex)

    def test_header_and_footer(self) -> None:
        lines = self.text.splitlines()
        assert lines[0] == "graph complex {"
        assert lines[-1] == "}"

    def test_parses_back(self) -> None:
        graph = parse_dot(self.text)
        assert graph.name == "complex"
        assert graph.directed is False
        assert set(graph.nodes) == {piece.piece_id for piece in self.complex.pieces}
        assert len(graph.edges) == len(self.complex.pairings)

    def test_shapes(self) -> None:
        graph = parse_dot(self.text)
        assert graph.nodes["V[0]"]["shape"] == "box"
        assert graph.nodes["E[0,1,1]"]["shape"] == "ellipse"

    def test_edge_labels_are_curve_lengths(self) -> None:
        graph = parse_dot(self.text)
        for a, b, attrs in graph.edges:
            first = next(p for p in self.complex.pairings if p.curve_id == attrs["curve"])
            assert attrs["label"] == format_length(self.complex.port(first.first).length)

    def test_deterministic(self) -> None:
        assert complex_to_dot(build_x(tower(ONE), cyclic(2), truncation=1, seed=3)) == self.text

    def test_default_statements_and_comments(self) -> None:
        graph = parse_dot('digraph {\n// note\nnode [shape=box];\na -> "b c" [weight=2];\n}\n')
        assert graph.directed is True
        assert graph.edges == [("a", "b c", {"weight": "2"})]

    @pytest.mark.parametrize("text", [
        "",
        "graph g {",
        "tree g {\n}",
        "graph g {\na -> b;\n}",
        "graph g {\nsubgraph s { a }\n}",
        'graph g {\na [shape=box label];\n}',
    ])
    def test_rejects_outside_subset(self, text: str) -> None:
        with pytest.raises(ParseError):
            parse_dot(text)
