"""Tests for gluing complexes: automorphisms, quotients, end spaces."""

from dataclasses import replace

import pytest

from src.builders import build_x, build_x_gamma, build_y
from src.complex import (
    GluingComplex,
    complex_automorphisms,
    complex_end_space,
    connectivity_shadow,
    decoration_graph,
    one_endedness_shadow,
    quotient,
)
from src.endspace import Cantor, CharSystem, Singleton, canonical, from_char_system, homeomorphic, tower, union
from src.errors import ActionNotDecorationPreservingError, PreconditionError, UnknownRecipeError
from src.grouptable import builtin, cyclic, isomorphic, symmetric, trivial
from src.ordinal import ONE, ZERO, Ordinal
from src.vcgroup import integers


class TestAutomorphisms:
    """The isometry group of an X complex is the group it was built from."""

    @pytest.mark.parametrize("name", ["Z2", "Z3", "Z4", "Z2xZ2", "S3"])
    def test_recovers_group(self, name: str) -> None:
        group = builtin(name)
        complex_ = build_x(tower(ONE), group, truncation=1)
        assert isomorphic(complex_automorphisms(complex_), group)

    def test_cantor_vertices(self) -> None:
        group = cyclic(3)
        assert isomorphic(complex_automorphisms(build_y(Cantor(), group, truncation=1)), group)

    def test_decoration_graph_shape(self) -> None:
        complex_ = build_x(tower(ONE), cyclic(2), truncation=2)
        graph = decoration_graph(complex_)
        assert graph.number_of_nodes() == 6
        assert graph.number_of_edges() == 8


class TestQuotient:
    """Tests for the deck-group quotient."""

    def setup_method(self) -> None:
        self.group = cyclic(2)
        self.complex = build_x(tower(ONE), self.group, truncation=2)

    def test_edge_orbits_become_handles(self) -> None:
        base = quotient(self.complex, self.group).quotient
        assert [piece.piece_id for piece in base.pieces] == ["V[0]"]
        assert len(base.pairings) == 2
        assert all(pairing.is_handle for pairing in base.pairings)
        ends = {(p.first, p.second) for p in base.pairings}
        assert ends == {("V[0]:d(1,2)", "V[0]:d(1,1)"), ("V[0]:d(1,4)", "V[0]:d(1,3)")}

    def test_handle_keeps_twist_and_lengths(self) -> None:
        base = quotient(self.complex, self.group).quotient
        handle = next(p for p in base.pairings if p.first == "V[0]:d(1,4)")
        assert handle.handle == "E[0,1,2]"
        glued = next(p for p in self.complex.pairings if p.first == "V[0]:d(1,4)")
        assert handle.twist == glued.twist
        assert base.port(handle.first).length == self.complex.port("V[0]:d(1,4)").length

    def test_one_handle_per_edge_orbit_for_s3(self) -> None:
        group = symmetric(3)
        base = quotient(build_x(Cantor(), group, truncation=1), group).quotient
        assert len(base.pieces) == 1
        assert len(base.pairings) == 5
        assert all(owner == base.pieces[0].piece_id for p in base.pairings
                   for owner in (base.owner_of(p.first).piece_id, base.owner_of(p.second).piece_id))

    def test_trivial_group_is_identity(self) -> None:
        complex_ = build_x(tower(ONE), trivial(), truncation=2)
        base = quotient(complex_, trivial()).quotient
        assert base.pieces == complex_.pieces
        assert base.pairings == complex_.pairings

    def test_action_is_free(self) -> None:
        cover = quotient(self.complex, self.group)
        assert cover.deck_action[("1", "V[0]")] == "V[1]"
        assert cover.deck_action[("1", "E[1,1,2]")] == "E[0,1,2]"

    def test_recipe_marks_quotient(self) -> None:
        base = quotient(self.complex, self.group).quotient
        assert base.recipe.deck_quotient is True
        assert base.gluing_violations() == []

    def test_handles_still_checked_for_double_use(self) -> None:
        base = quotient(self.complex, self.group).quotient
        doubled = replace(base, pairings=base.pairings + (base.pairings[0],))
        assert any("paired twice" in problem for problem in doubled.gluing_violations())

    @pytest.mark.parametrize(
        "e",
        [Singleton(), tower(ONE), tower(Ordinal.nat(2)), from_char_system(CharSystem(ONE, 2)), Cantor()],
    )
    def test_round_trip_end_space(self, e) -> None:
        for group in (cyclic(2), cyclic(3)):
            base = quotient(build_x(e, group, truncation=2), group).quotient
            assert homeomorphic(complex_end_space(base), canonical(e))

    def test_foreign_group(self) -> None:
        with pytest.raises(ActionNotDecorationPreservingError, match="not an element"):
            quotient(build_x(tower(ONE), cyclic(3), truncation=1), cyclic(2))

    def test_broken_twist(self) -> None:
        pairings = list(self.complex.pairings)
        pairings[0] = replace(pairings[0], twist=pairings[0].twist + 0.25)
        tampered = replace(self.complex, pairings=tuple(pairings))
        with pytest.raises(ActionNotDecorationPreservingError, match="breaks the pairing"):
            quotient(tampered, self.group)


class TestEndSpace:
    """Tests for complex_end_space."""

    def test_ideal_x(self) -> None:
        e = union([tower(ONE), Singleton()])
        assert complex_end_space(build_x(e, cyclic(2), truncation=1)) == canonical(e)

    def test_truncated_collects_vertex_ends(self) -> None:
        complex_ = build_x(tower(ONE), cyclic(3), truncation=1)
        truncated = complex_end_space(complex_, ideal=False)
        assert homeomorphic(truncated, from_char_system(CharSystem(ONE, 3)))

    def test_ideal_x_gamma_is_doubly_pointed(self) -> None:
        complex_ = build_x_gamma(integers(), CharSystem(Ordinal.nat(2), 2), radius=2)
        assert complex_end_space(complex_) == from_char_system(CharSystem(Ordinal.nat(2), 2))

    def test_truncated_x_gamma_adds_group_ends(self) -> None:
        complex_ = build_x_gamma(integers(), CharSystem(ONE, 2), radius=1)
        truncated = complex_end_space(complex_, ideal=False)
        assert homeomorphic(truncated, from_char_system(CharSystem(ZERO, 5)))

    def test_x_over_infinite_group_is_one_ended(self) -> None:
        complex_ = build_x(tower(ONE), integers(), truncation=1, radius=1)
        assert complex_end_space(complex_) == Singleton()

    def test_no_recipe(self) -> None:
        with pytest.raises(UnknownRecipeError):
            complex_end_space(GluingComplex((), ()))


class TestConnectivityShadow:
    """Tests for the combinatorial one-endedness shadow."""

    def test_complete_cayley_ball_stays_connected(self) -> None:
        complex_ = build_x(tower(ONE), integers(), truncation=2, radius=3)
        reports = one_endedness_shadow(complex_, 1)
        assert len(reports) == 7
        assert all(report.connected for report in reports)
        assert reports[0].kind == "combinatorial shadow"

    def test_line_splits(self) -> None:
        complex_ = build_x_gamma(integers(), CharSystem(ONE, 2), radius=3)
        report = connectivity_shadow(complex_, "e", 1)
        assert report.connected is False
        assert "V[e]" in report.removed

    def test_needs_a_ball(self) -> None:
        with pytest.raises(PreconditionError, match="group ball"):
            connectivity_shadow(build_x(tower(ONE), cyclic(2)), "0", 1)
