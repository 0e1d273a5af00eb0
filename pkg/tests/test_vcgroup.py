"""Tests for virtually cyclic group descriptors and balls."""

import json

import pytest

from src.errors import DescriptorError, ParseError
from src.vcgroup import (
    GroupBall,
    VCGroupDescriptor,
    builtin_vc,
    infinite_dihedral,
    integers,
    integers_times_z2,
    load_descriptor,
)


class TestNormalForms:
    """Tests for rewriting to normal form."""

    def test_free_cancellation(self) -> None:
        z = integers()
        assert z.normal_form("aAa") == "a"
        assert z.normal_form("AAaaa") == "a"

    def test_involutions_cancel(self) -> None:
        assert infinite_dihedral().normal_form("stts") == ""
        assert infinite_dihedral().normal_form("stst") == "stst"

    def test_torsion_letter_moves_right(self) -> None:
        g = integers_times_z2()
        assert g.normal_form("tat") == "a"
        assert g.multiply("ta", "A") == "t"

    def test_inverse(self) -> None:
        g = integers_times_z2()
        for word in ("a", "at", "AAt", ""):
            assert g.multiply(word, g.inverse(word)) == ""
        assert infinite_dihedral().inverse("st") == "ts"


class TestBalls:
    """Tests for ball enumeration."""

    @pytest.mark.parametrize("radius", [0, 1, 2, 5])
    def test_two_ended_balls_grow_linearly(self, radius: int) -> None:
        assert len(integers().ball(radius)) == 2 * radius + 1
        assert len(infinite_dihedral().ball(radius)) == 2 * radius + 1

    @pytest.mark.parametrize("radius", [1, 2, 3])
    def test_z_times_z2_ball(self, radius: int) -> None:
        assert len(integers_times_z2().ball(radius)) == 4 * radius

    def test_distances_are_word_lengths(self) -> None:
        for word, distance in integers_times_z2().ball(4).items():
            assert len(word) == distance

    def test_negative_radius(self) -> None:
        with pytest.raises(ValueError, match="non-negative"):
            integers().ball(-1)

    @pytest.mark.parametrize("factory", [integers, infinite_dihedral, integers_times_z2])
    def test_builtins_are_consistent(self, factory) -> None:
        factory().check_consistency(6)


class TestDescriptorValidation:
    """Tests for descriptor construction errors."""

    def test_multi_character_generator(self) -> None:
        with pytest.raises(DescriptorError, match="single characters"):
            VCGroupDescriptor("G", ("ab",), (("ab", "ab"),), ())

    def test_repeated_generator(self) -> None:
        with pytest.raises(DescriptorError, match="distinct"):
            VCGroupDescriptor("G", ("a", "a"), (("a", "a"),), ())

    def test_asymmetric_inverses(self) -> None:
        with pytest.raises(DescriptorError, match="not symmetric"):
            VCGroupDescriptor("G", ("a", "b"), (("a", "b"), ("b", "b")), ())

    def test_unknown_letter_in_rule(self) -> None:
        with pytest.raises(DescriptorError, match="unknown letters"):
            VCGroupDescriptor("G", ("a", "A"), (("a", "A"), ("A", "a")), (("ab", ""),))

    def test_lengthening_rule(self) -> None:
        with pytest.raises(DescriptorError, match="does not shorten"):
            VCGroupDescriptor("G", ("a", "A"), (("a", "A"), ("A", "a")), (("a", "aa"),))

    def test_missing_cancellation_is_caught(self) -> None:
        g = VCGroupDescriptor("G", ("a", "A"), (("a", "A"), ("A", "a")), (("aA", ""),))
        with pytest.raises(DescriptorError, match="Aa is not trivial"):
            g.check_consistency(2)


class TestJson:
    """Tests for descriptor JSON files."""

    def test_round_trip(self) -> None:
        g = integers_times_z2()
        assert VCGroupDescriptor.from_json(json.loads(json.dumps(g.to_json()))) == g

    def test_missing_key(self) -> None:
        with pytest.raises(ParseError, match="Malformed"):
            VCGroupDescriptor.from_json({"generators": ["a"]})

    def test_invalid_descriptor_keeps_its_error(self) -> None:
        data = integers().to_json()
        data["rules"] = [["a", "aa"]]
        with pytest.raises(DescriptorError):
            VCGroupDescriptor.from_json(data)

    def test_load_descriptor(self, tmp_path) -> None:
        path = tmp_path / "dinf.json"
        path.write_text(json.dumps(infinite_dihedral().to_json()), encoding="utf-8")
        assert load_descriptor(path).name == "D_inf"

    def test_load_unreadable(self, tmp_path) -> None:
        path = tmp_path / "broken.json"
        path.write_text("{", encoding="utf-8")
        with pytest.raises(ParseError, match="Cannot read"):
            load_descriptor(path)

    @pytest.mark.parametrize("name, expected", [("Z", "Z"), ("D_inf", "D_inf"), ("dinf", "D_inf"), ("Z x Z2", "ZxZ2")])
    def test_builtin_names(self, name: str, expected: str) -> None:
        assert builtin_vc(name).name == expected

    def test_unknown_builtin(self) -> None:
        with pytest.raises(ParseError, match="Unknown virtually cyclic"):
            builtin_vc("F2")


class TestGroupBall:
    """Tests for GroupBall."""

    def setup_method(self) -> None:
        self.ball = GroupBall(integers(), 2)

    def test_elements_sorted_shortlex(self) -> None:
        assert self.ball.elements == ("", "a", "A", "aa", "AA")

    def test_labels_cover_doubled_ball(self) -> None:
        assert len(self.ball.labels) == 8
        assert "" not in self.ball.labels

    def test_name(self) -> None:
        assert self.ball.name == "B(Z,2)"

    def test_product_leaves_ball(self) -> None:
        assert self.ball.product("aa", "a") is None
        assert self.ball.product("a", "A") == ""

    def test_distance(self) -> None:
        assert self.ball.distance("a", "A") == 2
        assert self.ball.distance("aa", "aa") == 0

    def test_display_round_trip(self) -> None:
        assert self.ball.display("") == "e"
        assert self.ball.word("e") == ""
        assert self.ball.word(self.ball.display("AA")) == "AA"

    def test_membership(self) -> None:
        assert "AA" in self.ball
        assert "aaa" not in self.ball

    def test_radius_below_one(self) -> None:
        with pytest.raises(ValueError, match="at least 1"):
            GroupBall(integers(), 0)
