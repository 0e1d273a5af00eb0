"""Tests for the construction registry."""

import pytest

from src.builders import GammaBuilder, XBuilder, YBuilder
from src.endspace import Branch
from src.registry import ConstructionRoute, build_default_registry


class TestConstructionRegistry:
    """Tests for ConstructionRegistry."""

    def setup_method(self) -> None:
        self.registry = build_default_registry()

    def test_registered_names_in_order(self) -> None:
        assert self.registry.names() == ["X", "Y", "X_gamma"]

    def test_valid_construction(self) -> None:
        assert self.registry.is_valid("X_gamma") is True

    def test_case_insensitive(self) -> None:
        assert self.registry.is_valid("x_GAMMA") is True
        assert self.registry.get_route("y").name == "Y"

    def test_unknown_construction_raises(self) -> None:
        with pytest.raises(ValueError, match="No construction registered for: Z"):
            self.registry.get_route("Z")

    def test_correct_builder_class(self) -> None:
        assert self.registry.get_route("X").builder_class is XBuilder
        assert self.registry.get_route("Y").builder_class is YBuilder
        assert self.registry.get_route("X_gamma").builder_class is GammaBuilder

    def test_finite_groups_route_to_x(self) -> None:
        for branch in Branch:
            assert self.registry.route_for(branch, finite=True).name == "X"

    def test_infinite_self_similar_routes_to_y(self) -> None:
        assert self.registry.route_for(Branch.SELF_SIMILAR, finite=False).name == "Y"

    def test_infinite_doubly_pointed_routes_to_x_gamma(self) -> None:
        assert self.registry.route_for(Branch.DOUBLY_POINTED, finite=False).name == "X_gamma"

    def test_cross_branch_raises(self) -> None:
        with pytest.raises(ValueError, match="Cross-branch"):
            self.registry.route_for(Branch.NON_DISPLACEABLE, finite=False)

    def test_register_overrides_by_name(self) -> None:
        self.registry.register(ConstructionRoute(
            "x", YBuilder, frozenset({Branch.SELF_SIMILAR}), finite_groups=True, infinite_groups=False,
        ))
        assert self.registry.get_route("X").builder_class is YBuilder
        assert len(self.registry.names()) == 3
