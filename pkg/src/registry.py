"""Construction registry: defines valid builder routes and guards against invalid ones."""

from dataclasses import dataclass

from .builders.base import BaseBuilder
from .builders.cayley import XBuilder
from .builders.radial import YBuilder
from .builders.two_ended import GammaBuilder
from .endspace import Branch


@dataclass(frozen=True)
class ConstructionRoute:
    """A single construction and the inputs it serves."""
    name: str                       # e.g. "X_gamma"
    builder_class: type[BaseBuilder]
    branches: frozenset[Branch]     # trichotomy branches it can realize
    finite_groups: bool
    infinite_groups: bool
    description: str = ""


class ConstructionRegistry:
    """Holds all registered constructions and validates requests."""

    def __init__(self) -> None:
        self._routes: dict[str, ConstructionRoute] = {}

    def register(self, route: ConstructionRoute) -> None:
        """Register a construction route.

        Args:
            route: The ConstructionRoute to register.
        """
        self._routes[route.name.lower()] = route

    def is_valid(self, name: str) -> bool:
        """Check if a construction is registered.

        Args:
            name: Construction name, case-insensitive.

        Returns:
            True if the construction is registered.
        """
        return name.lower() in self._routes

    def get_route(self, name: str) -> ConstructionRoute:
        """Retrieve a registered construction.

        Args:
            name: Construction name, case-insensitive.

        Returns:
            The matching ConstructionRoute.

        Raises:
            ValueError: If no construction is registered under this name.
        """
        key = name.lower()
        if key not in self._routes:
            raise ValueError(
                f"No construction registered for: {name} "
                f"(known: {', '.join(self.names())})"
            )
        return self._routes[key]

    def names(self) -> list[str]:
        """Return the registered construction names in registration order."""
        return [route.name for route in self._routes.values()]

    def route_for(self, branch: Branch, finite: bool) -> ConstructionRoute:
        """Pick the construction that realizes a group class on a branch.

        Args:
            branch: Trichotomy branch of the end space.
            finite: Whether the group is finite.

        Returns:
            The first registered route serving the combination.

        Raises:
            ValueError: If no construction covers the combination.
        """
        for route in self._routes.values():
            serves_group = route.finite_groups if finite else route.infinite_groups
            if branch in route.branches and serves_group:
                return route
        kind = "finite" if finite else "infinite"
        raise ValueError(
            f"Cross-branch construction not supported: "
            f"{branch.value} end space with a {kind} group"
        )


def build_default_registry() -> ConstructionRegistry:
    """Build and return the default registry with all supported constructions.

    Returns:
        Fully populated ConstructionRegistry.
    """
    registry = ConstructionRegistry()

    registry.register(ConstructionRoute(
        "X", XBuilder,
        frozenset(Branch), finite_groups=True, infinite_groups=False,
        description="complete Cayley graph of a finite group, vertex ends = e",
    ))
    registry.register(ConstructionRoute(
        "Y", YBuilder,
        frozenset({Branch.SELF_SIMILAR}), finite_groups=True, infinite_groups=True,
        description="radially symmetric e, vertex ends = one star part",
    ))
    registry.register(ConstructionRoute(
        "X_gamma", GammaBuilder,
        frozenset({Branch.DOUBLY_POINTED}), finite_groups=False, infinite_groups=True,
        description="two-ended group, vertex ends = w^(alpha-1) + 1",
    ))

    return registry


# Module-level singleton, import this everywhere
registry = build_default_registry()
