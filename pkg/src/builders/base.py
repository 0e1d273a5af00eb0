"""Abstract base class for all complex builders."""

from __future__ import annotations

from abc import ABC, abstractmethod
from dataclasses import dataclass
from typing import ClassVar

import numpy as np

from ..complex import Construction, GluingComplex
from ..config import DEFAULT_RADIUS, DEFAULT_SEED, DEFAULT_TRUNCATION
from ..endspace import CharSystem, EndSpaceExpr
from ..errors import TruncationTooSmallError
from ..grouptable import FiniteGroup
from ..hypgeom import ASINH1
from ..vcgroup import GroupBall, VCGroupDescriptor


@dataclass(frozen=True)
class BuildRequest:
    """Inputs shared by every construction.

    Attributes:
        end_space: The end space to realize.
        group: A finite group, an infinite group descriptor or an already
            materialised ball.
        truncation: Boundary depth ``M`` (edge pieces per label).
        radius: Ball radius for infinite groups.
        seed: Seed for cuff lengths and twists.
        char_system: Required by the two-ended construction.
    """

    end_space: EndSpaceExpr
    group: FiniteGroup | VCGroupDescriptor | GroupBall
    truncation: int = DEFAULT_TRUNCATION
    radius: int = DEFAULT_RADIUS
    seed: int = DEFAULT_SEED
    char_system: CharSystem | None = None


def boundary_length(k: int) -> float:
    """Injective boundary-length assignment into ``(0, asinh 1)``.

    Strictly increasing in ``k >= 1``; the dyadic term keeps neighbouring
    values apart in floating point.
    """
    if k < 1:
        raise ValueError(f"Boundary index starts at 1, got {k}")
    return ASINH1 / 2.0 - ASINH1 / (k + 2) + ASINH1 * 2.0 ** -(k + 9)


class BaseBuilder(ABC):
    """Abstract base class that all builders must implement."""

    construction: ClassVar[Construction]

    @abstractmethod
    def build(self, request: BuildRequest) -> GluingComplex:
        """Build the truncated complex for a request.

        Args:
            request: The construction inputs.

        Returns:
            The gluing complex, with its recipe attached.

        Raises:
            BuildError: If the request violates a precondition of the
                construction.
        """

    def check_truncation(self, request: BuildRequest) -> None:
        if request.truncation < 1:
            raise TruncationTooSmallError(f"Truncation depth must be at least 1, got {request.truncation}")
        if not isinstance(request.group, FiniteGroup) and request.radius < 1:
            raise TruncationTooSmallError(f"Ball radius must be at least 1, got {request.radius}")

    @staticmethod
    def rng(seed: int) -> np.random.Generator:
        return np.random.default_rng(seed)

    @staticmethod
    def vertex_cuffs(rng: np.random.Generator, count: int) -> tuple[float, ...]:
        """Pairwise distinct interior cuff lengths in ``(asinh 1, 2 asinh 1)``, shuffled."""
        values = ASINH1 + ASINH1 * np.arange(1, count + 1) / (count + 1)
        return tuple(float(v) for v in rng.permutation(values))

    @staticmethod
    def edge_cuffs() -> tuple[float, float]:
        return (ASINH1, ASINH1)

    @staticmethod
    def twist(rng: np.random.Generator) -> float:
        return float(rng.uniform(-0.5, 0.5))

    @staticmethod
    def materialize(request: BuildRequest) -> GroupBall:
        if isinstance(request.group, GroupBall):
            return request.group
        return GroupBall(request.group, request.radius)
