"""Virtually cyclic groups as string-rewriting descriptors.

A descriptor names single-character generators, their formal inverses and
a finite rewriting system whose irreducible words are the group elements.
Rules must strictly decrease words in shortlex order, which makes
reduction terminate; with a complete system the normal forms are
geodesic, so word length equals distance to the identity in the Cayley
graph.
"""

from __future__ import annotations

import json
import logging
from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from pathlib import Path

from .errors import DescriptorError, ParseError

logger = logging.getLogger(__name__)

IDENTITY = ""


@dataclass(frozen=True)
class VCGroupDescriptor:
    """Presentation-free description of a virtually cyclic group.

    Attributes:
        name: Display name.
        generators: Symmetric generating set, one character per generator.
        inverses: Pairs ``(s, s^-1)`` covering every generator.
        rules: Rewriting rules ``(lhs, rhs)``.
        two_ended_certificate: User-supplied claim that the group has two ends.
        finite_part: Free-text note on the finite quotient data.
    """

    name: str
    generators: tuple[str, ...]
    inverses: tuple[tuple[str, str], ...]
    rules: tuple[tuple[str, str], ...]
    two_ended_certificate: bool = False
    finite_part: str = ""

    def __post_init__(self) -> None:
        object.__setattr__(self, "generators", tuple(self.generators))
        object.__setattr__(self, "inverses", tuple(tuple(pair) for pair in self.inverses))
        object.__setattr__(self, "rules", tuple(tuple(rule) for rule in self.rules))
        gens = set(self.generators)
        if not self.generators or len(gens) != len(self.generators):
            raise DescriptorError(f"{self.name}: generators must be distinct and non-empty")
        if any(len(s) != 1 for s in self.generators):
            raise DescriptorError(f"{self.name}: generators must be single characters")
        mapping = dict(self.inverses)
        if set(mapping) != gens:
            raise DescriptorError(f"{self.name}: every generator needs exactly one inverse")
        for s, t in mapping.items():
            if t not in gens or mapping[t] != s:
                raise DescriptorError(f"{self.name}: generating set is not symmetric at {s!r}")
        for lhs, rhs in self.rules:
            if not lhs or set(lhs + rhs) - gens:
                raise DescriptorError(f"{self.name}: rule {lhs!r} -> {rhs!r} uses unknown letters")
            if not self._shortlex_less(rhs, lhs):
                raise DescriptorError(f"{self.name}: rule {lhs!r} -> {rhs!r} does not shorten the word")

    def _shortlex_less(self, u: str, v: str) -> bool:
        rank = {s: i for i, s in enumerate(self.generators)}
        return (len(u), [rank[c] for c in u]) < (len(v), [rank[c] for c in v])

    def inverse_letter(self, s: str) -> str:
        return dict(self.inverses)[s]

    def inverse(self, word: str) -> str:
        return self.normal_form("".join(self.inverse_letter(c) for c in reversed(word)))

    def normal_form(self, word: str) -> str:
        """Reduce ``word`` by leftmost rule application until irreducible."""
        current = word
        changed = True
        while changed:
            changed = False
            best: tuple[int, str, str] | None = None
            for lhs, rhs in self.rules:
                position = current.find(lhs)
                if position >= 0 and (best is None or position < best[0]):
                    best = (position, lhs, rhs)
            if best is not None:
                position, lhs, rhs = best
                current = current[:position] + rhs + current[position + len(lhs):]
                changed = True
        return current

    def multiply(self, g: str, h: str) -> str:
        return self.normal_form(g + h)

    def ball(self, radius: int) -> dict[str, int]:
        """Normal forms within ``radius`` of the identity, with their distance."""
        if radius < 0:
            raise ValueError(f"Radius must be non-negative, got {radius}")
        distance = {IDENTITY: 0}
        queue = deque([IDENTITY])
        while queue:
            g = queue.popleft()
            if distance[g] == radius:
                continue
            for s in self.generators:
                h = self.multiply(g, s)
                if h not in distance:
                    distance[h] = distance[g] + 1
                    queue.append(h)
        return distance

    def check_consistency(self, radius: int) -> None:
        """Look for contradictory equalities on the ball of ``radius``.

        Checks that ``s s^-1`` reduces to the identity, that right
        multiplication by ``s`` is undone by ``s^-1``, that reducing step by
        step agrees with reducing the whole word, and that normal forms have
        the length of their ball distance.

        Raises:
            DescriptorError: Naming the first contradiction found.
        """
        for s in self.generators:
            if self.normal_form(s + self.inverse_letter(s)) != IDENTITY:
                raise DescriptorError(f"{self.name}: {s}{self.inverse_letter(s)} is not trivial")
        distances = self.ball(radius)
        for g, d in distances.items():
            if len(g) != d:
                raise DescriptorError(f"{self.name}: normal form {g!r} is not geodesic (distance {d})")
            for s in self.generators:
                gs = self.multiply(g, s)
                if self.multiply(gs, self.inverse_letter(s)) != g:
                    raise DescriptorError(f"{self.name}: ({g}*{s})*{s}^-1 != {g}")
                for t in self.generators:
                    if self.multiply(gs, t) != self.normal_form(g + s + t):
                        raise DescriptorError(f"{self.name}: reductions of {g}{s}{t} disagree")
        logger.debug("%s: ball of radius %d consistent (%d elements)", self.name, radius, len(distances))

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "generators": list(self.generators),
            "inverses": dict(self.inverses),
            "rules": [list(rule) for rule in self.rules],
            "two_ended_certificate": self.two_ended_certificate,
            "finite_part": self.finite_part,
        }

    @classmethod
    def from_json(cls, data: dict) -> VCGroupDescriptor:
        try:
            return cls(
                name=str(data.get("name", "Gamma")),
                generators=tuple(data["generators"]),
                inverses=tuple(dict(data["inverses"]).items()),
                rules=tuple(tuple(rule) for rule in data["rules"]),
                two_ended_certificate=bool(data.get("two_ended_certificate", False)),
                finite_part=str(data.get("finite_part", "")),
            )
        except (KeyError, TypeError, ValueError) as exc:
            if isinstance(exc, DescriptorError):
                raise
            raise ParseError(f"Malformed group descriptor: {exc}") from exc


def integers() -> VCGroupDescriptor:
    return VCGroupDescriptor(
        name="Z",
        generators=("a", "A"),
        inverses=(("a", "A"), ("A", "a")),
        rules=(("aA", ""), ("Aa", "")),
        two_ended_certificate=True,
        finite_part="trivial",
    )


def infinite_dihedral() -> VCGroupDescriptor:
    return VCGroupDescriptor(
        name="D_inf",
        generators=("s", "t"),
        inverses=(("s", "s"), ("t", "t")),
        rules=(("ss", ""), ("tt", "")),
        two_ended_certificate=True,
        finite_part="Z2 acting by inversion",
    )


def integers_times_z2() -> VCGroupDescriptor:
    return VCGroupDescriptor(
        name="ZxZ2",
        generators=("a", "A", "t"),
        inverses=(("a", "A"), ("A", "a"), ("t", "t")),
        rules=(("aA", ""), ("Aa", ""), ("tt", ""), ("ta", "at"), ("tA", "At")),
        two_ended_certificate=True,
        finite_part="Z2",
    )


_BUILTINS = {
    "z": integers,
    "d_inf": infinite_dihedral,
    "dinf": infinite_dihedral,
    "zxz2": integers_times_z2,
    "z×z2": integers_times_z2,
}


def builtin_vc(name: str) -> VCGroupDescriptor:
    """Resolve ``Z``, ``D_inf`` or ``ZxZ2``.

    Raises:
        ParseError: On an unknown name.
    """
    try:
        return _BUILTINS[name.strip().lower().replace(" ", "")]()
    except KeyError:
        raise ParseError(f"Unknown virtually cyclic group {name!r}") from None


def load_descriptor(path: Path) -> VCGroupDescriptor:
    try:
        data = json.loads(Path(path).read_text(encoding="utf-8"))
    except (OSError, json.JSONDecodeError) as exc:
        raise ParseError(f"Cannot read group descriptor {path}: {exc}") from exc
    return VCGroupDescriptor.from_json(data)


@dataclass(frozen=True)
class GroupBall:
    """The ball of radius ``radius`` of an infinite group, materialised.

    ``elements`` are the normal forms in the ball, sorted by length and then
    shortlex. ``labels`` are the non-identity elements of the ball of twice
    the radius: every ``g^-1 h`` with ``g, h`` in the ball is one of them.
    """

    descriptor: VCGroupDescriptor
    radius: int
    elements: tuple[str, ...] = field(init=False)
    labels: tuple[str, ...] = field(init=False)

    def __post_init__(self) -> None:
        if self.radius < 1:
            raise ValueError(f"Ball radius must be at least 1, got {self.radius}")
        self.descriptor.check_consistency(2 * self.radius)
        rank = {s: i for i, s in enumerate(self.descriptor.generators)}

        def key(word: str) -> tuple[int, list[int]]:
            return (len(word), [rank[c] for c in word])

        object.__setattr__(self, "elements", tuple(sorted(self.descriptor.ball(self.radius), key=key)))
        doubled = self.descriptor.ball(2 * self.radius)
        object.__setattr__(self, "labels", tuple(sorted((w for w in doubled if w), key=key)))

    @property
    def name(self) -> str:
        return f"B({self.descriptor.name},{self.radius})"

    @property
    def identity(self) -> str:
        return IDENTITY

    @cached_property
    def _members(self) -> frozenset[str]:
        return frozenset(self.elements)

    def __contains__(self, word: str) -> bool:
        return word in self._members

    def product(self, g: str, h: str) -> str | None:
        """``g*h`` if it lies in the ball, else ``None``."""
        result = self.descriptor.multiply(g, h)
        return result if result in self._members else None

    def distance(self, g: str, h: str) -> int:
        """Word distance between two elements."""
        return len(self.descriptor.multiply(self.descriptor.inverse(g), h))

    @staticmethod
    def display(word: str) -> str:
        return word or "e"

    @staticmethod
    def word(name: str) -> str:
        """Inverse of ``display``."""
        return IDENTITY if name == "e" else name
