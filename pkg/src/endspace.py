"""Symbolic end spaces and their Cantor-Bendixson invariants.

Expressions are immutable trees built from five constructors:

* ``Singleton``: one point.
* ``DisjointUnion(parts)``: a finite disjoint union, at least two parts.
* ``OmegaSum(copy)``: countably many separated copies of ``copy`` plus one
  compactification point they accumulate at.
* ``Cantor``: the Cantor set.
* ``Tower(alpha)``: the ordinal space ``w^alpha + 1`` (``alpha >= 1``),
  the atom canonical forms are built from.

Countable expressions are classified by their characteristic system
``(alpha, degree)``: the space is homeomorphic to ``w^alpha * degree + 1``.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from enum import Enum
from typing import Any, Iterable, Iterator

from .errors import NotSelfSimilarError, ParseError, PreconditionError, UnsupportedError
from .ordinal import ONE, ZERO, Ordinal, add, format_ordinal, is_successor, parse_ordinal, pred


@dataclass(frozen=True)
class Singleton:
    def __str__(self) -> str:
        return "pt"


@dataclass(frozen=True)
class Cantor:
    def __str__(self) -> str:
        return "cantor"


@dataclass(frozen=True)
class Tower:
    """The space ``w^alpha + 1``."""

    alpha: Ordinal

    def __post_init__(self) -> None:
        if self.alpha.is_zero:
            raise ValueError("Tower(0) is a single point; use Singleton")

    def __str__(self) -> str:
        return f"tower({self.alpha})"


@dataclass(frozen=True)
class OmegaSum:
    copy: EndSpaceExpr

    def __str__(self) -> str:
        return f"omega_sum({self.copy})"


@dataclass(frozen=True)
class DisjointUnion:
    parts: tuple[EndSpaceExpr, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "parts", tuple(self.parts))
        if len(self.parts) < 2:
            raise ValueError("A disjoint union needs at least two parts")

    def __str__(self) -> str:
        return "union(" + ", ".join(str(part) for part in self.parts) + ")"


EndSpaceExpr = Singleton | DisjointUnion | OmegaSum | Cantor | Tower


def union(parts: Iterable[EndSpaceExpr]) -> EndSpaceExpr:
    """Disjoint union that collapses a single part to itself."""
    parts = tuple(parts)
    if not parts:
        raise ValueError("Empty union has no end space")
    return parts[0] if len(parts) == 1 else DisjointUnion(parts)


def tower(alpha: Ordinal) -> EndSpaceExpr:
    """Canonical atom for ``w^alpha + 1``."""
    return Singleton() if alpha.is_zero else Tower(alpha)


@dataclass(frozen=True)
class CharSystem:
    """Characteristic system ``(alpha, degree)`` of a countable end space."""

    alpha: Ordinal
    degree: int

    def __post_init__(self) -> None:
        if self.degree < 1:
            raise ValueError(f"Degree must be at least 1, got {self.degree}")

    @property
    def rank(self) -> Ordinal:
        """Cantor-Bendixson rank, ``alpha + 1``."""
        return add(self.alpha, ONE)

    def __str__(self) -> str:
        return f"({self.alpha}, {self.degree})"


# ---------------------------------------------------------------------------
# Structure predicates
# ---------------------------------------------------------------------------

def _leaves(e: EndSpaceExpr) -> Iterator[EndSpaceExpr]:
    match e:
        case DisjointUnion(parts=parts):
            for part in parts:
                yield from _leaves(part)
        case OmegaSum(copy=copy):
            yield from _leaves(copy)
        case _:
            yield e


def _flatten(parts: Iterable[EndSpaceExpr]) -> Iterator[EndSpaceExpr]:
    for part in parts:
        if isinstance(part, DisjointUnion):
            yield from _flatten(part.parts)
        else:
            yield part


def is_countable(e: EndSpaceExpr) -> bool:
    """True iff no Cantor atom occurs in ``e``."""
    return not any(isinstance(leaf, Cantor) for leaf in _leaves(e))


def is_perfect(e: EndSpaceExpr) -> bool:
    """True iff ``e`` has no isolated points, which makes it a Cantor set."""
    return all(isinstance(leaf, Cantor) for leaf in _leaves(e))


def has_cantor(e: EndSpaceExpr) -> bool:
    return not is_countable(e)


# ---------------------------------------------------------------------------
# Derivatives and characteristic systems
# ---------------------------------------------------------------------------

def derivative(e: EndSpaceExpr) -> EndSpaceExpr | None:
    """Cantor-Bendixson derivative; ``None`` stands for the empty space."""
    match e:
        case Singleton():
            return None
        case Cantor():
            return e
        case Tower(alpha=alpha):
            if alpha.is_finite:
                return tower(Ordinal.nat(alpha.as_int() - 1))
            return e
        case OmegaSum(copy=copy):
            inner = derivative(copy)
            return Singleton() if inner is None else OmegaSum(inner)
        case DisjointUnion(parts=parts):
            derived = [d for d in map(derivative, parts) if d is not None]
            return union(derived) if derived else None
    raise TypeError(f"Not an end-space expression: {e!r}")


def iterate_derivative(e: EndSpaceExpr, steps: int) -> EndSpaceExpr | None:
    """Apply ``derivative`` ``steps`` times, stopping at the empty space."""
    current: EndSpaceExpr | None = e
    for _ in range(steps):
        if current is None:
            break
        current = derivative(current)
    return current


def count_points(e: EndSpaceExpr) -> int:
    """Number of points of a finite expression.

    Raises:
        PreconditionError: If ``e`` is infinite.
    """
    match e:
        case Singleton():
            return 1
        case DisjointUnion(parts=parts):
            return sum(count_points(part) for part in parts)
    raise PreconditionError(f"{e} is not a finite space")


def _char(e: EndSpaceExpr) -> CharSystem:
    match e:
        case Singleton():
            return CharSystem(ZERO, 1)
        case Tower(alpha=alpha):
            return CharSystem(alpha, 1)
        case OmegaSum(copy=copy):
            return CharSystem(add(_char(copy).alpha, ONE), 1)
        case DisjointUnion(parts=parts):
            systems = [_char(part) for part in parts]
            top = max(system.alpha for system in systems)
            return CharSystem(top, sum(s.degree for s in systems if s.alpha == top))
    raise UnsupportedError(f"No characteristic system for {e}")


def char_system(e: EndSpaceExpr) -> CharSystem | None:
    """Return ``(alpha, degree)`` for countable ``e`` or ``None`` if uncountable."""
    if not is_countable(e):
        return None
    return _char(e)


def from_char_system(system: CharSystem) -> EndSpaceExpr:
    """Canonical expression for ``w^alpha * degree + 1``."""
    atom = tower(system.alpha)
    return atom if system.degree == 1 else DisjointUnion((atom,) * system.degree)


def _sort_key(e: EndSpaceExpr) -> str:
    return json.dumps(to_json(e), sort_keys=True)


def canonical(e: EndSpaceExpr) -> EndSpaceExpr:
    """Normal form under homeomorphism.

    Countable spaces become ``degree`` copies of ``tower(alpha)``, perfect
    spaces become ``Cantor``. Mixed spaces are normalised structurally: nested
    unions are flattened, the countable and perfect parts of a union are
    merged and parts are sorted.
    """
    if is_countable(e):
        return from_char_system(_char(e))
    if is_perfect(e):
        return Cantor()
    if isinstance(e, OmegaSum):
        return OmegaSum(canonical(e.copy))
    parts = list(_flatten(e.parts))
    countable = [part for part in parts if is_countable(part)]
    out: list[EndSpaceExpr] = []
    if countable:
        out.extend(_flatten([canonical(union(countable))]))
    if any(is_perfect(part) for part in parts):
        out.append(Cantor())
    out.extend(
        canonical(part) for part in parts
        if not is_countable(part) and not is_perfect(part)
    )
    out.sort(key=_sort_key)
    return union(out)


def homeomorphic(a: EndSpaceExpr, b: EndSpaceExpr) -> bool:
    return canonical(a) == canonical(b)


# ---------------------------------------------------------------------------
# Radial symmetry, star points, trichotomy
# ---------------------------------------------------------------------------

def is_radially_symmetric(e: EndSpaceExpr) -> bool:
    """Decide whether ``e`` has a star point.

    For countable spaces this is exactly degree 1. Perfect spaces and every
    ``OmegaSum`` are radially symmetric. A mixed union is radially symmetric
    when it is a single ``OmegaSum`` whose copy contains a Cantor atom, next to
    perfect parts that the copy absorbs.
    """
    if is_countable(e):
        return _char(e).degree == 1
    if is_perfect(e) or isinstance(e, OmegaSum):
        return True
    if not isinstance(e, DisjointUnion):
        return False
    non_perfect = [part for part in _flatten(e.parts) if not is_perfect(part)]
    if len(non_perfect) != 1:
        return False
    (core,) = non_perfect
    return isinstance(core, OmegaSum) and has_cantor(core.copy)


def is_self_similar(e: EndSpaceExpr) -> bool:
    """Self-similarity and radial symmetry coincide on the grammar."""
    return is_radially_symmetric(e)


@dataclass(frozen=True)
class StarPoint:
    """Descriptor of the distinguished end ``x``."""

    rank: Ordinal | None
    description: str


@dataclass(frozen=True)
class StarDecomposition:
    """``e`` minus its star point as a sequence of homeomorphic pieces.

    Attributes:
        star: The star point.
        part_closure: ``E_n`` together with the star point, homeomorphic to ``e``.
        piece: The clopen piece repeated around the star, if the pieces are
            all copies of one compact set. ``None`` when the rank exponent is
            a limit ordinal and the pieces grow in rank.
    """

    star: StarPoint
    part_closure: EndSpaceExpr
    piece: EndSpaceExpr | None


def star_decomposition(e: EndSpaceExpr) -> StarDecomposition:
    """Split a self-similar space around its star point.

    Raises:
        NotSelfSimilarError: If ``e`` is a single point or not self-similar.
    """
    if isinstance(e, Singleton) or not is_self_similar(e):
        raise NotSelfSimilarError(f"{e} has no star decomposition")
    if is_countable(e):
        system = _char(e)
        if system.alpha.is_zero:
            raise NotSelfSimilarError(f"{e} is a single point")
        piece = tower(pred(system.alpha)) if is_successor(system.alpha) else None
        return StarDecomposition(
            star=StarPoint(system.alpha, "unique point of the top derivative"),
            part_closure=tower(system.alpha),
            piece=piece,
        )
    if is_perfect(e):
        return StarDecomposition(
            star=StarPoint(None, "any point of the Cantor set"),
            part_closure=Cantor(),
            piece=Cantor(),
        )
    core = e if isinstance(e, OmegaSum) else next(
        part for part in _flatten(e.parts) if not is_perfect(part)
    )
    return StarDecomposition(
        star=StarPoint(None, "compactification point"),
        part_closure=canonical(e),
        piece=canonical(core.copy),
    )


class Branch(Enum):
    SELF_SIMILAR     = "self_similar"
    DOUBLY_POINTED   = "doubly_pointed"
    NON_DISPLACEABLE = "non_displaceable"


class AlphaKind(Enum):
    ZERO      = "zero"
    SUCCESSOR = "successor"
    LIMIT     = "limit"


def alpha_kind(alpha: Ordinal) -> AlphaKind:
    if alpha.is_zero:
        return AlphaKind.ZERO
    return AlphaKind.SUCCESSOR if is_successor(alpha) else AlphaKind.LIMIT


@dataclass(frozen=True)
class Trichotomy:
    branch: Branch
    alpha_kind: AlphaKind | None = None

    def __str__(self) -> str:
        if self.alpha_kind is None:
            return self.branch.value
        return f"{self.branch.value}{{{self.alpha_kind.value}}}"


def trichotomy_of(system: CharSystem) -> Trichotomy:
    """Trichotomy branch of the countable space with the given system."""
    if system.degree == 1:
        return Trichotomy(Branch.SELF_SIMILAR)
    if system.degree == 2:
        return Trichotomy(Branch.DOUBLY_POINTED, alpha_kind(system.alpha))
    return Trichotomy(Branch.NON_DISPLACEABLE)


def trichotomy(e: EndSpaceExpr) -> Trichotomy:
    """Self-similar, doubly pointed or non-displaceable.

    Raises:
        UnsupportedError: For mixed expressions with both a Cantor atom and
            isolated points.
    """
    if is_countable(e):
        return trichotomy_of(_char(e))
    if is_perfect(e):
        return Trichotomy(Branch.SELF_SIMILAR)
    raise UnsupportedError(f"Trichotomy is not decided for mixed space {e}")


# ---------------------------------------------------------------------------
# JSON and text
# ---------------------------------------------------------------------------

def to_json(e: EndSpaceExpr) -> dict[str, Any]:
    match e:
        case Singleton():
            return {"type": "singleton"}
        case Cantor():
            return {"type": "cantor"}
        case Tower(alpha=alpha):
            return {"type": "tower", "alpha": format_ordinal(alpha)}
        case OmegaSum(copy=copy):
            return {"type": "omega_sum", "copy": to_json(copy)}
        case DisjointUnion(parts=parts):
            return {"type": "union", "parts": [to_json(part) for part in parts]}
    raise TypeError(f"Not an end-space expression: {e!r}")


def from_json(data: Any) -> EndSpaceExpr:
    """Decode the JSON encoding of an expression.

    Raises:
        ParseError: On unknown types or missing fields.
    """
    if not isinstance(data, dict) or "type" not in data:
        raise ParseError(f"End-space JSON must be an object with a 'type': {data!r}")
    kind = data["type"]
    try:
        if kind == "singleton":
            return Singleton()
        if kind == "cantor":
            return Cantor()
        if kind == "tower":
            return tower(parse_ordinal(str(data["alpha"])))
        if kind == "omega_sum":
            return OmegaSum(from_json(data["copy"]))
        if kind == "union":
            parts = data["parts"]
            if not isinstance(parts, list) or not parts:
                raise ParseError("Union 'parts' must be a non-empty list")
            return union(from_json(part) for part in parts)
    except KeyError as exc:
        raise ParseError(f"Missing field {exc} in {kind!r} end space") from exc
    raise ParseError(f"Unknown end-space type {kind!r}")


def parse_end_space(text: str) -> EndSpaceExpr:
    """Parse CLI input: ``cantor``, a JSON object, or the shorthand ``w^a*d+1``.

    The shorthand names the characteristic system ``(a, d)`` and parses
    straight to canonical form; ``1`` is the single point.

    Raises:
        ParseError: On malformed input.
    """
    stripped = text.strip()
    if not stripped:
        raise ParseError("Empty end-space expression")
    if stripped.lower() == "cantor":
        return Cantor()
    if stripped.startswith("{"):
        try:
            return from_json(json.loads(stripped))
        except json.JSONDecodeError as exc:
            raise ParseError(f"Invalid end-space JSON: {exc}") from exc
    value = parse_ordinal(stripped)
    if not is_successor(value):
        raise ParseError(f"End-space shorthand must end in '+ 1', got {stripped!r}")
    body = pred(value)
    if body.is_zero:
        return Singleton()
    return from_char_system(CharSystem(body.leading_exponent, body.leading_coefficient))


def describe(e: EndSpaceExpr) -> str:
    """Human-readable summary used in text output."""
    system = char_system(e)
    if system is not None:
        return f"countable, char system {system}"
    if is_perfect(e):
        return "Cantor set"
    return str(canonical(e))

