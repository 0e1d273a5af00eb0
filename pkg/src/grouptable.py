"""Finite groups as Cayley tables, Cayley graphs and their automorphisms."""

from __future__ import annotations

import csv
import itertools
import json
import logging
import re
from collections import Counter, deque
from dataclasses import dataclass, field
from functools import cached_property
from pathlib import Path
from typing import Callable, Hashable, Iterable, Sequence

import networkx as nx
import numpy as np
from networkx.algorithms.isomorphism import DiGraphMatcher, categorical_edge_match

from .errors import GroupTableError, NoIdentityError, NotAssociativeError, NotLatinError, ParseError

logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class FiniteGroup:
    """A finite group given by element names and a multiplication table.

    ``table[g][h]`` is the index of ``g*h``. Instances are normally produced
    by ``validate_table`` or one of the built-in constructors, which check
    the group axioms.
    """

    names: tuple[str, ...]
    table: tuple[tuple[int, ...], ...]
    name: str = "G"
    identity: int = field(init=False)

    def __post_init__(self) -> None:
        n = len(self.names)
        for e in range(n):
            if self.table[e] == tuple(range(n)) and all(self.table[g][e] == g for g in range(n)):
                object.__setattr__(self, "identity", e)
                return
        raise NoIdentityError()

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, FiniteGroup):
            return NotImplemented
        return self.names == other.names and self.table == other.table

    def __hash__(self) -> int:
        return hash((self.names, self.table))

    def __len__(self) -> int:
        return len(self.names)

    def __repr__(self) -> str:
        return f"FiniteGroup({self.name!r}, order={self.order})"

    @property
    def order(self) -> int:
        return len(self.names)

    @cached_property
    def _index(self) -> dict[str, int]:
        return {label: i for i, label in enumerate(self.names)}

    def index(self, label: str) -> int:
        try:
            return self._index[label]
        except KeyError:
            raise KeyError(f"{label!r} is not an element of {self.name}") from None

    def mul(self, g: int, h: int) -> int:
        return self.table[g][h]

    def mul_names(self, g: str, h: str) -> str:
        return self.names[self.mul(self.index(g), self.index(h))]

    @cached_property
    def _inverses(self) -> tuple[int, ...]:
        return tuple(row.index(self.identity) for row in self.table)

    def inv(self, g: int) -> int:
        return self._inverses[g]

    def elements(self) -> range:
        return range(self.order)

    def non_identity(self) -> list[int]:
        return [g for g in self.elements() if g != self.identity]

    def element_order(self, g: int) -> int:
        x, n = g, 1
        while x != self.identity:
            x = self.mul(x, g)
            n += 1
        return n

    def order_profile(self) -> Counter[int]:
        """Multiset of element orders."""
        return Counter(self.element_order(g) for g in self.elements())

    def is_abelian(self) -> bool:
        return all(self.mul(g, h) == self.mul(h, g) for g, h in itertools.combinations(self.elements(), 2))

    def center(self) -> list[int]:
        return [g for g in self.elements() if all(self.mul(g, h) == self.mul(h, g) for h in self.elements())]

    def conjugate(self, x: int, g: int) -> int:
        """Return ``g x g^-1``."""
        return self.mul(self.mul(g, x), self.inv(g))

    def conjugacy_classes(self) -> list[frozenset[int]]:
        seen: set[int] = set()
        classes = []
        for x in self.elements():
            if x in seen:
                continue
            cls = frozenset(self.conjugate(x, g) for g in self.elements())
            seen |= cls
            classes.append(cls)
        return classes

    def subgroup_generated(self, generators: Iterable[int]) -> frozenset[int]:
        gens = list(generators)
        span = {self.identity}
        queue = deque([self.identity])
        while queue:
            x = queue.popleft()
            for s in gens:
                y = self.mul(x, s)
                if y not in span:
                    span.add(y)
                    queue.append(y)
        return frozenset(span)

    def normal_closure(self, subset: Iterable[int]) -> frozenset[int]:
        """Smallest normal subgroup containing ``subset``."""
        conjugates = {self.conjugate(x, g) for x in subset for g in self.elements()}
        return self.subgroup_generated(conjugates)

    def is_simple(self) -> bool:
        """True iff the only normal subgroups are trivial and the whole group."""
        if self.order == 1:
            return False
        return all(
            len(self.normal_closure([min(cls)])) == self.order
            for cls in self.conjugacy_classes()
            if self.identity not in cls
        )

    def generating_set(self) -> list[int]:
        """Greedy generating set, preferring elements of large order."""
        gens: list[int] = []
        span = frozenset({self.identity})
        for x in sorted(self.elements(), key=lambda g: (-self.element_order(g), g)):
            if len(span) == self.order:
                break
            if x not in span:
                gens.append(x)
                span = self.subgroup_generated(gens)
        return gens

    def as_array(self) -> np.ndarray:
        return np.asarray(self.table, dtype=np.int64)

    @staticmethod
    def from_func(
        elements: Sequence[Hashable],
        mult: Callable[[Hashable, Hashable], Hashable],
        label: Callable[[Hashable], str] = str,
        name: str = "G",
    ) -> FiniteGroup:
        """Tabulate a group from its elements and a multiplication function."""
        position = {element: i for i, element in enumerate(elements)}
        raw = [[position[mult(a, b)] for b in elements] for a in elements]
        return validate_table(raw, [label(element) for element in elements], name)


def validate_table(raw: Sequence[Sequence[int]], names: Sequence[str] | None = None, name: str = "G") -> FiniteGroup:
    """Check the group axioms on a raw index matrix.

    Checks run in order: shape and range, Latin rows and columns, two-sided
    identity, associativity over all triples.

    Raises:
        GroupTableError: If the matrix is not square or has entries out of range.
        NotLatinError: If a row or column repeats an entry.
        NoIdentityError: If no element is a two-sided identity.
        NotAssociativeError: On the first non-associative triple.
    """
    try:
        table = np.asarray(raw, dtype=np.int64)
    except (TypeError, ValueError) as exc:
        raise GroupTableError(f"Table is not an integer matrix: {exc}") from exc
    if table.ndim != 2 or table.shape[0] != table.shape[1] or table.shape[0] == 0:
        raise GroupTableError(f"Table must be a non-empty square matrix, got shape {table.shape}")
    n = table.shape[0]
    labels = tuple(str(i) for i in range(n)) if names is None else tuple(names)
    if len(labels) != n or len(set(labels)) != n:
        raise GroupTableError(f"Need {n} distinct element names, got {list(labels)}")
    if table.min() < 0 or table.max() >= n:
        raise GroupTableError(f"Table entries must lie in [0, {n})")

    expected = np.arange(n)
    for axis, matrix in (("row", table), ("column", table.T)):
        for i, line in enumerate(matrix):
            if not np.array_equal(np.sort(line), expected):
                raise NotLatinError(axis, i)

    if not any(
        np.array_equal(table[e], expected) and np.array_equal(table[:, e], expected)
        for e in range(n)
    ):
        raise NoIdentityError()

    # left[i, j, k] = (i*j)*k and right[i, j, k] = i*(j*k)
    left = table[table]
    right = table[expected[:, None, None], table[None, :, :]]
    bad = np.argwhere(left != right)
    if bad.size:
        i, j, k = bad[0]
        raise NotAssociativeError(labels[i], labels[j], labels[k])

    return FiniteGroup(labels, tuple(tuple(row) for row in table.tolist()), name)


# ---------------------------------------------------------------------------
# Built-in groups
# ---------------------------------------------------------------------------

def cyclic(n: int) -> FiniteGroup:
    if n < 1:
        raise ValueError(f"Cyclic group order must be positive, got {n}")
    return FiniteGroup.from_func(list(range(n)), lambda a, b: (a + b) % n, name=f"Z{n}")


def trivial() -> FiniteGroup:
    return FiniteGroup.from_func([0], lambda a, b: 0, label=lambda _: "e", name="trivial")


def dihedral(n: int) -> FiniteGroup:
    """Symmetries of the regular ``n``-gon, of order ``2n``."""
    if n < 1:
        raise ValueError(f"Dihedral group needs n >= 1, got {n}")

    def mult(a: tuple[int, int], b: tuple[int, int]) -> tuple[int, int]:
        (k, f), (l, g) = a, b
        return ((k + (-l if f else l)) % n, f ^ g)

    def label(element: tuple[int, int]) -> str:
        k, f = element
        rotation = "" if k == 0 else ("r" if k == 1 else f"r^{k}")
        return (rotation + ("s" if f else "")) or "e"

    elements = [(k, f) for f in (0, 1) for k in range(n)]
    return FiniteGroup.from_func(elements, mult, label, name=f"D{n}")


def _compose(p: tuple[int, ...], q: tuple[int, ...]) -> tuple[int, ...]:
    return tuple(p[i] for i in q)


def _is_even(p: tuple[int, ...]) -> bool:
    inversions = sum(1 for i, j in itertools.combinations(range(len(p)), 2) if p[i] > p[j])
    return inversions % 2 == 0


def _one_line(p: tuple[int, ...]) -> str:
    return "".join(str(i + 1) for i in p)


def symmetric(n: int) -> FiniteGroup:
    if not 1 <= n <= 5:
        raise ValueError(f"Symmetric groups are built for 1 <= n <= 5, got {n}")
    return FiniteGroup.from_func(list(itertools.permutations(range(n))), _compose, _one_line, name=f"S{n}")


def alternating(n: int) -> FiniteGroup:
    if not 1 <= n <= 5:
        raise ValueError(f"Alternating groups are built for 1 <= n <= 5, got {n}")
    elements = [p for p in itertools.permutations(range(n)) if _is_even(p)]
    return FiniteGroup.from_func(elements, _compose, _one_line, name=f"A{n}")


_UNIT_PRODUCTS = {
    ("1", "1"): (1, "1"), ("1", "i"): (1, "i"), ("1", "j"): (1, "j"), ("1", "k"): (1, "k"),
    ("i", "1"): (1, "i"), ("i", "i"): (-1, "1"), ("i", "j"): (1, "k"), ("i", "k"): (-1, "j"),
    ("j", "1"): (1, "j"), ("j", "i"): (-1, "k"), ("j", "j"): (-1, "1"), ("j", "k"): (1, "i"),
    ("k", "1"): (1, "k"), ("k", "i"): (1, "j"), ("k", "j"): (-1, "i"), ("k", "k"): (-1, "1"),
}


def quaternion() -> FiniteGroup:
    """The quaternion group Q8."""

    def mult(a: tuple[int, str], b: tuple[int, str]) -> tuple[int, str]:
        sign, unit = _UNIT_PRODUCTS[(a[1], b[1])]
        return (a[0] * b[0] * sign, unit)

    elements = [(sign, unit) for sign in (1, -1) for unit in "1ijk"]
    return FiniteGroup.from_func(
        elements, mult, lambda q: ("" if q[0] > 0 else "-") + q[1], name="Q8"
    )


def direct_product(left: FiniteGroup, right: FiniteGroup) -> FiniteGroup:
    elements = list(itertools.product(left.elements(), right.elements()))
    return FiniteGroup.from_func(
        elements,
        lambda a, b: (left.mul(a[0], b[0]), right.mul(a[1], b[1])),
        lambda x: f"({left.names[x[0]]},{right.names[x[1]]})",
        name=f"{left.name}x{right.name}",
    )


_FACTOR = re.compile(r"^(Z|D|S|A)(\d+)$|^(Q8)$")


def _factor(token: str) -> FiniteGroup:
    if token.lower() in ("trivial", "1", "e"):
        return trivial()
    match = _FACTOR.match(token.upper())
    if not match:
        raise ParseError(f"Unknown built-in group {token!r}")
    if match.group(3):
        return quaternion()
    family, n = match.group(1), int(match.group(2))
    try:
        return {"Z": cyclic, "D": dihedral, "S": symmetric, "A": alternating}[family](n)
    except ValueError as exc:
        raise ParseError(str(exc)) from exc


def builtin(name: str) -> FiniteGroup:
    """Resolve a built-in name such as ``Z2``, ``D4``, ``S3``, ``A5``, ``Q8`` or ``Z2xZ3``.

    Raises:
        ParseError: On an unknown name.
    """
    tokens = [token.strip() for token in re.split(r"[x×*]", name.strip()) if token.strip()]
    if not tokens:
        raise ParseError("Empty group name")
    group = _factor(tokens[0])
    for token in tokens[1:]:
        group = direct_product(group, _factor(token))
    if len(tokens) == 1:
        return group
    return FiniteGroup(group.names, group.table, name="x".join(tokens))


def load_table(path: Path) -> FiniteGroup:
    """Load a Cayley table from CSV or JSON.

    CSV: a header row of element names, then one row per element whose
    entries are element names or indices. JSON: ``{"names": [...],
    "table": [[...]]}``.

    Raises:
        ParseError: If the file cannot be read as a table.
        GroupTableError: If the table violates a group axiom.
    """
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise ParseError(f"Cannot read group table {path}: {exc}") from exc

    if path.suffix.lower() == ".json":
        try:
            data = json.loads(text)
            names, rows = data["names"], data["table"]
        except (json.JSONDecodeError, KeyError, TypeError) as exc:
            raise ParseError(f"Malformed group JSON {path}: {exc}") from exc
    else:
        lines = [row for row in csv.reader(text.splitlines()) if row]
        if not lines:
            raise ParseError(f"Empty group CSV {path}")
        names, rows = [cell.strip() for cell in lines[0]], [[cell.strip() for cell in row] for row in lines[1:]]

    return validate_table(_to_indices(names, rows), names, name=path.stem)


def _to_indices(names: Sequence[str], rows: Sequence[Sequence[object]]) -> list[list[int]]:
    position = {str(label): i for i, label in enumerate(names)}
    if all(str(cell) in position for row in rows for cell in row):
        return [[position[str(cell)] for cell in row] for row in rows]
    try:
        return [[int(cell) for cell in row] for row in rows]
    except (TypeError, ValueError) as exc:
        raise ParseError(f"Table entries must be element names or indices: {exc}") from exc


# ---------------------------------------------------------------------------
# Cayley graphs and automorphisms
# ---------------------------------------------------------------------------

def complete_cayley_graph(group: FiniteGroup) -> nx.DiGraph:
    """One edge ``g -> g*h`` labelled ``h`` for every ``g`` and every ``h != id``."""
    return generating_set_cayley_graph(group, group.non_identity())


def generating_set_cayley_graph(group: FiniteGroup, generators: Iterable[int]) -> nx.DiGraph:
    """One edge ``g -> g*s`` labelled ``s`` for every ``g`` and generator ``s``."""
    graph = nx.DiGraph(name=group.name)
    graph.add_nodes_from(group.names)
    labels = [s for s in generators if s != group.identity]
    for g in group.elements():
        for s in labels:
            graph.add_edge(group.names[g], group.names[group.mul(g, s)], label=group.names[s])
    return graph


def permutation_group(perms: Iterable[tuple[int, ...]], name: str = "Aut") -> FiniteGroup:
    """Tabulate a set of permutations closed under composition.

    Elements are named ``p0, p1, ...`` in lexicographic order, so ``p0`` is
    the identity.
    """
    ordered = sorted(set(perms))
    return FiniteGroup.from_func(
        ordered, _compose, lambda p: f"p{ordered.index(p)}", name=name
    )


def _automorphisms(graph: nx.DiGraph, matcher: DiGraphMatcher, name: str) -> FiniteGroup:
    nodes = sorted(graph.nodes)
    position = {node: i for i, node in enumerate(nodes)}
    perms = [
        tuple(position[mapping[node]] for node in nodes)
        for mapping in matcher.isomorphisms_iter()
    ]
    logger.debug("%s: %d automorphisms of %d-vertex graph", name, len(perms), len(nodes))
    return permutation_group(perms, name=name)


def decorated_automorphisms(graph: nx.DiGraph) -> FiniteGroup:
    """Vertex bijections preserving every directed edge and its label."""
    matcher = DiGraphMatcher(graph, graph, edge_match=categorical_edge_match("label", None))
    return _automorphisms(graph, matcher, f"Aut({graph.name or 'graph'})")


def undecorated_automorphisms(graph: nx.DiGraph) -> FiniteGroup:
    """Automorphisms of the underlying directed graph, labels forgotten."""
    return _automorphisms(graph, DiGraphMatcher(graph, graph), f"Aut0({graph.name or 'graph'})")


# ---------------------------------------------------------------------------
# Isomorphism
# ---------------------------------------------------------------------------

def _extend(source: FiniteGroup, target: FiniteGroup, gens: list[int], images: tuple[int, ...]) -> dict[int, int] | None:
    phi = {source.identity: target.identity}
    queue = deque([source.identity])
    while queue:
        x = queue.popleft()
        for s, t in zip(gens, images):
            y, image = source.mul(x, s), target.mul(phi[x], t)
            if y in phi:
                if phi[y] != image:
                    return None
            else:
                phi[y] = image
                queue.append(y)
    if len(phi) != source.order or len(set(phi.values())) != target.order:
        return None
    for g, h in itertools.product(source.elements(), repeat=2):
        if phi[source.mul(g, h)] != target.mul(phi[g], phi[h]):
            return None
    return phi


def find_isomorphism(source: FiniteGroup, target: FiniteGroup) -> dict[int, int] | None:
    """Return an isomorphism as an index map, or ``None`` if none exists.

    Invariants (order, element-order profile, center size, commutativity)
    prune first; then generator images of matching order are tried and
    extended along the Cayley graph.
    """
    if source.order != target.order:
        return None
    if source.order_profile() != target.order_profile():
        return None
    if len(source.center()) != len(target.center()) or source.is_abelian() != target.is_abelian():
        return None
    gens = source.generating_set()
    candidates = [
        [t for t in target.elements() if target.element_order(t) == source.element_order(s)]
        for s in gens
    ]
    for images in itertools.product(*candidates):
        phi = _extend(source, target, gens, images)
        if phi is not None:
            return phi
    return None


def isomorphic(left: FiniteGroup, right: FiniteGroup) -> bool:
    return find_isomorphism(left, right) is not None
