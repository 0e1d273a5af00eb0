"""Realizability of groups as isometry groups of complete hyperbolic metrics.

Given the topology of a surface (genus, end space, planar ends) and a
class of groups, ``realizable`` answers whether some complete hyperbolic
metric has exactly that isometry group. Answers cite the statement they
rest on with stable tags such as ``ThmB.1`` or ``Prop9.1``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

from .builders import CORNER_CASE_ALPHA_ZERO, BuildRequest
from .complex import GluingComplex, complex_automorphisms
from .endspace import (
    AlphaKind,
    Branch,
    CharSystem,
    EndSpaceExpr,
    Trichotomy,
    char_system,
    from_char_system,
    is_perfect,
    is_self_similar,
    trichotomy,
    trichotomy_of,
)
from .errors import GenusTooSmallError, OutOfScopeError, PreconditionError, UnsupportedError
from .grouptable import FiniteGroup, isomorphic
from .registry import registry


class GroupClass(Enum):
    """Allowed isometry-group classes, ordered by inclusion."""
    FINITE           = "Finite"
    VIRTUALLY_CYCLIC = "VirtuallyCyclic"
    COUNTABLE        = "Countable"

    @property
    def rank(self) -> int:
        return list(GroupClass).index(self)


class GroupTag(Enum):
    FINITE              = "finite"
    VIRTUALLY_CYCLIC    = "vc"
    COUNTABLE_INFINITE  = "countable"
    UNCOUNTABLE         = "uncountable"

    @property
    def smallest_class(self) -> GroupClass | None:
        """Least allowed class containing every group with this tag."""
        return {
            GroupTag.FINITE: GroupClass.FINITE,
            GroupTag.VIRTUALLY_CYCLIC: GroupClass.VIRTUALLY_CYCLIC,
            GroupTag.COUNTABLE_INFINITE: GroupClass.COUNTABLE,
            GroupTag.UNCOUNTABLE: None,
        }[self]

    def fits(self, allowed: GroupClass) -> bool:
        needed = self.smallest_class
        return needed is not None and needed.rank <= allowed.rank


class Answer(Enum):
    REALIZABLE     = "Realizable"
    NOT_REALIZABLE = "NotRealizable"
    OUT_OF_SCOPE   = "OutOfScope"
    INCONCLUSIVE   = "Inconclusive"


class Exactness(Enum):
    EXACT            = "exact"
    UPPER_BOUND_ONLY = "upper_bound_only"


@dataclass(frozen=True)
class GroupClassDescriptor:
    """A class of groups, optionally pinned to one finite group or order.

    ``COUNTABLE_INFINITE`` means a countable infinite group that is not
    virtually cyclic.
    """

    tag: GroupTag
    group: FiniteGroup | None = None
    order: int | None = None

    def __post_init__(self) -> None:
        if (self.group is not None or self.order is not None) and self.tag is not GroupTag.FINITE:
            raise ValueError("Only the finite tag can carry a group or an order")
        if self.group is not None and self.order is not None and self.group.order != self.order:
            raise ValueError(f"Order {self.order} does not match |{self.group.name}| = {self.group.order}")
        if self.order is not None and self.order < 1:
            raise ValueError(f"Group order must be positive, got {self.order}")

    @classmethod
    def finite(cls, group: FiniteGroup | int | None = None) -> GroupClassDescriptor:
        if isinstance(group, FiniteGroup):
            return cls(GroupTag.FINITE, group=group)
        return cls(GroupTag.FINITE, order=group)

    @property
    def group_order(self) -> int | None:
        return self.group.order if self.group is not None else self.order

    def __str__(self) -> str:
        if self.group is not None:
            return f"finite {self.group.name}"
        if self.order is not None:
            return f"finite of order {self.order}"
        return self.tag.value


@dataclass(frozen=True)
class SurfaceDescriptor:
    """Topology of an orientable 2-manifold.

    ``ends`` is an expression, a characteristic system, or a trichotomy
    branch asserted by the user for end spaces outside the expression
    grammar. ``genus`` and ``planar_ends`` take ``math.inf``.
    """

    ends: EndSpaceExpr | CharSystem | Branch | Trichotomy
    genus: float = math.inf
    planar_ends: float = 0

    def __post_init__(self) -> None:
        if self.genus != math.inf and (self.genus < 0 or int(self.genus) != self.genus):
            raise ValueError(f"Genus must be a non-negative integer or inf, got {self.genus}")
        if self.planar_ends != math.inf and (self.planar_ends < 0 or int(self.planar_ends) != self.planar_ends):
            raise ValueError(f"Planar end count must be a non-negative integer or inf, got {self.planar_ends}")

    @property
    def infinite_genus(self) -> bool:
        return self.genus == math.inf


@dataclass(frozen=True)
class Verdict:
    answer: Answer
    allowed_class: GroupClass | None
    citations: tuple[str, ...]
    notes: tuple[str, ...] = ()
    exactness: Exactness = Exactness.EXACT
    flags: tuple[str, ...] = ()


@dataclass(frozen=True)
class _Allowance:
    allowed: GroupClass | None
    citations: tuple[str, ...]
    exactness: Exactness = Exactness.EXACT
    flags: tuple[str, ...] = ()
    notes: tuple[str, ...] = ()


def _countable_allowance(system: CharSystem) -> _Allowance:
    branch = trichotomy_of(system)
    if branch.branch is Branch.SELF_SIMILAR:
        cites = ("ThmB.1", "Thm3.12") if system.alpha.is_zero else ("ThmB.1",)
        return _Allowance(GroupClass.COUNTABLE, cites)
    if branch.branch is Branch.NON_DISPLACEABLE:
        return _Allowance(GroupClass.FINITE, ("ThmB.3", "Lem4.1", "Thm4.3"))
    if branch.alpha_kind is AlphaKind.ZERO:
        return _Allowance(
            GroupClass.VIRTUALLY_CYCLIC,
            ("Thm4.13",),
            flags=(CORNER_CASE_ALPHA_ZERO,),
            notes=("two-ended surface: the constructive blueprint w^(alpha-1) + 1 is degenerate at alpha = 0",),
        )
    if branch.alpha_kind is AlphaKind.SUCCESSOR:
        return _Allowance(GroupClass.VIRTUALLY_CYCLIC, ("ThmB.2", "Thm4.16(i)"))
    return _Allowance(GroupClass.FINITE, ("ThmB.3", "Thm4.16(ii)"))


def _branch_allowance(branch: Branch) -> _Allowance:
    if branch is Branch.SELF_SIMILAR:
        return _Allowance(GroupClass.COUNTABLE, ("ThmA.1",))
    if branch is Branch.DOUBLY_POINTED:
        return _Allowance(
            GroupClass.VIRTUALLY_CYCLIC,
            ("ThmA.2",),
            exactness=Exactness.UPPER_BOUND_ONLY,
            notes=("only the virtually cyclic upper bound is known for this end space",),
        )
    return _Allowance(GroupClass.FINITE, ("ThmA.3",))


def _allowance(ends: EndSpaceExpr | CharSystem | Branch | Trichotomy) -> _Allowance:
    if isinstance(ends, CharSystem):
        return _countable_allowance(ends)
    if isinstance(ends, Trichotomy):
        return _branch_allowance(ends.branch)
    if isinstance(ends, Branch):
        return _branch_allowance(ends)
    system = char_system(ends)
    if system is not None:
        return _countable_allowance(system)
    if is_perfect(ends) or is_self_similar(ends):
        return _Allowance(GroupClass.COUNTABLE, ("ThmA.1",))
    return _Allowance(
        None,
        ("ThmA",),
        notes=("uncountable end space that is neither perfect nor self-similar lies outside the decided region",),
    )


def _finite_group_verdict(
    answer: Answer, allowance: _Allowance, group: GroupClassDescriptor
) -> Verdict:
    citations = allowance.citations
    if answer is Answer.REALIZABLE and group.tag is GroupTag.FINITE:
        citations = citations + ("Thm3.9",)
    return Verdict(answer, allowance.allowed, citations, allowance.notes, allowance.exactness, allowance.flags)


def realizable(surface: SurfaceDescriptor, group: GroupClassDescriptor) -> Verdict:
    """Decide whether a group class is realizable as an isometry group.

    Infinite genus with no planar ends is decided by the end space; finite
    genus and planar ends are routed to the obstruction rules.
    """
    if not surface.infinite_genus:
        return _finite_genus_verdict(surface, group)
    if surface.planar_ends:
        return _planar_verdict(surface, group)

    allowance = _allowance(surface.ends)
    if allowance.allowed is None:
        return Verdict(Answer.OUT_OF_SCOPE, None, allowance.citations, allowance.notes)

    fits = group.tag.fits(allowance.allowed)
    if not fits:
        notes = allowance.notes
        if group.tag is GroupTag.UNCOUNTABLE:
            notes = notes + ("isometry groups of hyperbolic surfaces are countable",)
        return Verdict(
            Answer.NOT_REALIZABLE, allowance.allowed, allowance.citations, notes, Exactness.EXACT, allowance.flags
        )
    if allowance.exactness is Exactness.UPPER_BOUND_ONLY and group.tag is not GroupTag.FINITE:
        return Verdict(
            Answer.INCONCLUSIVE, allowance.allowed, allowance.citations,
            allowance.notes, allowance.exactness, allowance.flags,
        )
    return _finite_group_verdict(Answer.REALIZABLE, allowance, group)


def _finite_genus_verdict(surface: SurfaceDescriptor, group: GroupClassDescriptor) -> Verdict:
    genus = int(surface.genus)
    if group.tag is not GroupTag.FINITE:
        if genus == 0:
            return Verdict(
                Answer.OUT_OF_SCOPE, None, ("Prop9.1",),
                ("planar surfaces can carry infinite isometry groups",),
            )
        return Verdict(
            Answer.NOT_REALIZABLE, GroupClass.FINITE, ("Lem4.2",),
            ("a compact genus subsurface is non-displaceable, so isometry groups are finite",),
        )
    order = group.group_order
    if order is None:
        return Verdict(Answer.INCONCLUSIVE, GroupClass.FINITE, ("Prop9.1",), ("no group order given",))
    if genus < 2:
        note = "genus 0: the group must embed in O(3)" if genus == 0 else \
            "genus 1: the group must be a quotient of a crystallographic group"
        return Verdict(Answer.INCONCLUSIVE, GroupClass.FINITE, ("Prop9.1",), (note,))
    verdict = hurwitz_bound(genus, group.group if group.group is not None else order)
    if verdict.answer is Answer.INCONCLUSIVE and group.group is not None and 0 < surface.planar_ends < math.inf:
        planar = planar_obstruction(int(surface.planar_ends), group.group)
        if planar.answer is Answer.NOT_REALIZABLE:
            return planar
    return verdict


def _planar_verdict(surface: SurfaceDescriptor, group: GroupClassDescriptor) -> Verdict:
    if surface.planar_ends == math.inf:
        return Verdict(Answer.OUT_OF_SCOPE, None, ("Prop9.2",), ("infinitely many planar ends",))
    if group.tag is not GroupTag.FINITE:
        return Verdict(
            Answer.NOT_REALIZABLE, GroupClass.FINITE, ("Lem4.2", "Prop9.2"),
            ("finitely many planar ends give a non-displaceable compact subsurface",),
        )
    if group.group is None:
        return Verdict(Answer.INCONCLUSIVE, GroupClass.FINITE, ("Prop9.2",), ("no group table given",))
    return planar_obstruction(int(surface.planar_ends), group.group)


def hurwitz_bound(genus: int, group: FiniteGroup | int) -> Verdict:
    """Check ``|G| <= 168 (g - 1)``.

    Exceeding the bound rules the group out; meeting it decides nothing.

    Raises:
        GenusTooSmallError: For ``genus < 2``.
    """
    if genus < 2:
        raise GenusTooSmallError(
            f"Hurwitz bound needs genus >= 2, got {genus}; genus 0 and 1 fall under O(3) and crystallographic groups"
        )
    order = group.order if isinstance(group, FiniteGroup) else int(group)
    bound = 168 * (genus - 1)
    if order > bound:
        return Verdict(Answer.NOT_REALIZABLE, GroupClass.FINITE, ("Prop9.1",), (f"|G| = {order} > {bound}",))
    return Verdict(
        Answer.INCONCLUSIVE, GroupClass.FINITE, ("Prop9.1",),
        (f"|G| = {order} <= {bound}; the bound is necessary, not sufficient",),
    )


def planar_obstruction(n_planar: int, group: FiniteGroup) -> Verdict:
    """Rule out non-abelian simple groups of order above ``n_planar!``.

    Raises:
        PreconditionError: Unless ``1 <= n_planar`` is finite.
    """
    if n_planar == math.inf or n_planar < 1:
        raise PreconditionError(f"planar_obstruction needs 1 <= n_planar < inf, got {n_planar}; use realizable()")
    limit = math.factorial(int(n_planar))
    if not group.is_abelian() and group.order > limit and group.is_simple():
        return Verdict(
            Answer.NOT_REALIZABLE, GroupClass.FINITE, ("Prop9.2",),
            (f"{group.name} is simple, non-abelian and |G| = {group.order} > {n_planar}! = {limit}",),
        )
    return Verdict(Answer.INCONCLUSIVE, GroupClass.FINITE, ("Prop9.2",))


# ---------------------------------------------------------------------------
# Consistency of the trichotomy and witnesses
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ConsistencyReport:
    """The selected trichotomy branch and the verdict for every group tag."""

    branch: Trichotomy
    verdicts: tuple[tuple[GroupTag, Verdict], ...]
    consistent: bool
    flags: tuple[str, ...] = ()


def _trichotomy_of(ends: EndSpaceExpr | CharSystem | Branch | Trichotomy) -> Trichotomy:
    if isinstance(ends, Trichotomy):
        return ends
    if isinstance(ends, Branch):
        return Trichotomy(ends)
    if isinstance(ends, CharSystem):
        return trichotomy_of(ends)
    try:
        return trichotomy(ends)
    except UnsupportedError as exc:
        raise OutOfScopeError(str(exc)) from exc


def corollary_consistency(surface: SurfaceDescriptor) -> ConsistencyReport:
    """Check that exactly one branch applies and every tag gets a verdict.

    Raises:
        PreconditionError: Unless the surface has infinite genus and no planar ends.
        OutOfScopeError: For mixed uncountable end spaces.
    """
    if not surface.infinite_genus or surface.planar_ends:
        raise PreconditionError("Consistency check needs infinite genus and no planar ends")
    branch = _trichotomy_of(surface.ends)
    verdicts = tuple((tag, realizable(surface, GroupClassDescriptor(tag))) for tag in GroupTag)
    consistent = True
    for tag, verdict in verdicts:
        if verdict.allowed_class is None or verdict.answer is Answer.OUT_OF_SCOPE:
            consistent = False
        elif verdict.answer is Answer.REALIZABLE and not tag.fits(verdict.allowed_class):
            consistent = False
        elif verdict.answer is Answer.NOT_REALIZABLE and tag.fits(verdict.allowed_class):
            consistent = False
    flags = tuple(sorted({flag for _, verdict in verdicts for flag in verdict.flags}))
    return ConsistencyReport(branch, verdicts, consistent, flags)


@dataclass(frozen=True)
class Witness:
    """A built complex whose automorphism group is compared with the target group."""

    construction: str
    complex: GluingComplex
    automorphisms: FiniteGroup
    isomorphic: bool


def _end_expression(ends: EndSpaceExpr | CharSystem | Branch | Trichotomy) -> EndSpaceExpr:
    if isinstance(ends, CharSystem):
        return from_char_system(ends)
    if isinstance(ends, (Branch, Trichotomy)):
        raise PreconditionError("A witness needs an explicit end-space expression")
    return ends


def realization_witness(surface: SurfaceDescriptor, group: FiniteGroup, truncation: int = 1, seed: int = 0) -> Witness:
    """Build a complex realizing a finite group and check its automorphisms.

    Raises:
        PreconditionError: If the verdict for ``group`` is not Realizable or
            the end space is only asserted.
    """
    verdict = realizable(surface, GroupClassDescriptor.finite(group))
    if verdict.answer is not Answer.REALIZABLE:
        raise PreconditionError(f"{group.name} is not realizable here ({verdict.answer.value})")
    ends = _end_expression(surface.ends)
    route = registry.get_route("X")
    complex_ = route.builder_class().build(BuildRequest(ends, group, truncation, seed=seed))
    automorphisms = complex_automorphisms(complex_)
    return Witness(route.name, complex_, automorphisms, isomorphic(automorphisms, group))
