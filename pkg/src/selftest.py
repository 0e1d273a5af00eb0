"""Acceptance suite run by ``isom-realizer selftest``.

Each check is a zero-argument function returning a ``Check``. Checks are
independent, so ``run_selftest`` may spread them over worker threads; the
result list always follows the declaration order.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from functools import lru_cache
from typing import Callable

import numpy as np

from .builders import build_x
from .classify import Answer, GroupClassDescriptor, GroupTag, SurfaceDescriptor, hurwitz_bound, planar_obstruction, realizable
from .complex import GluingComplex, complex_automorphisms, complex_end_space, one_endedness_shadow, quotient
from .endspace import (
    Cantor,
    CharSystem,
    EndSpaceExpr,
    Singleton,
    canonical,
    char_system,
    count_points,
    from_char_system,
    homeomorphic,
    is_perfect,
    is_self_similar,
    iterate_derivative,
    star_decomposition,
)
from .export import complex_document, dump_complex, dump_document, format_length, load_complex
from .grouptable import (
    FiniteGroup,
    alternating,
    builtin,
    complete_cayley_graph,
    cyclic,
    decorated_automorphisms,
    isomorphic,
    symmetric,
)
from .hypgeom import ASINH1, TWO_ASINH1, band_violations, certify_complete, collar_width
from .ordinal import OMEGA, ONE, Ordinal
from .vcgroup import integers
from .verify import Check, verify_complex

RIGIDITY_GROUPS = ("Z2", "Z3", "Z4", "Z2xZ2", "Z6", "S3", "D4", "Q8")

# Realizable (R) / not (N) for Finite(S3), VirtuallyCyclic, CountableInfinite
GOLDEN_MATRIX: dict[tuple[str, int], str] = {
    ("0", 1): "RRR", ("0", 2): "RRN", ("0", 3): "RNN", ("0", 5): "RNN",
    ("1", 1): "RRR", ("1", 2): "RRN", ("1", 3): "RNN", ("1", 5): "RNN",
    ("2", 1): "RRR", ("2", 2): "RRN", ("2", 3): "RNN", ("2", 5): "RNN",
    ("3", 1): "RRR", ("3", 2): "RRN", ("3", 3): "RNN", ("3", 5): "RNN",
    ("w", 1): "RRR", ("w", 2): "RNN", ("w", 3): "RNN", ("w", 5): "RNN",
    ("w + 1", 1): "RRR", ("w + 1", 2): "RRN", ("w + 1", 3): "RNN", ("w + 1", 5): "RNN",
    ("w*2", 1): "RRR", ("w*2", 2): "RNN", ("w*2", 3): "RNN", ("w*2", 5): "RNN",
}

MATRIX_ALPHAS = (Ordinal.nat(0), Ordinal.nat(1), Ordinal.nat(2), Ordinal.nat(3), OMEGA, OMEGA + 1, Ordinal.omega_power(1, 2))


def check_classification_matrix() -> Check:
    tags = (
        GroupClassDescriptor.finite(symmetric(3)),
        GroupClassDescriptor(GroupTag.VIRTUALLY_CYCLIC),
        GroupClassDescriptor(GroupTag.COUNTABLE_INFINITE),
    )
    mismatches = []
    cells = 0
    for alpha in MATRIX_ALPHAS:
        for n in (1, 2, 3, 5):
            surface = SurfaceDescriptor(CharSystem(alpha, n))
            for group, expected in zip(tags, GOLDEN_MATRIX[(str(alpha), n)]):
                cells += 1
                answer = realizable(surface, group).answer
                want = Answer.REALIZABLE if expected == "R" else Answer.NOT_REALIZABLE
                if answer is not want:
                    mismatches.append(f"({alpha},{n}) {group}: {answer.value}")
    return Check("classification_matrix", not mismatches, "; ".join(mismatches) or f"{cells} cells")


def check_cayley_rigidity() -> Check:
    failures = [
        name for name in RIGIDITY_GROUPS
        if not isomorphic(decorated_automorphisms(complete_cayley_graph(builtin(name))), builtin(name))
    ]
    return Check("cayley_rigidity", not failures, ", ".join(failures))


@lru_cache(maxsize=None)
def _witness_complexes() -> tuple[tuple[str, FiniteGroup, GluingComplex], ...]:
    results = []
    for e in (Ordinal.nat(1), None):
        ends: EndSpaceExpr = Cantor() if e is None else from_char_system(CharSystem(e, 1))
        for name in RIGIDITY_GROUPS:
            group = builtin(name)
            results.append((f"{name} on {ends}", group, build_x(ends, group, truncation=1, seed=0)))
    return tuple(results)


QUOTIENT_SPACES: tuple[EndSpaceExpr, ...] = (
    Singleton(),
    from_char_system(CharSystem(ONE, 1)),
    from_char_system(CharSystem(Ordinal.nat(2), 1)),
    from_char_system(CharSystem(ONE, 2)),
    Cantor(),
)


@lru_cache(maxsize=None)
def _quotient_complexes() -> tuple[tuple[EndSpaceExpr, FiniteGroup, GluingComplex], ...]:
    return tuple(
        (e, group, build_x(e, group, truncation=2, seed=0))
        for e in QUOTIENT_SPACES
        for group in (cyclic(2), cyclic(3))
    )


def check_complex_isometry_groups() -> Check:
    failures = [
        label for label, group, complex_ in _witness_complexes()
        if not isomorphic(complex_automorphisms(complex_), group)
    ]
    return Check("complex_isometry_groups", not failures, ", ".join(failures))


def check_collar_identity() -> Check:
    samples = np.logspace(-6, math.log10(20.0), 1000)
    widths = np.array([collar_width(float(length)) for length in samples])
    worst = float(np.max(np.abs(np.sinh(samples / 2.0) * np.sinh(widths) - 1.0)))
    anchor = abs(collar_width(TWO_ASINH1) - ASINH1) / ASINH1
    passed = worst < 1e-12 and anchor < 1e-12
    return Check("collar_identity", passed, f"worst {worst:.3g}, anchor {anchor:.3g}")


def check_completeness() -> Check:
    failures = []
    complexes = [c for _, _, c in _witness_complexes()] + [c for _, _, c in _quotient_complexes()]
    for complex_ in complexes:
        certificate = certify_complete(complex_)
        if not certificate.holds or certificate.bound != TWO_ASINH1 or band_violations(complex_):
            failures.append(complex_.recipe.group_name)
    return Check("completeness", not failures, ", ".join(failures) or f"{len(complexes)} complexes")


def check_quotient_round_trip() -> Check:
    failures = []
    for e, group, complex_ in _quotient_complexes():
        base = quotient(complex_, group).quotient
        if not homeomorphic(complex_end_space(base, ideal=True), canonical(e)):
            failures.append(f"{e} / {group.name}")
    return Check("quotient_round_trip", not failures, ", ".join(failures))


def check_cb_machinery() -> Check:
    failures = []
    for alpha in range(4):
        for d in (1, 2, 3):
            e = from_char_system(CharSystem(Ordinal.nat(alpha), d))
            top = iterate_derivative(e, alpha)
            if top is None or count_points(top) != d or iterate_derivative(e, alpha + 1) is not None:
                failures.append(f"({alpha},{d})")
    return Check("cb_machinery", not failures, ", ".join(failures))


def check_star_decomposition() -> Check:
    failures = []
    for e in (
        from_char_system(CharSystem(ONE, 1)),
        from_char_system(CharSystem(Ordinal.nat(2), 1)),
        from_char_system(CharSystem(Ordinal.omega_power(OMEGA), 1)),
        Cantor(),
    ):
        part = star_decomposition(e).part_closure
        same = is_perfect(part) if is_perfect(e) else char_system(part) == char_system(e)
        if not same:
            failures.append(str(e))
    for alpha in (Ordinal.nat(1), Ordinal.nat(2), OMEGA, OMEGA + 1):
        for d in (1, 2, 3):
            if is_self_similar(from_char_system(CharSystem(alpha, d))) != (d == 1):
                failures.append(f"self-similarity of ({alpha},{d})")
    return Check("star_decomposition", not failures, ", ".join(failures))


def check_one_endedness_shadow() -> Check:
    complex_ = build_x(from_char_system(CharSystem(ONE, 1)), integers(), truncation=2, radius=3)
    reports = one_endedness_shadow(complex_, 1)
    broken = [report.center for report in reports if not report.connected]
    return Check("one_endedness_shadow", not broken, ", ".join(broken) or f"{len(reports)} centres")


def check_obstructions() -> Check:
    failures = []
    for genus in (2, 3, 5):
        bound = 168 * (genus - 1)
        if hurwitz_bound(genus, bound).answer is not Answer.INCONCLUSIVE:
            failures.append(f"hurwitz g={genus} at bound")
        if hurwitz_bound(genus, bound + 1).answer is not Answer.NOT_REALIZABLE:
            failures.append(f"hurwitz g={genus} above bound")
    a5 = alternating(5)
    for n in (1, 2, 3):
        if planar_obstruction(n, a5).answer is not Answer.NOT_REALIZABLE:
            failures.append(f"A5 with {n} planar ends")
    for n, group in ((5, cyclic(7)), (1, cyclic(4))):
        if planar_obstruction(n, group).answer is not Answer.INCONCLUSIVE:
            failures.append(f"{group.name} with {n} planar ends")
    return Check("obstructions", not failures, ", ".join(failures))


def check_determinism() -> Check:
    ends = from_char_system(CharSystem(ONE, 1))
    group = cyclic(2)
    first = dump_complex(build_x(ends, group, truncation=2, seed=7))
    second = dump_complex(build_x(ends, group, truncation=2, seed=7))
    if first != second:
        return Check("determinism", False, "two builds with seed 7 differ")
    loaded, _ = load_complex(first)
    if not all(check.passed for check in verify_complex(loaded)):
        return Check("determinism", False, "reloaded complex fails verification")
    document = complex_document(loaded)
    port = document.pieces[0].ports[0]
    port.length = format_length(float(port.length) + 1e-6)
    perturbed, _ = load_complex(dump_document(document))
    if all(check.passed for check in verify_complex(perturbed)):
        return Check("determinism", False, "perturbed length passes verification")
    return Check("determinism", True, "byte-identical; perturbation detected")


CHECKS: tuple[Callable[[], Check], ...] = (
    check_classification_matrix,
    check_cayley_rigidity,
    check_complex_isometry_groups,
    check_collar_identity,
    check_completeness,
    check_quotient_round_trip,
    check_cb_machinery,
    check_star_decomposition,
    check_one_endedness_shadow,
    check_obstructions,
    check_determinism,
)


def _run(check: Callable[[], Check]) -> Check:
    try:
        return check()
    except Exception as exc:  # a crashing check is a failing check
        return Check(check.__name__.removeprefix("check_"), False, f"{type(exc).__name__}: {exc}")


def run_selftest(jobs: int = 1) -> list[Check]:
    """Run every acceptance check, in declaration order."""
    if jobs <= 1:
        return [_run(check) for check in CHECKS]
    with ThreadPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(_run, CHECKS))
