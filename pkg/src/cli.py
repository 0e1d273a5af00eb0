"""Command-line front end: classify, build, verify, export and selftest."""

from __future__ import annotations

import argparse
import json
import math
import sys
from dataclasses import asdict, dataclass
from pathlib import Path
from typing import Sequence

from .builders import BuildRequest
from .classify import Answer, GroupClassDescriptor, GroupTag, SurfaceDescriptor, Verdict, realizable
from .config import AppConfig
from .endspace import Branch, EndSpaceExpr, char_system, describe, parse_end_space, trichotomy
from .errors import (
    BuildError,
    DescriptorError,
    EndSpaceError,
    GroupTableError,
    OutOfScopeError,
    ParseError,
    PreconditionError,
    RealizerError,
    TruncationTooSmallError,
    UnsupportedError,
    VerificationError,
)
from .export import (
    CheckModel,
    ReportDocument,
    VerdictDocument,
    complex_to_dot,
    dump_complex,
    dump_document,
    load_complex,
)
from .grouptable import FiniteGroup, builtin, load_table
from .hypgeom import CompletenessCertificate, certify_complete
from .logger import RunLogger, RunStatus
from .registry import registry
from .selftest import run_selftest
from .vcgroup import VCGroupDescriptor, builtin_vc, load_descriptor
from .verify import Check, verify_complex

EXIT_OK = 0
EXIT_FAILURE = 1
EXIT_PARSE = 2
EXIT_VERIFY = 3
EXIT_OUT_OF_SCOPE = 4

SETTINGS = AppConfig()
FORMATS = ("json", "dot", "text")
GROUP_TAGS = {
    "finite": GroupTag.FINITE,
    "vc": GroupTag.VIRTUALLY_CYCLIC,
    "countable": GroupTag.COUNTABLE_INFINITE,
    "uncountable": GroupTag.UNCOUNTABLE,
}


@dataclass(frozen=True)
class RunConfig:
    """One CLI invocation, after argument parsing."""
    command: str
    ends: str | None = None
    group: str | None = None
    truncation: int = SETTINGS.default_truncation
    radius: int = SETTINGS.default_radius
    seed: int = SETTINGS.default_seed
    output: Path | None = None
    format: str = "json"
    dot: Path | None = None
    construction: str | None = None
    input: Path | None = None
    genus: str = "inf"
    planar_ends: str = "0"
    jobs: int = 1
    log_dir: Path = SETTINGS.log_dir
    verbose: bool = False


# ---------------------------------------------------------------------------
# Input parsing
# ---------------------------------------------------------------------------

def parse_count(text: str, what: str) -> float:
    """A non-negative integer or ``inf``."""
    if text.strip().lower() in ("inf", "infinite", "∞"):
        return math.inf
    try:
        value = int(text)
    except ValueError:
        raise ParseError(f"{what} must be a non-negative integer or 'inf', got {text!r}") from None
    if value < 0:
        raise ParseError(f"{what} must be non-negative, got {value}")
    return value


def parse_ends(text: str) -> EndSpaceExpr | Branch:
    """End-space expression, or ``branch:<name>`` to assert a trichotomy branch."""
    if text.strip().lower().startswith("branch:"):
        value = text.split(":", 1)[1].strip().lower()
        try:
            return Branch(value)
        except ValueError:
            known = ", ".join(branch.value for branch in Branch)
            raise ParseError(f"Unknown branch {value!r} (known: {known})") from None
    return parse_end_space(text)


def resolve_group(text: str) -> FiniteGroup | VCGroupDescriptor:
    """A ``builtin:NAME`` or a path to a table (CSV/JSON) or a descriptor (JSON)."""
    if text.startswith("builtin:"):
        name = text.split(":", 1)[1]
        try:
            return builtin_vc(name)
        except ParseError:
            return builtin(name)
    path = Path(text)
    if not path.exists():
        raise ParseError(f"Group {text!r} is neither a class tag, a builtin nor an existing file")
    if path.suffix.lower() == ".json":
        try:
            data = json.loads(path.read_text(encoding="utf-8"))
        except (OSError, json.JSONDecodeError) as exc:
            raise ParseError(f"Cannot read group file {path}: {exc}") from exc
        if isinstance(data, dict) and "generators" in data:
            return load_descriptor(path)
    return load_table(path)


def parse_group_class(text: str) -> GroupClassDescriptor:
    """Group class for ``classify``: a tag, ``finite:ORDER``, or any group ``resolve_group`` accepts."""
    lowered = text.strip().lower()
    if lowered in GROUP_TAGS:
        return GroupClassDescriptor(GROUP_TAGS[lowered])
    if lowered.startswith("finite:"):
        order = parse_count(lowered.split(":", 1)[1], "Group order")
        if order in (0, math.inf):
            raise ParseError(f"Finite group order must be positive, got {text!r}")
        return GroupClassDescriptor.finite(int(order))
    group = resolve_group(text)
    if isinstance(group, FiniteGroup):
        return GroupClassDescriptor.finite(group)
    return GroupClassDescriptor(GroupTag.VIRTUALLY_CYCLIC)


def _require(value: str | Path | None, flag: str, command: str) -> str | Path:
    if value is None:
        raise ParseError(f"'{command}' needs {flag}")
    return value


# ---------------------------------------------------------------------------
# Rendering
# ---------------------------------------------------------------------------

def _count_text(value: float) -> str:
    return "inf" if value == math.inf else str(int(value))


def verdict_document(verdict: Verdict, surface: SurfaceDescriptor, group: GroupClassDescriptor, seed: int) -> VerdictDocument:
    ends = surface.ends
    return VerdictDocument(
        seed=seed,
        ends=f"branch:{ends.value}" if isinstance(ends, Branch) else str(ends),
        genus=_count_text(surface.genus),
        planar_ends=_count_text(surface.planar_ends),
        group=str(group),
        answer=verdict.answer.value,
        allowed_class=None if verdict.allowed_class is None else verdict.allowed_class.value,
        exactness=verdict.exactness.value,
        citations=list(verdict.citations),
        notes=list(verdict.notes),
        flags=list(verdict.flags),
    )


def _text_lines(document: VerdictDocument) -> list[str]:
    lines = [
        f"{document.answer} ({document.exactness})",
        f"  ends:          {document.ends}",
        f"  group:         {document.group}",
        f"  allowed class: {document.allowed_class or '-'}",
        f"  citations:     {', '.join(document.citations)}",
        f"  seed:          {document.seed}",
    ]
    lines += [f"  note:          {note}" for note in document.notes]
    lines += [f"  flag:          {flag}" for flag in document.flags]
    return lines


def _report(kind: str, seed: int, checks: list[Check]) -> ReportDocument:
    return ReportDocument(
        kind=kind,
        seed=seed,
        passed=all(check.passed for check in checks),
        checks=[CheckModel(**asdict(check)) for check in checks],
    )


def _report_text(report: ReportDocument) -> str:
    lines = [f"{report.kind}: {'PASS' if report.passed else 'FAIL'}", f"  seed: {report.seed}"]
    for check in report.checks:
        mark = "ok  " if check.passed else "FAIL"
        lines.append(f"  [{mark}] {check.name}" + (f": {check.detail}" if check.detail else ""))
    return "\n".join(lines) + "\n"


def emit(text: str, output: Path | None) -> None:
    if output is None:
        sys.stdout.write(text)
    else:
        output.parent.mkdir(parents=True, exist_ok=True)
        output.write_text(text, encoding="utf-8")


# ---------------------------------------------------------------------------
# Commands
# ---------------------------------------------------------------------------

def run_classify(config: RunConfig, log: RunLogger) -> int:
    surface = SurfaceDescriptor(
        parse_ends(str(_require(config.ends, "--ends", "classify"))),
        genus=parse_count(config.genus, "Genus"),
        planar_ends=parse_count(config.planar_ends, "Planar end count"),
    )
    group = parse_group_class(str(_require(config.group, "--group", "classify")))
    verdict = realizable(surface, group)
    document = verdict_document(verdict, surface, group, config.seed)
    text = "\n".join(_text_lines(document)) + "\n" if config.format == "text" else dump_document(document)
    emit(text, config.output)
    status = RunStatus.OUT_OF_SCOPE if verdict.answer is Answer.OUT_OF_SCOPE else RunStatus.SUCCESS
    log.log_result("classify", status, f"{verdict.answer.value} {', '.join(verdict.citations)}")
    return EXIT_OUT_OF_SCOPE if status is RunStatus.OUT_OF_SCOPE else EXIT_OK


def _pick_route(name: str | None, ends: EndSpaceExpr, group: FiniteGroup | VCGroupDescriptor):
    if name is not None:
        return registry.get_route(name)
    if isinstance(group, FiniteGroup):
        return registry.get_route("X")
    try:
        branch = trichotomy(ends).branch
    except UnsupportedError as exc:
        raise OutOfScopeError(str(exc)) from exc
    return registry.route_for(branch, finite=False)


def run_build(config: RunConfig, log: RunLogger) -> int:
    ends = parse_end_space(str(_require(config.ends, "--ends", "build")))
    group = resolve_group(str(_require(config.group, "--group", "build")))
    route = _pick_route(config.construction, ends, group)
    request = BuildRequest(ends, group, config.truncation, config.radius, config.seed, char_system(ends))
    complex_ = route.builder_class().build(request)
    certificate = certify_complete(complex_)

    if config.format == "dot":
        emit(complex_to_dot(complex_), config.output)
    elif config.format == "text":
        emit(
            f"{route.name} over {complex_.recipe.group_name}: {len(complex_.vertex_pieces)} vertex pieces, "
            f"{len(complex_.edge_pieces)} edge pieces, {len(complex_.pairings)} pairings; "
            f"ends {describe(ends)}; seed {complex_.seed}\n",
            config.output,
        )
    else:
        emit(dump_complex(complex_, certificate), config.output)
    if config.dot is not None:
        emit(complex_to_dot(complex_), config.dot)

    log.log_result("build", RunStatus.SUCCESS, f"{route.name}: {len(complex_.pieces)} pieces")
    return EXIT_OK


def _read_input(config: RunConfig, command: str) -> str:
    path = Path(_require(config.input, "an input file", command))
    try:
        return path.read_text(encoding="utf-8")
    except OSError as exc:
        raise ParseError(f"Cannot read {path}: {exc}") from exc


def run_verify(config: RunConfig, log: RunLogger) -> int:
    complex_, document = load_complex(_read_input(config, "verify"))
    declared = None
    if document.completeness is not None:
        declared = CompletenessCertificate(
            document.completeness.holds,
            float(document.completeness.bound),
            document.completeness.checked_lengths,
            document.completeness.planar_ends,
        )
    checks = verify_complex(complex_, declared)
    for check in checks:
        log.log_check(check.name, check.passed, check.detail)
    report = _report("verification", complex_.seed, checks)
    emit(_report_text(report) if config.format == "text" else dump_document(report), config.output)
    if not report.passed:
        raise VerificationError([f"{c.name}: {c.detail}" for c in checks if not c.passed])
    log.log_result("verify", RunStatus.SUCCESS, f"{len(checks)} checks")
    return EXIT_OK


def run_export(config: RunConfig, log: RunLogger) -> int:
    complex_, _ = load_complex(_read_input(config, "export"))
    if config.format == "dot":
        emit(complex_to_dot(complex_), config.output)
    elif config.format == "text":
        lines = [f"seed: {complex_.seed}"] + sorted(piece.piece_id for piece in complex_.pieces)
        emit("\n".join(lines) + "\n", config.output)
    else:
        emit(dump_complex(complex_, certify_complete(complex_)), config.output)
    log.log_result("export", RunStatus.SUCCESS, config.format)
    return EXIT_OK


def run_selftest_command(config: RunConfig, log: RunLogger) -> int:
    checks = run_selftest(config.jobs)
    for check in checks:
        log.log_check(check.name, check.passed, check.detail)
    report = _report("selftest", config.seed, checks)
    emit(_report_text(report) if config.format == "text" else dump_document(report), config.output)
    failed = sum(not check.passed for check in checks)
    log.log_summary({"checks": len(checks), "passed": len(checks) - failed, "failed": failed})
    return EXIT_OK if report.passed else EXIT_VERIFY


HANDLERS = {
    "classify": run_classify,
    "build": run_build,
    "verify": run_verify,
    "export": run_export,
    "selftest": run_selftest_command,
}


def run(config: RunConfig) -> int:
    """Execute one command and map errors to exit codes."""
    log = RunLogger(config.log_dir, config.verbose)
    log.log_command(config.command, {k: v for k, v in asdict(config).items() if k not in ("command", "log_dir")})
    try:
        return HANDLERS[config.command](config, log)
    except VerificationError as exc:
        log.log_error(config.command, exc)
        sys.stderr.write(f"verification failed: {exc}\n")
        return EXIT_VERIFY
    except (ParseError, GroupTableError, DescriptorError, TruncationTooSmallError) as exc:
        log.log_error(config.command, exc)
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_PARSE
    except (OutOfScopeError, EndSpaceError, BuildError, PreconditionError) as exc:
        log.log_error(config.command, exc)
        log.log_result(config.command, RunStatus.OUT_OF_SCOPE, str(exc))
        sys.stderr.write(f"out of scope: {exc}\n")
        return EXIT_OUT_OF_SCOPE
    except RealizerError as exc:
        log.log_error(config.command, exc)
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_FAILURE
    except ValueError as exc:
        # registry lookups report unknown or cross-branch constructions this way
        log.log_error(config.command, exc)
        sys.stderr.write(f"out of scope: {exc}\n")
        return EXIT_OUT_OF_SCOPE


# ---------------------------------------------------------------------------
# Argument parsing
# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=SETTINGS.default_seed, help="seed for cuff lengths and twists")
    common.add_argument("--output", "-o", type=Path, help="write the artifact here instead of stdout")
    common.add_argument("--format", choices=FORMATS, default="json")
    common.add_argument("--log-dir", type=Path, default=SETTINGS.log_dir)
    common.add_argument("--verbose", "-v", action="store_true", help="echo log records to stderr")

    parser = argparse.ArgumentParser(
        prog=SETTINGS.app_name,
        description="Isometry groups of infinite-genus surfaces: verdicts and gluing-complex models.",
    )
    parser.add_argument("--version", action="version", version=f"{SETTINGS.app_name} {SETTINGS.app_version}")
    sub = parser.add_subparsers(dest="command", required=True)

    classify = sub.add_parser("classify", parents=[common], help="decide realizability of a group class")
    classify.add_argument("--ends", required=True, help="'w^a*d+1', 'cantor', end-space JSON or branch:<name>")
    classify.add_argument("--group", required=True, help="finite | finite:N | vc | countable | uncountable | builtin:NAME | PATH")
    classify.add_argument("--genus", default="inf")
    classify.add_argument("--planar-ends", default="0")

    build = sub.add_parser("build", parents=[common], help="build a truncated gluing complex")
    build.add_argument("--ends", required=True)
    build.add_argument("--group", required=True, help="builtin:NAME or a table / descriptor file")
    build.add_argument("--M", dest="truncation", type=int, default=SETTINGS.default_truncation, help="truncation depth")
    build.add_argument("--R", dest="radius", type=int, default=SETTINGS.default_radius, help="ball radius for infinite groups")
    build.add_argument("--construction", choices=registry.names(), help="override the construction route")
    build.add_argument("--dot", type=Path, help="also write a DOT rendering here")

    for name, text in (("verify", "re-check a complex JSON file"), ("export", "convert a complex JSON file")):
        command = sub.add_parser(name, parents=[common], help=text)
        command.add_argument("input", type=Path)

    selftest = sub.add_parser("selftest", parents=[common], help="run the acceptance suite")
    selftest.add_argument("--jobs", type=int, default=1, help="worker threads for independent checks")
    return parser


def config_from_args(args: argparse.Namespace) -> RunConfig:
    fields = {name for name in RunConfig.__dataclass_fields__}
    return RunConfig(**{key: value for key, value in vars(args).items() if key in fields})


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    return run(config_from_args(args))
