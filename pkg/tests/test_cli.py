"""Tests for the command-line front end."""

import json
import math

import pytest

from src.classify import GroupTag
from src.cli import (
    EXIT_OK,
    EXIT_OUT_OF_SCOPE,
    EXIT_PARSE,
    EXIT_VERIFY,
    _report_text,
    main,
    parse_count,
    parse_ends,
    parse_group_class,
)
from src.endspace import Branch, Cantor
from src.errors import ParseError
from src.export import ReportDocument, format_length


class TestParsing:
    """Tests for the argument converters."""

    def test_count(self) -> None:
        assert parse_count("3", "Genus") == 3
        assert parse_count("inf", "Genus") == math.inf
        assert parse_count("INF", "Genus") == math.inf

    def test_count_rejects_negative(self) -> None:
        with pytest.raises(ParseError, match="non-negative"):
            parse_count("-1", "Genus")

    def test_count_rejects_text(self) -> None:
        with pytest.raises(ParseError, match="Genus"):
            parse_count("many", "Genus")

    def test_ends_branch(self) -> None:
        assert parse_ends("branch:doubly_pointed") is Branch.DOUBLY_POINTED
        assert parse_ends("cantor") == Cantor()

    def test_ends_unknown_branch(self) -> None:
        with pytest.raises(ParseError, match="Unknown branch"):
            parse_ends("branch:sideways")

    def test_group_class_tags(self) -> None:
        assert parse_group_class("vc").tag is GroupTag.VIRTUALLY_CYCLIC
        assert parse_group_class("Countable").tag is GroupTag.COUNTABLE_INFINITE
        assert parse_group_class("finite:12").group_order == 12

    def test_group_class_from_builtin(self) -> None:
        finite = parse_group_class("builtin:S3")
        assert finite.tag is GroupTag.FINITE
        assert finite.group_order == 6
        assert parse_group_class("builtin:D_inf").tag is GroupTag.VIRTUALLY_CYCLIC

    def test_group_class_rejects_order_zero(self) -> None:
        with pytest.raises(ParseError, match="positive"):
            parse_group_class("finite:0")

    def test_group_class_unknown_path(self, tmp_path) -> None:
        with pytest.raises(ParseError, match="neither"):
            parse_group_class(str(tmp_path / "missing.csv"))


class CliCase:
    """Runs ``main`` with a private log directory."""

    @pytest.fixture(autouse=True)
    def workspace(self, tmp_path) -> None:
        self.tmp = tmp_path
        self.logs = tmp_path / "logs"

    def run(self, *argv: str) -> int:
        command, *rest = argv
        return main([command, "--log-dir", str(self.logs), *rest])


class TestClassify(CliCase):
    """Tests for ``classify``."""

    def test_self_similar_countable(self, capsys) -> None:
        assert self.run("classify", "--ends", "w^1*1+1", "--group", "countable") == EXIT_OK
        data = json.loads(capsys.readouterr().out)
        assert data["kind"] == "verdict"
        assert data["answer"] == "Realizable"
        assert "ThmB.1" in data["citations"]

    def test_limit_doubly_pointed_rules_out_vc(self, capsys) -> None:
        assert self.run("classify", "--ends", "w^w*2+1", "--group", "vc") == EXIT_OK
        data = json.loads(capsys.readouterr().out)
        assert data["answer"] == "NotRealizable"
        assert "Thm4.16(ii)" in data["citations"]

    def test_finite_builtin_cites_construction(self, capsys) -> None:
        assert self.run("classify", "--ends", "cantor", "--group", "builtin:S3") == EXIT_OK
        data = json.loads(capsys.readouterr().out)
        assert data["answer"] == "Realizable"
        assert "Thm3.9" in data["citations"]

    def test_text_format(self, capsys) -> None:
        self.run("classify", "--ends", "w^1*3+1", "--group", "countable", "--format", "text")
        out = capsys.readouterr().out
        assert out.startswith("NotRealizable (exact)")
        assert "citations:" in out

    def test_output_file(self) -> None:
        target = self.tmp / "out" / "verdict.json"
        assert self.run("classify", "--ends", "1", "--group", "finite", "-o", str(target)) == EXIT_OK
        assert json.loads(target.read_text(encoding="utf-8"))["answer"] == "Realizable"

    def test_out_of_scope_exit(self, capsys) -> None:
        code = self.run("classify", "--ends", "cantor", "--group", "countable", "--genus", "0")
        assert code == EXIT_OUT_OF_SCOPE
        assert json.loads(capsys.readouterr().out)["answer"] == "OutOfScope"

    def test_infinitely_many_planar_ends(self) -> None:
        code = self.run("classify", "--ends", "cantor", "--group", "finite", "--planar-ends", "inf")
        assert code == EXIT_OUT_OF_SCOPE

    def test_bad_ends(self, capsys) -> None:
        assert self.run("classify", "--ends", "w^", "--group", "vc") == EXIT_PARSE
        assert capsys.readouterr().err.startswith("error:")

    def test_unknown_builtin(self) -> None:
        assert self.run("classify", "--ends", "cantor", "--group", "builtin:M24") == EXIT_PARSE

    def test_writes_a_log(self) -> None:
        self.run("classify", "--ends", "cantor", "--group", "countable")
        logs = list(self.logs.glob("realizer_*.log"))
        assert len(logs) == 1
        assert "classify" in logs[0].read_text(encoding="utf-8")

    def test_unknown_format_is_an_argparse_error(self) -> None:
        with pytest.raises(SystemExit):
            self.run("classify", "--ends", "cantor", "--group", "vc", "--format", "yaml")


class TestBuildAndVerify(CliCase):
    """Tests for ``build``, ``verify`` and ``export``."""

    def setup_method(self) -> None:
        self.built = None

    def build(self, *extra: str) -> int:
        self.built = self.tmp / "complex.json"
        return self.run(
            "build", "--ends", "w^1*1+1", "--group", "builtin:Z2", "--M", "2", "--seed", "7",
            "-o", str(self.built), *extra,
        )

    def test_build_then_verify(self, capsys) -> None:
        assert self.build() == EXIT_OK
        data = json.loads(self.built.read_text(encoding="utf-8"))
        assert data["seed"] == 7
        assert data["recipe"]["construction"] == "X"
        assert self.run("verify", str(self.built)) == EXIT_OK
        report = json.loads(capsys.readouterr().out)
        assert report["kind"] == "verification"
        assert report["passed"] is True

    def test_builds_are_byte_identical(self) -> None:
        self.build()
        first = self.built.read_text(encoding="utf-8")
        self.build()
        assert self.built.read_text(encoding="utf-8") == first

    def test_perturbed_length_fails_verification(self, capsys) -> None:
        self.build()
        data = json.loads(self.built.read_text(encoding="utf-8"))
        port = data["pieces"][0]["ports"][0]
        port["length"] = format_length(float(port["length"]) + 1e-6)
        self.built.write_text(json.dumps(data), encoding="utf-8")
        assert self.run("verify", str(self.built)) == EXIT_VERIFY
        assert "verification failed" in capsys.readouterr().err

    def test_verify_missing_file(self) -> None:
        assert self.run("verify", str(self.tmp / "nothing.json")) == EXIT_PARSE

    def test_dot_side_output(self) -> None:
        dot = self.tmp / "complex.dot"
        assert self.build("--dot", str(dot)) == EXIT_OK
        assert dot.read_text(encoding="utf-8").startswith("graph complex {")

    def test_export_to_dot(self, capsys) -> None:
        self.build()
        capsys.readouterr()
        assert self.run("export", str(self.built), "--format", "dot") == EXIT_OK
        assert capsys.readouterr().out.splitlines()[-1] == "}"

    def test_export_json_is_stable(self) -> None:
        self.build()
        copy = self.tmp / "copy.json"
        assert self.run("export", str(self.built), "-o", str(copy)) == EXIT_OK
        assert copy.read_text(encoding="utf-8") == self.built.read_text(encoding="utf-8")

    def test_text_summary(self, capsys) -> None:
        code = self.run("build", "--ends", "cantor", "--group", "builtin:S3", "--M", "1", "--format", "text")
        assert code == EXIT_OK
        assert "6 vertex pieces, 30 edge pieces, 60 pairings" in capsys.readouterr().out

    def test_vc_group_on_doubly_pointed_space(self, capsys) -> None:
        code = self.run("build", "--ends", "w^1*2+1", "--group", "builtin:Z", "--R", "2")
        assert code == EXIT_OK
        data = json.loads(capsys.readouterr().out)
        assert data["recipe"]["construction"] == "X_gamma"

    def test_vc_group_on_non_displaceable_space(self) -> None:
        assert self.run("build", "--ends", "w^1*3+1", "--group", "builtin:Z") == EXIT_OUT_OF_SCOPE

    def test_radial_construction_on_non_self_similar_space(self, capsys) -> None:
        code = self.run("build", "--construction", "Y", "--ends", "w^1*2+1", "--group", "builtin:Z2")
        assert code == EXIT_OUT_OF_SCOPE
        assert "not self-similar" in capsys.readouterr().err

    def test_explicit_construction_mismatch(self) -> None:
        code = self.run("build", "--ends", "w^1*2+1", "--group", "builtin:Z2", "--construction", "X_gamma")
        assert code == EXIT_OUT_OF_SCOPE

    def test_truncation_zero(self) -> None:
        code = self.run("build", "--ends", "cantor", "--group", "builtin:Z2", "--M", "0")
        assert code == EXIT_PARSE

    def test_group_table_file(self, tmp_path) -> None:
        table = tmp_path / "z3.csv"
        table.write_text("a,b,c\nb,c,a\nc,a,b\n", encoding="utf-8")
        code = self.run("build", "--ends", "cantor", "--group", str(table), "--M", "1", "-o", str(tmp_path / "c.json"))
        assert code == EXIT_OK


class TestSeedInTextOutput(CliCase):
    """Every text artifact names the seed it was produced with."""

    def test_classify(self, capsys) -> None:
        self.run("classify", "--ends", "cantor", "--group", "vc", "--seed", "41", "--format", "text")
        assert "seed:          41" in capsys.readouterr().out.splitlines()

    def test_verify_and_export(self, capsys) -> None:
        built = self.tmp / "complex.json"
        self.run("build", "--ends", "cantor", "--group", "builtin:Z2", "--M", "1", "--seed", "42", "-o", str(built))
        capsys.readouterr()
        assert self.run("verify", str(built), "--format", "text") == EXIT_OK
        assert "  seed: 42" in capsys.readouterr().out.splitlines()
        assert self.run("export", str(built), "--format", "text") == EXIT_OK
        assert capsys.readouterr().out.splitlines()[0] == "seed: 42"

    def test_build(self, capsys) -> None:
        self.run("build", "--ends", "cantor", "--group", "builtin:Z2", "--M", "1", "--seed", "43", "--format", "text")
        assert "seed 43" in capsys.readouterr().out

    def test_selftest_report_text(self) -> None:
        report = ReportDocument(kind="selftest", seed=44, passed=True, checks=[])
        assert _report_text(report).splitlines()[1] == "  seed: 44"
