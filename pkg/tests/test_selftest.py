"""Tests for the acceptance suite runner."""

from src.selftest import (
    CHECKS,
    GOLDEN_MATRIX,
    _run,
    check_cb_machinery,
    check_classification_matrix,
    check_collar_identity,
    check_determinism,
    check_obstructions,
    check_star_decomposition,
)
from src.verify import Check


class TestChecks:
    """The inexpensive checks pass on their own."""

    def test_classification_matrix(self) -> None:
        check = check_classification_matrix()
        assert check.passed, check.detail
        assert check.detail == f"{3 * len(GOLDEN_MATRIX)} cells"

    def test_collar_identity(self) -> None:
        assert check_collar_identity().passed

    def test_cb_machinery(self) -> None:
        assert check_cb_machinery().passed

    def test_star_decomposition(self) -> None:
        assert check_star_decomposition().passed

    def test_obstructions(self) -> None:
        assert check_obstructions().passed

    def test_determinism(self) -> None:
        check = check_determinism()
        assert check.passed, check.detail


class TestRunner:
    """Tests for the runner itself."""

    def test_declaration_order(self) -> None:
        names = [check.__name__.removeprefix("check_") for check in CHECKS]
        assert names[0] == "classification_matrix"
        assert names[-1] == "determinism"
        assert len(set(names)) == len(names)

    def test_crash_becomes_failure(self) -> None:
        def check_explodes() -> Check:
            raise RuntimeError("boom")

        result = _run(check_explodes)
        assert result == Check("explodes", False, "RuntimeError: boom")

    def test_passing_check_is_returned_unchanged(self) -> None:
        def check_fine() -> Check:
            return Check("fine", True, "")

        assert _run(check_fine) == Check("fine", True, "")
