"""Logging system for realizer runs."""

import logging
from pathlib import Path
from datetime import datetime
from enum import Enum


class RunStatus(Enum):
    """Status of a command or check."""
    SUCCESS      = "SUCCESS"
    FAILED       = "FAILED"
    OUT_OF_SCOPE = "OUT_OF_SCOPE"
    ERROR        = "ERROR"


class RunLogger:
    """Session logger for CLI commands and self-test checks."""

    def __init__(self, log_dir: Path, verbose: bool = False):
        """Initialize logger.

        Args:
            log_dir: Directory to store log files.
            verbose: Also echo records to stderr.
        """
        log_dir.mkdir(parents=True, exist_ok=True)

        timestamp = datetime.now().strftime("%Y%m%d_%H%M%S")
        self.log_file = log_dir / f"realizer_{timestamp}.log"

        self.logger = logging.getLogger("isom_realizer")
        self.logger.setLevel(logging.DEBUG if verbose else logging.INFO)

        # Avoid duplicate handlers across sessions
        for handler in self.logger.handlers:
            handler.close()
        self.logger.handlers.clear()

        formatter = logging.Formatter(
            "%(asctime)s | %(levelname)-8s | %(message)s",
            datefmt="%Y-%m-%d %H:%M:%S",
        )

        file_handler = logging.FileHandler(self.log_file, encoding="utf-8")
        file_handler.setFormatter(formatter)
        self.logger.addHandler(file_handler)

        if verbose:
            stream_handler = logging.StreamHandler()
            stream_handler.setFormatter(formatter)
            self.logger.addHandler(stream_handler)

        self._log_session_start()

    def _log_session_start(self) -> None:
        self.logger.info("=" * 80)
        self.logger.info("Realizer Session Started")
        self.logger.info("=" * 80)

    def log_command(self, command: str, options: dict) -> None:
        """Log the command being run and its options.

        Args:
            command: CLI sub-command name.
            options: Parsed options, recorded verbatim.
        """
        rendered = ", ".join(f"{key}={value}" for key, value in options.items())
        self.logger.info(f"COMMAND | {command} | {rendered}")

    def log_result(self, command: str, status: RunStatus, detail: str = "") -> None:
        """Log the outcome of a command.

        Args:
            command: CLI sub-command name.
            status: Outcome status.
            detail: Short human-readable detail.
        """
        level = logging.INFO if status is RunStatus.SUCCESS else logging.WARNING
        self.logger.log(level, f"{status.value} | {command} | {detail}")

    def log_check(self, name: str, passed: bool, detail: str = "") -> None:
        """Log a single self-test or verification check.

        Args:
            name: Check identifier.
            passed: Whether the check held.
            detail: Extra information, e.g. a mismatch.
        """
        status = RunStatus.SUCCESS if passed else RunStatus.FAILED
        level = logging.INFO if passed else logging.WARNING
        self.logger.log(level, f"CHECK {status.value} | {name} | {detail}")

    def log_error(self, command: str, error: Exception) -> None:
        """Log an error raised while running a command.

        Args:
            command: CLI sub-command name.
            error: Exception that occurred.
        """
        self.logger.error(
            f"{RunStatus.ERROR.value} | "
            f"{command} | {type(error).__name__}: {error}"
        )

    def log_summary(self, stats: dict) -> None:
        """Log session summary.

        Args:
            stats: Dictionary with run statistics.
        """
        self.logger.info("=" * 80)
        self.logger.info("Session Summary:")
        for key, value in stats.items():
            self.logger.info(f"  {key.capitalize()}: {value}")
        self.logger.info("=" * 80)

    def get_log_path(self) -> Path:
        """Return path to the current log file."""
        return self.log_file
