"""Entry point for the isom-realizer command line."""

import sys

from .cli import main as cli_main


def main() -> None:
    """Run the CLI and exit with its status code."""
    sys.exit(cli_main())


if __name__ == "__main__":
    main()
