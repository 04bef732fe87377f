#!/usr/bin/env python3
"""
Run script for the recmon command line.
"""
import sys

from recmon import __version__
from recmon.cli.main import main
from recmon.config import get_config


def banner():
    """Print the startup banner to stderr so stdout stays machine-readable."""
    config = get_config()
    print("=" * 60, file=sys.stderr)
    print(f"recmon {__version__} - monitor synthesis for recHML", file=sys.stderr)
    print("=" * 60, file=sys.stderr)
    print(f"Default alphabet: {','.join(config.alphabet)}", file=sys.stderr)
    print(f"Log level: {config.log_level}", file=sys.stderr)
    print("=" * 60, file=sys.stderr)


if __name__ == "__main__":
    if "--json" not in sys.argv:
        banner()
    sys.exit(main())
