#!/usr/bin/env python3
"""
Lattice Sum - Main Entry Point
"""

import logging
import signal
import sys

from config import LOG_CONFIG
from src.cli import app


def _signal_handler(signum, frame):
    """Handle Ctrl+C without a traceback"""
    print("\ninterrupted", file=sys.stderr)
    sys.exit(130)


def main(argv=None):
    """Main function"""
    logging.basicConfig(
        level=getattr(logging, LOG_CONFIG["log_level"].upper(), logging.WARNING),
        format=LOG_CONFIG["format"],
        stream=sys.stderr,
    )
    signal.signal(signal.SIGINT, _signal_handler)
    return app.main(sys.argv[1:] if argv is None else argv)


if __name__ == "__main__":
    sys.exit(main())
