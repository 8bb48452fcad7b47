"""Main entry point for cplanes CLI."""

import sys

from cplanes.cli import main

if __name__ == "__main__":
    sys.exit(main())
