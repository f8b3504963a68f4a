"""Allow running the command line via ``python -m regcoind``."""
import sys

from .cli import main

if __name__ == "__main__":
    sys.exit(main())
