#!/usr/bin/env python3
"""Run the regcoind MCP server from a source checkout.

Usage: run_server.py [LOG_LEVEL]. Budget and log level otherwise come from
REGCOIND_BUDGET and REGCOIND_LOG_LEVEL.
"""

import sys

from regcoind.server import main

if __name__ == "__main__":
    main(sys.argv[1] if len(sys.argv) > 1 else None)
