#!/usr/bin/env python3
"""
rauzykit CLI Launcher

Quick launcher for the rauzykit command-line runner.
"""

import sys
from pathlib import Path

# Add project root to path
project_root = Path(__file__).parent
sys.path.insert(0, str(project_root))

from cli.rauzykit_cli import main

if __name__ == "__main__":
    sys.exit(main())
