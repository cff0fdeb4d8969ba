#!/usr/bin/env python3
"""Run the acceptance suite with per-criterion PASS lines visible."""

import subprocess
import sys

if __name__ == "__main__":
    raise SystemExit(
        subprocess.call(
            [sys.executable, "-m", "pytest", "tests/test_acceptance.py", "-v", "-s"]
            + sys.argv[1:]
        )
    )
